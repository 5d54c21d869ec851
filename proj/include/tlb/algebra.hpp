#pragma once

#include <string>
#include <vector>

#include "tlb/poly.hpp"
#include "tlb/states.hpp"

namespace tlb {

enum class GenKind : uint8_t { Identity, E, BlobL, BlobR };

struct Generator {
    GenKind kind = GenKind::Identity;
    int i = 0; // left site (0-based) for E

    static Generator e(int i) { return {GenKind::E, i}; }
    static Generator bl() { return {GenKind::BlobL, 0}; }
    static Generator br() { return {GenKind::BlobR, 0}; }
    std::string str() const;
};

// Image of a basis state under a generator word: a single basis state with a
// monomial weight. A zero weight means the state was annihilated.
struct WeightedState {
    ReducedState state;
    Polynomial weight;

    bool annihilated() const { return weight.is_zero(); }
};

// Diagrammatic action on a reduced state. Closed unmarked loops weigh n,
// left/right/doubly blobbed loops weigh n_l / n_r / n_b; with n_b = 0 any
// doubly blobbed loop or arc annihilates the state. Adjoining a blobbed and
// an unblobbed link gives a blobbed link.
WeightedState apply_generator(const Generator& g, const ReducedState& s, const BoundaryMode& mode);

// Word application, first element applied first.
WeightedState apply_word(const std::vector<Generator>& word, const ReducedState& s,
                         const BoundaryMode& mode);

// The five convention choices of the Gram-matrix construction. Defaults are
// the ones used for all boundary determinants: free string positions, line
// conservation, strings of weight one.
struct GramConventions {
    bool positions_matched = false;   // require equal string positions
    bool line_conservation = true;    // bottom strings must reach top strings
    bool semimeander_strings = false; // close k-th top onto k-th bottom, weight n per loop
    bool nb_allowed = true;           // doubly blobbed adjacency allowed (weight n_b)

    static GramConventions line() { return {}; }
    static GramConventions meander() { return {false, false, false, true}; }
    static GramConventions semimeander() { return {false, false, true, true}; }
};

// Inner product of two reduced states by reflection gluing. Returns a single
// monomial in the contractible-loop weights, or zero for incompatible
// gluings.
Polynomial inner_product(const ReducedState& top, const ReducedState& bottom,
                         const BoundaryMode& mode, const GramConventions& conv);

struct RelationReport {
    struct Entry {
        std::string name;
        bool pass;
        std::string detail; // first counterexample, empty when passing
    };
    std::vector<Entry> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass)
                return false;
        return true;
    }
};

// Machine verification of the defining relations on the complete reduced
// state basis of the mode at width N.
RelationReport verify_relations(int N, const BoundaryMode& mode);

} // namespace tlb
