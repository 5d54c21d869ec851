#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tlb/bigint.hpp"

namespace tlb {

inline constexpr int kMaxSites = 16;

enum class BKind : uint8_t { ZeroB, OneB, TwoB };

// lambda_l / lambda_r record whether the corresponding boundary parameter is
// nonzero (full algebra) or zero (restricted: boundary-adjacent links are
// forcibly blobbed). nb_nonzero decides whether doubly blobbed arcs exist.
struct BoundaryMode {
    BKind kind = BKind::ZeroB;
    bool lambda_l = false;
    bool lambda_r = false;
    bool nb_nonzero = false;

    bool has_left() const { return kind != BKind::ZeroB; }
    bool has_right() const { return kind == BKind::TwoB; }

    static BoundaryMode zero_b() { return {BKind::ZeroB, false, false, false}; }
    static BoundaryMode one_b(bool lambda_l) { return {BKind::OneB, lambda_l, false, false}; }
    static BoundaryMode two_b(bool ll, bool lr, bool nb) { return {BKind::TwoB, ll, lr, nb}; }

    std::string str() const;
};

enum class Blob : uint8_t { None = 0, U = 1, B = 2 };

// Conserved sector data: string count and blob status of the outermost
// strings (where the mode has the corresponding boundary).
struct SectorLabel {
    int L = 0;
    Blob left = Blob::None;
    Blob right = Blob::None;

    bool operator==(const SectorLabel&) const = default;

    // Rank inside a fixed string count: uu < ub < bu < bb (u < b for OneB).
    int rank() const {
        int r = 0;
        if (left == Blob::B)
            r += 2;
        if (right == Blob::B)
            r += 1;
        return r;
    }
    // Global basis order: descending string count, then rank.
    bool operator<(const SectorLabel& o) const {
        if (L != o.L)
            return L > o.L;
        return rank() < o.rank();
    }
    std::string str() const;
};

// A reduced state: noncrossing partial matching of sites 0..n-1 (arcs), the
// unmatched sites being strings, with blob decorations.  Flags are stored on
// the link's canonical site: the smaller endpoint for an arc, the site itself
// for a string.
struct ReducedState {
    uint8_t n = 0;
    std::array<int8_t, kMaxSites> partner{}; // partner site for arcs, -1 for strings
    uint32_t flag_l = 0;                     // bitmask over canonical sites
    uint32_t flag_r = 0;

    bool is_string(int i) const { return partner[size_t(i)] < 0; }
    int canonical_site(int i) const {
        int p = partner[size_t(i)];
        return p < 0 ? i : std::min(i, p);
    }
    bool has_l(int i) const { return (flag_l >> canonical_site(i)) & 1u; }
    bool has_r(int i) const { return (flag_r >> canonical_site(i)) & 1u; }

    int string_count() const {
        int c = 0;
        for (int i = 0; i < n; ++i)
            if (is_string(i))
                ++c;
        return c;
    }
    std::vector<int> strings() const;
    std::vector<std::pair<int, int>> arcs() const; // sorted pairs (a,b), a<b

    int leftmost_string() const;  // -1 when none
    int rightmost_string() const; // -1 when none

    // A link is left-exposed iff every site strictly left of its leftmost
    // site is matched within that prefix.
    bool left_exposed(int site) const;
    bool right_exposed(int site) const;

    bool operator==(const ReducedState& o) const {
        return n == o.n && partner == o.partner && flag_l == o.flag_l && flag_r == o.flag_r;
    }
    bool operator<(const ReducedState& o) const; // canonical basis order
    size_t hash() const;

    // Bracket rendering, e.g. "(l)(r)" or "(..)|l|":  '(' opens an arc,
    // ')' closes it, '|' is a string; 'l','r','b' follow the opening token
    // of a decorated link (b = blobbed on both sides).
    std::string str() const;
};

SectorLabel sector_of(const ReducedState& s, const BoundaryMode& mode);

// Throws std::logic_error when the state violates the mode's invariants
// (crossing, decoration exposure, lambda/nb constraints).
void check_valid(const ReducedState& s, const BoundaryMode& mode);

// All sectors of a mode at width n, in canonical order.
std::vector<SectorLabel> sectors_for(int n, const BoundaryMode& mode);

// Complete duplicate-free enumeration in deterministic canonical order.
// Throws std::invalid_argument for invalid (n, mode, sector) combinations
// (odd n is accepted for ZeroB only).
std::vector<ReducedState> enumerate_reduced(int n, const BoundaryMode& mode,
                                            const SectorLabel& sector);
std::vector<ReducedState> enumerate_all(int n, const BoundaryMode& mode);

// Closed-form / series-coefficient dimension of a sector; matches the
// enumeration length.
Int closed_form_dimension(int n, const BoundaryMode& mode, const SectorLabel& sector);

// Closed-form count of all reduced states of the mode at width n.
Int closed_form_total(int n, const BoundaryMode& mode);

// Dilute (Motzkin) dimensions: coefficient of ztilde^n in ztilde^L * ftilde^(L+1).
Int dilute_dimension(int n, int L);

// A slab state: a bottom and a top reduced state with equal string counts,
// glued in the unique planar fashion.
struct FullState {
    ReducedState bottom, top;
};

// Throws std::invalid_argument on a string-count mismatch.
FullState pair_states(const ReducedState& bottom, const ReducedState& top);

} // namespace tlb
