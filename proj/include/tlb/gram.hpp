#pragma once

#include <string>
#include <vector>

#include "tlb/algebra.hpp"
#include "tlb/amplitudes.hpp"
#include "tlb/poly.hpp"
#include "tlb/states.hpp"

namespace tlb {

struct GramMatrix {
    int N = 0, L = 0;
    BoundaryMode mode;
    GramConventions conv;
    SectorLabel sector;
    std::vector<ReducedState> basis;
    std::vector<std::vector<Polynomial>> g;
};

GramMatrix build_gram(int N, int L, const BoundaryMode& mode, const SectorLabel& sector,
                      const GramConventions& conv);

// Fraction-free Bareiss elimination with full pivoting over the polynomial
// ring; every division is exact.
Polynomial det_exact(std::vector<std::vector<Polynomial>> a);
Int det_int(std::vector<std::vector<Int>> a);

enum class ConjectureId {
    MeanderL0,
    Semimeander,
    Line0B,
    OneBFullB,
    OneBFullU,
    OneBRestrictedB,
    OneBRestrictedU,
    TwoBL0Nb,
    TwoBL0Forbidden,
    TwoBStringsUU,
    TwoBStringsUB,
    TwoBStringsBU,
    TwoBStringsBB,
};

const char* conjecture_name(ConjectureId id);
std::vector<ConjectureId> all_conjectures();

// Gram matrix whose determinant the identifier describes.
GramMatrix gram_for_conjecture(ConjectureId id, int N, int L);

struct FactorPower {
    Polynomial base;
    long exp; // negative exponents appear in the line-conserving 0b quotient form
};

std::vector<FactorPower> conjectured_factors(ConjectureId id, int N, int L);

// Expanded conjectured determinant; the quotient form is assembled with
// exact divisions and throws on non-divisibility.
Polynomial conjectured_det(ConjectureId id, int N, int L);

std::string factors_str(const std::vector<FactorPower>& fs);

struct ConjectureOutcome {
    ConjectureId id;
    int N = 0, L = 0;
    int dim = 0;
    bool pass = false;
    bool factorization_ok = false;
    bool degree_ok = true;
    bool specialization_ok = false;
    std::string detail;
    Polynomial det;
    std::string conjecture;
    double seconds = 0;
};

ConjectureOutcome verify_conjecture(ConjectureId id, int N, int L);

// The four Chebyshev rewritings of the odd-amplitude sums, checked as exact
// polynomial identities; discrepancies are reported, not patched.
CheckReport verify_magic_sums(int k_max);

// Numerical check of the sinh-product form of the two-boundary L = 0
// determinant factors, per k, at random parameter points (relative
// tolerance: the products span many orders of magnitude).
CheckReport nb_det_sinh_form_check(int k_max, int points, long double rel_tol, unsigned seed);

} // namespace tlb
