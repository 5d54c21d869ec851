#pragma once

#include <map>
#include <string>
#include <vector>

#include "tlb/genfunc.hpp"
#include "tlb/poly.hpp"
#include "tlb/states.hpp"

namespace tlb {

// Negative-index convention for the Chebyshev forms. The closed amplitude
// formulas are stated with U_n = 0 for n < 0; the hyperbolic forms and the
// small-L reduction identities correspond to the standard extension
// U_{-1} = 0, U_{-n-2} = -U_n.
enum class UConv { PaperZero, Standard };

// U_L(x/2) as a polynomial in the named variable.
Polynomial chebyshev_u(int L, Var x, UConv conv = UConv::PaperZero);
// U_L at the real argument xhalf (= x/2).
long double chebyshev_u_ld(int L, long double xhalf);

// Sector key used by the amplitude tables: blob statuses of the outermost
// lines (Blob::None where the mode has no such boundary).
struct SectorPair {
    Blob left = Blob::None;
    Blob right = Blob::None;
    bool operator==(const SectorPair&) const = default;
    bool operator<(const SectorPair& o) const {
        auto r = [](const SectorPair& s) {
            return (s.left == Blob::B ? 2 : 0) + (s.right == Blob::B ? 1 : 0);
        };
        return r(*this) < r(o);
    }
    std::string str() const;
};

std::vector<SectorPair> sector_pairs(BKind kind);

// Eigenvalue amplitudes obtained by inverting the unitriangular E system.
class AmplitudeTable {
  public:
    BKind kind;
    bool nb_nonzero;
    int n2max;

    // D^{alpha beta}_{gamma delta}(k, j): the integer coefficient of the
    // (k, gamma delta) character monomial in the constrained partition
    // function with (j, alpha beta) lines.
    Int coefficient(const SectorPair& ab, int j, const SectorPair& gd, int k) const;

    // Assembled amplitude D^{alpha beta}_L in the ell variables.
    Polynomial assembled(int L, const SectorPair& ab) const;

    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Int> coeff; // internal layout
};

AmplitudeTable solve_amplitudes(BKind kind, int n2max, bool nb_nonzero);

// Closed Chebyshev forms. With nb_nonzero and the paper convention, the
// single exceptional value D^{bb}_2 = ell_l ell_r - 1 is produced.
Polynomial closed_form_amplitude(BKind kind, int L, const SectorPair& sector, bool nb_nonzero,
                                 UConv conv = UConv::PaperZero);
// Same, with the n-family variables substituted for the ell family.
Polynomial closed_form_amplitude_n(BKind kind, int L, const SectorPair& sector, bool nb_nonzero,
                                   UConv conv = UConv::PaperZero);

struct CheckReport {
    struct Entry {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Entry> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass)
                return false;
        return true;
    }
    void add(const std::string& name, bool pass, const std::string& detail = "") {
        entries.push_back({name, pass, detail});
    }
};

// Sum rules: one report entry per applicable rule at this width.
//  - ZeroB: sum d_L D_L = ell^N (both parities of N);
//  - dilute: sum over both parities of L of d^dil_L D_L = (ell+1)^N;
//  - OneB: ell^N (lambda_l != 0) or ell_l ell^(N-1) (lambda_l = 0);
//  - TwoB: the four gamma-delta rows with their summation limits.
CheckReport verify_sum_rules(int N, const BoundaryMode& mode);
CheckReport verify_dilute_sum_rule(int N);

// Fusion, recurrence and reduction identities for even L <= L_max.
CheckReport verify_fusion(int L_max);

// Hyperbolic parametrization at one parameter point: ell = 2 cosh alpha,
// ell_l = sinh(alpha+beta_l)/sinh(beta_l), ell_r analogous.
CheckReport hyperbolic_check(long double alpha, long double beta_l, long double beta_r,
                             int L_max, long double tol);

// Chebyshev root factorization U_L(x/2) = prod_j (x^2 - (2 cos(pi j/(L+1)))^2)
// checked numerically at `points` random arguments per even L <= L_max.
CheckReport chebyshev_root_check(int L_max, int points, long double tol, unsigned seed);

} // namespace tlb
