#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlb/bigint.hpp"

namespace tlb {

// The fixed variable set: contractible-loop weights, non-contractible-loop
// weights, and the two formal series variables.
enum class Var : uint8_t {
    n = 0,
    n_l,
    n_r,
    n_b,
    ell,
    ell_l,
    ell_r,
    ell_b,
    z,
    ztilde,
};

inline constexpr int kNumVars = 10;

const char* var_name(Var v);

// Dense exponent vector over the fixed variable set.
struct Monomial {
    std::array<uint16_t, kNumVars> e{};

    int total_degree() const {
        int t = 0;
        for (auto x : e)
            t += x;
        return t;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }

    // Graded-lex: total degree first, then exponent vector in variable order.
    bool operator<(const Monomial& o) const {
        int ta = total_degree(), tb = o.total_degree();
        if (ta != tb)
            return ta < tb;
        return e < o.e;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kNumVars; ++i)
            r.e[i] = uint16_t(e[i] + o.e[i]);
        return r;
    }

    bool divides(const Monomial& o) const {
        for (int i = 0; i < kNumVars; ++i)
            if (e[i] > o.e[i])
                return false;
        return true;
    }

    // Quotient o / *this; caller guarantees divisibility.
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kNumVars; ++i)
            r.e[i] = uint16_t(o.e[i] - e[i]);
        return r;
    }

    size_t hash() const {
        uint64_t h = 1469598103934665603ull;
        for (auto x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

// Exact multivariate polynomial with arbitrary-precision integer
// coefficients. Terms are kept sorted (graded-lex, leading term first) with
// no zero coefficients, so operator== is structural equality.
class Polynomial {
  public:
    using Term = std::pair<Monomial, Int>;

    Polynomial() = default;
    Polynomial(long c) { *this = from_int(Int(c)); }
    Polynomial(const Int& c) { *this = from_int(c); }

    static Polynomial from_int(const Int& c);
    static Polynomial variable(Var v, int power = 1);
    static Polynomial monomial(const Monomial& m, const Int& c);

    bool is_zero() const { return t_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return t_.size() == 1; }
    size_t term_count() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }

    // Leading term under graded-lex.
    const Term& leading() const { return t_.front(); }

    bool operator==(const Polynomial& o) const { return t_ == o.t_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& mul_int(const Int& c);
    Polynomial pow(unsigned k) const;

    // Exact division: returns q with *this == q * b, or nullopt when the
    // remainder is nonzero. b must be nonzero.
    static std::optional<Polynomial> exact_div(const Polynomial& a, const Polynomial& b);

    // a*b - c*d with a single accumulation pass (the Bareiss kernel).
    static Polynomial prod_diff(const Polynomial& a, const Polynomial& b, const Polynomial& c,
                                const Polynomial& d);

    // Evaluation over the integers. Throws std::invalid_argument naming the
    // first variable that appears in the polynomial but not in `assignment`.
    Int eval_int(const std::map<Var, Int>& assignment) const;

    // Floating evaluation for the transcendental checks.
    long double eval_ld(const std::array<long double, kNumVars>& x) const;

    // Substitute a polynomial for a variable.
    Polynomial subst(Var v, const Polynomial& replacement) const;
    // Rename a variable (exponent transfer), collecting terms.
    Polynomial rename(Var from, Var to) const;

    int degree() const; // total degree, -1 for zero
    int degree(Var v) const;
    bool uses(Var v) const;

    // Canonical text form: terms in graded-lex order (leading first),
    // explicit signs, e.g. "ell^4 - 3*ell^2 + 1".
    std::string str() const;

  private:
    std::vector<Term> t_;

    void normalize(); // sort + combine + strip zeros
    friend Polynomial raw_poly(std::vector<Term>&& t);
};

Polynomial operator*(const Int& c, const Polynomial& p);

} // namespace tlb
