#include "tlb/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tlb {

const char* var_name(Var v) {
    static const char* names[kNumVars] = {"n",     "n_l",   "n_r",   "n_b", "ell",
                                          "ell_l", "ell_r", "ell_b", "z",   "ztilde"};
    return names[size_t(v)];
}

namespace {

struct MonoHash {
    size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Descending graded-lex (leading term first).
bool term_before(const Polynomial::Term& a, const Polynomial::Term& b) {
    return b.first < a.first;
}

} // namespace

Polynomial raw_poly(std::vector<Polynomial::Term>&& t) {
    Polynomial p;
    p.t_ = std::move(t);
    p.normalize();
    return p;
}

void Polynomial::normalize() {
    std::sort(t_.begin(), t_.end(), term_before);
    size_t w = 0;
    for (size_t r = 0; r < t_.size(); ++r) {
        if (w > 0 && t_[w - 1].first == t_[r].first) {
            t_[w - 1].second += t_[r].second;
            if (t_[w - 1].second == 0)
                --w;
        } else {
            if (w != r)
                t_[w] = std::move(t_[r]);
            ++w;
        }
    }
    t_.resize(w);
}

Polynomial Polynomial::from_int(const Int& c) {
    Polynomial p;
    if (c != 0)
        p.t_.push_back({Monomial{}, c});
    return p;
}

Polynomial Polynomial::variable(Var v, int power) {
    Monomial m;
    m.e[size_t(v)] = uint16_t(power);
    return monomial(m, 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Int& c) {
    Polynomial p;
    if (c != 0)
        p.t_.push_back({m, c});
    return p;
}

bool Polynomial::is_one() const {
    return t_.size() == 1 && t_[0].second == 1 && t_[0].first.total_degree() == 0;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.t_)
        t.second = -t.second;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.is_zero())
        return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        if (t_[i].first == o.t_[j].first) {
            Int c = t_[i].second + o.t_[j].second;
            if (c != 0)
                out.push_back({t_[i].first, std::move(c)});
            ++i, ++j;
        } else if (term_before(t_[i], o.t_[j])) {
            out.push_back(std::move(t_[i++]));
        } else {
            out.push_back(o.t_[j++]);
        }
    }
    for (; i < t_.size(); ++i)
        out.push_back(std::move(t_[i]));
    for (; j < o.t_.size(); ++j)
        out.push_back(o.t_[j]);
    t_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    *this += -o;
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero())
        return Polynomial();
    const auto& a = t_.size() <= o.t_.size() ? t_ : o.t_;
    const auto& b = t_.size() <= o.t_.size() ? o.t_ : t_;
    size_t pairs = a.size() * b.size();
    if (pairs <= 1024) {
        std::vector<Term> out;
        out.reserve(pairs);
        for (const auto& ta : a)
            for (const auto& tb : b)
                out.push_back({ta.first * tb.first, ta.second * tb.second});
        return raw_poly(std::move(out));
    }
    // Dense accumulation over the joint exponent box when it is small; this
    // is the regime of the Gram eliminations (few active variables).
    {
        std::array<uint32_t, kNumVars> dim{};
        size_t slots = 1;
        bool fits = true;
        for (int v = 0; v < kNumVars && fits; ++v) {
            uint32_t da = 0, db = 0;
            for (const auto& t : a)
                da = std::max<uint32_t>(da, t.first.e[v]);
            for (const auto& t : b)
                db = std::max<uint32_t>(db, t.first.e[v]);
            dim[size_t(v)] = da + db + 1;
            if (slots > (size_t(1) << 22) / dim[size_t(v)])
                fits = false;
            else
                slots *= dim[size_t(v)];
        }
        if (fits && slots <= (size_t(1) << 22) && slots <= 8 * pairs) {
            auto flat = [&dim](const Monomial& m) {
                size_t idx = 0;
                for (int v = 0; v < kNumVars; ++v)
                    idx = idx * dim[size_t(v)] + m.e[v];
                return idx;
            };
            std::vector<Int> acc(slots);
            for (const auto& ta : a)
                for (const auto& tb : b)
                    acc[flat(ta.first * tb.first)] += ta.second * tb.second;
            std::vector<Term> out;
            for (size_t idx = 0; idx < slots; ++idx) {
                if (acc[idx] == 0)
                    continue;
                Monomial m;
                size_t rest = idx;
                for (int v = kNumVars - 1; v >= 0; --v) {
                    m.e[size_t(v)] = uint16_t(rest % dim[size_t(v)]);
                    rest /= dim[size_t(v)];
                }
                out.push_back({m, std::move(acc[idx])});
            }
            return raw_poly(std::move(out));
        }
    }
    // Hash accumulation keeps memory proportional to the result size.
    std::unordered_map<Monomial, Int, MonoHash> acc;
    acc.reserve(pairs / 4);
    for (const auto& ta : a)
        for (const auto& tb : b) {
            Int& c = acc[ta.first * tb.first];
            c += ta.second * tb.second;
        }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& kv : acc)
        if (kv.second != 0)
            out.push_back({kv.first, std::move(kv.second)});
    return raw_poly(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::mul_int(const Int& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& t : t_)
        t.second *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = from_int(1);
    Polynomial b = *this;
    while (k) {
        if (k & 1)
            r *= b;
        k >>= 1;
        if (k)
            b *= b;
    }
    return r;
}

Polynomial Polynomial::prod_diff(const Polynomial& a, const Polynomial& b, const Polynomial& c,
                                 const Polynomial& d) {
    if (a.is_zero() || b.is_zero())
        return -(c * d);
    if (c.is_zero() || d.is_zero())
        return a * b;
    std::array<uint32_t, kNumVars> dim{};
    size_t slots = 1;
    bool fits = true;
    for (int v = 0; v < kNumVars && fits; ++v) {
        uint32_t m1 = uint32_t(a.degree(Var(v))) + uint32_t(b.degree(Var(v)));
        uint32_t m2 = uint32_t(c.degree(Var(v))) + uint32_t(d.degree(Var(v)));
        dim[size_t(v)] = std::max(m1, m2) + 1;
        if (slots > (size_t(1) << 23) / dim[size_t(v)])
            fits = false;
        else
            slots *= dim[size_t(v)];
    }
    size_t pairs = a.t_.size() * b.t_.size() + c.t_.size() * d.t_.size();
    if (!fits || slots > (size_t(1) << 23) || (slots > 16 * pairs && slots > 4096))
        return a * b - c * d;
    auto flat = [&dim](const Monomial& m) {
        size_t idx = 0;
        for (int v = 0; v < kNumVars; ++v)
            idx = idx * dim[size_t(v)] + m.e[v];
        return idx;
    };
    std::vector<Int> acc(slots);
    for (const auto& ta : a.t_)
        for (const auto& tb : b.t_)
            acc[flat(ta.first * tb.first)] += ta.second * tb.second;
    for (const auto& tc : c.t_)
        for (const auto& td : d.t_)
            acc[flat(tc.first * td.first)] -= tc.second * td.second;
    std::vector<Term> out;
    for (size_t idx = 0; idx < slots; ++idx) {
        if (acc[idx] == 0)
            continue;
        Monomial m;
        size_t rest = idx;
        for (int v = kNumVars - 1; v >= 0; --v) {
            m.e[size_t(v)] = uint16_t(rest % dim[size_t(v)]);
            rest /= dim[size_t(v)];
        }
        out.push_back({m, std::move(acc[idx])});
    }
    return raw_poly(std::move(out));
}

std::optional<Polynomial> Polynomial::exact_div(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero())
        throw std::invalid_argument("exact_div: division by zero polynomial");
    if (a.is_zero())
        return Polynomial();
    Polynomial rem = a;
    std::vector<Term> q;
    const Term& lb = b.leading();
    std::vector<Term> merged;
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!lb.first.divides(lr.first))
            return std::nullopt;
        Int c = lr.second / lb.second;
        if (c * lb.second != lr.second)
            return std::nullopt;
        Monomial m = lb.first.quotient_of(lr.first);
        // rem -= (m, c) * b, merged in place.
        merged.clear();
        merged.reserve(rem.t_.size() + b.t_.size());
        size_t i = 0, j = 0;
        while (i < rem.t_.size() && j < b.t_.size()) {
            Monomial mb = m * b.t_[j].first;
            if (rem.t_[i].first == mb) {
                Int v = rem.t_[i].second - c * b.t_[j].second;
                if (v != 0)
                    merged.push_back({mb, std::move(v)});
                ++i, ++j;
            } else if (term_before(rem.t_[i], {mb, 0})) {
                merged.push_back(std::move(rem.t_[i++]));
            } else {
                merged.push_back({mb, -c * b.t_[j++].second});
            }
        }
        for (; i < rem.t_.size(); ++i)
            merged.push_back(std::move(rem.t_[i]));
        for (; j < b.t_.size(); ++j)
            merged.push_back({m * b.t_[j].first, -c * b.t_[j].second});
        rem.t_.swap(merged);
        q.push_back({m, std::move(c)});
    }
    return raw_poly(std::move(q));
}

Int Polynomial::eval_int(const std::map<Var, Int>& assignment) const {
    Int total = 0;
    for (const auto& t : t_) {
        Int v = t.second;
        for (int i = 0; i < kNumVars; ++i) {
            if (t.first.e[i] == 0)
                continue;
            auto it = assignment.find(Var(i));
            if (it == assignment.end())
                throw std::invalid_argument(std::string("eval_int: missing variable ") +
                                            var_name(Var(i)));
            v *= int_pow(it->second, t.first.e[i]);
        }
        total += v;
    }
    return total;
}

long double Polynomial::eval_ld(const std::array<long double, kNumVars>& x) const {
    long double total = 0;
    for (const auto& t : t_) {
        long double v = static_cast<long double>(t.second.convert_to<double>());
        // convert_to<double> would lose precision for huge coefficients;
        // go through a string only when the coefficient is large.
        if (abs(t.second) > Int(1) << 52)
            v = strtold(t.second.str().c_str(), nullptr);
        for (int i = 0; i < kNumVars; ++i)
            for (int k = 0; k < t.first.e[i]; ++k)
                v *= x[size_t(i)];
        total += v;
    }
    return total;
}

Polynomial Polynomial::subst(Var v, const Polynomial& replacement) const {
    Polynomial out;
    for (const auto& t : t_) {
        Monomial m = t.first;
        int p = m.e[size_t(v)];
        m.e[size_t(v)] = 0;
        Polynomial piece = monomial(m, t.second);
        if (p > 0)
            piece *= replacement.pow(unsigned(p));
        out += piece;
    }
    return out;
}

Polynomial Polynomial::rename(Var from, Var to) const {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m = t.first;
        m.e[size_t(to)] = uint16_t(m.e[size_t(to)] + m.e[size_t(from)]);
        m.e[size_t(from)] = 0;
        out.push_back({m, t.second});
    }
    return raw_poly(std::move(out));
}

int Polynomial::degree() const {
    if (is_zero())
        return -1;
    return t_.front().first.total_degree();
}

int Polynomial::degree(Var v) const {
    int d = 0;
    for (const auto& t : t_)
        d = std::max(d, int(t.first.e[size_t(v)]));
    return d;
}

bool Polynomial::uses(Var v) const {
    for (const auto& t : t_)
        if (t.first.e[size_t(v)] != 0)
            return true;
    return false;
}

std::string Polynomial::str() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        Int c = t.second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0)
                c = -c;
        }
        first = false;
        bool has_var = t.first.total_degree() > 0;
        bool printed = false;
        if (c != 1 || !has_var) {
            os << c.str();
            printed = true;
        }
        for (int i = 0; i < kNumVars; ++i) {
            if (t.first.e[i] == 0)
                continue;
            if (printed)
                os << "*";
            os << var_name(Var(i));
            if (t.first.e[i] > 1)
                os << "^" << t.first.e[i];
            printed = true;
        }
    }
    return os.str();
}

Polynomial operator*(const Int& c, const Polynomial& p) {
    Polynomial r = p;
    r.mul_int(c);
    return r;
}

} // namespace tlb
