#include "tlb/gram.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tlb {

GramMatrix build_gram(int N, int L, const BoundaryMode& mode, const SectorLabel& sector,
                      const GramConventions& conv) {
    GramMatrix gm;
    gm.N = N;
    gm.L = L;
    gm.mode = mode;
    gm.conv = conv;
    gm.sector = sector;
    gm.basis = enumerate_reduced(N, mode, sector);
    size_t d = gm.basis.size();
    gm.g.assign(d, std::vector<Polynomial>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            Polynomial v = inner_product(gm.basis[i], gm.basis[j], mode, conv);
            gm.g[i][j] = v;
            if (j != i)
                gm.g[j][i] = std::move(v);
        }
    return gm;
}

namespace {

int det_jobs() {
    if (const char* env = std::getenv("TLLOOP_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1)
            return j;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? int(h) : 1;
}

void bareiss_row_update(std::vector<std::vector<Polynomial>>& a, size_t k, size_t i, size_t jlo,
                        size_t n, const Polynomial& prev) {
    for (size_t j = jlo; j < n; ++j) {
        Polynomial num = Polynomial::prod_diff(a[k][k], a[i][j], a[i][k], a[k][j]);
        auto q = Polynomial::exact_div(num, prev);
        if (!q)
            throw std::logic_error("Bareiss division failed");
        a[i][j] = std::move(*q);
    }
}

// Symmetric fraction-free elimination with diagonal pivoting; returns false
// when no nonzero diagonal pivot exists in a remaining block (caller falls
// back to the general routine).
bool det_exact_symmetric(std::vector<std::vector<Polynomial>> a, Polynomial& out) {
    const size_t n = a.size();
    const bool stats = std::getenv("TLLOOP_DET_STATS") != nullptr;
    const int jobs = det_jobs();
    Polynomial prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t p = n, best = SIZE_MAX;
        for (size_t i = k; i < n; ++i)
            if (!a[i][i].is_zero() && a[i][i].term_count() < best) {
                best = a[i][i].term_count();
                p = i;
            }
        if (p == n) {
            bool all_zero = true;
            for (size_t i = k; i < n && all_zero; ++i)
                for (size_t j = k; j < n && all_zero; ++j)
                    if (!a[i][j].is_zero())
                        all_zero = false;
            if (all_zero) {
                out = Polynomial();
                return true;
            }
            return false; // nonzero block with an all-zero diagonal
        }
        if (p != k) { // symmetric swap: two sign flips cancel
            std::swap(a[p], a[k]);
            for (size_t i = 0; i < n; ++i)
                std::swap(a[i][p], a[i][k]);
        }
        if (stats) {
            size_t mx = 0;
            for (size_t i = k; i < n; ++i)
                for (size_t j = i; j < n; ++j)
                    mx = std::max(mx, a[i][j].term_count());
            fprintf(stderr, "sym bareiss step %zu/%zu: pivot %zu terms, max %zu\n", k, n,
                    a[k][k].term_count(), mx);
        }
        auto update_rows = [&](size_t tid, size_t nthreads) {
            for (size_t i = k + 1 + tid; i < n; i += nthreads)
                for (size_t j = i; j < n; ++j) {
                    Polynomial num =
                        Polynomial::prod_diff(a[k][k], a[i][j], a[i][k], a[k][j]);
                    auto q = Polynomial::exact_div(num, prev);
                    if (!q)
                        throw std::logic_error("Bareiss division failed");
                    a[i][j] = std::move(*q);
                }
        };
        size_t rows = n - k - 1;
        int nt = int(std::min<size_t>(size_t(jobs), rows));
        if (nt > 1 && rows >= 4) {
            std::vector<std::thread> pool;
            for (int t = 0; t < nt; ++t)
                pool.emplace_back(update_rows, size_t(t), size_t(nt));
            for (auto& th : pool)
                th.join();
        } else {
            update_rows(0, 1);
        }
        for (size_t i = k + 1; i < n; ++i) {
            a[i][k] = Polynomial();
            for (size_t j = i + 1; j < n; ++j)
                a[j][i] = a[i][j];
        }
        prev = a[k][k];
    }
    out = a[n - 1][n - 1];
    return true;
}

} // namespace

Polynomial det_exact(std::vector<std::vector<Polynomial>> a) {
    const size_t n = a.size();
    if (n == 0)
        return Polynomial(1);
    const bool stats = std::getenv("TLLOOP_DET_STATS") != nullptr;
    bool symmetric = true;
    for (size_t i = 0; i < n && symmetric; ++i)
        for (size_t j = i + 1; j < n && symmetric; ++j)
            if (!(a[i][j] == a[j][i]))
                symmetric = false;
    if (symmetric) {
        Polynomial out;
        if (det_exact_symmetric(a, out))
            return out;
    }
    const int jobs = det_jobs();
    int sign = 1;
    Polynomial prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (stats) {
            size_t mx = 0;
            for (size_t i = k; i < n; ++i)
                for (size_t j = k; j < n; ++j)
                    mx = std::max(mx, a[i][j].term_count());
            fprintf(stderr, "bareiss step %zu/%zu: max terms %zu\n", k, n, mx);
        }
        // Full pivoting on the entry with the fewest terms.
        size_t pr = n, pc = n, best = SIZE_MAX;
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j)
                if (!a[i][j].is_zero() && a[i][j].term_count() < best) {
                    best = a[i][j].term_count();
                    pr = i;
                    pc = j;
                }
        if (pr == n)
            return Polynomial(); // the remaining minor is identically zero
        if (pr != k) {
            std::swap(a[pr], a[k]);
            sign = -sign;
        }
        if (pc != k) {
            for (size_t i = 0; i < n; ++i)
                std::swap(a[i][pc], a[i][k]);
            sign = -sign;
        }
        size_t rows = n - k - 1;
        int nt = int(std::min<size_t>(size_t(jobs), rows));
        if (nt > 1 && rows >= 4) {
            std::vector<std::thread> pool;
            for (int t = 0; t < nt; ++t)
                pool.emplace_back([&, t]() {
                    for (size_t i = k + 1 + size_t(t); i < n; i += size_t(nt))
                        bareiss_row_update(a, k, i, k + 1, n, prev);
                });
            for (auto& th : pool)
                th.join();
        } else {
            for (size_t i = k + 1; i < n; ++i)
                bareiss_row_update(a, k, i, k + 1, n, prev);
        }
        for (size_t i = k + 1; i < n; ++i)
            a[i][k] = Polynomial();
        prev = a[k][k];
    }
    Polynomial d = a[n - 1][n - 1];
    if (sign < 0)
        d = -d;
    return d;
}

Int det_int(std::vector<std::vector<Int>> a) {
    const size_t n = a.size();
    if (n == 0)
        return 1;
    int sign = 1;
    Int prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pr = n;
        for (size_t i = k; i < n && pr == n; ++i)
            if (a[i][k] != 0)
                pr = i;
        if (pr == n) {
            // Column is zero below; determinant vanishes unless a later
            // column provides a pivot -- do full pivot search.
            size_t pc = n;
            for (size_t j = k + 1; j < n && pc == n; ++j)
                for (size_t i = k; i < n; ++i)
                    if (a[i][j] != 0) {
                        pr = i;
                        pc = j;
                        break;
                    }
            if (pc == n)
                return 0;
            for (size_t i = k; i < n; ++i)
                std::swap(a[i][pc], a[i][k]);
            sign = -sign;
        }
        if (pr != k) {
            std::swap(a[pr], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = num / prev; // Bareiss: exact
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign < 0 ? Int(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

const char* conjecture_name(ConjectureId id) {
    switch (id) {
    case ConjectureId::MeanderL0:
        return "M-det";
    case ConjectureId::Semimeander:
        return "SM-det";
    case ConjectureId::Line0B:
        return "line-det-0B";
    case ConjectureId::OneBFullB:
        return "1B-full-b";
    case ConjectureId::OneBFullU:
        return "1B-full-u";
    case ConjectureId::OneBRestrictedB:
        return "1B-restricted-b";
    case ConjectureId::OneBRestrictedU:
        return "1B-restricted-u";
    case ConjectureId::TwoBL0Nb:
        return "2B-L0";
    case ConjectureId::TwoBL0Forbidden:
        return "2B-L0-forbidden";
    case ConjectureId::TwoBStringsUU:
        return "2B-strings-uu";
    case ConjectureId::TwoBStringsUB:
        return "2B-strings-ub";
    case ConjectureId::TwoBStringsBU:
        return "2B-strings-bu";
    case ConjectureId::TwoBStringsBB:
        return "2B-strings-bb";
    }
    return "?";
}

std::vector<ConjectureId> all_conjectures() {
    return {ConjectureId::MeanderL0,       ConjectureId::Semimeander,
            ConjectureId::Line0B,          ConjectureId::OneBFullB,
            ConjectureId::OneBFullU,       ConjectureId::OneBRestrictedB,
            ConjectureId::OneBRestrictedU, ConjectureId::TwoBL0Nb,
            ConjectureId::TwoBL0Forbidden, ConjectureId::TwoBStringsUU,
            ConjectureId::TwoBStringsUB,   ConjectureId::TwoBStringsBU,
            ConjectureId::TwoBStringsBB};
}

namespace {

SectorPair sector_for_strings_id(ConjectureId id) {
    switch (id) {
    case ConjectureId::TwoBStringsUU:
        return {Blob::U, Blob::U};
    case ConjectureId::TwoBStringsUB:
        return {Blob::U, Blob::B};
    case ConjectureId::TwoBStringsBU:
        return {Blob::B, Blob::U};
    case ConjectureId::TwoBStringsBB:
        return {Blob::B, Blob::B};
    default:
        throw std::invalid_argument("not a 2B strings identifier");
    }
}

} // namespace

GramMatrix gram_for_conjecture(ConjectureId id, int N, int L) {
    switch (id) {
    case ConjectureId::MeanderL0:
        if (L != 0)
            throw std::invalid_argument("the meander determinant is an L = 0 object");
        return build_gram(N, 0, BoundaryMode::zero_b(), {0, Blob::None, Blob::None},
                          GramConventions::meander());
    case ConjectureId::Semimeander:
        return build_gram(N, L, BoundaryMode::zero_b(), {L, Blob::None, Blob::None},
                          GramConventions::semimeander());
    case ConjectureId::Line0B:
        return build_gram(N, L, BoundaryMode::zero_b(), {L, Blob::None, Blob::None},
                          GramConventions::line());
    case ConjectureId::OneBFullB:
    case ConjectureId::OneBFullU:
    case ConjectureId::OneBRestrictedB:
    case ConjectureId::OneBRestrictedU: {
        bool full =
            id == ConjectureId::OneBFullB || id == ConjectureId::OneBFullU;
        bool blob = id == ConjectureId::OneBFullB || id == ConjectureId::OneBRestrictedB;
        Blob sl = L == 0 ? Blob::U : (blob ? Blob::B : Blob::U);
        return build_gram(N, L, BoundaryMode::one_b(full), {L, sl, Blob::None},
                          GramConventions::line());
    }
    case ConjectureId::TwoBL0Nb:
        if (L != 0)
            throw std::invalid_argument("2B-L0 is an L = 0 object");
        return build_gram(N, 0, BoundaryMode::two_b(true, true, true), {0, Blob::U, Blob::U},
                          GramConventions::line());
    case ConjectureId::TwoBL0Forbidden: {
        if (L != 0)
            throw std::invalid_argument("2B-L0-forbidden is an L = 0 object");
        GramConventions conv = GramConventions::line();
        conv.nb_allowed = false;
        return build_gram(N, 0, BoundaryMode::two_b(true, true, false), {0, Blob::U, Blob::U},
                          conv);
    }
    case ConjectureId::TwoBStringsUU:
    case ConjectureId::TwoBStringsUB:
    case ConjectureId::TwoBStringsBU:
    case ConjectureId::TwoBStringsBB: {
        if (L < 2)
            throw std::invalid_argument("2B-strings identifiers need L >= 2");
        SectorPair s = sector_for_strings_id(id);
        return build_gram(N, L, BoundaryMode::two_b(true, true, false), {L, s.left, s.right},
                          GramConventions::line());
    }
    }
    throw std::logic_error("unreachable");
}

namespace {

Polynomial Un(int k) { return chebyshev_u(k, Var::n); }

Polynomial one_b_amp(bool blob, Var boundary_var, int k) {
    Polynomial bv = Polynomial::variable(boundary_var);
    if (blob)
        return bv * Un(k - 1) - Un(k - 2);
    return Un(k) - bv * Un(k - 1);
}

Int a_exponent(int N, int k) {
    Int a = 0;
    for (int m = 0; m + k <= N / 2; ++m)
        a += binom(N, m);
    return a;
}

long to_long(const Int& v) { return v.convert_to<long>(); }

Polynomial magic_sum(const SectorPair& s, int k) {
    Polynomial sum;
    for (int m = 1; m <= k; ++m)
        sum += closed_form_amplitude_n(BKind::TwoB, 2 * m - 1, s, false, UConv::PaperZero);
    return sum;
}

} // namespace

std::vector<FactorPower> conjectured_factors(ConjectureId id, int N, int L) {
    std::vector<FactorPower> fs;
    auto push = [&fs](Polynomial p, long e) {
        if (e != 0)
            fs.push_back({std::move(p), e});
    };
    switch (id) {
    case ConjectureId::MeanderL0: {
        for (int m = 1; m <= N / 2; ++m) {
            Int e = binom(N, N / 2 - m) - 2 * binom(N, N / 2 - m - 1) + binom(N, N / 2 - m - 2);
            push(Un(m), to_long(e));
        }
        break;
    }
    case ConjectureId::Semimeander: {
        auto c = [&](int h) { return binom(N, (N - h) / 2) - binom(N, (N - h) / 2 - 1); };
        for (int m = 1; m <= (N - L) / 2 + 1; ++m) {
            Int e = c(2 * m + L) - c(2 * m + 2 + L) + Int(L) * (c(2 * m + L - 2) - c(2 * m + L));
            push(Un(m), to_long(e));
        }
        break;
    }
    case ConjectureId::Line0B: {
        for (int m = 0; m <= (N - L) / 2 - 1; ++m) {
            Int e = binom(N, m) - binom(N, m - 1);
            push(Un((N + L) / 2 - m), to_long(e));
            push(Un((N - L) / 2 - 1 - m), -to_long(e));
        }
        break;
    }
    case ConjectureId::OneBFullB:
    case ConjectureId::OneBFullU: {
        bool blob = id == ConjectureId::OneBFullB;
        for (int m = 1 + L / 2; m <= N / 2; ++m) {
            long e = to_long(binom(N, N / 2 - m));
            push(one_b_amp(blob, Var::n_l, m + L / 2), e);
            push(one_b_amp(!blob, Var::n_l, m - L / 2), e);
        }
        break;
    }
    case ConjectureId::OneBRestrictedB: {
        for (int m = 1 + L / 2; m <= N / 2; ++m)
            push(one_b_amp(true, Var::n_l, m + L / 2), to_long(binom(N - 1, N / 2 - m)));
        for (int m = 2 + L / 2; m <= N / 2; ++m)
            push(one_b_amp(false, Var::n_l, m - 1 - L / 2), to_long(binom(N - 1, N / 2 - m)));
        break;
    }
    case ConjectureId::OneBRestrictedU: {
        for (int m = 1 + L / 2; m <= N / 2; ++m)
            push(one_b_amp(true, Var::n_l, m - L / 2), to_long(binom(N - 1, N / 2 - m)));
        for (int m = 2 + L / 2; m <= N / 2; ++m)
            push(one_b_amp(false, Var::n_l, m - 1 + L / 2), to_long(binom(N - 1, N / 2 - m)));
        break;
    }
    case ConjectureId::TwoBL0Nb: {
        const Polynomial nb = Polynomial::variable(Var::n_b);
        for (int k = 1; k <= N / 2; ++k) {
            long a = to_long(a_exponent(N, k));
            push(nb + magic_sum({Blob::U, Blob::U}, k), a);
            push(nb + magic_sum({Blob::B, Blob::B}, k), a);
            push(nb - magic_sum({Blob::U, Blob::B}, k), a);
            push(nb - magic_sum({Blob::B, Blob::U}, k), a);
        }
        break;
    }
    case ConjectureId::TwoBL0Forbidden:
    case ConjectureId::TwoBStringsUU:
    case ConjectureId::TwoBStringsUB:
    case ConjectureId::TwoBStringsBU:
    case ConjectureId::TwoBStringsBB: {
        SectorPair s = id == ConjectureId::TwoBL0Forbidden ? SectorPair{Blob::U, Blob::U}
                                                           : sector_for_strings_id(id);
        for (int m = 0; m <= (N - L) / 2 - 1; ++m) {
            long a = to_long(a_exponent(N, N / 2 - m));
            int hi = (N + L) / 2 - m, lo = (N - L) / 2 - m;
            push(closed_form_amplitude_n(BKind::TwoB, hi, s, false, UConv::PaperZero), a);
            push(one_b_amp(s.left == Blob::U, Var::n_l, lo), a);
            push(one_b_amp(s.right == Blob::U, Var::n_r, lo), a);
            push(Un(lo - 1), a);
        }
        break;
    }
    }
    return fs;
}

Polynomial conjectured_det(ConjectureId id, int N, int L) {
    Polynomial num(1), den(1);
    for (const FactorPower& f : conjectured_factors(id, N, L)) {
        if (f.exp > 0)
            num *= f.base.pow(unsigned(f.exp));
        else
            den *= f.base.pow(unsigned(-f.exp));
    }
    auto q = Polynomial::exact_div(num, den);
    if (!q)
        throw std::logic_error("conjectured determinant quotient is not polynomial");
    return *q;
}

std::string factors_str(const std::vector<FactorPower>& fs) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : fs) {
        if (!first)
            os << " * ";
        first = false;
        os << "(" << f.base.str() << ")";
        if (f.exp != 1)
            os << "^" << f.exp;
    }
    if (first)
        os << "1";
    return os.str();
}

ConjectureOutcome verify_conjecture(ConjectureId id, int N, int L) {
    auto t0 = std::chrono::steady_clock::now();
    ConjectureOutcome out;
    out.id = id;
    out.N = N;
    out.L = L;

    GramMatrix gm = gram_for_conjecture(id, N, L);
    out.dim = int(gm.basis.size());
    out.det = det_exact(gm.g);
    auto factors = conjectured_factors(id, N, L);
    out.conjecture = factors_str(factors);

    // Structural equality via factor peeling: multiply in the denominators,
    // then divide out every conjectured factor; the quotient must be 1.
    Polynomial rem = out.det;
    bool ok = true;
    for (const auto& f : factors)
        if (f.exp < 0)
            rem *= f.base.pow(unsigned(-f.exp));
    for (const auto& f : factors) {
        if (!ok)
            break;
        for (long e = 0; e < f.exp; ++e) {
            auto q = Polynomial::exact_div(rem, f.base);
            if (!q) {
                ok = false;
                out.detail = "factor does not divide: " + f.base.str();
                break;
            }
            rem = std::move(*q);
        }
    }
    if (ok && !rem.is_one()) {
        ok = false;
        out.detail = "residual quotient " + rem.str();
    }
    out.factorization_ok = ok;

    // Degree bookkeeping where the paper states the order.
    if (id == ConjectureId::OneBFullB || id == ConjectureId::OneBFullU) {
        Int want = Int((N - L) / 2) * binom(N, (N - L) / 2);
        out.degree_ok = Int(std::max(out.det.degree(), 0)) == want;
        if (!out.degree_ok)
            out.detail += " degree mismatch";
    }

    // Independent integer specializations of the Bareiss result.
    std::mt19937 rng(1234567u + unsigned(int(id)) * 101u + unsigned(N) * 13u + unsigned(L));
    std::uniform_int_distribution<int> dist(2, 97);
    out.specialization_ok = true;
    for (int trial = 0; trial < 3; ++trial) {
        std::map<Var, Int> asg;
        for (int v = 0; v < kNumVars; ++v)
            asg[Var(v)] = dist(rng);
        std::vector<std::vector<Int>> mi(gm.basis.size(), std::vector<Int>(gm.basis.size()));
        for (size_t i = 0; i < gm.basis.size(); ++i)
            for (size_t j = 0; j < gm.basis.size(); ++j)
                mi[i][j] = gm.g[i][j].eval_int(asg);
        if (det_int(std::move(mi)) != out.det.eval_int(asg)) {
            out.specialization_ok = false;
            out.detail += " integer specialization mismatch";
        }
    }

    out.pass = out.factorization_ok && out.degree_ok && out.specialization_ok;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

CheckReport verify_magic_sums(int k_max) {
    CheckReport rep;
    auto Us = [](int k) { return chebyshev_u(k, Var::n, UConv::Standard); };
    const Polynomial nl = Polynomial::variable(Var::n_l), nr = Polynomial::variable(Var::n_r);
    const Polynomial one(1);
    for (int k = 1; k <= k_max; ++k) {
        Polynomial s_uu = magic_sum({Blob::U, Blob::U}, k);
        Polynomial s_bb = magic_sum({Blob::B, Blob::B}, k);
        Polynomial s_ub = magic_sum({Blob::U, Blob::B}, k);
        Polynomial s_bu = magic_sum({Blob::B, Blob::U}, k);

        Polynomial rhs_uu =
            Us(k) * Us(k - 1) - (nl + nr) * (one + Us(k) * Us(k - 2)) + nl * nr * Us(k - 1) * Us(k - 2);
        Polynomial rhs_bb_printed =
            nl * nr * Us(k) * Us(k - 1) - (nl + nr) * (one + Us(k) * Us(k - 2)) + Us(k - 1) * Us(k - 2);
        Polynomial rhs_ub = nr * (one + Us(k) * Us(k - 2)) -
                            (one + nl * nr) * Us(k - 1) * Us(k - 2) +
                            nl * (one + Us(k - 1) * Us(k - 3));
        Polynomial rhs_bu = nl * (one + Us(k) * Us(k - 2)) -
                            (one + nl * nr) * Us(k - 1) * Us(k - 2) +
                            nr * (one + Us(k - 1) * Us(k - 3));
        // The bb row as printed matches the sum taken one term further; the
        // index-shifted form below is what the partial sum itself equals.
        Polynomial rhs_bb_shifted = nl * nr * Us(k - 1) * Us(k - 2) -
                                    (nl + nr) * (one + Us(k - 1) * Us(k - 3)) +
                                    Us(k - 2) * Us(k - 3);

        auto tostr = [](const Polynomial& a, const Polynomial& b) {
            return "lhs = " + a.str() + "  vs  rhs = " + b.str();
        };
        rep.add("listmagic uu row as printed, k=" + std::to_string(k), s_uu == rhs_uu,
                tostr(s_uu, rhs_uu));
        rep.add("listmagic ub row as printed, k=" + std::to_string(k), s_ub == rhs_ub,
                tostr(s_ub, rhs_ub));
        rep.add("listmagic bu row as printed, k=" + std::to_string(k), s_bu == rhs_bu,
                tostr(s_bu, rhs_bu));
        rep.add("listmagic bb row as printed, k=" + std::to_string(k), s_bb == rhs_bb_printed,
                tostr(s_bb, rhs_bb_printed));
        rep.add("listmagic bb row with indices shifted down by one, k=" + std::to_string(k),
                s_bb == rhs_bb_shifted, tostr(s_bb, rhs_bb_shifted));
        rep.add("listmagic bb row as printed equals the sum to k+1, k=" + std::to_string(k),
                magic_sum({Blob::B, Blob::B}, k + 1) == rhs_bb_printed);
    }
    return rep;
}

CheckReport nb_det_sinh_form_check(int k_max, int points, long double rel_tol, unsigned seed) {
    CheckReport rep;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> da(0.15, 0.8), db(0.2, 1.2);
    bool ok = true, printed_ok = true;
    std::string detail;
    for (int p = 0; p < points; ++p) {
        long double alpha = da(rng), bl = db(rng), br = db(rng), bb = db(rng);
        long double sl = sinhl(bl), sr = sinhl(br);
        std::array<long double, kNumVars> x{};
        x[size_t(Var::n)] = 2.0L * coshl(alpha);
        x[size_t(Var::n_l)] = sinhl(alpha + bl) / sl;
        x[size_t(Var::n_r)] = sinhl(alpha + br) / sr;
        x[size_t(Var::n_b)] =
            sinhl((bl + br + alpha + bb) / 2.0L) * sinhl((bl + br + alpha - bb) / 2.0L) / (sl * sr);
        const Polynomial nb = Polynomial::variable(Var::n_b);
        for (int k = 1; k <= k_max; ++k) {
            long double lhs = (nb + magic_sum({Blob::U, Blob::U}, k)).eval_ld(x) *
                              (nb + magic_sum({Blob::B, Blob::B}, k)).eval_ld(x) *
                              (nb - magic_sum({Blob::U, Blob::B}, k)).eval_ld(x) *
                              (nb - magic_sum({Blob::B, Blob::U}, k)).eval_ld(x);
            long double prod = 1.0L;
            for (int el = -1; el <= 1; el += 2)
                for (int er = -1; er <= 1; er += 2)
                    for (int eb = -1; eb <= 1; eb += 2)
                        prod *= sinhl(((2 * k - 1) * alpha + el * bl + er * br + eb * bb) / 2.0L);
            // Each determinant bracket is a pair of half-angle sinh factors
            // over sinh(beta_l) sinh(beta_r); the per-factor sinh(alpha) of
            // the printed display does not balance (see the n_b
            // parametrization itself, which carries no sinh(alpha)).
            long double denom = sl * sr;
            long double rhs = prod / (denom * denom * denom * denom);
            long double rhs_printed = prod * powl(sinhl(alpha), 8) / powl(denom, 8);
            long double scale = std::max({fabsl(lhs), fabsl(rhs), (long double)1e-30});
            if (fabsl(lhs - rhs) > rel_tol * scale) {
                ok = false;
                if (detail.empty())
                    detail = "k=" + std::to_string(k);
            }
            long double scale_p = std::max({fabsl(lhs), fabsl(rhs_printed), (long double)1e-30});
            if (fabsl(lhs - rhs_printed) > rel_tol * scale_p)
                printed_ok = false;
        }
    }
    rep.add("sinh-product form of the 2B L=0 determinant factors "
            "(per-bracket normalization 1/(sinh b_l sinh b_r))",
            ok, detail);
    rep.add("printed per-factor sinh(alpha)/(sinh b_l sinh b_r) normalization "
            "(expected to fail; recorded for reference)",
            !printed_ok, "the corrected normalization above is the consistent one");
    return rep;
}

} // namespace tlb
