#include "tlb/states.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tlb/genfunc.hpp"

namespace tlb {

std::string BoundaryMode::str() const {
    std::ostringstream os;
    switch (kind) {
    case BKind::ZeroB:
        os << "0b";
        break;
    case BKind::OneB:
        os << "1b(lambda_l=" << (lambda_l ? 1 : 0) << ")";
        break;
    case BKind::TwoB:
        os << "2b(lambda_l=" << (lambda_l ? 1 : 0) << ",lambda_r=" << (lambda_r ? 1 : 0)
           << ",n_b=" << (nb_nonzero ? "sym" : "0") << ")";
        break;
    }
    return os.str();
}

std::string SectorLabel::str() const {
    std::ostringstream os;
    os << "L=" << L;
    auto c = [](Blob b) { return b == Blob::B ? 'b' : 'u'; };
    if (left != Blob::None) {
        os << ' ' << c(left);
        if (right != Blob::None)
            os << c(right);
    }
    return os.str();
}

std::vector<int> ReducedState::strings() const {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
        if (is_string(i))
            s.push_back(i);
    return s;
}

std::vector<std::pair<int, int>> ReducedState::arcs() const {
    std::vector<std::pair<int, int>> a;
    for (int i = 0; i < n; ++i)
        if (partner[size_t(i)] > i)
            a.push_back({i, partner[size_t(i)]});
    return a;
}

int ReducedState::leftmost_string() const {
    for (int i = 0; i < n; ++i)
        if (is_string(i))
            return i;
    return -1;
}

int ReducedState::rightmost_string() const {
    for (int i = n - 1; i >= 0; --i)
        if (is_string(i))
            return i;
    return -1;
}

bool ReducedState::left_exposed(int site) const {
    int a = canonical_site(site);
    for (int i = 0; i < a; ++i)
        if (partner[size_t(i)] < 0 || partner[size_t(i)] >= a)
            return false;
    return true;
}

bool ReducedState::right_exposed(int site) const {
    int p = partner[size_t(site)];
    int b = p < 0 ? site : std::max(site, p);
    for (int i = b + 1; i < n; ++i)
        if (partner[size_t(i)] <= b) // string (-1) or arc leaving the suffix
            return false;
    return true;
}

namespace {

// Mode-independent sector rank read off the decorations.
int decoration_rank(const ReducedState& s) {
    int ls = s.leftmost_string();
    if (ls < 0)
        return 0;
    int r = 0;
    if (s.has_l(ls))
        r += 2;
    if (s.has_r(s.rightmost_string()))
        r += 1;
    return r;
}

} // namespace

bool ReducedState::operator<(const ReducedState& o) const {
    int la = string_count(), lb = o.string_count();
    if (la != lb)
        return la > lb; // descending string count
    int ra = decoration_rank(*this), rb = decoration_rank(o);
    if (ra != rb)
        return ra < rb;
    auto aa = arcs(), ab = o.arcs();
    if (aa != ab)
        return aa < ab;
    for (int i = 0; i < n; ++i) {
        int ca = (int(flag_l >> i) & 1) + 2 * (int(flag_r >> i) & 1);
        int cb = (int(o.flag_l >> i) & 1) + 2 * (int(o.flag_r >> i) & 1);
        if (ca != cb)
            return ca < cb;
    }
    return false;
}

size_t ReducedState::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(n);
    for (int i = 0; i < n; ++i)
        mix(uint64_t(int64_t(partner[size_t(i)])) + 2);
    mix(flag_l);
    mix(flag_r);
    return size_t(h);
}

std::string ReducedState::str() const {
    std::ostringstream os;
    for (int i = 0; i < n; ++i) {
        int p = partner[size_t(i)];
        if (p < 0)
            os << '|';
        else if (p > i)
            os << '(';
        else {
            os << ')';
            continue;
        }
        bool l = has_l(i), r = has_r(i);
        if (l && r)
            os << 'b';
        else if (l)
            os << 'l';
        else if (r)
            os << 'r';
    }
    return os.str();
}

SectorLabel sector_of(const ReducedState& s, const BoundaryMode& mode) {
    SectorLabel lab;
    lab.L = s.string_count();
    if (mode.has_left())
        lab.left = Blob::U;
    if (mode.has_right())
        lab.right = Blob::U;
    if (lab.L > 0) {
        if (mode.has_left() && s.has_l(s.leftmost_string()))
            lab.left = Blob::B;
        if (mode.has_right() && s.has_r(s.rightmost_string()))
            lab.right = Blob::B;
    }
    return lab;
}

void check_valid(const ReducedState& s, const BoundaryMode& mode) {
    auto fail = [&](const std::string& why) {
        throw std::logic_error("invalid state " + s.str() + ": " + why);
    };
    if (s.n > kMaxSites)
        fail("too many sites");
    for (int i = 0; i < s.n; ++i) {
        int p = s.partner[size_t(i)];
        if (p >= 0 && (p >= s.n || p == i || s.partner[size_t(p)] != i))
            fail("partner map is not an involution");
    }
    // Noncrossing and strings at arc depth zero.
    std::vector<int> stack;
    for (int i = 0; i < s.n; ++i) {
        int p = s.partner[size_t(i)];
        if (p < 0) {
            if (!stack.empty())
                fail("string nested inside an arc");
        } else if (p > i) {
            stack.push_back(i);
        } else {
            if (stack.empty() || stack.back() != p)
                fail("crossing arcs");
            stack.pop_back();
        }
    }
    if (!stack.empty())
        fail("unclosed arc");
    // Flags stored on canonical sites only, with exposure admissibility.
    int doubly = 0;
    int max_l = -1, min_r = s.n;
    for (int i = 0; i < s.n; ++i) {
        bool fl = (s.flag_l >> i) & 1, fr = (s.flag_r >> i) & 1;
        if (!fl && !fr)
            continue;
        if (s.canonical_site(i) != i)
            fail("flag on non-canonical site");
        if (fl && !mode.has_left())
            fail("left blob without left boundary");
        if (fr && !mode.has_right())
            fail("right blob without right boundary");
        if (s.is_string(i)) {
            if (fl && i != s.leftmost_string())
                fail("left blob on a non-leftmost string");
            if (fr && i != s.rightmost_string())
                fail("right blob on a non-rightmost string");
            if (fl && fr)
                fail("doubly blobbed string");
        } else {
            if (fl && !s.left_exposed(i))
                fail("left blob on unexposed arc");
            if (fr && !s.right_exposed(i))
                fail("right blob on unexposed arc");
        }
        if (fl && fr) {
            ++doubly;
            if (s.string_count() != 0)
                fail("doubly blobbed arc with strings present");
            if (!mode.nb_nonzero)
                fail("doubly blobbed arc with n_b = 0");
        }
        if (fl)
            max_l = std::max(max_l, i);
        if (fr)
            min_r = std::min(min_r, i);
    }
    if (doubly > 1)
        fail("more than one doubly blobbed arc");
    if (max_l >= 0 && min_r < s.n && max_l > min_r)
        fail("left blob strictly right of a right blob");
    if (mode.has_left() && !mode.lambda_l && !s.has_l(0))
        fail("lambda_l = 0 requires the link at the first site to be blobbed");
    if (mode.has_right() && !mode.lambda_r && !s.has_r(s.n - 1))
        fail("lambda_r = 0 requires the link at the last site to be blobbed");
}

std::vector<SectorLabel> sectors_for(int n, const BoundaryMode& mode) {
    std::vector<SectorLabel> out;
    Blob l0 = mode.has_left() ? Blob::U : Blob::None;
    Blob r0 = mode.has_right() ? Blob::U : Blob::None;
    for (int L = n; L >= 0; L -= 2) {
        if (L == 0) {
            out.push_back({0, l0, r0});
        } else if (mode.kind == BKind::ZeroB) {
            out.push_back({L, Blob::None, Blob::None});
        } else if (mode.kind == BKind::OneB) {
            out.push_back({L, Blob::U, Blob::None});
            out.push_back({L, Blob::B, Blob::None});
        } else {
            out.push_back({L, Blob::U, Blob::U});
            out.push_back({L, Blob::U, Blob::B});
            out.push_back({L, Blob::B, Blob::U});
            out.push_back({L, Blob::B, Blob::B});
        }
    }
    if (n % 2 == 1 && mode.kind != BKind::ZeroB)
        out.clear();
    return out;
}

namespace {

void check_args(int n, const BoundaryMode& mode, const SectorLabel& sector) {
    if (n < 1 || n > kMaxSites)
        throw std::invalid_argument("site count out of range");
    if (n % 2 == 1 && mode.kind != BKind::ZeroB)
        throw std::invalid_argument("odd N is supported in the zero-boundary mode only");
    if (sector.L < 0 || sector.L > n || (sector.L % 2) != (n % 2))
        throw std::invalid_argument("string count must have the parity of N and lie in [0, N]");
    bool want_l = mode.has_left() && sector.L > 0;
    bool want_r = mode.has_right() && sector.L > 0;
    if ((sector.left != Blob::None) != (mode.has_left()))
        throw std::invalid_argument("left sector label must be present exactly for 1b/2b modes");
    if ((sector.right != Blob::None) != (mode.has_right()))
        throw std::invalid_argument("right sector label must be present exactly for 2b mode");
    if (!want_l && sector.left == Blob::B)
        throw std::invalid_argument("the L = 0 sector is unblobbed by convention");
    if (!want_r && sector.right == Blob::B)
        throw std::invalid_argument("the L = 0 sector is unblobbed by convention");
}

// All undecorated patterns with exactly L strings, sites processed left to
// right with a stack of open arcs; strings only at depth zero.
void gen_patterns(int n, int L, int site, std::vector<int>& stack, int strings,
                  ReducedState& cur, std::vector<ReducedState>& out) {
    if (site == n) {
        if (stack.empty() && strings == L)
            out.push_back(cur);
        return;
    }
    int remaining = n - site;
    // Prune: open arcs must close, remaining strings must fit.
    if (int(stack.size()) > remaining)
        return;
    if (strings > L || strings + remaining < L)
        return;
    // Open an arc.
    stack.push_back(site);
    gen_patterns(n, L, site + 1, stack, strings, cur, out);
    stack.pop_back();
    // Close the innermost open arc.
    if (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        cur.partner[size_t(a)] = int8_t(site);
        cur.partner[size_t(site)] = int8_t(a);
        gen_patterns(n, L, site + 1, stack, strings, cur, out);
        cur.partner[size_t(a)] = -1;
        cur.partner[size_t(site)] = -1;
        stack.push_back(a);
    }
    // A string, only outside all arcs.
    if (stack.empty() && strings < L)
        gen_patterns(n, L, site + 1, stack, strings + 1, cur, out);
}

} // namespace

std::vector<ReducedState> enumerate_reduced(int n, const BoundaryMode& mode,
                                            const SectorLabel& sector) {
    check_args(n, mode, sector);
    std::vector<ReducedState> patterns;
    {
        ReducedState blank;
        blank.n = uint8_t(n);
        blank.partner.fill(-1);
        std::vector<int> stack;
        gen_patterns(n, sector.L, 0, stack, 0, blank, patterns);
    }

    std::vector<ReducedState> out;
    for (const ReducedState& pat : patterns) {
        ReducedState base = pat;
        // String decorations are fixed by the sector label.
        if (sector.L > 0) {
            if (mode.has_left() && sector.left == Blob::B)
                base.flag_l |= 1u << base.leftmost_string();
            if (mode.has_right() && sector.right == Blob::B)
                base.flag_r |= 1u << base.rightmost_string();
        }
        // Decorable arcs with their option masks (bit0 = left, bit1 = right).
        std::vector<int> arc_site;
        std::vector<std::vector<int>> options;
        for (auto [a, b] : pat.arcs()) {
            (void)b;
            std::vector<int> opt{0};
            bool le = mode.has_left() && pat.left_exposed(a);
            bool re = mode.has_right() && pat.right_exposed(a);
            if (le)
                opt.push_back(1);
            if (re)
                opt.push_back(2);
            if (le && re && sector.L == 0 && mode.nb_nonzero)
                opt.push_back(3);
            if (opt.size() > 1) {
                arc_site.push_back(a);
                options.push_back(opt);
            }
        }
        // Odometer over the decoration choices.
        std::vector<size_t> idx(arc_site.size(), 0);
        while (true) {
            ReducedState s = base;
            for (size_t t = 0; t < arc_site.size(); ++t) {
                int o = options[t][idx[t]];
                if (o & 1)
                    s.flag_l |= 1u << arc_site[t];
                if (o & 2)
                    s.flag_r |= 1u << arc_site[t];
            }
            // Global admissibility: blob ordering, lambda constraints.
            int max_l = -1, min_r = n, doubly = 0;
            for (int i = 0; i < n; ++i) {
                bool fl = (s.flag_l >> i) & 1, fr = (s.flag_r >> i) & 1;
                if (fl)
                    max_l = std::max(max_l, i);
                if (fr)
                    min_r = std::min(min_r, i);
                if (fl && fr)
                    ++doubly;
            }
            bool ok = (max_l < 0 || min_r >= n || max_l < min_r ||
                       (max_l == min_r && !s.is_string(max_l)));
            if (doubly > 1)
                ok = false;
            if (ok && mode.has_left() && !mode.lambda_l && !s.has_l(0))
                ok = false;
            if (ok && mode.has_right() && !mode.lambda_r && !s.has_r(n - 1))
                ok = false;
            if (ok && sector_of(s, mode) == sector)
                out.push_back(s);
            // Advance the odometer.
            size_t t = 0;
            for (; t < idx.size(); ++t) {
                if (++idx[t] < options[t].size())
                    break;
                idx[t] = 0;
            }
            if (t == idx.size())
                break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ReducedState> enumerate_all(int n, const BoundaryMode& mode) {
    std::vector<ReducedState> out;
    for (const SectorLabel& sec : sectors_for(n, mode)) {
        auto part = enumerate_reduced(n, mode, sec);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Int closed_form_dimension(int n, const BoundaryMode& mode, const SectorLabel& sector) {
    check_args(n, mode, sector);
    int L = sector.L;
    switch (mode.kind) {
    case BKind::ZeroB:
        return binom(n, (n + L) / 2) - binom(n, (n + L) / 2 + 1);
    case BKind::OneB:
        if (mode.lambda_l)
            return binom(n, (n - L) / 2);
        if (L == 0 || sector.left == Blob::U)
            return binom(n - 1, (n - L) / 2 - 1);
        return binom(n - 1, (n - L) / 2);
    case BKind::TwoB: {
        EFamily fam = e_family_for(mode, sector);
        return e_coefficient(fam, n / 2, L / 2, mode.nb_nonzero);
    }
    }
    throw std::logic_error("unreachable");
}

Int closed_form_total(int n, const BoundaryMode& mode) {
    switch (mode.kind) {
    case BKind::ZeroB:
        return binom(n, (n + n % 2) / 2);
    case BKind::OneB:
        return mode.lambda_l ? int_pow(2, unsigned(n)) : int_pow(2, unsigned(n - 1));
    case BKind::TwoB: {
        if (!mode.lambda_l && !mode.lambda_r && !mode.nb_nonzero) {
            // Restricted-algebra count, closed form of section 4.4.
            int n2 = n / 2;
            Int total = 0;
            for (int k = 0; k <= n2 - 1; ++k) {
                Int t = Int(2 * k + 1) * binom(2 * n2 - 2, n2 - k - 1) * binom(2 * (k + 1), 2);
                Int d = t / (n2 + k);
                if (d * (n2 + k) != t)
                    throw std::logic_error("restricted total formula not integral");
                total += d;
            }
            return total;
        }
        Int total = 0;
        for (const SectorLabel& sec : sectors_for(n, mode))
            total += closed_form_dimension(n, mode, sec);
        return total;
    }
    }
    throw std::logic_error("unreachable");
}

Int dilute_dimension(int n, int L) {
    if (L < 0 || L > n)
        throw std::invalid_argument("dilute_dimension: need 0 <= L <= N");
    Series ft = series_f_dilute(n);
    return ft.pow(unsigned(L + 1)).coeff(n - L);
}

FullState pair_states(const ReducedState& bottom, const ReducedState& top) {
    if (bottom.n != top.n)
        throw std::invalid_argument("pair_states: width mismatch");
    if (bottom.string_count() != top.string_count())
        throw std::invalid_argument("pair_states: string-count mismatch");
    return FullState{bottom, top};
}

} // namespace tlb
