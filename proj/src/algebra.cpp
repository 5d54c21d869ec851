#include "tlb/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tlb {

std::string Generator::str() const {
    std::ostringstream os;
    switch (kind) {
    case GenKind::Identity:
        os << "1";
        break;
    case GenKind::E:
        os << "e" << (i + 1);
        break;
    case GenKind::BlobL:
        os << "b_l";
        break;
    case GenKind::BlobR:
        os << "b_r";
        break;
    }
    return os.str();
}

namespace {

Polynomial loop_weight(bool l, bool r, const BoundaryMode& mode) {
    if (l && r)
        return mode.nb_nonzero ? Polynomial::variable(Var::n_b) : Polynomial();
    if (l)
        return Polynomial::variable(Var::n_l);
    if (r)
        return Polynomial::variable(Var::n_r);
    return Polynomial::variable(Var::n);
}

void clear_link_flags(ReducedState& s, int site) {
    int c = s.canonical_site(site);
    s.flag_l &= ~(1u << c);
    s.flag_r &= ~(1u << c);
}

void set_link_flags(ReducedState& s, int site, bool l, bool r) {
    int c = s.canonical_site(site);
    if (l)
        s.flag_l |= 1u << c;
    if (r)
        s.flag_r |= 1u << c;
}

WeightedState annihilate(const ReducedState& s) { return {s, Polynomial()}; }

WeightedState apply_e(int i, const ReducedState& s, const BoundaryMode& mode) {
    if (i < 0 || i + 1 >= s.n)
        throw std::invalid_argument("apply_generator: e index out of range");
    ReducedState r = s;
    if (s.partner[size_t(i)] == int8_t(i + 1)) {
        // The cap closes the arc (i, i+1) into a loop; the cup recreates a
        // plain arc in its place.
        Polynomial w = loop_weight(s.has_l(i), s.has_r(i), mode);
        if (w.is_zero())
            return annihilate(s);
        clear_link_flags(r, i);
        return {r, w};
    }
    bool string1 = s.is_string(i), string2 = s.is_string(i + 1);
    bool l = s.has_l(i) || s.has_l(i + 1);
    bool rr = s.has_r(i) || s.has_r(i + 1);
    int a = s.partner[size_t(i)], b = s.partner[size_t(i + 1)];
    clear_link_flags(r, i);
    clear_link_flags(r, i + 1);
    r.partner[size_t(i)] = int8_t(i + 1);
    r.partner[size_t(i + 1)] = int8_t(i);
    if (string1 && string2) {
        // Two strings are contracted away; their decorations leave with them.
        return {r, Polynomial(1)};
    }
    if (l && rr && !mode.nb_nonzero)
        return annihilate(s);
    if (!string1 && !string2) {
        r.partner[size_t(a)] = int8_t(b);
        r.partner[size_t(b)] = int8_t(a);
        set_link_flags(r, a, l, rr);
    } else {
        // One string and one arc: the string surfaces at the arc's far end
        // and absorbs the blobs.
        int far = string1 ? b : a;
        r.partner[size_t(far)] = -1;
        set_link_flags(r, far, l, rr);
    }
    return {r, Polynomial(1)};
}

WeightedState apply_blob(bool left, const ReducedState& s, const BoundaryMode& mode) {
    if (left && !mode.has_left())
        throw std::invalid_argument("b_l is not defined in this mode");
    if (!left && !mode.has_right())
        throw std::invalid_argument("b_r is not defined in this mode");
    int site = left ? 0 : s.n - 1;
    ReducedState r = s;
    bool l = s.has_l(site) || left;
    bool rr = s.has_r(site) || !left;
    if (l && rr) {
        if (!mode.nb_nonzero || s.is_string(site))
            return annihilate(s);
    }
    set_link_flags(r, site, l, rr);
    return {r, Polynomial(1)};
}

} // namespace

WeightedState apply_generator(const Generator& g, const ReducedState& s,
                              const BoundaryMode& mode) {
    switch (g.kind) {
    case GenKind::Identity:
        return {s, Polynomial(1)};
    case GenKind::E:
        return apply_e(g.i, s, mode);
    case GenKind::BlobL:
        return apply_blob(true, s, mode);
    case GenKind::BlobR:
        return apply_blob(false, s, mode);
    }
    throw std::logic_error("unreachable");
}

WeightedState apply_word(const std::vector<Generator>& word, const ReducedState& s,
                         const BoundaryMode& mode) {
    WeightedState cur{s, Polynomial(1)};
    for (const Generator& g : word) {
        if (cur.annihilated())
            return cur;
        WeightedState next = apply_generator(g, cur.state, mode);
        next.weight *= cur.weight;
        cur = std::move(next);
    }
    return cur;
}

namespace {

enum class Side : uint8_t { Bottom, Top };

struct Gluing {
    const ReducedState& bot;
    const ReducedState& top;
    std::array<bool, kMaxSites> used_b{}, used_t{};

    const ReducedState& state(Side s) const { return s == Side::Bottom ? bot : top; }
    bool& used(Side s, int i) { return s == Side::Bottom ? used_b[size_t(i)] : used_t[size_t(i)]; }
};

struct PathInfo {
    Side start_side;
    int start_site;
    Side end_side;
    int end_site;
    bool arc_l = false, arc_r = false;
};

} // namespace

Polynomial inner_product(const ReducedState& top, const ReducedState& bottom,
                         const BoundaryMode& mode, const GramConventions& conv) {
    if (top.n != bottom.n)
        throw std::invalid_argument("inner_product: width mismatch");
    if (conv.semimeander_strings && mode.kind != BKind::ZeroB)
        throw std::invalid_argument("the semimeander convention is defined for the 0b mode only");
    const int n = top.n;
    if (bottom.string_count() != top.string_count())
        return Polynomial();
    if (mode.kind != BKind::ZeroB && !(sector_of(top, mode) == sector_of(bottom, mode)))
        return Polynomial();
    if (conv.positions_matched && bottom.strings() != top.strings())
        return Polynomial();

    Gluing g{bottom, top, {}, {}};
    Polynomial result(1);

    // Walk the paths seeded by bottom strings, then by top strings (the
    // latter catches top-to-top paths), then the remaining closed loops.
    std::vector<PathInfo> paths;
    auto walk_path = [&](Side start_side, int start) {
        PathInfo info{start_side, start, start_side, start, false, false};
        Side side = start_side == Side::Bottom ? Side::Top : Side::Bottom;
        int cur = start;
        g.used(start_side, start) = true;
        while (true) {
            const ReducedState& st = g.state(side);
            g.used(side, cur) = true;
            if (st.is_string(cur)) {
                info.end_site = cur;
                info.end_side = side;
                break;
            }
            info.arc_l = info.arc_l || st.has_l(cur);
            info.arc_r = info.arc_r || st.has_r(cur);
            cur = st.partner[size_t(cur)];
            g.used(side, cur) = true;
            side = side == Side::Bottom ? Side::Top : Side::Bottom;
        }
        paths.push_back(info);
    };
    for (int i = 0; i < n; ++i)
        if (bottom.is_string(i) && !g.used(Side::Bottom, i))
            walk_path(Side::Bottom, i);
    for (int i = 0; i < n; ++i)
        if (top.is_string(i) && !g.used(Side::Top, i))
            walk_path(Side::Top, i);

    // String components.
    if (conv.semimeander_strings) {
        // Close the k-th top string onto the k-th bottom string and count the
        // loops formed; every loop weighs n.
        auto bs = bottom.strings(), ts = top.strings();
        auto stub = [&](Side s, int i) { return s == Side::Bottom ? i : n + i; };
        std::vector<int> mate(2 * size_t(n), -1), closure(2 * size_t(n), -1);
        for (const auto& p : paths) {
            mate[size_t(stub(p.start_side, p.start_site))] = stub(p.end_side, p.end_site);
            mate[size_t(stub(p.end_side, p.end_site))] = stub(p.start_side, p.start_site);
        }
        for (size_t k = 0; k < bs.size(); ++k) {
            closure[size_t(stub(Side::Bottom, bs[k]))] = stub(Side::Top, ts[k]);
            closure[size_t(stub(Side::Top, ts[k]))] = stub(Side::Bottom, bs[k]);
        }
        std::vector<bool> seen(2 * size_t(n), false);
        for (size_t v = 0; v < seen.size(); ++v) {
            if (mate[v] < 0 || seen[v])
                continue;
            int cur = int(v);
            while (!seen[size_t(cur)]) {
                seen[size_t(cur)] = true;
                int w = mate[size_t(cur)];
                seen[size_t(w)] = true;
                cur = closure[size_t(w)];
            }
            result *= Polynomial::variable(Var::n);
        }
    } else if (conv.line_conservation) {
        for (const auto& p : paths) {
            if (p.start_side == p.end_side)
                return Polynomial(); // a line was not conserved
            // Sector structure: an unblobbed string may not connect onto a
            // blobbed arc; a blobbed string only onto arcs of its own side.
            const ReducedState& bst = p.start_side == Side::Bottom ? bottom : top;
            bool sl = bst.has_l(p.start_site), sr = bst.has_r(p.start_site);
            if ((p.arc_l && !sl) || (p.arc_r && !sr))
                return Polynomial();
        }
    } else {
        // Free strings without a closure rule: string components carry
        // weight one whatever their endpoints.
    }

    // Closed loops.
    for (int i = 0; i < n; ++i) {
        if (g.used_b[size_t(i)])
            continue;
        bool l = false, r = false;
        Side side = Side::Bottom;
        int cur = i;
        while (!g.used(side, cur)) {
            const ReducedState& st = g.state(side);
            g.used(side, cur) = true;
            l = l || st.has_l(cur);
            r = r || st.has_r(cur);
            int nxt = st.partner[size_t(cur)];
            g.used(side, nxt) = true;
            cur = nxt;
            side = side == Side::Bottom ? Side::Top : Side::Bottom;
        }
        if (mode.kind == BKind::ZeroB) {
            result *= Polynomial::variable(Var::n);
        } else {
            if (l && r && !conv.nb_allowed)
                return Polynomial();
            BoundaryMode wmode = mode;
            wmode.nb_nonzero = conv.nb_allowed;
            Polynomial w = loop_weight(l, r, wmode);
            if (w.is_zero())
                return Polynomial();
            result *= w;
        }
    }
    return result;
}

namespace {

bool states_equal_weighted(const WeightedState& a, const WeightedState& b) {
    if (a.annihilated() || b.annihilated())
        return a.annihilated() && b.annihilated();
    return a.state == b.state && a.weight == b.weight;
}

} // namespace

RelationReport verify_relations(int N, const BoundaryMode& mode) {
    RelationReport rep;
    std::vector<ReducedState> basis = enumerate_all(N, mode);

    auto check = [&](const std::string& name, const std::vector<Generator>& lhs,
                     const Polynomial& scalar, const std::vector<Generator>& rhs) {
        RelationReport::Entry e{name, true, ""};
        for (const ReducedState& s : basis) {
            WeightedState a = apply_word(lhs, s, mode);
            WeightedState b = apply_word(rhs, s, mode);
            b.weight *= scalar;
            if (!states_equal_weighted(a, b)) {
                e.pass = false;
                e.detail = "on state " + s.str();
                break;
            }
        }
        rep.entries.push_back(std::move(e));
    };

    const Polynomial one(1);
    auto E = [](int i) { return Generator::e(i); };

    for (int i = 0; i + 1 < N; ++i)
        check("e" + std::to_string(i + 1) + "^2 = n e" + std::to_string(i + 1), {E(i), E(i)},
              Polynomial::variable(Var::n), {E(i)});
    for (int i = 0; i + 1 < N; ++i)
        for (int d : {-1, 1}) {
            int j = i + d;
            if (j < 0 || j + 1 >= N)
                continue;
            check("e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) + " e" +
                      std::to_string(i + 1) + " = e" + std::to_string(i + 1),
                  {E(i), E(j), E(i)}, one, {E(i)});
        }
    for (int i = 0; i + 1 < N; ++i)
        for (int j = i + 2; j + 1 < N; ++j)
            check("[e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + "] = 0",
                  {E(i), E(j)}, one, {E(j), E(i)});

    if (mode.has_left()) {
        check("b_l^2 = b_l", {Generator::bl(), Generator::bl()}, one, {Generator::bl()});
        check("e1 b_l e1 = n_l e1", {E(0), Generator::bl(), E(0)},
              Polynomial::variable(Var::n_l), {E(0)});
        for (int i = 1; i + 1 < N; ++i)
            check("[b_l, e" + std::to_string(i + 1) + "] = 0", {Generator::bl(), E(i)}, one,
                  {E(i), Generator::bl()});
    }
    if (mode.has_right()) {
        check("b_r^2 = b_r", {Generator::br(), Generator::br()}, one, {Generator::br()});
        check("e(N-1) b_r e(N-1) = n_r e(N-1)", {E(N - 2), Generator::br(), E(N - 2)},
              Polynomial::variable(Var::n_r), {E(N - 2)});
        for (int i = 0; i + 2 < N - 1; ++i)
            check("[b_r, e" + std::to_string(i + 1) + "] = 0", {Generator::br(), E(i)}, one,
                  {E(i), Generator::br()});
        check("[b_l, b_r] = 0", {Generator::bl(), Generator::br()}, one,
              {Generator::br(), Generator::bl()});
        // Quotient: the minimal left-right loop can be removed at the cost of
        // a factor n_b (zero when doubly blobbed loops are forbidden).
        std::vector<Generator> odds, evens;
        for (int i = 0; i + 1 < N; i += 2)
            odds.push_back(E(i));
        for (int i = 1; i + 1 < N; i += 2)
            evens.push_back(E(i));
        std::vector<Generator> lhs = odds;
        lhs.push_back(Generator::bl());
        lhs.insert(lhs.end(), evens.begin(), evens.end());
        lhs.push_back(Generator::br());
        lhs.insert(lhs.end(), odds.begin(), odds.end());
        Polynomial nb =
            mode.nb_nonzero ? Polynomial::variable(Var::n_b) : Polynomial();
        check("quotient: (prod e_odd) b_r (prod e_even) b_l (prod e_odd) = n_b (prod e_odd)",
              lhs, nb, odds);
    }
    return rep;
}

} // namespace tlb
