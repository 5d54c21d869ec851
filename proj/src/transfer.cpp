#include "tlb/transfer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace tlb {

std::vector<Factor> row_factors(int N, const BoundaryMode& mode) {
    std::vector<Factor> fs;
    for (int i = 0; i + 1 < N; i += 2)
        fs.push_back({Generator::e(i), true});
    if (mode.has_right())
        fs.push_back({Generator::br(), mode.lambda_r});
    for (int i = 1; i + 1 < N; i += 2)
        fs.push_back({Generator::e(i), true});
    if (mode.has_left())
        fs.push_back({Generator::bl(), mode.lambda_l});
    return fs;
}

int TransferMatrix::index_of(const ReducedState& s) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), s);
    if (it == basis.end() || !(*it == s))
        return -1;
    return int(it - basis.begin());
}

TransferMatrix build_transfer(int N, const BoundaryMode& mode) {
    TransferMatrix T;
    T.N = N;
    T.mode = mode;
    T.basis = enumerate_all(N, mode);
    const auto factors = row_factors(N, mode);
    T.cols.resize(T.basis.size());
    // Intermediate images may leave the restricted basis within a row (the
    // trailing boundary factor restores them), so the sweep is keyed by
    // states, not basis indices.
    struct StateHash {
        size_t operator()(const ReducedState& s) const { return s.hash(); }
    };
    for (size_t j = 0; j < T.basis.size(); ++j) {
        std::unordered_map<ReducedState, Polynomial, StateHash> img;
        img.emplace(T.basis[j], Polynomial(1));
        for (const Factor& f : factors) {
            std::unordered_map<ReducedState, Polynomial, StateHash> next;
            auto add = [&next](const ReducedState& s, Polynomial w) {
                auto it = next.find(s);
                if (it == next.end())
                    next.emplace(s, std::move(w));
                else
                    it->second += w;
            };
            for (const auto& [s, w] : img) {
                if (f.with_identity)
                    add(s, w);
                WeightedState ws = apply_generator(f.g, s, mode);
                if (ws.annihilated())
                    continue;
                add(ws.state, ws.weight * w);
            }
            img = std::move(next);
        }
        for (auto& [s, w] : img) {
            if (w.is_zero())
                continue;
            int to = T.index_of(s);
            if (to < 0)
                throw std::logic_error("transfer image left the basis: " + s.str());
            T.cols[j].push_back({to, std::move(w)});
        }
        std::sort(T.cols[j].begin(), T.cols[j].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return T;
}

bool is_block_lower_triangular(const TransferMatrix& T) {
    for (size_t j = 0; j < T.cols.size(); ++j) {
        SectorLabel cs = sector_of(T.basis[j], T.mode);
        for (const auto& [i, w] : T.cols[j]) {
            SectorLabel rs = sector_of(T.basis[size_t(i)], T.mode);
            if (rs < cs) // row sector strictly earlier than column sector
                return false;
        }
    }
    return true;
}

SectorBlock sector_block(const TransferMatrix& T, const SectorLabel& sector) {
    int lo = -1, hi = -1;
    for (size_t i = 0; i < T.basis.size(); ++i) {
        if (sector_of(T.basis[i], T.mode) == sector) {
            if (lo < 0)
                lo = int(i);
            hi = int(i) + 1;
        }
    }
    if (lo < 0)
        throw std::invalid_argument("sector_block: empty sector " + sector.str());
    SectorBlock b;
    b.label = sector;
    b.basis.assign(T.basis.begin() + lo, T.basis.begin() + hi);
    size_t d = size_t(hi - lo);
    b.m.assign(d, std::vector<Polynomial>(d));
    for (int j = lo; j < hi; ++j)
        for (const auto& [i, w] : T.cols[size_t(j)])
            if (i >= lo && i < hi)
                b.m[size_t(i - lo)][size_t(j - lo)] = w;
    return b;
}

Polynomial character(const SectorBlock& block, int M) {
    if (M < 1)
        throw std::invalid_argument("character: M must be positive");
    size_t d = block.m.size();
    std::vector<std::vector<Polynomial>> p = block.m;
    for (int step = 1; step < M; ++step) {
        std::vector<std::vector<Polynomial>> q(d, std::vector<Polynomial>(d));
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < d; ++k) {
                if (p[i][k].is_zero())
                    continue;
                for (size_t j = 0; j < d; ++j)
                    if (!block.m[k][j].is_zero())
                        q[i][j] += p[i][k] * block.m[k][j];
            }
        p = std::move(q);
    }
    Polynomial tr;
    for (size_t i = 0; i < d; ++i)
        tr += p[i][i];
    return tr;
}

// ---------------------------------------------------------------------------
// Slab states: a noncrossing pairing of the N bottom and N top points of the
// slab, with per-link blob flags. Point i is bottom site i, point N+i is top
// site i.

namespace {

struct SlabState {
    uint8_t n = 0;
    std::array<int8_t, 2 * kMaxSites> partner{};
    uint32_t flag_l = 0, flag_r = 0; // indexed by the link's smaller point

    int canonical(int p) const { return std::min(p, int(partner[size_t(p)])); }
    bool has_l(int p) const { return (flag_l >> canonical(p)) & 1u; }
    bool has_r(int p) const { return (flag_r >> canonical(p)) & 1u; }

    bool operator==(const SlabState& o) const {
        return n == o.n && partner == o.partner && flag_l == o.flag_l && flag_r == o.flag_r;
    }
};

struct SlabHash {
    size_t operator()(const SlabState& s) const {
        uint64_t h = 1469598103934665603ull;
        auto mix = [&h](uint64_t x) {
            h ^= x;
            h *= 1099511628211ull;
        };
        for (int i = 0; i < 2 * s.n; ++i)
            mix(uint64_t(int64_t(s.partner[size_t(i)])) + 2);
        mix(s.flag_l);
        mix(s.flag_r);
        return size_t(h);
    }
};

void slab_clear_flags(SlabState& s, int p) {
    int c = s.canonical(p);
    s.flag_l &= ~(1u << c);
    s.flag_r &= ~(1u << c);
}

void slab_set_flags(SlabState& s, int p, bool l, bool r) {
    int c = s.canonical(p);
    if (l)
        s.flag_l |= 1u << c;
    if (r)
        s.flag_r |= 1u << c;
}

Polynomial slab_loop_weight(bool l, bool r, bool contractible, const BoundaryMode& mode) {
    if (contractible) {
        if (l && r)
            return mode.nb_nonzero ? Polynomial::variable(Var::n_b) : Polynomial();
        if (l)
            return Polynomial::variable(Var::n_l);
        if (r)
            return Polynomial::variable(Var::n_r);
        return Polynomial::variable(Var::n);
    }
    if (l && r)
        throw std::logic_error("noncontractible loop touching both boundaries in an even sector");
    if (l)
        return Polynomial::variable(Var::ell_l);
    if (r)
        return Polynomial::variable(Var::ell_r);
    return Polynomial::variable(Var::ell);
}

using SlabVector = std::unordered_map<SlabState, Polynomial, SlabHash>;

void slab_add(SlabVector& v, const SlabState& s, Polynomial w) {
    auto it = v.find(s);
    if (it == v.end())
        v.emplace(s, std::move(w));
    else
        it->second += w;
}

// Generator action on the top points of a slab state. Returns false when the
// state is annihilated (n_b = 0 policy).
bool slab_apply(const Generator& g, const SlabState& in, const BoundaryMode& mode,
                SlabState& out, Polynomial& weight) {
    const int n = in.n;
    out = in;
    weight = Polynomial(1);
    if (g.kind == GenKind::BlobL || g.kind == GenKind::BlobR) {
        int p = g.kind == GenKind::BlobL ? n : 2 * n - 1;
        bool l = in.has_l(p) || g.kind == GenKind::BlobL;
        bool r = in.has_r(p) || g.kind == GenKind::BlobR;
        if (l && r && !mode.nb_nonzero)
            return false;
        slab_set_flags(out, p, l, r);
        return true;
    }
    int p = n + g.i, q = n + g.i + 1;
    if (in.partner[size_t(p)] == int8_t(q)) {
        bool l = in.has_l(p), r = in.has_r(p);
        weight = slab_loop_weight(l, r, true, mode);
        if (weight.is_zero())
            return false;
        slab_clear_flags(out, p);
        return true;
    }
    int a = in.partner[size_t(p)], b = in.partner[size_t(q)];
    bool l = in.has_l(p) || in.has_l(q);
    bool r = in.has_r(p) || in.has_r(q);
    if (l && r && !mode.nb_nonzero)
        return false;
    slab_clear_flags(out, p);
    slab_clear_flags(out, q);
    out.partner[size_t(p)] = int8_t(q);
    out.partner[size_t(q)] = int8_t(p);
    out.partner[size_t(a)] = int8_t(b);
    out.partner[size_t(b)] = int8_t(a);
    slab_set_flags(out, a, l, r);
    return true;
}

} // namespace

Polynomial partition_function(int N, int M, const BoundaryMode& mode) {
    if (N < 2 || N > kMaxSites || M < 1)
        throw std::invalid_argument("partition_function: bad N or M");
    if (N % 2 == 1 && mode.kind != BKind::ZeroB)
        throw std::invalid_argument("odd N is supported in the zero-boundary mode only");
    const auto factors = row_factors(N, mode);

    SlabState v;
    v.n = uint8_t(N);
    for (int i = 0; i < N; ++i) {
        v.partner[size_t(i)] = int8_t(N + i);
        v.partner[size_t(N + i)] = int8_t(i);
    }
    SlabVector cur;
    cur.emplace(v, Polynomial(1));

    for (int row = 0; row < M; ++row)
        for (const Factor& f : factors) {
            SlabVector next;
            next.reserve(cur.size() * 2);
            for (const auto& [s, w] : cur) {
                if (f.with_identity)
                    slab_add(next, s, w);
                SlabState img;
                Polynomial gw;
                if (slab_apply(f.g, s, mode, img, gw))
                    slab_add(next, img, gw * w);
            }
            cur = std::move(next);
        }

    // Reglue: identify top point N+i with bottom point i, trace the cycles,
    // and classify each by its net winding across the seam.
    Polynomial Z;
    for (const auto& [s, w] : cur) {
        if (w.is_zero())
            continue;
        Polynomial weight(1);
        std::array<bool, 2 * kMaxSites> seen{};
        bool dead = false;
        for (int start = 0; start < 2 * N && !dead; ++start) {
            if (seen[size_t(start)])
                continue;
            bool l = false, r = false;
            int winding = 0;
            int cur_pt = start;
            while (!seen[size_t(cur_pt)]) {
                seen[size_t(cur_pt)] = true;
                l = l || s.has_l(cur_pt);
                r = r || s.has_r(cur_pt);
                int nxt = s.partner[size_t(cur_pt)];
                seen[size_t(nxt)] = true;
                // Seam edge from nxt: top point N+i glues to bottom i
                // (crossing the seam upward), bottom i to top N+i (downward).
                if (nxt >= N) {
                    winding += 1;
                    cur_pt = nxt - N;
                } else {
                    winding -= 1;
                    cur_pt = nxt + N;
                }
            }
            if (winding < -1 || winding > 1)
                throw std::logic_error("embedded loop with |winding| > 1");
            Polynomial lw = slab_loop_weight(l, r, winding == 0, mode);
            if (lw.is_zero()) {
                dead = true;
                break;
            }
            weight *= lw;
        }
        if (!dead)
            Z += w * weight;
    }
    if (N % 2 == 0 && Z.uses(Var::ell_b))
        throw std::logic_error("ell_b appeared in an even-sector partition function");
    return Z;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: explicit loop tracing over all vertex configurations.

namespace {

struct Gate {
    GenKind kind;
    int i;   // site for E, boundary site for blobs
    int pos; // global position in the factor sequence
};

// Tracing uses four ports per E gate (bottom/top x {i, i+1}) and two per blob
// gate. Ports are numbered gate-major.
struct OraclePort {
    int gate;
    int side; // 0 bottom, 1 top
    int slot; // 0 or 1
};

} // namespace

Polynomial oracle_partition(int N, int M, const BoundaryMode& mode) {
    if (N < 2 || N > kMaxSites || M < 1)
        throw std::invalid_argument("oracle_partition: bad N or M");
    if (N % 2 == 1 && mode.kind != BKind::ZeroB)
        throw std::invalid_argument("odd N is supported in the zero-boundary mode only");
    const auto row = row_factors(N, mode);
    std::vector<Factor> all;
    for (int m = 0; m < M; ++m)
        all.insert(all.end(), row.begin(), row.end());
    std::vector<size_t> choice_pos;
    for (size_t t = 0; t < all.size(); ++t)
        if (all[t].with_identity)
            choice_pos.push_back(t);
    if (choice_pos.size() > 26)
        throw std::invalid_argument("oracle_partition: configuration space too large");

    Polynomial Z;
    for (uint64_t mask = 0; mask < (uint64_t(1) << choice_pos.size()); ++mask) {
        // Collect the gates present in this configuration.
        std::vector<Gate> gates;
        {
            size_t c = 0;
            for (size_t t = 0; t < all.size(); ++t) {
                bool present = true;
                if (all[t].with_identity) {
                    present = (mask >> c) & 1;
                    ++c;
                }
                if (!present)
                    continue;
                const Generator& g = all[t].g;
                int site = g.kind == GenKind::E ? g.i : (g.kind == GenKind::BlobL ? 0 : N - 1);
                gates.push_back({g.kind, site, int(t)});
            }
        }
        // Events per wire, in time order (gates are already time-ordered).
        std::vector<std::vector<int>> wire_events((size_t(N)));
        for (size_t gi = 0; gi < gates.size(); ++gi) {
            wire_events[size_t(gates[gi].i)].push_back(int(gi));
            if (gates[gi].kind == GenKind::E)
                wire_events[size_t(gates[gi].i) + 1].push_back(int(gi));
        }

        // Port numbering: E gate: bottom0,bottom1,top0,top1; blob: bottom0,top0.
        std::vector<int> port_base(gates.size() + 1, 0);
        for (size_t gi = 0; gi < gates.size(); ++gi)
            port_base[gi + 1] = port_base[gi] + (gates[gi].kind == GenKind::E ? 4 : 2);
        int nports = port_base[gates.size()];
        auto port_id = [&](int gi, int side, int slot) {
            int width = gates[size_t(gi)].kind == GenKind::E ? 2 : 1;
            return port_base[size_t(gi)] + side * width + slot;
        };
        // adjacency: each port has a gate-internal neighbour and a wire
        // neighbour; wire edges carry a winding sign when they wrap.
        std::vector<int> internal(size_t(nports), -1);
        std::vector<int> wire_nbr(size_t(nports), -1);
        std::vector<int> wire_wind(size_t(nports), 0);
        for (size_t gi = 0; gi < gates.size(); ++gi) {
            if (gates[gi].kind == GenKind::E) {
                internal[size_t(port_id(int(gi), 0, 0))] = port_id(int(gi), 0, 1);
                internal[size_t(port_id(int(gi), 0, 1))] = port_id(int(gi), 0, 0);
                internal[size_t(port_id(int(gi), 1, 0))] = port_id(int(gi), 1, 1);
                internal[size_t(port_id(int(gi), 1, 1))] = port_id(int(gi), 1, 0);
            } else {
                internal[size_t(port_id(int(gi), 0, 0))] = port_id(int(gi), 1, 0);
                internal[size_t(port_id(int(gi), 1, 0))] = port_id(int(gi), 0, 0);
            }
        }
        int free_lines = 0;
        for (int w = 0; w < N; ++w) {
            const auto& ev = wire_events[size_t(w)];
            if (ev.empty()) {
                ++free_lines; // a straight noncontractible line
                continue;
            }
            auto slot_of = [&](int gi) {
                return gates[size_t(gi)].kind == GenKind::E && gates[size_t(gi)].i + 1 == w ? 1
                                                                                            : 0;
            };
            for (size_t k = 0; k < ev.size(); ++k) {
                int cur_g = ev[k];
                int nxt_g = ev[(k + 1) % ev.size()];
                int top_port = port_id(cur_g, 1, slot_of(cur_g));
                int bot_port = port_id(nxt_g, 0, slot_of(nxt_g));
                wire_nbr[size_t(top_port)] = bot_port;
                wire_nbr[size_t(bot_port)] = top_port;
                int wind = (k + 1 == ev.size()) ? 1 : 0; // wrapped through the seam
                wire_wind[size_t(top_port)] = wind;
                wire_wind[size_t(bot_port)] = -wind;
            }
        }

        // Walk cycles: alternate internal and wire edges.
        Polynomial confw(1);
        bool dead = false;
        std::vector<bool> seen(size_t(nports), false);
        for (int p0 = 0; p0 < nports && !dead; ++p0) {
            if (seen[size_t(p0)])
                continue;
            bool l = false, r = false;
            int winding = 0;
            int p = p0;
            while (!seen[size_t(p)]) {
                seen[size_t(p)] = true;
                const Gate& g = gates[size_t(std::upper_bound(port_base.begin(), port_base.end(),
                                                              p) -
                                             port_base.begin() - 1)];
                if (g.kind == GenKind::BlobL)
                    l = true;
                if (g.kind == GenKind::BlobR)
                    r = true;
                int q = internal[size_t(p)];
                seen[size_t(q)] = true;
                // Traverse the wire edge out of q, picking up its winding as
                // traversed from q's side.
                winding += wire_wind[size_t(q)];
                p = wire_nbr[size_t(q)];
            }
            if (winding < -1 || winding > 1)
                throw std::logic_error("oracle loop with |winding| > 1");
            Polynomial lw = slab_loop_weight(l, r, winding == 0, mode);
            if (lw.is_zero()) {
                dead = true;
                break;
            }
            confw *= lw;
        }
        if (dead)
            continue;
        for (int k = 0; k < free_lines; ++k)
            confw *= Polynomial::variable(Var::ell);
        Z += confw;
    }
    return Z;
}

Polynomial constrained_partition(const Polynomial& Z, int L, Blob left, Blob right) {
    std::vector<Polynomial::Term> keep;
    for (const auto& t : Z.terms()) {
        int a = t.first.e[size_t(Var::ell_l)];
        int b = t.first.e[size_t(Var::ell)];
        int c = t.first.e[size_t(Var::ell_r)];
        if (a + b + c != L)
            continue;
        if (left != Blob::None && (left == Blob::B) != (a == 1))
            continue;
        if (right != Blob::None && (right == Blob::B) != (c == 1))
            continue;
        if (left == Blob::None && a != 0)
            continue;
        if (right == Blob::None && c != 0)
            continue;
        keep.push_back(t);
    }
    Polynomial out;
    for (const auto& t : keep)
        out += Polynomial::monomial(t.first, t.second);
    return out;
}

} // namespace tlb
