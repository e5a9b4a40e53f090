#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "matrix.hpp"

namespace lenslab {

using CharVector = std::vector<long>;

// weighted tree-like graph with integer edge multiplicities and an optional
// marked vertex used by the class-shift operation
class PlumbingGraph {
public:
    PlumbingGraph(std::vector<long> weights,
                  const std::vector<std::tuple<int, int, long>>& edges,
                  std::optional<int> marked = std::nullopt)
        : weights_(std::move(weights)), marked_(marked) {
        const int n = static_cast<int>(weights_.size());
        if (n == 0) throw invalid_params("graph needs at least one vertex");
        if (marked_ && (*marked_ < 0 || *marked_ >= n))
            throw invalid_params("marked vertex out of range");
        adj_.assign(n, {});
        for (auto [u, v, mult] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw invalid_params("edge endpoint out of range");
            if (u == v) throw invalid_params("self loops are not allowed");
            if (mult < 1) throw invalid_params("edge multiplicity must be positive");
            if (u > v) std::swap(u, v);
            if (!edges_.emplace(std::make_pair(u, v), mult).second)
                throw invalid_params("duplicate edge");
            adj_[u].emplace_back(v, mult);
            adj_[v].emplace_back(u, mult);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    PlumbingGraph(std::vector<long> weights,
                  const std::vector<std::pair<int, int>>& edges,
                  std::optional<int> marked = std::nullopt)
        : PlumbingGraph(std::move(weights), plain(edges), marked) {}

    int size() const { return static_cast<int>(weights_.size()); }
    long weight(int v) const { return weights_.at(v); }
    const std::vector<long>& weights() const { return weights_; }
    std::optional<int> marked_vertex() const { return marked_; }

    // incident edge multiplicities summed, i.e. the valence
    long degree(int v) const {
        long d = 0;
        for (auto [u, mult] : adj_.at(v)) d += mult;
        return d;
    }

    const std::vector<std::pair<int, long>>& neighbours(int v) const { return adj_.at(v); }

    const std::map<std::pair<int, int>, long>& edge_map() const { return edges_; }

    IntMatrix intersection_form() const {
        const int n = size();
        std::vector<std::vector<Int>> q(n, std::vector<Int>(n, 0));
        for (int v = 0; v < n; ++v) q[v][v] = weights_[v];
        for (const auto& [e, mult] : edges_) {
            q[e.first][e.second] = mult;
            q[e.second][e.first] = mult;
        }
        return IntMatrix(std::move(q));
    }

private:
    static std::vector<std::tuple<int, int, long>>
    plain(const std::vector<std::pair<int, int>>& edges) {
        std::vector<std::tuple<int, int, long>> out;
        out.reserve(edges.size());
        for (auto [u, v] : edges) out.emplace_back(u, v, 1);
        return out;
    }

    std::vector<long> weights_;
    std::optional<int> marked_;
    std::vector<std::vector<std::pair<int, long>>> adj_;
    std::map<std::pair<int, int>, long> edges_;
};

inline std::set<int> bad_vertices(const PlumbingGraph& G) {
    std::set<int> out;
    for (int v = 0; v < G.size(); ++v)
        if (G.weight(v) > -G.degree(v)) out.insert(v);
    return out;
}

namespace detail {

// flattened graph data for the push-down walk
struct WalkContext {
    int n = 0;
    std::vector<int32_t> lo, hi;          // box bounds: weight+2 .. -weight
    std::vector<int32_t> twice_weight;    // 2*weight(v), the push decrement
    std::vector<int> nbr_off, nbr_idx;
    std::vector<int32_t> nbr_inc;         // 2*multiplicity per neighbour
    std::vector<int> scan_from;           // min(v, neighbours of v)
    long step_guard = 0;

    explicit WalkContext(const PlumbingGraph& G) {
        n = G.size();
        lo.resize(n); hi.resize(n); twice_weight.resize(n);
        scan_from.resize(n);
        nbr_off.assign(n + 1, 0);
        long span = 0;
        for (int v = 0; v < n; ++v) {
            long w = G.weight(v);
            if (w + 2 > -w) throw empty_box("a vertex weight exceeds -1");
            lo[v] = static_cast<int32_t>(w + 2);
            hi[v] = static_cast<int32_t>(-w);
            twice_weight[v] = static_cast<int32_t>(2 * w);
            span += -w + 1;
            nbr_off[v + 1] = nbr_off[v] + static_cast<int>(G.neighbours(v).size());
        }
        nbr_idx.resize(nbr_off[n]);
        nbr_inc.resize(nbr_off[n]);
        for (int v = 0; v < n; ++v) {
            int at = nbr_off[v];
            int from = v;
            for (auto [u, mult] : G.neighbours(v)) {
                nbr_idx[at] = u;
                nbr_inc[at] = static_cast<int32_t>(2 * mult);
                from = std::min(from, u);
                ++at;
            }
            scan_from[v] = from;
        }
        step_guard = 1024 + 64 * static_cast<long>(n) * (span + 1);
    }
};

// runs the push-down iteration in place; true means the path reached a
// terminal vector (stored back in w), false means some pairing overshot.
// a repeated state raises cycle_detected; past step_guard steps the states
// are recorded so a genuine cycle is recognised rather than looping forever
inline bool push_walk(const WalkContext& ctx, int32_t* w) {
    const int n = ctx.n;
    int s = 0;
    long steps = 0;
    std::set<std::vector<int32_t>> seen;
    for (;;) {
        int trig = -1;
        for (int v = s; v < n; ++v) {
            int32_t x = w[v];
            if (x > ctx.hi[v]) return false;
            if (x == ctx.hi[v] && trig < 0) trig = v;
        }
        if (trig < 0) return true;
        w[trig] += ctx.twice_weight[trig];
        for (int e = ctx.nbr_off[trig]; e < ctx.nbr_off[trig + 1]; ++e)
            w[ctx.nbr_idx[e]] += ctx.nbr_inc[e];
        s = ctx.scan_from[trig];
        if (++steps > ctx.step_guard) {
            if (!seen.emplace(w, w + n).second)
                throw cycle_detected("push-down revisited a state");
        }
    }
}

// visit every characteristic vector in the box in lexicographic order
template <typename F>
inline void for_each_box_vector(const WalkContext& ctx, F&& visit) {
    const int n = ctx.n;
    std::vector<int32_t> cur(ctx.lo.begin(), ctx.lo.end());
    for (;;) {
        visit(cur);
        int pos = n - 1;
        while (pos >= 0) {
            cur[pos] += 2;
            if (cur[pos] <= ctx.hi[pos]) break;
            cur[pos] = ctx.lo[pos];
            --pos;
        }
        if (pos < 0) return;
    }
}

inline void require_characteristic(const PlumbingGraph& G, const CharVector& w) {
    if (static_cast<int>(w.size()) != G.size())
        throw invalid_params("vector length does not match the graph");
    for (int v = 0; v < G.size(); ++v)
        if (((w[v] - G.weight(v)) % 2 + 2) % 2 != 0)
            throw invalid_params("vector is not characteristic for the form");
}

}

enum class PathOutcome { maximising, non_maximising };

struct PushDownPath {
    PathOutcome outcome;
    CharVector terminal;  // meaningful only for a maximising path
};

inline PushDownPath push_down_path(const PlumbingGraph& G, const CharVector& w0) {
    detail::require_characteristic(G, w0);
    detail::WalkContext ctx(G);
    std::vector<int32_t> w(w0.begin(), w0.end());
    if (!detail::push_walk(ctx, w.data())) return {PathOutcome::non_maximising, {}};
    return {PathOutcome::maximising, CharVector(w.begin(), w.end())};
}

inline std::vector<CharVector> char_box(const PlumbingGraph& G) {
    detail::WalkContext ctx(G);
    std::vector<CharVector> out;
    detail::for_each_box_vector(ctx, [&](const std::vector<int32_t>& w) {
        out.emplace_back(w.begin(), w.end());
    });
    return out;
}

inline std::vector<CharVector> maximising_initiators(const PlumbingGraph& G) {
    detail::WalkContext ctx(G);
    std::vector<CharVector> out;
    std::vector<int32_t> scratch(ctx.n);
    detail::for_each_box_vector(ctx, [&](const std::vector<int32_t>& w) {
        std::copy(w.begin(), w.end(), scratch.begin());
        if (detail::push_walk(ctx, scratch.data()))
            out.emplace_back(w.begin(), w.end());
    });
    return out;
}

struct SpincClass {
    CharVector canonical;   // lexicographically least terminal vector
    std::vector<Int> key;   // adjugate pairing reduced mod 2|det|
};

inline bool operator==(const SpincClass& a, const SpincClass& b) {
    return a.key == b.key;
}

struct DTableEntry {
    SpincClass cls;
    Rational d;
    CharVector maximiser;   // least initiator attaining the class maximum
};

struct DTable {
    Int det;                           // determinant of the intersection form
    std::vector<DTableEntry> entries;  // sorted by canonical representative
    std::map<std::vector<Int>, std::size_t> index_by_key;
};

namespace detail {

struct ClassData {
    Int best;  // numerator of the squared pairing over det
    CharVector maximiser;
    CharVector canonical;
};

inline std::vector<Int> key_of(const std::vector<std::vector<Int>>& adj, const Int& two_det,
                               const int32_t* w, int n) {
    std::vector<Int> key(n);
    for (int i = 0; i < n; ++i) {
        Int u = 0;
        for (int j = 0; j < n; ++j)
            if (w[j] != 0) u += adj[i][j] * static_cast<long>(w[j]);
        mpz_mod(key[i].get_mpz_t(), u.get_mpz_t(), two_det.get_mpz_t());
    }
    return key;
}

struct FormData {
    Int det;
    Int det_abs;
    Int two_det;
    std::vector<std::vector<Int>> adj;  // det * Q^{-1}
    RatMatrix qinv;

    explicit FormData(const PlumbingGraph& G) {
        IntMatrix Q = G.intersection_form();
        det = lenslab::det(Q);
        if (det == 0) throw degenerate_form("intersection form is singular");
        det_abs = abs(det);
        two_det = 2 * det_abs;
        qinv = inverse(Q);
        const int n = G.size();
        adj.assign(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational a = qinv[i][j] * det;
                if (a.get_den() != 1)
                    throw error("internal: adjugate entry not integral");
                adj[i][j] = a.get_num();
            }
    }
};

}

// full correction-term table: one entry per class of the discriminant group,
// d = (max squared pairing + vertex count) / 4
inline DTable d_plumbed(const PlumbingGraph& G) {
    IntMatrix Q = G.intersection_form();
    if (!is_negative_definite(Q))
        throw precondition_violated("intersection form must be negative definite");
    if (bad_vertices(G).size() > 1)
        throw precondition_violated("at most one vertex may break the degree bound");

    detail::FormData fd(G);
    detail::WalkContext ctx(G);
    const int n = G.size();

    std::map<std::vector<Int>, detail::ClassData> classes;
    std::vector<int32_t> scratch(n);
    detail::for_each_box_vector(ctx, [&](const std::vector<int32_t>& w0) {
        std::copy(w0.begin(), w0.end(), scratch.begin());
        if (!detail::push_walk(ctx, scratch.data())) return;

        std::vector<Int> u(n);
        for (int i = 0; i < n; ++i) {
            Int acc = 0;
            for (int j = 0; j < n; ++j)
                if (w0[j] != 0) acc += fd.adj[i][j] * static_cast<long>(w0[j]);
            u[i] = std::move(acc);
        }
        Int wu = 0;
        for (int i = 0; i < n; ++i)
            if (w0[i] != 0) wu += u[i] * static_cast<long>(w0[i]);
        // squared pairing is wu / det; det < 0 in even dimensions flips the
        // comparison direction, so compare the true rational value
        std::vector<Int> key(n);
        for (int i = 0; i < n; ++i)
            mpz_mod(key[i].get_mpz_t(), u[i].get_mpz_t(), fd.two_det.get_mpz_t());

        CharVector w0l(w0.begin(), w0.end());
        CharVector terml(scratch.begin(), scratch.end());
        auto [it, fresh] = classes.try_emplace(std::move(key));
        detail::ClassData& cd = it->second;
        if (fresh) {
            cd.best = wu;
            cd.maximiser = std::move(w0l);
            cd.canonical = std::move(terml);
        } else {
            // wu/det with fixed det: larger value means smaller wu for det<0
            bool better = fd.det < 0 ? wu < cd.best : wu > cd.best;
            if (better) {
                cd.best = wu;
                cd.maximiser = std::move(w0l);
            }
            if (terml < cd.canonical) cd.canonical = std::move(terml);
        }
    });

    if (Int(static_cast<long>(classes.size())) < fd.det_abs)
        throw class_without_maximiser("some class has no maximising vector");
    if (Int(static_cast<long>(classes.size())) > fd.det_abs)
        throw error("internal: more classes than the form's discriminant");

    DTable table;
    table.det = fd.det;
    table.entries.reserve(classes.size());
    for (auto& [key, cd] : classes) {
        DTableEntry e;
        e.cls.key = key;
        e.cls.canonical = cd.canonical;
        e.maximiser = cd.maximiser;
        e.d = (rat(cd.best, fd.det) + n) / 4;
        table.entries.push_back(std::move(e));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const DTableEntry& a, const DTableEntry& b) {
                  return a.cls.canonical < b.cls.canonical;
              });
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        table.index_by_key.emplace(table.entries[i].cls.key, i);
    return table;
}

inline std::size_t class_index_of(const PlumbingGraph& G, const DTable& T,
                                  const CharVector& w) {
    detail::require_characteristic(G, w);
    detail::FormData fd(G);
    std::vector<int32_t> wi(w.begin(), w.end());
    auto key = detail::key_of(fd.adj, fd.two_det, wi.data(), G.size());
    auto it = T.index_by_key.find(key);
    if (it == T.index_by_key.end())
        throw invalid_params("vector does not belong to any tabulated class");
    return it->second;
}

inline std::vector<std::size_t> self_conjugate_class_indices(const PlumbingGraph& G,
                                                             const DTable& T) {
    detail::FormData fd(G);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < T.entries.size(); ++i) {
        RatVector x = mat_vec(fd.qinv, T.entries[i].cls.canonical);
        if (is_integral_vector(x)) out.push_back(i);
    }
    return out;
}

inline std::vector<SpincClass> self_conjugate_classes(const PlumbingGraph& G) {
    DTable T = d_plumbed(G);
    std::vector<SpincClass> out;
    for (std::size_t i : self_conjugate_class_indices(G, T))
        out.push_back(T.entries[i].cls);
    return out;
}

// the class of (canonical representative - 2 * e_marked)
inline std::size_t mu_shifted_class_index(const PlumbingGraph& G, const DTable& T,
                                          std::size_t idx) {
    if (!G.marked_vertex())
        throw invalid_params("graph has no marked vertex to shift along");
    if (idx >= T.entries.size()) throw invalid_params("class index out of range");
    CharVector w = T.entries[idx].cls.canonical;
    w[*G.marked_vertex()] -= 2;
    return class_index_of(G, T, w);
}

inline SpincClass mu_shifted_class(const PlumbingGraph& G, const SpincClass& c) {
    DTable T = d_plumbed(G);
    auto it = T.index_by_key.find(c.key);
    if (it == T.index_by_key.end())
        throw invalid_params("class does not belong to this graph");
    return T.entries[mu_shifted_class_index(G, T, it->second)].cls;
}

enum class GraphFamily { star, sporadic_5_2, sporadic_7_2, sporadic_7_3, surgery_trace };

// the model graphs used throughout: a three-armed star, three sporadic
// shapes tied to (5,2), (7,2), (7,3), and the surgery-trace pattern whose
// intersection form is the only part consumed downstream
inline PlumbingGraph build_model_graph(GraphFamily fam, long p, long k, long m) {
    switch (fam) {
    case GraphFamily::star: {
        if (k < 2 || p < k + 2 || m < k + 1)
            throw invalid_params("star needs k >= 2, p >= k+2, m >= k+1");
        const long a = m - k - 1, b = p - k - 1, c = k - 1;
        const int n = static_cast<int>(a + b + c + 1);
        std::vector<long> w(n, -2);
        const int center = n - 1;
        w[center] = -3;
        std::vector<std::pair<int, int>> edges;
        long at = 0;
        for (long len : {a, b, c}) {
            for (long i = 0; i + 1 < len; ++i)
                edges.emplace_back(static_cast<int>(at + i), static_cast<int>(at + i + 1));
            if (len > 0)
                edges.emplace_back(static_cast<int>(at + len - 1), center);
            at += len;
        }
        std::optional<int> marked;
        if (a > 0) marked = 0;
        return PlumbingGraph(std::move(w), edges, marked);
    }
    case GraphFamily::sporadic_5_2: {
        if (p != 5 || k != 2 || m > -1)
            throw invalid_params("sporadic_5_2 needs p=5, k=2, m <= -1");
        std::vector<long> w{-2, -2, -2, m - 2, -2};
        std::vector<std::pair<int, int>> edges{{0, 1}, {1, 4}, {2, 4}, {3, 4}};
        return PlumbingGraph(std::move(w), edges, 3);
    }
    case GraphFamily::sporadic_7_2: {
        if (p != 7 || k != 2 || m > -1)
            throw invalid_params("sporadic_7_2 needs p=7, k=2, m <= -1");
        std::vector<long> w{-2, -2, -2, -2, -2, m - 2, -2};
        std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 6}, {4, 6}, {5, 6}};
        return PlumbingGraph(std::move(w), edges, 5);
    }
    case GraphFamily::sporadic_7_3: {
        if (p != 7 || k != 3 || m > 0)
            throw invalid_params("sporadic_7_3 needs p=7, k=3, m <= 0");
        std::vector<long> w{-2, -2, -2, -2, -2, m - 3, -2};
        std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 6}, {3, 4}, {4, 6}, {5, 6}};
        return PlumbingGraph(std::move(w), edges, 5);
    }
    case GraphFamily::surgery_trace: {
        if (p < 2 || k < 1)
            throw invalid_params("surgery_trace needs p >= 2 and k >= 1");
        const int n = static_cast<int>(p);
        std::vector<long> w(n, -2);
        w[n - 1] = m;
        std::vector<std::tuple<int, int, long>> edges;
        for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1, 1);
        edges.emplace_back(0, n - 1, k);
        return PlumbingGraph(std::move(w), edges);
    }
    }
    throw invalid_params("unknown graph family");
}

}
