#pragma once

// independent cross-check for the push-down tables: for every box vector w0
// the squared pairing of w0 + 2Qz is maximized by direct search over z in a
// box centred on the real maximiser of the concave quadratic, and the radius
// grows until two consecutive radii agree on every class maximum

#include <lenslab/plumbing.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using lenslab::CharVector;
using lenslab::Int;
using lenslab::PlumbingGraph;
using lenslab::Rational;

namespace detail {

struct ZSearch {
    int n;
    int radius;
    std::vector<std::vector<long>> q;   // dense copy of the form
    std::vector<long> w0, z, qz, zc;
    long wz = 0, zqz = 0, best = 0;

    void set_z(int i, long value) {
        long delta = value - z[i];
        if (delta == 0) return;
        zqz += q[i][i] * (value * value - z[i] * z[i]) + 2 * delta * (qz[i] - q[i][i] * z[i]);
        wz += w0[i] * delta;
        for (int j = 0; j < n; ++j)
            if (q[j][i] != 0) qz[j] += q[j][i] * delta;
        z[i] = value;
    }

    void dfs(int i) {
        if (i == n) {
            long g = 4 * wz + 4 * zqz;
            if (g > best) best = g;
            return;
        }
        for (long v = zc[i] - radius; v <= zc[i] + radius; ++v) {
            set_z(i, v);
            dfs(i + 1);
        }
    }

    long max_g() {
        best = -(1L << 60);
        dfs(0);
        return best;
    }
};

}

// per-class maximum of the squared pairing, searching |z - centre| <= radius
inline std::map<std::vector<Int>, Rational>
class_maxima_at_radius(const PlumbingGraph& G, int radius) {
    using lenslab::detail::FormData;
    const int n = G.size();
    FormData fd(G);

    detail::ZSearch zs;
    zs.n = n;
    zs.radius = radius;
    zs.q.assign(n, std::vector<long>(n, 0));
    for (int v = 0; v < n; ++v) zs.q[v][v] = G.weight(v);
    for (const auto& [e, mult] : G.edge_map()) {
        zs.q[e.first][e.second] = mult;
        zs.q[e.second][e.first] = mult;
    }

    std::map<std::vector<Int>, Rational> best;
    for (const CharVector& w0 : char_box(G)) {
        std::vector<Int> u(n);
        for (int i = 0; i < n; ++i) {
            Int acc = 0;
            for (int j = 0; j < n; ++j)
                if (w0[j] != 0) acc += fd.adj[i][j] * w0[j];
            u[i] = std::move(acc);
        }
        std::vector<Int> key(n);
        for (int i = 0; i < n; ++i)
            mpz_mod(key[i].get_mpz_t(), u[i].get_mpz_t(), fd.two_det.get_mpz_t());
        Int wu = 0;
        for (int i = 0; i < n; ++i)
            if (w0[i] != 0) wu += u[i] * w0[i];
        Rational f0 = lenslab::rat(wu, fd.det);

        zs.w0.assign(w0.begin(), w0.end());
        zs.z.assign(n, 0);
        zs.qz.assign(n, 0);
        zs.wz = 0;
        zs.zqz = 0;
        zs.zc.resize(n);
        for (int i = 0; i < n; ++i) {
            Rational c = 0;
            for (int j = 0; j < n; ++j)
                if (w0[j] != 0) c += fd.qinv[i][j] * w0[j];
            zs.zc[i] = std::llround(-c.get_d() / 2.0);
        }
        Rational f = f0 + zs.max_g();

        auto [it, fresh] = best.emplace(std::move(key), f);
        if (!fresh && f > it->second) it->second = f;
    }
    return best;
}

inline std::map<std::vector<Int>, Rational> class_maxima(const PlumbingGraph& G) {
    auto prev = class_maxima_at_radius(G, 1);
    for (int radius = 2; radius <= 6; ++radius) {
        auto next = class_maxima_at_radius(G, radius);
        if (next == prev) return next;
        prev = std::move(next);
    }
    throw lenslab::error("oracle radius failed to stabilize");
}

// true when the oracle reproduces every d value of the push-down table
inline bool agrees_with(const PlumbingGraph& G, const lenslab::DTable& table) {
    auto maxima = class_maxima(G);
    if (maxima.size() != table.entries.size()) return false;
    for (const auto& e : table.entries) {
        auto it = maxima.find(e.cls.key);
        if (it == maxima.end()) return false;
        if ((it->second + G.size()) / 4 != e.d) return false;
    }
    return true;
}

}
