#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "surgery.hpp"

namespace lenslab {

// symmetric set of p Alexander gradings attached to the (p,k) simple knot
inline std::set<long> alexander_gradings(long p, long k) {
    if (!is_prime(p) || p < 5 || k < 1 || k > (p - 1) / 2)
        throw invalid_params("alexander_gradings needs a prime p >= 5 and 1 <= k <= (p-1)/2");
    std::set<long> S{0};
    if (k % 2 == 0) {
        for (long j = 1; j <= k / 2; ++j) {
            S.insert(j * (p - k));
            S.insert(-j * (p - k));
        }
        for (long j = 1; 2 * j - 1 <= p - k - 2; ++j) {
            long v = (2 * j - 1) * k / 2;
            S.insert(v);
            S.insert(-v);
        }
    } else {
        for (long j = 1; j <= (p - k) / 2; ++j) {
            S.insert(j * k);
            S.insert(-j * k);
        }
        for (long j = 1; 2 * j - 1 <= k - 2; ++j) {
            long v = (2 * j - 1) * (p - k) / 2;
            S.insert(v);
            S.insert(-v);
        }
    }
    return S;
}

inline long max_grading(long p, long k) { return k * (p - k) / 2; }

// one residue class of the surgery complex: lattice positions in a window
// of width 2(maxS + 2D), each position carrying 'o' on a grading of the
// knot and otherwise the sign of its side
struct ConeRow {
    long order = 0;     // spacing D = pm - k^2
    long residue = 0;
    std::vector<long> positions;
    std::string signs;
};

namespace detail {

inline ConeRow cone_row(const std::set<long>& S, long D, long residue, long maxS) {
    ConeRow row;
    row.order = D;
    row.residue = residue;
    const long W = maxS + 2 * D;
    long at = -W + (((residue + W) % D) + D) % D;
    for (; at <= W; at += D) {
        row.positions.push_back(at);
        if (S.count(at))
            row.signs.push_back('o');
        else
            row.signs.push_back(at < 0 ? '-' : '+');
    }
    return row;
}

// F2 rank of the incidence matrix given as (row, column) pairs
inline int f2_rank(int nrows, int ncols, const std::vector<std::pair<int, int>>& edges) {
    const int words = (ncols + 63) / 64;
    std::vector<std::vector<uint64_t>> m(nrows, std::vector<uint64_t>(words, 0));
    for (auto [r, c] : edges) m[r][c / 64] |= uint64_t(1) << (c % 64);
    int rank = 0;
    for (int bit = 0; bit < ncols && rank < nrows; ++bit) {
        int piv = -1;
        for (int i = rank; i < nrows; ++i)
            if (m[i][bit / 64] >> (bit % 64) & 1) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int i = 0; i < nrows; ++i) {
            if (i == rank || !(m[i][bit / 64] >> (bit % 64) & 1)) continue;
            for (int w = 0; w < words; ++w) m[i][w] ^= m[rank][w];
        }
        ++rank;
    }
    return rank;
}

}

inline ConeRow cone_diagram(long p, long k, long m, long residue) {
    long D = p * m - k * k;
    if (D <= 0) throw invalid_params("cone_diagram needs pm - k^2 > 0");
    if (residue < 0 || residue >= D)
        throw invalid_params("cone_diagram residue out of range");
    return detail::cone_row(alexander_gradings(p, k), D, residue, max_grading(p, k));
}

struct SummandHomology {
    long rank = 0;
    std::set<long> top_support;  // positions of towers surviving at the top
};

// F2 homology of the two-row complex: vertical arrow at 'o'/'+', horizontal
// arrow to the next slot at 'o'/'-'; each connected component contributes
// (#sources - rank) + (#targets - rank)
inline SummandHomology summand_homology(const ConeRow& row) {
    const int P = static_cast<int>(row.positions.size());
    std::map<long, int> b_ids;
    std::vector<long> b_pos;
    std::vector<std::pair<int, int>> edges;  // (A index, B id)
    auto b_of = [&](long x) {
        auto [it, fresh] = b_ids.try_emplace(x, static_cast<int>(b_pos.size()));
        if (fresh) b_pos.push_back(x);
        return it->second;
    };
    for (int i = 0; i < P; ++i) {
        char s = row.signs[i];
        if (s == 'o' || s == '+') edges.emplace_back(i, b_of(row.positions[i]));
        if (s == 'o' || s == '-') edges.emplace_back(i, b_of(row.positions[i] + row.order));
    }

    const int B = static_cast<int>(b_pos.size());
    std::vector<int> parent(P + B);
    for (int i = 0; i < P + B; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(P + b);
        if (ra != rb) parent[ra] = rb;
    }

    std::map<int, std::vector<int>> comp_a, comp_b;
    for (int i = 0; i < P; ++i) comp_a[find(i)].push_back(i);
    for (int b = 0; b < B; ++b) comp_b[find(P + b)].push_back(b);

    SummandHomology out;
    for (const auto& [root, as] : comp_a) {
        const std::vector<int> none;
        const std::vector<int>& bs = comp_b.count(root) ? comp_b[root] : none;
        std::map<int, int> aidx, bidx;
        for (int i = 0; i < static_cast<int>(as.size()); ++i) aidx[as[i]] = i;
        for (int i = 0; i < static_cast<int>(bs.size()); ++i) bidx[bs[i]] = i;
        std::vector<std::pair<int, int>> local;
        for (auto [a, b] : edges)
            if (aidx.count(a)) local.emplace_back(aidx[a], bidx[b]);
        int r = detail::f2_rank(static_cast<int>(as.size()), static_cast<int>(bs.size()), local);
        long hom = (static_cast<long>(as.size()) - r) + (static_cast<long>(bs.size()) - r);
        out.rank += hom;
        if (static_cast<long>(as.size()) - static_cast<long>(bs.size()) == 1 && hom == 1)
            for (int a : as) out.top_support.insert(row.positions[a]);
    }
    return out;
}

namespace detail {

// sorted row shape: one or more '-', then 'o's, then one or more '+'
inline bool is_well_ordered_row(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && s[i] == '-') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] == 'o') ++j;
    std::size_t k = j;
    while (k < s.size() && s[k] == '+') ++k;
    return k == s.size() && i >= 1 && k > j;
}

}

inline bool is_well_ordered(long p, long k, long m) {
    long D = p * m - k * k;
    if (D <= 0) throw invalid_params("is_well_ordered needs pm - k^2 > 0");
    auto S = alexander_gradings(p, k);
    long maxS = max_grading(p, k);
    for (long res = 0; res < D; ++res)
        if (!detail::is_well_ordered_row(detail::cone_row(S, D, res, maxS).signs))
            return false;
    return true;
}

// the residue-0 class carries a single tower whose support reaches slot 0
inline bool xi0_support_ok_at_order(long p, long k, long D) {
    if (D <= 0) throw invalid_params("xi0_support_ok_at_order needs a positive order");
    ConeRow row = detail::cone_row(alexander_gradings(p, k), D, 0, max_grading(p, k));
    SummandHomology h = summand_homology(row);
    return h.rank == 1 && h.top_support.count(0) == 1;
}

inline bool xi0_support_ok(long p, long k, long m) {
    long D = p * m - k * k;
    if (D <= 0) throw invalid_params("xi0_support_ok needs pm - k^2 > 0");
    return xi0_support_ok_at_order(p, k, D);
}

}
