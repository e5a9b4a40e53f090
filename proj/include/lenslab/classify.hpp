#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "obstruct.hpp"

namespace lenslab {

struct Row {
    long k = 0, m = 0, n = 0;
    RowVerdict verdict = RowVerdict::undetermined;
    std::string engine;
    std::string witness;

    bool operator==(const Row&) const = default;
};

struct ClassificationReport {
    long p = 0;
    long m_bound = 0;
    std::vector<Row> rows;
    std::set<long> realized;
    std::set<long> not_obstructed;
    std::set<long> obstructed;
    std::set<long> undetermined;
    std::set<long> realization_unknown;

    bool operator==(const ClassificationReport&) const = default;
};

// targets n with a known distance-one construction from L(p,1), tagged by
// the construction that produces them
inline std::map<long, std::string> realization_table(long p) {
    if (!is_prime(p) || p < 5)
        throw invalid_params("realization_table needs a prime p >= 5");
    std::map<long, std::string> t{
        {p, "construction-a"},     {p + 4, "construction-b"},
        {p - 1, "construction-c"}, {p + 1, "construction-d"},
        {1, "construction-e"},     {-1, "construction-e"}};
    if (p == 5) t[-5] = "negative-lens construction";
    if (p == 7) t[3] = "simple-knot construction";
    return t;
}

inline ClassificationReport classify_all(long p, long m_bound = 12);

namespace detail {

inline NullOrientation null_orientation(int source_sign, int result_sign) {
    if (source_sign == 1)
        return result_sign == 1 ? NullOrientation::plus_plus : NullOrientation::plus_minus;
    return result_sign == 1 ? NullOrientation::minus_plus : NullOrientation::minus_minus;
}

// full engine chain for one (k, m, n) cell, before the realization overlay
inline Verdict engine_verdict(long p, long k, long m, long n) {
    SurgeryProblem sp(p, k, m);
    if (n == 0) throw invalid_params("target order n must be nonzero");
    if (k == 0) {
        if (m == 0 || m % 2 == 0)
            throw invalid_params("null-homologous rows need odd m != 0");
        if (std::labs(n) != p * std::labs(m))
            throw invalid_params("null-homologous rows need |n| = p|m|");
        const int sY = m > 0 ? 1 : -1;
        const int sn = (n > 0 ? 1 : -1) * sY;
        Verdict v = null_case(p, std::labs(m), null_orientation(sY, sn));
        if (v.outcome == RowVerdict::not_obstructed && n == -p && !mv_negative_lens(p))
            v = {RowVerdict::obstructed, "mv-import",
                 "negative lens target excluded (imported result)"};
        return v;
    }

    const long D = p * m - k * k;
    if (D == 0) throw invalid_params("pm - k^2 = 0 has no lens space target");
    if (std::labs(n) != std::labs(D))
        throw invalid_params("essential rows need |n| = |pm - k^2|");
    Verdict v;
    if (D % 2 == 0) {
        v = spin_deltad_check(p, n);
    } else {
        try {
            v = essential_case(sp, n);
        } catch (const outside_applicability& e) {
            v = {RowVerdict::undetermined, "essential", e.what()};
        }
        if (v.outcome == RowVerdict::not_obstructed && k > 1 && m == 0)
            if (auto lf = linking_form_of_surgery(p, k, m, n))
                v = *lf;
        if (v.outcome != RowVerdict::obstructed && (std::labs(n) == 5 || std::labs(n) == 7) &&
            std::labs(n) != p) {
            const long back_target = (n > 0 ? 1 : -1) * p;
            const auto& back = classify_all(std::labs(n), 12).not_obstructed;
            if (!back.count(back_target))
                v = {RowVerdict::obstructed, "reversal",
                     "reverse surgery to L(" + std::to_string(back_target) +
                         ",1) is excluded"};
        }
    }
    if (v.outcome != RowVerdict::obstructed)
        if (auto imported = lmv_import_witness(p, n))
            v = {RowVerdict::obstructed, "lmv-import", *imported};
    return v;
}

}

// one classification row with the realization overlay applied
inline Row classify_row(long p, long k, long m, long n) {
    Verdict v = detail::engine_verdict(p, k, m, n);
    if (v.outcome != RowVerdict::obstructed) {
        auto table = realization_table(p);
        auto it = table.find(n);
        if (it != table.end()) v = {RowVerdict::realized, "realization", it->second};
    }
    return {k, m, n, v.outcome, v.engine, v.witness};
}

// sweep every surgery cell with |m| <= m_bound and aggregate per target
inline ClassificationReport classify_all(long p, long m_bound) {
    if (m_bound < 1) throw invalid_params("classify_all needs m_bound >= 1");
    SurgeryProblem validate(p, 0, 0);
    (void)validate;

    static thread_local std::map<std::pair<long, long>, ClassificationReport> memo;
    auto hit = memo.find({p, m_bound});
    if (hit != memo.end()) return hit->second;

    const auto table = realization_table(p);
    ClassificationReport rep;
    rep.p = p;
    rep.m_bound = m_bound;

    auto add = [&](long k, long m, long n) {
        Verdict v = detail::engine_verdict(p, k, m, n);
        rep.rows.push_back({k, m, n, v.outcome, v.engine, v.witness});
    };

    for (long m = -m_bound; m <= m_bound; ++m) {
        if (m == 0 || m % 2 == 0) continue;
        add(0, m, p * std::labs(m));
        add(0, m, -p * std::labs(m));
    }
    for (long k = 1; k <= (p - 1) / 2; ++k) {
        for (long m = -m_bound; m <= m_bound; ++m) {
            long D = p * m - k * k;
            if (D == 0) continue;
            add(k, m, std::labs(D));
            add(k, m, -std::labs(D));
        }
    }

    for (Row& r : rep.rows) {
        auto it = table.find(r.n);
        if (it != table.end() && r.verdict != RowVerdict::obstructed) {
            r.verdict = RowVerdict::realized;
            r.engine = "realization";
            r.witness = it->second;
        }
    }
    for (const auto& [n, tag] : table) {
        bool seen = false, kept = false;
        for (const Row& r : rep.rows) {
            if (r.n != n) continue;
            seen = true;
            kept = kept || r.verdict == RowVerdict::realized;
        }
        if (seen && !kept)
            throw error("every route to realized target n=" + std::to_string(n) +
                        " is obstructed");
    }

    std::sort(rep.rows.begin(), rep.rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.k, a.m, a.n) < std::tie(b.k, b.m, b.n);
    });

    std::map<long, std::set<RowVerdict>> by_n;
    for (const Row& r : rep.rows) by_n[r.n].insert(r.verdict);
    for (const auto& [n, vs] : by_n) {
        if (vs.count(RowVerdict::realized)) {
            rep.realized.insert(n);
            rep.not_obstructed.insert(n);
        } else if (vs.count(RowVerdict::not_obstructed)) {
            rep.not_obstructed.insert(n);
        } else if (vs.count(RowVerdict::undetermined)) {
            rep.undetermined.insert(n);
        } else {
            rep.obstructed.insert(n);
        }
    }
    std::set_difference(rep.not_obstructed.begin(), rep.not_obstructed.end(),
                        rep.realized.begin(), rep.realized.end(),
                        std::inserter(rep.realization_unknown, rep.realization_unknown.begin()));

    memo.emplace(std::make_pair(p, m_bound), rep);
    return rep;
}

// even-order targets surviving both the spin check and the realization table
inline std::set<long> classify_even(long p, long m_bound = 12) {
    if (m_bound < 1) throw invalid_params("classify_even needs m_bound >= 1");
    const auto table = realization_table(p);
    std::set<long> orders;
    for (long k = 1; k <= (p - 1) / 2; ++k)
        for (long m = -m_bound; m <= m_bound; ++m) {
            long D = p * m - k * k;
            if (D != 0 && D % 2 == 0) orders.insert(std::labs(D));
        }
    std::set<long> out;
    for (long o : orders)
        for (long n : {o, -o})
            if (spin_deltad_check(p, n).outcome == RowVerdict::not_obstructed &&
                table.count(n))
                out.insert(n);
    return out;
}

// lens space targets reachable through a null-homologous knot
inline std::set<long> classify_null(long p, long m_bound = 12) {
    std::set<long> out{p};
    if (p == 5) out.insert(-5);
    ClassificationReport rep = classify_all(p, m_bound);
    std::set<long> grid;
    for (const Row& r : rep.rows)
        if (r.k == 0 && r.verdict != RowVerdict::obstructed) grid.insert(r.n);
    if (grid != out)
        throw error("null-homologous survivors disagree with the expected set");
    return out;
}

// the rows of classify_all for one homology class k
inline std::vector<Row> classify_essential(long p, long k, long m_bound = 12) {
    if (k < 1) throw invalid_params("classify_essential needs k >= 1");
    SurgeryProblem validate(p, k, 0);
    (void)validate;
    std::vector<Row> out;
    for (const Row& r : classify_all(p, m_bound).rows)
        if (r.k == k) out.push_back(r);
    return out;
}

}
