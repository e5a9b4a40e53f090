#include <catch2/catch_amalgamated.hpp>

#include <lenslab/lens.hpp>
#include <lenslab/plumbing.hpp>
#include <lenslab/plumbing_json.hpp>

#include "oracle.hpp"

#include <algorithm>
#include <random>

using namespace lenslab;

namespace {

PlumbingGraph chain(std::vector<long> w) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i) edges.emplace_back(i, i + 1);
    return PlumbingGraph(std::move(w), edges);
}

std::vector<Rational> d_multiset(const DTable& t) {
    std::vector<Rational> out;
    for (const auto& e : t.entries) out.push_back(e.d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> lens_multiset(long p, long q) {
    std::vector<Rational> out;
    for (long i = 0; i < p; ++i) out.push_back(d_lens(p, q, i));
    std::sort(out.begin(), out.end());
    return out;
}

Rational pairing(const PlumbingGraph& G, const CharVector& w) {
    RatVector x = mat_vec(inverse(G.intersection_form()), w);
    Rational s = 0;
    for (int i = 0; i < G.size(); ++i) s += x[i] * w[i];
    return s;
}

}

TEST_CASE("graph construction validation") {
    CHECK_THROWS_AS(PlumbingGraph({}, std::vector<std::pair<int, int>>{}), invalid_params);
    CHECK_THROWS_AS(PlumbingGraph({-2, -2}, std::vector<std::pair<int, int>>{{0, 2}}),
                    invalid_params);
    CHECK_THROWS_AS(PlumbingGraph({-2, -2}, std::vector<std::pair<int, int>>{{0, 0}}),
                    invalid_params);
    CHECK_THROWS_AS(
        PlumbingGraph({-2, -2}, std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}),
        invalid_params);
    CHECK_THROWS_AS(
        PlumbingGraph({-2, -2}, std::vector<std::tuple<int, int, long>>{{0, 1, 0}}),
        invalid_params);
    CHECK_THROWS_AS(PlumbingGraph({-2}, std::vector<std::pair<int, int>>{}, 1),
                    invalid_params);
}

TEST_CASE("degrees and bad vertices") {
    PlumbingGraph G = build_model_graph(GraphFamily::sporadic_5_2, 5, 2, -1);
    CHECK(G.degree(4) == 3);
    CHECK(G.degree(0) == 1);
    CHECK(bad_vertices(G) == std::set<int>{4});

    PlumbingGraph star = build_model_graph(GraphFamily::star, 5, 2, 5);
    CHECK(bad_vertices(star).empty());

    PlumbingGraph lonely({1}, std::vector<std::pair<int, int>>{});
    CHECK(bad_vertices(lonely) == std::set<int>{0});
}

TEST_CASE("characteristic box") {
    PlumbingGraph single({-4}, std::vector<std::pair<int, int>>{});
    auto box = char_box(single);
    REQUIRE(box.size() == 4);
    CHECK(box.front() == CharVector{-2});
    CHECK(box.back() == CharVector{4});

    auto pair_box = char_box(chain({-2, -3}));
    REQUIRE(pair_box.size() == 6);
    CHECK(pair_box.front() == CharVector{0, -1});
    CHECK(pair_box[1] == CharVector{0, 1});
    CHECK(pair_box.back() == CharVector{2, 3});

    CHECK_THROWS_AS(char_box(PlumbingGraph({0}, std::vector<std::pair<int, int>>{})),
                    empty_box);
}

TEST_CASE("push-down paths") {
    PlumbingGraph single({-4}, std::vector<std::pair<int, int>>{});
    auto path = push_down_path(single, {4});
    CHECK(path.outcome == PathOutcome::maximising);
    CHECK(path.terminal == CharVector{-4});
    CHECK(push_down_path(single, {0}).outcome == PathOutcome::maximising);

    CHECK_THROWS_AS(push_down_path(single, {1}), invalid_params);
    CHECK_THROWS_AS(push_down_path(single, {0, 0}), invalid_params);
}

TEST_CASE("push-down preserves the squared pairing and the class") {
    std::mt19937 rng(99);
    std::vector<PlumbingGraph> graphs;
    graphs.push_back(chain({-2, -2}));
    graphs.push_back(chain({-2, -3, -2}));
    graphs.push_back(build_model_graph(GraphFamily::star, 5, 2, 3));
    graphs.push_back(build_model_graph(GraphFamily::sporadic_5_2, 5, 2, -2));
    for (const auto& G : graphs) {
        detail::FormData fd(G);
        for (const CharVector& w0 : char_box(G)) {
            auto path = push_down_path(G, w0);
            if (path.outcome != PathOutcome::maximising) continue;
            CHECK(pairing(G, path.terminal) == pairing(G, w0));
            for (int v = 0; v < G.size(); ++v) {
                CHECK(path.terminal[v] >= G.weight(v));
                CHECK(path.terminal[v] <= -G.weight(v) - 2);
            }
            // same class: the difference must be in 2 Q Z^n
            std::vector<int32_t> a(w0.begin(), w0.end());
            std::vector<int32_t> b(path.terminal.begin(), path.terminal.end());
            CHECK(detail::key_of(fd.adj, fd.two_det, a.data(), G.size()) ==
                  detail::key_of(fd.adj, fd.two_det, b.data(), G.size()));
        }
    }
}

TEST_CASE("single vertex tables match lens spaces") {
    for (long p = 2; p <= 9; ++p) {
        PlumbingGraph G({-p}, std::vector<std::pair<int, int>>{});
        std::vector<Rational> expect;
        for (long i = 0; i < p; ++i) expect.push_back(-d_Ln1(p, i));
        std::sort(expect.begin(), expect.end());
        CHECK(d_multiset(d_plumbed(G)) == expect);
    }
}

TEST_CASE("star (5,2,3) bounds a lens space") {
    PlumbingGraph G = build_model_graph(GraphFamily::star, 5, 2, 3);
    REQUIRE(G.size() == 4);
    DTable t = d_plumbed(G);
    CHECK(t.entries.size() == 11);
    CHECK(d_multiset(t) == lens_multiset(11, 3));

    auto sc = self_conjugate_class_indices(G, t);
    REQUIRE(sc.size() == 1);
    CHECK(t.entries[sc[0]].d == d_lens(11, 3, 1));
}

TEST_CASE("self-conjugate class counts follow the determinant parity") {
    for (long p = 2; p <= 9; ++p) {
        PlumbingGraph G({-p}, std::vector<std::pair<int, int>>{});
        CHECK(self_conjugate_classes(G).size() == (p % 2 == 0 ? 2u : 1u));
    }
}

TEST_CASE("census and closed forms for star (5,2,5)") {
    PlumbingGraph G = build_model_graph(GraphFamily::star, 5, 2, 5);
    REQUIRE(G.size() == 6);
    auto inits = maximising_initiators(G);
    CHECK(inits.size() == 21);

    DTable t = d_plumbed(G);
    REQUIRE(t.entries.size() == 21);

    // the distinguished class: 2 on the last third-arm vertex, -1 at centre
    CharVector tm{0, 0, 0, 0, 2, -1};
    std::size_t tm_idx = class_index_of(G, t, tm);
    auto sc = self_conjugate_class_indices(G, t);
    REQUIRE(sc.size() == 1);
    CHECK(sc[0] == tm_idx);
    CHECK(t.entries[tm_idx].d == rat(5 + 5 - 2 * 2 - 2, 4));

    std::size_t comp = mu_shifted_class_index(G, t, tm_idx);
    CHECK(t.entries[comp].d == rat(5, 21));
    CHECK(std::count(inits.begin(), inits.end(), tm) == 1);
}

TEST_CASE("marked vertex requirements") {
    PlumbingGraph no_mark = chain({-2, -2});
    DTable t = d_plumbed(no_mark);
    CHECK_THROWS_AS(mu_shifted_class_index(no_mark, t, 0), invalid_params);

    // star with m = k+1 has an empty first arm and no marked vertex
    PlumbingGraph tight = build_model_graph(GraphFamily::star, 5, 2, 3);
    CHECK_FALSE(tight.marked_vertex().has_value());
    PlumbingGraph wide = build_model_graph(GraphFamily::star, 5, 2, 5);
    REQUIRE(wide.marked_vertex().has_value());
    CHECK(*wide.marked_vertex() == 0);
}

TEST_CASE("tables refuse indefinite forms and two bad vertices") {
    CHECK_THROWS_AS(d_plumbed(PlumbingGraph({2}, std::vector<std::pair<int, int>>{})),
                    precondition_violated);
    CHECK_THROWS_AS(d_plumbed(chain({-3, -1, -3, -1, -4})), precondition_violated);
}

TEST_CASE("model graph validation") {
    CHECK_THROWS_AS(build_model_graph(GraphFamily::star, 5, 1, 5), invalid_params);
    CHECK_THROWS_AS(build_model_graph(GraphFamily::star, 5, 2, 2), invalid_params);
    CHECK_THROWS_AS(build_model_graph(GraphFamily::sporadic_5_2, 5, 2, 0), invalid_params);
    CHECK_THROWS_AS(build_model_graph(GraphFamily::sporadic_7_2, 5, 2, -1), invalid_params);
    CHECK_THROWS_AS(build_model_graph(GraphFamily::sporadic_7_3, 7, 3, 1), invalid_params);
    CHECK_THROWS_AS(build_model_graph(GraphFamily::surgery_trace, 1, 1, 1), invalid_params);
}

TEST_CASE("surgery trace determinant") {
    for (long p : {2L, 3L, 5L, 7L})
        for (long k = 1; k < p; ++k)
            for (long m : {-3L, -1L, 1L, 2L, 4L}) {
                PlumbingGraph G = build_model_graph(GraphFamily::surgery_trace, p, k, m);
                Int expect = Int(k * k * (p - 1) + m * p);
                if (p % 2 == 0) expect = -expect;
                CHECK(det(G.intersection_form()) == expect);
            }
}

TEST_CASE("oracle agreement on small instances") {
    std::vector<PlumbingGraph> graphs;
    graphs.push_back(build_model_graph(GraphFamily::star, 5, 2, 4));
    graphs.push_back(build_model_graph(GraphFamily::sporadic_5_2, 5, 2, -3));
    graphs.push_back(build_model_graph(GraphFamily::sporadic_7_3, 7, 3, 0));
    graphs.push_back(chain({-2, -3, -2}));
    for (const auto& G : graphs)
        CHECK(oracle::agrees_with(G, d_plumbed(G)));
}

TEST_CASE("json graph loading") {
    auto G = plumbing_from_json_text(
        R"({"vertices":[{"weight":-2},{"weight":-3}],"edges":[[0,1]],"marked":1})");
    CHECK(G.size() == 2);
    CHECK(G.weight(1) == -3);
    CHECK(G.marked_vertex() == 1);

    auto H = plumbing_from_json_text(
        R"({"vertices":[{"weight":-2},{"weight":-2}],"edges":[[0,1,3]]})");
    CHECK(H.edge_map().at({0, 1}) == 3);

    CHECK_THROWS_AS(plumbing_from_json_text("{"), invalid_params);
    CHECK_THROWS_AS(plumbing_from_json_text(R"({"vertices":[]})"), invalid_params);
    CHECK_THROWS_AS(plumbing_from_json_text(R"({"vertices":[{"weight":-2}],"edges":[[0,0]]})"),
                    invalid_params);
    CHECK_THROWS_AS(
        plumbing_from_json_text(
            R"({"vertices":[{"weight":-2},{"weight":-2}],"edges":[[0,1],[0,1]]})"),
        invalid_params);
}
