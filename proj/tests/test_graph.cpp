#include <gtest/gtest.h>

#include <random>

#include "indtopo/graph.hpp"
#include "test_util.hpp"

using namespace indtopo;

namespace {
std::vector<Label> L(std::initializer_list<Label> xs) { return xs; }
}  // namespace

TEST(Families, CyclePowerNeighbourhoods) {
    auto g = make_cycle_power(8, 2);
    EXPECT_EQ(neighborhood(g, 0, NbhdKind::Open), L({1, 2, 6, 7}));
    EXPECT_EQ(make_cycle_power(6, 1).size(), 6u);
    EXPECT_EQ(make_cycle_power(5, 2), make_complete(5));
    EXPECT_TRUE(make_cycle_power(0, 3).empty());
    EXPECT_EQ(make_cycle_power(14, 2).size(), 28u);
}

TEST(Families, PathPower) {
    auto g = make_path_power(4, 2);
    std::vector<std::pair<Label, Label>> edges;
    for (auto e : g.edges()) edges.emplace_back(e.u, e.v);
    std::vector<std::pair<Label, Label>> want{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
    EXPECT_EQ(edges, want);
    EXPECT_EQ(make_path_power(3, 3), make_complete(3));
    EXPECT_TRUE(make_path_power(0, 2).empty());
    EXPECT_TRUE(make_path_power(-4, 2).empty());
}

TEST(Families, PowersOfRadiusOneAreCyclesAndPaths) {
    for (long n = 3; n < 12; ++n) {
        auto c = make_cycle_power(n, 1);
        EXPECT_EQ(c.size(), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < c.order(); ++i) EXPECT_EQ(c.degree_at(i), 2u);
        EXPECT_TRUE(is_path_graph(make_path_power(n, 1)));
    }
}

TEST(Families, Cylinder) {
    auto g = make_cylinder(2, 5);
    EXPECT_EQ(g.order(), 10u);
    EXPECT_EQ(g.size(), 15u);
    EXPECT_EQ(make_cylinder(1, 5), make_cycle(5));
    auto h = make_cylinder(4, 5);
    EXPECT_EQ(h.order(), 20u);
    EXPECT_EQ(h.degree_at(*h.index_of(5)), 4u);  // (1,0) is interior
}

TEST(Families, Subdivision) {
    auto c9 = subdivide(make_cycle(3), SubdivisionMode::AllEdgesInto3Parts);
    EXPECT_EQ(c9.order(), 9u);
    EXPECT_EQ(c9.size(), 9u);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(c9.degree_at(i), 2u);
    EXPECT_EQ(connected_components(c9).size(), 1u);

    auto p5 = subdivide(make_complete(2), SubdivisionMode::OneEdgeWith3NewVertices, Edge{0, 1});
    EXPECT_EQ(p5.order(), 5u);
    EXPECT_TRUE(is_path_graph(p5));

    EXPECT_EQ(subdivide(make_complete(4), SubdivisionMode::AllEdgesInto3Parts).order(), 16u);
    EXPECT_THROW(subdivide(make_path(3), SubdivisionMode::OneEdgeWith3NewVertices, Edge{0, 2}), Error);
}

TEST(Neighbourhoods, VertexAndEdge) {
    auto c6 = make_cycle(6);
    EXPECT_EQ(neighborhood(c6, 0, NbhdKind::Closed), L({0, 1, 5}));
    EXPECT_EQ(neighborhood(c6, Edge{0, 1}, NbhdKind::Closed), L({0, 1, 2, 5}));
    try {
        neighborhood(c6, Edge{0, 1}, NbhdKind::Open);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OpenEdgeNeighborhoodUnsupported);
    }
    try {
        neighborhood(c6, 17, NbhdKind::Open);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownVertex);
    }
}

TEST(Neighbourhoods, ClosedIsOpenPlusSelfAndEdgeIsUnion) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = testutil::random_graph(rng, 9, 0.4);
        for (Label v : g.labels()) {
            auto open = neighborhood(g, v, NbhdKind::Open);
            open.push_back(v);
            std::sort(open.begin(), open.end());
            EXPECT_EQ(open, neighborhood(g, v, NbhdKind::Closed));
        }
        for (auto e : g.edges()) {
            auto a = neighborhood(g, e.u, NbhdKind::Closed), b = neighborhood(g, e.v, NbhdKind::Closed);
            std::vector<Label> u;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
            EXPECT_EQ(u, neighborhood(g, e, NbhdKind::Closed));
        }
    }
}

TEST(Edits, RemoveAddExamplesAndBasics) {
    auto c9p = add_edge(make_cycle(9), Edge{0, 4});
    EXPECT_TRUE(c9p.has_edge(4, 0));
    EXPECT_EQ(c9p.size(), 10u);

    auto p5 = remove_vertices(make_cycle(6), {0});
    EXPECT_EQ(p5.order(), 5u);
    EXPECT_TRUE(is_path_graph(p5));

    auto u = disjoint_union(make_complete(2), make_complete(2));
    EXPECT_EQ(u.graph.order(), 4u);
    EXPECT_EQ(u.graph.size(), 2u);
    EXPECT_EQ(u.second_label_map.at(0), 2u);

    try {
        add_edge(make_cycle(5), Edge{0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EdgeAlreadyPresent);
    }
    try {
        remove_edge(make_cycle(5), Edge{0, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingEdge);
    }
    EXPECT_THROW(remove_vertices(make_cycle(5), {9}), Error);
}

TEST(Edits, AddThenRemoveIsIdentity) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testutil::random_graph(rng, 8, 0.3);
        for (std::size_t i = 0; i < g.order(); ++i)
            for (std::size_t j = i + 1; j < g.order(); ++j)
                if (!g.adjacent_at(i, j)) {
                    Edge e{g.label(i), g.label(j)};
                    EXPECT_EQ(remove_edge(add_edge(g, e), e), g);
                }
    }
}

TEST(Edits, InducedSubgraphComposes) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testutil::random_graph(rng, 10, 0.5);
        std::vector<Label> w, u;
        for (Label l : g.labels())
            if (rng() % 3) {
                w.push_back(l);
                if (rng() % 2) u.push_back(l);
            }
        EXPECT_EQ(induced_subgraph(induced_subgraph(g, w), u), induced_subgraph(g, u));
    }
}

TEST(Chordal, KnownCases) {
    EXPECT_FALSE(is_chordal(make_cycle(4)));
    EXPECT_TRUE(is_chordal(make_complete(4)));
    EXPECT_FALSE(is_chordal(subdivide(make_cycle(3), SubdivisionMode::AllEdgesInto3Parts)));
    for (long n = 4; n < 15; ++n) EXPECT_FALSE(is_chordal(make_cycle(n))) << n;
    for (long n = 1; n < 10; ++n) EXPECT_TRUE(is_chordal(make_complete(n)));
    EXPECT_TRUE(is_chordal(Graph()));
}

TEST(Chordal, TreesAndWitness) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng() % 12;
        Graph t(n);
        for (std::size_t i = 1; i < n; ++i) t.connect_at(i, rng() % i);
        auto peo = is_chordal(t);
        ASSERT_TRUE(peo);
        EXPECT_EQ(peo->size(), n);
    }
    auto g = testutil::random_chordal(rng, 10);
    auto peo = is_chordal(g);
    ASSERT_TRUE(peo);
    // Later neighbours of each vertex form a clique.
    for (std::size_t k = 0; k < peo->size(); ++k) {
        Bitset later(g.order());
        for (std::size_t m = k + 1; m < peo->size(); ++m)
            if (g.has_edge((*peo)[k], (*peo)[m])) later.set(g.require_index((*peo)[m]));
        EXPECT_TRUE(is_clique(g, later));
    }
}

TEST(Domination, Values) {
    EXPECT_EQ(domination_number(make_cycle(6)), 2u);
    EXPECT_EQ(domination_number(make_complete(5)), 1u);
    EXPECT_EQ(domination_number(Graph()), 0u);
    EXPECT_EQ(domination_number(Graph(4)), 4u);
    try {
        domination_number(make_cycle(30));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooLargeForExactSearch);
    }
}

TEST(Domination, MatchesExhaustiveSubsets) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = testutil::random_graph(rng, 1 + rng() % 11, 0.3);
        std::size_t n = g.order(), best = n;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            Bitset cov(n);
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) cov |= closed_nbhd(g, i);
            if (cov.count() == n) best = std::min<std::size_t>(best, std::popcount(mask));
        }
        EXPECT_EQ(domination_number(g), best);
    }
}

TEST(Formats, TextAndJsonRoundTrip) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_graph(rng, 9, 0.4);
        EXPECT_EQ(graph_from_text(to_text(g)), g);
        EXPECT_EQ(graph_from_json(to_json(g)), g);
        auto h = remove_vertices(g, {g.label(0)});
        EXPECT_EQ(graph_from_text(to_text(h)), h);
    }
    auto g = graph_from_text("# a comment\nn 3\ne 0 1 # trailing\n\ne 1 2\n");
    EXPECT_EQ(g, make_path(3));
    EXPECT_THROW(graph_from_text("n 2\ne 0 5\n"), Error);
    EXPECT_THROW(graph_from_text("e 0 1\n"), Error);
    EXPECT_THROW(graph_from_text("n 2\nx 0 1\n"), Error);
}
