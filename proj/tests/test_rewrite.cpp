#include <gtest/gtest.h>

#include <random>

#include "indtopo/rewrite.hpp"
#include "test_util.hpp"

using namespace indtopo;

namespace {

HomologyOracle& oracle() {
    static HomologyOracle o;
    return o;
}

HomologySignature sig(std::map<int, std::uint64_t> betti) {
    HomologySignature s;
    s.betti = std::move(betti);
    return s;
}

bool passes(const std::optional<SplitClaim>& c) { return c && verify_claim(*c, oracle()).pass; }

Graph star(std::size_t leaves) {
    Graph g(leaves + 1);
    for (std::size_t i = 1; i <= leaves; ++i) g.connect_at(0, i);
    return g;
}

Graph exkozlov_graph(long n) { return make_cycle(n); }

const char* kExkozlov = "add(0,4)!2; del(0,1)!3; del(3,4)!1";

}  // namespace

TEST(Fold, Examples) {
    auto p3 = make_path(3);
    auto c = check_fold(p3, 0, 2);
    ASSERT_TRUE(c);
    auto r = verify_claim(*c, oracle());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.left, sig({{0, 1}}));
    EXPECT_FALSE(check_fold(p3, 0, 1));
    auto c4 = check_fold(make_cycle(4), 0, 2);
    ASSERT_TRUE(c4);
    EXPECT_EQ(verify_claim(*c4, oracle()).right, sig({{0, 1}}));
    EXPECT_THROW(check_fold(p3, 0, 7), Error);
}

TEST(ClosedNbhd, Examples) {
    auto k2 = check_closed_nbhd(make_complete(2), 0, 1);
    ASSERT_TRUE(k2);
    auto r = verify_claim(*k2, oracle());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.left, sig({{0, 1}}));
    EXPECT_TRUE(passes(check_closed_nbhd(star(3), 1, 0)));
    EXPECT_TRUE(passes(check_closed_nbhd(make_path(4), 0, 1)));
    EXPECT_FALSE(check_closed_nbhd(make_path(4), 0, 2));
}

TEST(Isolating, Examples) {
    auto g = add_edge(make_cycle(9), Edge{0, 4});
    EXPECT_EQ(is_isolating(g, Edge{0, 4}), std::optional<Label>(2));
    EXPECT_EQ(is_isolating(g, Edge{0, 1}), std::optional<Label>(3));
    EXPECT_EQ(is_isolating(make_cycle(6), Edge{0, 1}), std::nullopt);
    try {
        is_isolating(make_cycle(6), Edge{0, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingEdge);
    }
}

TEST(P4Split, Examples) {
    auto g = add_edge(make_cycle(6), Edge{0, 3});
    auto c = check_p4_split(g, Edge{0, 3}, 1, 4);
    ASSERT_TRUE(c);
    auto r = verify_claim(*c, oracle());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.left, sig({{1, 2}}));
    EXPECT_FALSE(check_p4_split(add_edge(make_cycle(9), Edge{0, 7}), Edge{0, 7}, 1, 6));
    EXPECT_FALSE(check_p4_split(make_cycle(6), Edge{0, 1}, 5, 2));
}

TEST(GeneralTSplit, Examples) {
    auto g = add_edge(make_cycle(6), Edge{0, 3});
    auto c = check_general_T_split(g, Edge{0, 3}, {1, 0, 3, 4}, oracle());
    ASSERT_TRUE(c);
    EXPECT_TRUE(verify_claim(*c, oracle()).pass);
    EXPECT_EQ(c->notes.size(), 1u);
    EXPECT_FALSE(check_general_T_split(g, Edge{0, 3}, {0, 3}, oracle()));
    EXPECT_FALSE(check_general_T_split(make_cycle(8), Edge{0, 1}, {0, 1, 2, 3}, oracle()));
}

TEST(MayerVietoris, Examples) {
    auto c = check_mayer_vietoris(make_cycle(3), {0, 1}, {1, 2}, oracle());
    ASSERT_TRUE(c);
    auto r = verify_claim(*c, oracle());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.left, sig({{0, 2}}));
    EXPECT_FALSE(check_mayer_vietoris(make_path(3), {0, 1}, {1, 2}, oracle()));
    EXPECT_FALSE(check_mayer_vietoris(make_cycle(5), {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, oracle()));
}

TEST(CliqueNbhd, Examples) {
    EXPECT_TRUE(passes(check_clique_nbhd(star(3), 1)));
    auto c = check_clique_nbhd(make_path(4), 0);
    ASSERT_TRUE(c);
    auto r = verify_claim(*c, oracle());
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.right.is_zero());
    EXPECT_FALSE(check_clique_nbhd(make_cycle(5), 0));
}

TEST(Degree, Examples) {
    auto d1 = apply_degree1(make_complete(2), 0);
    ASSERT_TRUE(d1);
    auto r = verify_claim(*d1, oracle());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.left, sig({{0, 1}}));

    auto d2 = apply_degree2_rewire(make_path(5), 2);
    ASSERT_TRUE(d2);
    EXPECT_EQ(d2->graph.labels(), (std::vector<Label>{0, 4}));
    EXPECT_TRUE(d2->graph.has_edge(0, 4));
    auto r2 = verify_claim(d2->claim, oracle());
    EXPECT_TRUE(r2.pass);
    EXPECT_EQ(r2.left, sig({{1, 1}}));
    // Triangle: u and w share more than v.
    EXPECT_FALSE(apply_degree2_rewire(make_complete(3), 0));
}

TEST(VerifyClaim, NegativeControlAndEmptyGraph) {
    auto c = *check_fold(make_path(3), 0, 2);
    c.right[0].shift = 1;
    EXPECT_FALSE(verify_claim(c, oracle()).pass);

    auto k2 = *apply_degree1(make_complete(2), 0);
    auto r = verify_claim(k2, oracle());
    EXPECT_TRUE(r.pass);
    auto j = to_json(r);
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["kind"], "degree1");
}

TEST(Rules, RandomSoundness) {
    std::mt19937 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testutil::random_graph(rng, 2 + rng() % 8, 0.2 + 0.1 * (trial % 5));
        for (Label u : g.labels()) {
            for (Label v : g.labels()) {
                if (u == v) continue;
                for (auto c : {check_fold(g, u, v), check_closed_nbhd(g, u, v)})
                    if (c) {
                        ++checked;
                        EXPECT_TRUE(verify_claim(*c, oracle()).pass) << to_text(g);
                    }
            }
            if (auto c = check_clique_nbhd(g, u)) {
                EXPECT_TRUE(verify_claim(*c, oracle()).pass);
            }
            if (auto c = apply_degree1(g, u)) {
                EXPECT_TRUE(verify_claim(*c, oracle()).pass);
            }
            if (auto c = apply_degree2_rewire(g, u)) {
                EXPECT_TRUE(verify_claim(c->claim, oracle()).pass);
            }
        }
        for (auto e : g.edges()) {
            if (auto c = check_isolating(g, e)) {
                ++checked;
                EXPECT_EQ(oracle().signature(g), oracle().signature(remove_edge(g, e)));
            }
            for (Label x : g.labels())
                for (Label y : g.labels())
                    if (auto c = check_p4_split(g, e, x, y)) {
                        EXPECT_TRUE(verify_claim(*c, oracle()).pass);
                    }
            EXPECT_TRUE(verify_claim(subdiv3_claim(g, e), oracle()).pass);
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(Script, ParseAndRender) {
    auto s = parse_script(kExkozlov);
    ASSERT_EQ(s.ops.size(), 3u);
    EXPECT_EQ(s.ops[0].action, IsolatingOp::Action::Add);
    EXPECT_EQ(s.ops[0].edge.u, 0u);
    EXPECT_EQ(s.ops[0].edge.v, 4u);
    EXPECT_EQ(s.ops[0].certificate, 2u);
    EXPECT_EQ(render(s), kExkozlov);
    EXPECT_EQ(parse_script(render(s)), s);
    EXPECT_EQ(parse_script("# zigzag\nadd( 0 , 4 ) ! 2\n\ndel(0,1)!3 # second\ndel(3,4)!1\n"), s);
    EXPECT_TRUE(parse_script("").ops.empty());
    try {
        parse_script("add(0,4)!2;\nadd(1,2)!!");
        FAIL();
    } catch (const LocatedError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 10u);
    }
    EXPECT_THROW(parse_script("mul(0,1)!2"), Error);
    EXPECT_THROW(parse_script("add(0,1)!2 del(0,1)!2"), Error);
}

TEST(Script, ExkozlovZigzag) {
    for (long n = 9; n <= 15; ++n) {
        auto g = exkozlov_graph(n);
        auto res = run_script(g, parse_script(kExkozlov));
        ASSERT_EQ(res.log.size(), 3u);
        auto comps = connected_components(res.graph);
        ASSERT_EQ(comps.size(), 2u);
        auto path = res.graph.induced(comps[0].test(*res.graph.index_of(1)) ? comps[0] : comps[1]);
        EXPECT_EQ(path.labels(), (std::vector<Label>{1, 2, 3}));
        EXPECT_TRUE(is_path_graph(path));
        auto expected = disjoint_union(make_path(3), make_cycle(n - 3)).graph;
        EXPECT_EQ(oracle().signature(res.graph), oracle().signature(expected));
        EXPECT_EQ(oracle().signature(g), shift(oracle().signature(make_cycle(n - 3)), 1));
    }
}

TEST(Script, FailuresAreAtomic) {
    auto g = make_cycle(9);
    try {
        run_script(g, parse_script("del(0,1)!3; add(0,4)!2; del(3,4)!1"));
        FAIL();
    } catch (const LocatedError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CertificateInvalid);
        EXPECT_EQ(e.index(), 0u);
    }
    try {
        run_script(g, parse_script("add(0,4)!2; del(0,1)!5"));
        FAIL();
    } catch (const LocatedError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CertificateInvalid);
        EXPECT_EQ(e.index(), 1u);
    }
    try {
        run_script(g, parse_script("add(0,1)!3"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EdgeConflict);
    }
    EXPECT_EQ(g, make_cycle(9));
    EXPECT_EQ(run_script(g, Script{}).graph, g);
}
