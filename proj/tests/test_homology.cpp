#include <gtest/gtest.h>

#include <random>

#include "indtopo/complex.hpp"
#include "indtopo/homology.hpp"
#include "indtopo/snf.hpp"
#include "naive_oracle.hpp"
#include "test_util.hpp"

using namespace indtopo;

namespace {
HomologySignature sig(std::map<int, std::uint64_t> betti) {
    HomologySignature s;
    s.betti = std::move(betti);
    return s;
}
HomologySignature of(const Graph& g) { return independence_signature(g); }
}  // namespace

TEST(IndependenceComplex, SmallCases) {
    auto c5 = independence_complex(make_cycle(5));
    EXPECT_EQ(c5.f_vector(), (std::vector<std::size_t>{1, 5, 5}));

    auto c4 = independence_complex(make_cycle(4));
    ASSERT_EQ(c4.face_count(1), 2u);
    EXPECT_EQ(std::vector<std::uint32_t>(c4.face(1, 0).begin(), c4.face(1, 0).end()),
              (std::vector<std::uint32_t>{0, 2}));
    EXPECT_EQ(std::vector<std::uint32_t>(c4.face(1, 1).begin(), c4.face(1, 1).end()),
              (std::vector<std::uint32_t>{1, 3}));

    auto e = independence_complex(Graph());
    EXPECT_FALSE(e.is_void());
    EXPECT_EQ(e.dimension(), -1);
    EXPECT_EQ(e.f_vector(), (std::vector<std::size_t>{1}));
    EXPECT_NE(Complex::void_complex().f_vector(), e.f_vector());
}

TEST(IndependenceComplex, MatchesSubsetFilter) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testutil::random_graph(rng, 4 + rng() % 13, 0.15 + 0.1 * (trial % 5));
        auto k = independence_complex(g);
        auto naive = testutil::naive_independent_sets(g);
        std::map<int, std::vector<std::vector<std::uint32_t>>> by_dim;
        for (auto& s : naive) by_dim[static_cast<int>(s.size()) - 1].push_back(s);
        for (auto& [d, v] : by_dim) {
            std::sort(v.begin(), v.end());
            ASSERT_EQ(k.face_count(d), v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                auto f = k.face(d, i);
                EXPECT_TRUE(std::equal(f.begin(), f.end(), v[i].begin(), v[i].end()));
            }
        }
        EXPECT_EQ(k.dimension() + 1, static_cast<int>(by_dim.size()));
    }
}

TEST(IndependenceComplex, LargeGraphPathAgrees) {
    // More than 64 vertices exercises the dynamic-bitset enumerator.
    auto g = make_cycle_power(70, 20);
    auto k = independence_complex(g);
    EXPECT_EQ(k.face_count(0), 70u);
    EXPECT_EQ(k.dimension(), 2);  // at most floor(70/21) = 3 vertices
    EXPECT_EQ(reduced_homology(k), HomologySignature(of(make_cycle_power(70, 20))));
}

TEST(IndependenceComplex, FaceBudget) {
    Budget b;
    b.max_faces = 100;
    try {
        independence_complex(Graph(10), b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FaceBudgetExceeded);
    }
}

TEST(ReducedHomology, KnownAnchors) {
    EXPECT_EQ(of(make_cycle(5)), sig({{1, 1}}));
    EXPECT_EQ(of(make_cycle(3)), sig({{0, 2}}));
    EXPECT_TRUE(of(make_path(4)).is_zero());
    EXPECT_EQ(of(Graph()), sig({{-1, 1}}));
    EXPECT_EQ(of(make_cycle(12)), sig({{3, 2}}));
    EXPECT_EQ(of(make_cycle(9)), sig({{2, 2}}));
}

TEST(ReducedHomology, AgreesWithRationalOracle) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = testutil::random_graph(rng, 1 + rng() % 11, 0.2 + 0.1 * (trial % 5));
        auto s = of(g);
        EXPECT_EQ(s.betti, testutil::naive_reduced_betti(g)) << to_text(g);
    }
}

TEST(ReducedHomology, EulerCharacteristic) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = testutil::random_graph(rng, 2 + rng() % 12, 0.35);
        auto k = independence_complex(g);
        auto s = reduced_homology(k);
        long faces = 0, betti = 0;
        for (int d = -1; d <= k.dimension(); ++d) faces += ((d + 1) % 2 ? -1 : 1) * static_cast<long>(k.face_count(d));
        for (auto [d, b] : s.betti) betti += ((d + 1) % 2 ? -1 : 1) * static_cast<long>(b);
        EXPECT_EQ(faces, betti);
    }
}

TEST(ReducedHomology, TorsionOfProjectivePlane) {
    // Minimal 6-vertex RP^2.
    auto rp2 = complex_from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                       {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
    auto s = reduced_homology(rp2);
    EXPECT_TRUE(s.betti.empty());
    ASSERT_EQ(s.torsion.count(1), 1u);
    EXPECT_EQ(s.torsion.at(1), (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(homology_connectivity(s), ExtInt(0));
}

TEST(ReducedHomology, BoundarySquaresToZero) {
    auto k = independence_complex(make_cycle_power(13, 2));
    for (int d = 1; d <= k.dimension(); ++d)
        EXPECT_NO_THROW(assert_boundary_square_zero(boundary_matrix(k, d - 1), boundary_matrix(k, d)));
    SparseMatrix bad = boundary_matrix(k, 1);
    bad.columns[0][0].second *= -1;
    EXPECT_THROW(assert_boundary_square_zero(boundary_matrix(k, 0), bad), Error);
}

TEST(ReducedHomology, MatrixBudget) {
    HomologyOptions opt;
    opt.budget.max_matrix_entries = 10;
    try {
        reduced_homology(independence_complex(make_cycle(9)), opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MatrixBudgetExceeded);
    }
}

TEST(Join, IdentityAndSpheres) {
    auto empty = independence_complex(Graph());
    auto c5 = independence_complex(make_cycle(5));
    auto j = simplicial_join(empty, c5);
    EXPECT_EQ(j.f_vector(), c5.f_vector());

    auto s0 = independence_complex(make_complete(2));
    auto square = simplicial_join(s0, s0);
    EXPECT_EQ(square.f_vector(), (std::vector<std::size_t>{1, 4, 4}));
    EXPECT_EQ(reduced_homology(square), sig({{1, 1}}));

    EXPECT_EQ(reduced_homology(simplicial_join(s0, c5)), sig({{2, 1}}));
    EXPECT_TRUE(simplicial_join(Complex::void_complex(), c5).is_void());
}

TEST(Join, SuspensionAndDisjointUnionProperties) {
    std::mt19937 rng(31);
    auto s0 = independence_complex(make_complete(2));
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testutil::random_graph(rng, 1 + rng() % 8, 0.4);
        auto h = testutil::random_graph(rng, 1 + rng() % 6, 0.4);
        auto kg = independence_complex(g);
        EXPECT_EQ(reduced_homology(simplicial_join(s0, kg)), shift(reduced_homology(kg), 1));
        auto u = disjoint_union(g, h).graph;
        EXPECT_EQ(of(u), reduced_homology(simplicial_join(kg, independence_complex(h))));
    }
}

TEST(Signature, ShiftAndConnectivity) {
    EXPECT_EQ(shift(sig({{-1, 1}}), 1), sig({{0, 1}}));
    EXPECT_EQ(shift(sig({{1, 2}}), 2), sig({{3, 2}}));
    EXPECT_TRUE(shift(HomologySignature{}, 5).is_zero());
    EXPECT_EQ(homology_connectivity(sig({{0, 1}})), ExtInt(-1));
    EXPECT_EQ(homology_connectivity(sig({{1, 1}})), ExtInt(0));
    EXPECT_TRUE(homology_connectivity(HomologySignature{}).is_infinite());
    EXPECT_EQ(homology_connectivity(sig({{-1, 1}})), ExtInt(-2));
    auto j = to_json(sig({{3, 2}}));
    EXPECT_EQ(j.dump(), R"({"betti":{"3":2},"torsion":{}})");
    EXPECT_EQ(signature_from_json(j), sig({{3, 2}}));
}

TEST(Smith, DenseDiagonal) {
    std::vector<std::vector<mpz_class>> a{{2, 0}, {0, 3}};
    auto d = dense_smith_diagonal(a);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], 1);
    EXPECT_EQ(d[1], 6);

    std::vector<std::vector<mpz_class>> b{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto e = dense_smith_diagonal(b);
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e[0], 2);
    EXPECT_EQ(e[1], 6);
    EXPECT_EQ(e[2], 12);
}

TEST(Smith, SparseMatchesDense) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7;
        SparseMatrix s;
        s.rows = m;
        s.cols = n;
        s.columns.resize(n);
        std::vector<std::vector<mpz_class>> dense(m, std::vector<mpz_class>(n, 0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (rng() % 2) {
                    int v = val(rng);
                    if (!v) continue;
                    s.columns[j].emplace_back(static_cast<std::uint32_t>(i), v);
                    dense[i][j] = v;
                }
        auto r = smith_form(s);
        auto d = dense_smith_diagonal(dense);
        std::vector<mpz_class> tors;
        for (auto& x : d)
            if (x != 1) tors.push_back(x);
        EXPECT_EQ(r.rank, d.size());
        EXPECT_EQ(r.torsion, tors);
    }
}

TEST(Smith, PrimePowers) {
    EXPECT_EQ(prime_power_parts(mpz_class(12)), (std::vector<std::uint64_t>{3, 4}));
    EXPECT_EQ(prime_power_parts(mpz_class(2)), (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(prime_power_parts(mpz_class(360)), (std::vector<std::uint64_t>{5, 8, 9}));
}
