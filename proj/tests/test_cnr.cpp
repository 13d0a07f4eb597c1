#include <gtest/gtest.h>

#include <set>

#include "indtopo/cnr.hpp"

using namespace indtopo;

namespace {

std::set<std::pair<Label, Label>> edge_set(const CnrLog& log) {
    std::set<std::pair<Label, Label>> s;
    for (const auto& ce : log.edges) {
        auto e = ce.edge.normalized();
        s.insert({e.u, e.v});
    }
    return s;
}

// closed form, written out independently of k_multiplicity
std::map<long, std::uint64_t> k_closed(long r) {
    std::map<long, std::uint64_t> m;
    for (long i = 4 * r + 6; i <= 6 * r + 3; ++i) {
        long twice = i <= 5 * r + 4 ? (i - 4 * r - 5) * (i - 2 * r - 2) : (6 * r + 4 - i) * (i - 2 * r - 1);
        if (twice) m[i] = static_cast<std::uint64_t>(twice / 2);
    }
    return m;
}

}  // namespace

TEST(Cnr, EdgesN14R2) {
    auto log = build_overline(14, 2);
    std::set<std::pair<Label, Label>> want{{1, 6}, {2, 7}, {3, 8}, {4, 9}, {1, 9}, {0, 10}, {0, 11}, {10, 13}};
    EXPECT_EQ(edge_set(log), want);
    EXPECT_EQ(log.edges.size(), 8u);
    EXPECT_EQ(log.graph_after.size(), make_cycle_power(14, 2).size() + 8);
    EXPECT_EQ(log.edges.back().raw_u, -1);
    EXPECT_EQ(log.edges.back().raw_v, 10);
}

TEST(Cnr, EdgesN9R1) {
    auto log = build_overline(9, 1);
    std::set<std::pair<Label, Label>> want{{0, 7}};
    EXPECT_EQ(edge_set(log), want);
}

TEST(Cnr, TooSmall) {
    try {
        build_overline(13, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NTooSmall);
    }
}

TEST(Cnr, EdgeCountIdentity) {
    for (long r = 1; r <= 8; ++r)
        for (long n : {5 * r + 4, 5 * r + 7, 6 * r + 10}) {
            long want = r * (r + 1) / 2;
            for (long s = 1; s <= r - 1; ++s) want += r + 2 * s + 1;
            auto log = build_overline(n, r);
            EXPECT_EQ(static_cast<long>(log.edges.size()), want) << n << "," << r;
            EXPECT_EQ(static_cast<long>(log.graph_after.size() - make_cycle_power(n, r).size()), want);
        }
}

TEST(Cnr, PhasesLandInTAndAcross) {
    for (long r = 1; r <= 6; ++r) {
        long n = 5 * r + 6;
        auto log = build_overline(n, r);
        for (const auto& ce : log.edges) {
            bool u_in = ce.edge.u >= 1 && ce.edge.u <= 3 * r + 3;
            bool v_in = ce.edge.v >= 1 && ce.edge.v <= 3 * r + 3;
            if (ce.phase == 1)
                EXPECT_TRUE(u_in && v_in);
            else
                EXPECT_TRUE(!u_in && !v_in);
        }
    }
}

TEST(Cnr, LemmaItems) {
    HomologyOracle oracle;
    for (long r = 1; r <= 8; ++r)
        for (long n : {5 * r + 4, 5 * r + 5}) {
            if (r >= 6 && n > 5 * r + 4) continue;
            auto rep = verify_technical_lemma(r, n, oracle);
            ASSERT_EQ(rep.items.size(), 6u);
            for (const auto& it : rep.items) EXPECT_TRUE(it.pass) << "r=" << r << " n=" << n << " " << it.item << ": " << it.detail;
        }
}

TEST(Cnr, ModelEquivalence) {
    HomologyOracle oracle;
    auto a = verify_model_equivalence(9, 1, oracle);
    EXPECT_TRUE(a.signatures_match);
    EXPECT_EQ(a.right, HomologySignature::sphere(2, 2));
    auto b = verify_model_equivalence(14, 2, oracle);
    EXPECT_TRUE(b.signatures_match);
    EXPECT_EQ(b.left, HomologySignature::sphere(2, 4));
    for (long r = 1; r <= 3; ++r)
        for (long n = 5 * r + 4; n <= 5 * r + 8; ++n) {
            auto m = verify_model_equivalence(n, r, oracle);
            EXPECT_TRUE(m.signatures_match) << n << "," << r;
            EXPECT_TRUE(m.chain_complete) << n << "," << r << " " << m.chain_note;
        }
}

TEST(Cnr, SummandLedger) {
    auto l2 = enumerate_summands(2).totals();
    EXPECT_EQ(l2, (std::map<long, std::uint64_t>{{14, 4}, {15, 5}}));
    auto l3 = enumerate_summands(3).totals();
    EXPECT_EQ(l3, (std::map<long, std::uint64_t>{{18, 5}, {19, 11}, {20, 13}, {21, 7}}));
    auto led = enumerate_summands(4);
    bool saw_zero_phase2 = false;
    for (const auto& e : led.entries)
        if (e.source == "phase2 t=4") saw_zero_phase2 = e.multiplicity == 0;
    EXPECT_TRUE(saw_zero_phase2);
    EXPECT_EQ(led.cycle.offset, 15);
}

TEST(Cnr, ReconcileWithClosedForm) {
    for (long r = 1; r <= 8; ++r) {
        auto rep = reconcile_with_closed_form(r);
        EXPECT_TRUE(rep.match) << r;
        EXPECT_EQ(rep.ledger, k_closed(r)) << r;
    }
}
