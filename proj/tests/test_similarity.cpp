#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "coref/similarity.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace coref;
using namespace coref::testing;

TEST_CASE("cn_score counts surviving common neighbours") {
  // p0 {X, A, B, C}; p1 {Y, B, C, D}; focal authors X and Y excluded.
  BipartiteGraph g = make_graph({
      rec("k/p1", {"X", "A", "B", "C"}),
      rec("k/p2", {"Y", "B", "C", "D"}),
  });
  NodeSet exclude({0, 4});

  auto score = cn_score(g, 0, 1, exclude);
  CHECK(score.measure == Measure::cn);
  CHECK(score.value == 2.0);
  CHECK_FALSE(score.zero_tail);

  SUBCASE("disjoint papers give the zero tail") {
    BipartiteGraph h = make_graph({
        rec("k/p1", {"A", "B"}),
        rec("k/p2", {"C", "D"}),
    });
    auto s = cn_score(h, 0, 1, NodeSet());
    CHECK(s.value == 0.0);
    CHECK(s.zero_tail);
  }

  SUBCASE("same-paper pair uses the self row") {
    BipartiteGraph h = make_graph({rec("k/p1", {"X", "Y", "A"})});
    auto s = cn_score(h, 0, 0, NodeSet({0, 1}));
    CHECK(s.value == 1.0);
    CHECK_FALSE(s.zero_tail);
  }

  SUBCASE("invalid id") {
    CHECK_THROWS_AS(cn_score(g, 0, 7, NodeSet()), std::out_of_range);
  }
}

TEST_CASE("aa_score uses inverse log degrees") {
  // Common neighbours: B with degree 2, C with degree 3.
  BipartiteGraph g = make_graph({
      rec("k/p1", {"X", "B", "C"}),
      rec("k/p2", {"Y", "B", "C"}),
      rec("k/p3", {"C"}),
  });
  AuthorId x = 0, y = 3;
  auto score = aa_score(g, 0, 1, NodeSet({x, y}));
  double expected = 1.0 / std::log(2.0) + 1.0 / std::log(3.0);
  CHECK(score.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(score.value - expected) < 1e-9);
  CHECK(score.value == doctest::Approx(2.35293).epsilon(1e-4));
  CHECK_FALSE(score.zero_tail);

  SUBCASE("no common neighbours") {
    BipartiteGraph h = make_graph({
        rec("k/p1", {"A"}),
        rec("k/p2", {"B"}),
    });
    auto s = aa_score(h, 0, 1, NodeSet());
    CHECK(s.value == 0.0);
    CHECK(s.zero_tail);
  }

  SUBCASE("degree-1 term is skipped and counted") {
    // Single paper: the only way to see a degree-1 common neighbour.
    BipartiteGraph h = make_graph({rec("k/p1", {"X", "Y", "Solo Act"})});
    std::uint64_t degenerate = 0;
    auto s = aa_score(h, 0, 0, NodeSet({0, 1}), &degenerate);
    CHECK(s.value == 0.0);
    CHECK_FALSE(s.zero_tail);  // the set was not empty
    CHECK(degenerate == 1);
  }
}

TEST_CASE("pmi_score follows the ratio form") {
  // N = 10 authors; |G1'| = 3, |G2'| = 4, C = 2.
  std::vector<PaperRecord> records = {
      rec("k/p1", {"F1", "S1", "S2", "U1"}),      // focal F1 + {S1,S2,U1}
      rec("k/p2", {"F2", "S1", "S2", "U2", "U3"}),// focal F2 + {S1,S2,U2,U3}
      rec("k/pad", {"P1", "P2", "P3"}),           // pads N to 10
  };
  BipartiteGraph g = make_graph(records);
  REQUIRE(g.author_count() == 10);
  NodeSet exclude(
      {g.authors_named("F1").at(0), g.authors_named("F2").at(0)});

  auto score = pmi_score(g, 0, 1, exclude);
  double expected = std::log(2.0 * 10.0 / (3.0 * 4.0));
  CHECK(std::abs(score.value - expected) < 1e-9);
  CHECK(score.value == doctest::Approx(0.51083).epsilon(1e-4));
  CHECK_FALSE(score.zero_tail);

  SUBCASE("no overlap gives the sentinel") {
    BipartiteGraph h = make_graph({
        rec("k/p1", {"A", "B"}),
        rec("k/p2", {"C", "D"}),
    });
    auto s = pmi_score(h, 0, 1, NodeSet());
    CHECK(s.zero_tail);
    CHECK(s.value == kPmiZeroTailValue);
    CHECK_FALSE(s.value > 0.0);  // negative at the rho = 0 baseline
  }

  SUBCASE("a shared co-author can still score negative") {
    // N = 10, |G1'| = 5, |G2'| = 4, C = 1: ln(10/20) < 0.
    std::vector<PaperRecord> wide = {
        rec("k/p1", {"S1", "A1", "A2", "A3", "A4"}),
        rec("k/p2", {"S1", "B1", "B2", "B3"}),
        rec("k/pad", {"P1", "P2"}),
    };
    BipartiteGraph h = make_graph(wide);
    REQUIRE(h.author_count() == 10);
    auto s = pmi_score(h, 0, 1, NodeSet());
    CHECK(std::abs(s.value - std::log(0.5)) < 1e-9);
    CHECK(s.value == doctest::Approx(-0.69315).epsilon(1e-4));
    CHECK(s.value < 0.0);
    CHECK_FALSE(s.zero_tail);
  }
}

TEST_CASE("measures agree with brute-force oracles on random graphs") {
  Rng rng(31337);
  int pairs_checked = 0;
  while (pairs_checked < 400) {
    std::vector<PaperRecord> records = random_records(rng);
    BipartiteGraph g = make_graph(records);
    ModelGraph model = model_from_records(records);

    for (PaperId p1 = 0; p1 < g.paper_count(); ++p1) {
      for (PaperId p2 = p1; p2 < g.paper_count(); ++p2) {
        NodeSet empty;
        std::set<std::uint32_t> none;

        auto aa = aa_score(g, p1, p2, empty);
        auto aa_expected = oracle_aa(model, p1, p2, none);
        CHECK(std::abs(aa.value - aa_expected.value) < 1e-9);
        CHECK(aa.zero_tail == aa_expected.zero_tail);

        auto pmi = pmi_score(g, p1, p2, empty);
        auto pmi_expected = oracle_pmi(model, p1, p2, none);
        if (pmi_expected.zero_tail) {
          CHECK(pmi.zero_tail);
        } else {
          CHECK(std::abs(pmi.value - pmi_expected.value) < 1e-9);
        }

        auto cn = cn_score(g, p1, p2, empty);
        CHECK(cn.value ==
              static_cast<double>(
                  oracle_common_neighbors(model, p1, p2, none).size()));

        // Symmetry in the paper arguments.
        CHECK(cn_score(g, p2, p1, empty).value == cn.value);
        CHECK(aa_score(g, p2, p1, empty).value == aa.value);
        CHECK(pmi_score(g, p2, p1, empty).value == pmi.value);

        // AA <= CN / ln 2, every term being at most 1/ln 2.
        CHECK(aa.value <= cn.value / std::log(2.0) + 1e-12);

        // Zero-tail flags line up across measures.
        CHECK(cn.zero_tail == pmi.zero_tail);
        CHECK(cn.zero_tail == aa.zero_tail);
        ++pairs_checked;
      }
    }
  }
}

TEST_CASE("cn grows by exactly one per added shared co-author") {
  std::vector<PaperRecord> records = {
      rec("k/p1", {"X", "A", "B"}),
      rec("k/p2", {"Y", "A", "C"}),
  };
  double before =
      cn_score(make_graph(records), 0, 1, NodeSet()).value;

  records[0].authors.push_back("New Shared");
  records[1].authors.push_back("New Shared");
  double after = cn_score(make_graph(records), 0, 1, NodeSet()).value;
  CHECK(after == before + 1.0);
}

TEST_CASE("pmi sign identity is exact") {
  Rng rng(909);
  int checked = 0;
  while (checked < 300) {
    std::vector<PaperRecord> records = random_records(rng);
    BipartiteGraph g = make_graph(records);
    ModelGraph model = model_from_records(records);
    for (PaperId p1 = 0; p1 < g.paper_count(); ++p1) {
      for (PaperId p2 = p1; p2 < g.paper_count(); ++p2) {
        auto score = pmi_score(g, p1, p2, NodeSet());
        if (score.zero_tail) continue;
        std::set<std::uint32_t> none;
        std::uint64_t c =
            oracle_common_neighbors(model, p1, p2, none).size();
        std::uint64_t g1 = model.paper_authors[p1].size();
        std::uint64_t g2 = model.paper_authors[p2].size();
        bool positive = c * model.author_count > g1 * g2;
        CHECK((score.value > 0.0) == positive);
        ++checked;
      }
    }
  }
}
