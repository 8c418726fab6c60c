#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "formtree/clustering.hpp"
#include "formtree/document.hpp"
#include "formtree/error.hpp"
#include "formtree/synth.hpp"
#include "support.hpp"

using namespace formtree;
using formtree::testing::closure_components;
using formtree::testing::make_field;
using formtree::testing::rand_int;

namespace {

QueryNode L(const char* id) { return QueryNode::leaf(id); }
QueryNode G(std::vector<QueryNode> c) { return QueryNode::group(std::move(c)); }

Element leaf_element(const char* id, BoundingBox box, std::size_t rank) {
  return Element{QueryNode::leaf(id), box, rank};
}

DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Layout flight_layout() {
  return layout_from_json(read_json_file(formtree::testing::corpus_dir() / "flight" / "layout.json"));
}

QueryTree flight_gold() {
  return parse_tree(read_json_file(formtree::testing::corpus_dir() / "flight" / "gold.json"));
}

using Partition = std::vector<std::vector<std::size_t>>;

}  // namespace

TEST_CASE("distance_matrix") {
  const Element one[] = {leaf_element("a", {0, 0, 10, 10}, 0)};
  auto m1 = distance_matrix(one, ClusterConfig{});
  REQUIRE(m1.size() == 1);
  CHECK(m1(0, 0) == 0.0);

  const Element touching[] = {leaf_element("a", {0, 0, 10, 10}, 0), leaf_element("b", {10, 3, 10, 10}, 1)};
  auto m2 = distance_matrix(touching, ClusterConfig{});
  CHECK(m2(0, 1) == 0.0);
  CHECK(m2(1, 0) == 0.0);

  // Gap (3, 4) with no shared edge: 5 / 0.5.
  const Element diagonal[] = {leaf_element("a", {0, 0, 10, 10}, 0), leaf_element("b", {13, 14, 5, 5}, 1)};
  auto m3 = distance_matrix(diagonal, ClusterConfig{});
  CHECK(m3(0, 1) == 10.0);
  CHECK(m3(1, 0) == 10.0);
}

TEST_CASE("distance_matrix: the parallel kernel matches the serial reference exactly") {
  std::mt19937_64 rng(31);
  for (std::size_t n : {1u, 2u, 7u, 63u, 64u, 65u, 200u}) {
    std::vector<BoundingBox> boxes;
    for (std::size_t i = 0; i < n; ++i) boxes.push_back(formtree::testing::random_box(rng, 1000, 80));
    const GeometryConfig cfg;
    const auto parallel = distance_matrix(boxes, cfg);
    const auto serial = distance_matrix_serial(boxes, cfg);
    CHECK(parallel == serial);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(parallel(i, i) == 0.0);
      for (std::size_t j = 0; j < n; ++j) CHECK(parallel(i, j) == parallel(j, i));
    }
  }
}

TEST_CASE("compute_epsilon") {
  CHECK(compute_epsilon(from_rows({{0, 4, 7}, {4, 0, 9}, {7, 9, 0}})) == 4.0);
  CHECK(compute_epsilon(from_rows({{0, 2.5}, {2.5, 0}})) == 2.5);
  CHECK(compute_epsilon(from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})) == 0.0);
  CHECK_THROWS_AS(compute_epsilon(from_rows({{0}})), PreconditionError);
  CHECK_THROWS_AS(compute_epsilon(DistanceMatrix{}), PreconditionError);
}

TEST_CASE("density_components") {
  // Chain A-B-C: A and C are far apart but reachable through B.
  CHECK(density_components(from_rows({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}}), 1.0) == Partition{{0, 1, 2}});
  CHECK(density_components(from_rows({{0, 1, 50, 50}, {1, 0, 50, 50}, {50, 50, 0, 1}, {50, 50, 1, 0}}), 1.0) ==
        Partition{{0, 1}, {2, 3}});
  CHECK(density_components(from_rows({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}), 2.0) == Partition{{0}, {1}, {2}});
  // Components ordered by their smallest member.
  CHECK(density_components(from_rows({{0, 9, 1}, {9, 0, 9}, {1, 9, 0}}), 1.0) == Partition{{0, 2}, {1}});
  CHECK_THROWS_AS(density_components(from_rows({{0}}), -1.0), PreconditionError);
}

TEST_CASE("density_components: slack admits the minimum despite rounding") {
  const double eps = 0.1 + 0.2;
  CHECK(density_components(from_rows({{0, 0.3}, {0.3, 0}}), eps) == Partition{{0, 1}});
  ClusterConfig strict;
  strict.epsilon_slack = 0.0;
  // 0.3 < 0.1 + 0.2 in binary, so even the strict test passes here; the
  // reverse rounding needs the slack.
  CHECK(density_components(from_rows({{0, eps}, {eps, 0}}), 0.3, ClusterConfig{}) == Partition{{0, 1}});
  CHECK(density_components(from_rows({{0, eps}, {eps, 0}}), 0.3, strict) == Partition{{0}, {1}});
}

TEST_CASE("property: density_components matches the transitive-closure oracle") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rand_int(rng, 1, 8));
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) rows[i][j] = rows[j][i] = rand_int(rng, 0, 12);
    const double eps = rand_int(rng, 0, 12);
    ClusterConfig cfg;
    cfg.epsilon_slack = 0.0;
    CHECK(density_components(from_rows(rows), eps, cfg) == closure_components(rows, eps));
  }
}

TEST_CASE("cluster_round: the passenger selects form one cluster") {
  // Adults, Children, Infants on one line 10 apart; From above, 30 away.
  std::vector<Element> elements{
      leaf_element("From", {0, 0, 100, 24}, 0),
      leaf_element("Adults", {0, 54, 70, 24}, 1),
      leaf_element("Children", {80, 54, 70, 24}, 2),
      leaf_element("Infants", {160, 54, 70, 24}, 3),
  };
  const auto next = cluster_round(elements, ClusterConfig{});
  REQUIRE(next.size() == 2);
  CHECK(next[0].node == L("From"));
  CHECK(next[1].node == G({L("Adults"), L("Children"), L("Infants")}));
  CHECK(next[1].bbox == BoundingBox{0, 54, 230, 24});
  CHECK(next[1].rank == 1);
}

TEST_CASE("cluster_round: small cases") {
  std::vector<Element> two{leaf_element("b", {50, 0, 10, 10}, 1), leaf_element("a", {0, 0, 10, 10}, 0)};
  const auto root = cluster_round(two, ClusterConfig{});
  REQUIRE(root.size() == 1);
  CHECK(root[0].node == G({L("a"), L("b")}));

  // Two pairs with gap 1, 100 apart.
  std::vector<Element> four{
      leaf_element("A", {0, 0, 10, 10}, 0), leaf_element("B", {11, 0, 10, 10}, 1),
      leaf_element("C", {121, 0, 10, 10}, 2), leaf_element("D", {132, 0, 10, 10}, 3)};
  const auto pairs = cluster_round(four, ClusterConfig{});
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].node == G({L("A"), L("B")}));
  CHECK(pairs[1].node == G({L("C"), L("D")}));
  CHECK(pairs[0].bbox == BoundingBox{0, 0, 21, 10});
  CHECK(pairs[1].bbox == BoundingBox{121, 0, 21, 10});
  CHECK(pairs[1].rank == 2);

  CHECK_THROWS_AS(cluster_round({leaf_element("a", {0, 0, 1, 1}, 0)}, ClusterConfig{}), PreconditionError);
}

TEST_CASE("extract_tree: one and two fields") {
  Layout one;
  one.name = "one";
  one.fields = {make_field("only", {5, 5, 10, 10})};
  CHECK(extract_tree(one).root == L("only"));

  Layout two;
  two.name = "two";
  two.fields = {make_field("right", {100, 0, 10, 10}), make_field("left", {0, 0, 10, 10})};
  const auto t = extract_tree(two);
  CHECK(t.root == G({L("left"), L("right")}));
  CHECK(t.layout_name == "two");
}

TEST_CASE("extract_tree: flight fixture follows the checked-in trace") {
  const auto layout = flight_layout();
  const auto result = extract_tree_traced(layout);
  CHECK(tree_equals(result.tree, flight_gold()));
  CHECK(result.tree.root.children()[2] == G({L("Adults"), L("Children"), L("Infants")}));

  REQUIRE(result.rounds.size() == 2);
  CHECK(result.rounds[0].epsilon == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  CHECK(result.rounds[0].components ==
        Partition{{0, 1}, {2, 3}, {4, 5, 6}, {7}, {8}});
  CHECK(result.rounds[1].epsilon == 20.0);
  CHECK(result.rounds[1].components == Partition{{0, 1, 2, 3, 4}});
  CHECK(validate_tree(result.tree, layout).empty());
}

TEST_CASE("extract_tree: errors") {
  ClusterConfig tight;
  tight.max_rounds = 1;
  CHECK_THROWS_AS(extract_tree(flight_layout(), tight), InternalError);
  CHECK_THROWS_AS(extract_tree(Layout{}), InputError);
  ClusterConfig bad;
  bad.epsilon_slack = -1;
  CHECK_THROWS_AS(extract_tree(flight_layout(), bad), InputError);
}

TEST_CASE("property: progress, partition preservation and determinism") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rand_int(rng, 1, 30));
    const auto layout = formtree::testing::random_layout(rng, n);
    const auto result = extract_tree_traced(layout);
    CHECK(result.rounds.size() <= n - 1);
    std::vector<std::string> expected;
    for (const auto& f : layout.fields) expected.push_back(f.id);
    std::sort(expected.begin(), expected.end());
    std::size_t previous = n + 1;
    for (const auto& round : result.rounds) {
      CHECK(round.elements.size() < previous);
      previous = round.elements.size();
      std::vector<std::string> ids;
      for (const auto& e : round.elements) e.node.collect_leaf_ids(ids);
      std::sort(ids.begin(), ids.end());
      CHECK(ids == expected);
    }
    CHECK(validate_tree(result.tree, layout).empty());
    const auto again = extract_tree(layout);
    CHECK(tree_equals(again, result.tree));
    CHECK(to_text(serialize_tree(again)) == to_text(serialize_tree(result.tree)));
  }
}

TEST_CASE("property: rigid motions leave the tree unchanged") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const auto layout = formtree::testing::random_layout(rng, rand_int(rng, 2, 20));
    const auto base = extract_tree(layout);
    const auto moved = formtree::testing::translated(layout, rand_int(rng, -500, 500), rand_int(rng, -500, 500));
    CHECK(tree_equals(extract_tree(moved), base));
  }

  // Uniform scaling with exact alignment and zero tolerance.
  ClusterConfig exact;
  exact.geometry.align_tolerance = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    SynthSpec spec;
    spec.seed = 1000 + trial;
    spec.nesting_depth = 1 + trial % 2;
    const auto generated = generate(spec, exact.geometry);
    const auto base = extract_tree(generated.layout, exact);
    for (double s : {0.5, 2.0, 3.0, 7.0}) {
      Layout scaled = generated.layout;
      for (auto& f : scaled.fields) f.bbox = {f.bbox.x * s, f.bbox.y * s, f.bbox.w * s, f.bbox.h * s};
      CHECK(tree_equals(extract_tree(scaled, exact), base));
    }
  }
}

TEST_CASE("property: well-separated planted layouts are recovered") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.nesting_depth = 1 + static_cast<int>(seed % 2);
    const auto generated = generate(spec);
    REQUIRE(generated.certificate.ratio() >= 3.0);
    CHECK_MESSAGE(tree_equals(extract_tree(generated.layout), generated.gold),
                  "seed ", seed, ": ", extract_tree(generated.layout).root.to_brackets(), " vs ",
                  generated.gold.root.to_brackets());
  }
}
