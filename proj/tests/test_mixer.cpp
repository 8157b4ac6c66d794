#include <doctest.h>

#include <set>

#include "mixgen/datasets.hpp"
#include "mixgen/mixer.hpp"
#include "mixgen/problems.hpp"
#include "oracles.hpp"

using namespace mixgen;

namespace {

Eigen::MatrixXi indicators_of(const EncodedGraph& g) {
  Eigen::MatrixXi ind = Eigen::MatrixXi::Zero(g.node_count(), g.node_count());
  for (const auto& a : g.arcs)
    if (a.weight != 0.0) ind(a.from, a.to) = ind(a.to, a.from) = 1;
  return ind;
}

}  // namespace

TEST_CASE("grouping pool sizes are Bell numbers") {
  const auto bell = oracle::bell_numbers(8);
  for (int n = 2; n <= 8; ++n) {
    const auto pool = grouping_pool(n);
    CHECK(pool.size() == bell[n]);
    if (n <= 7) CHECK(pool.size() == oracle::partition_count(n));
    const std::set<Rgs> unique(pool.begin(), pool.end());
    CHECK(unique.size() == pool.size());
    for (const Rgs& r : pool) CHECK(is_canonical_rgs(r));
  }
  CHECK(grouping_pool(2) == std::vector<Rgs>{{0, 0}, {0, 1}});
  CHECK_THROWS_AS(grouping_pool(13), CapacityError);
  CHECK_THROWS_AS(grouping_pool(0), Error);
}

TEST_CASE("RGS text form") {
  CHECK(parse_rgs("0-1-2-0-3-3") == Rgs{0, 1, 2, 0, 3, 3});
  CHECK(format_rgs({0, 1, 0}) == "0-1-0");
  try {
    parse_rgs("0-1-2-0-4-4");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    CHECK(std::string(e.what()).find("0-1-2-0-3-3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_rgs("1-0"), Error);
  CHECK_THROWS_AS(parse_rgs("0--1"), Error);
  CHECK_THROWS_AS(parse_rgs(""), Error);
  CHECK(canonicalize({5, 5, 2, 5}) == Rgs{0, 0, 1, 0});

  const MixerSpec m = parse_mixer("XYXYXX/0-1-2-0-3-3");
  CHECK(m.group_count() == 4);
  CHECK(format_mixer(m) == "XYXYXX/0-1-2-0-3-3");
  CHECK_THROWS_AS(parse_mixer("XYX/0-1"), Error);
  CHECK_THROWS_AS(parse_mixer("XZX/0-1-0"), Error);
  CHECK_THROWS_AS(parse_mixer("XYX"), Error);
}

TEST_CASE("canonical specs") {
  CHECK(format_mixer(fg_spec(3)) == "XXX/0-0-0");
  CHECK(format_mixer(ng_spec(3)) == "XXX/0-1-2");
  CHECK(pg_spec(path_graph(3)).groups == Rgs{0, 1, 0});
  CHECK(pg_spec(ring_graph(5)).groups == Rgs(5, 0));

  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const WeightedGraph g = sample_w3r(6, rng);
    const MixerSpec pg = pg_spec(g);
    CHECK(pg.group_count() == static_cast<int>(oracle::brute_force_orbits(g).size()));
    if (pg.group_count() == 6) CHECK(pg == ng_spec(6));
  }
}

TEST_CASE("groups from edge indicators") {
  CHECK(groups_from_edges(Eigen::MatrixXi::Zero(4, 4)) == Rgs{0, 1, 2, 3});
  CHECK(groups_from_edges(Eigen::MatrixXi::Ones(4, 4)) == Rgs{0, 0, 0, 0});
  Eigen::MatrixXi e = Eigen::MatrixXi::Zero(3, 3);
  e(0, 1) = e(1, 0) = 1;
  e(0, 2) = e(2, 0) = 1;
  CHECK(groups_from_edges(e) == Rgs{0, 0, 0});
  Eigen::MatrixXi asym = Eigen::MatrixXi::Zero(3, 3);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(groups_from_edges(asym), Error);
}

TEST_CASE("problem encoding") {
  ProblemInstance edge;
  edge.graph = ring_graph(2);
  const EncodedGraph g = encode_problem(edge);
  CHECK(g.node_count() == 5);
  CHECK(g.arcs.size() == 4u);
  CHECK(g.is_acyclic());
  CHECK(g.output_nodes == std::vector<int>{3, 4});
  CHECK(g.features.cols() == kNodeFeatureWidth);
  CHECK(g.features(2, feature::kCoeff) == doctest::Approx(0.5));

  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    ProblemInstance inst;
    inst.graph = sample_w3r(6, rng);
    const EncodedGraph w = encode_problem(inst);
    int gates = 0;
    for (NodeRole r : w.roles) gates += r == NodeRole::Gate;
    CHECK(gates == 9);
    CHECK(w.is_acyclic());
  }
  const EncodedGraph t = encode_problem(make_tfim_ring({1, 1, 1, 1}, 0.7));
  CHECK(t.is_acyclic());
  CHECK(t.node_count() == 4 + 8 + 4);

  EncodedGraph cyclic;
  cyclic.roles.assign(2, NodeRole::Gate);
  cyclic.features = Eigen::MatrixXd::Zero(2, kNodeFeatureWidth);
  cyclic.arcs = {{0, 1, 1.0}, {1, 0, 1.0}};
  CHECK_FALSE(cyclic.is_acyclic());
}

TEST_CASE("mixer encoding") {
  const EncodedGraph fg = encode_mixer(fg_spec(3));
  CHECK(fg.arcs.size() == 3u);
  for (const auto& a : fg.arcs) CHECK(a.weight == 1.0);
  for (const auto& a : encode_mixer(ng_spec(4)).arcs) CHECK(a.weight == 0.0);
  const EncodedGraph pg = encode_mixer(parse_mixer("XYX/0-1-0"));
  for (const auto& a : pg.arcs) CHECK(a.weight == ((a.from == 0 && a.to == 2) ? 1.0 : 0.0));
  CHECK(pg.features(1, feature::kType + 1) == 1.0);
  CHECK(pg.features(0, feature::kType) == 1.0);

  // Round trip and injectivity over every (types, grouping) pair at n = 4.
  std::set<std::vector<double>> seen;
  std::size_t count = 0;
  for (int mask = 0; mask < 16; ++mask)
    for (const Rgs& r : grouping_pool(4)) {
      MixerSpec s;
      for (int q = 0; q < 4; ++q) s.types.push_back((mask >> q) & 1 ? PauliType::Y : PauliType::X);
      s.groups = r;
      const EncodedGraph e = encode_mixer(s);
      CHECK(groups_from_edges(indicators_of(e)) == r);
      std::vector<double> key(e.features.data(), e.features.data() + e.features.size());
      for (const auto& a : e.arcs) key.push_back(a.weight);
      seen.insert(key);
      ++count;
    }
  CHECK(seen.size() == count);
}

TEST_CASE("depth embedding") {
  const Eigen::VectorXd x = depth_embedding(7, 8);
  CHECK(x(0) == doctest::Approx(std::sin(7.0)));
  CHECK(x(1) == doctest::Approx(std::cos(7.0)));
  CHECK(x(2) == doctest::Approx(std::sin(7.0 / std::pow(10000.0, 2.0 / 8))));
  const Eigen::VectorXd zero = depth_embedding(0, 6);
  for (int k = 0; k < 6; ++k) CHECK(zero(k) == (k % 2 ? 1.0 : 0.0));
  CHECK_THROWS_AS(depth_embedding(3, 7), Error);

  std::vector<Eigen::VectorXd> all;
  for (int p = 2; p <= 92; ++p) {
    all.push_back(depth_embedding(p, 128));
    CHECK(all.back().cwiseAbs().maxCoeff() <= 1.0);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK((all[i] - all[j]).norm() > 1e-6);
}
