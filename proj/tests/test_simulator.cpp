#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mixgen/problems.hpp"
#include "mixgen/simulator.hpp"
#include "oracles.hpp"

using namespace mixgen;

namespace {

constexpr double kPi = std::numbers::pi;

PauliSum tfim(int n, double j, double h) {
  return tfim_hamiltonian(make_tfim_ring(std::vector<double>(static_cast<std::size_t>(n), j), h));
}

double max_rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a(i) - b(i)) / std::max(1e-3, std::abs(b(i))));
  return worst;
}

Eigen::VectorXd finite_difference(const CircuitSpec& c, const ParameterVector& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    ParameterVector a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (expectation(evolve(c, a), c.cost()) - expectation(evolve(c, b), c.cost())) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("cost evolution basics") {
  const StateVector psi = StateVector::plus(3);
  const PauliSum cost = maxcut_hamiltonian(ring_graph(3));
  CHECK((apply_cost_evolution(psi, 0.0, cost).amplitudes() - psi.amplitudes()).norm() < 1e-15);

  const double beta = 0.37;
  const StateVector out =
      apply_cost_evolution(StateVector::basis(1, 0), beta, PauliTerm::from_letters("X"));
  CHECK(std::abs(out.amplitudes()(0) - std::cos(beta)) < 1e-12);
  CHECK(std::abs(out.amplitudes()(1) - cplx(0, -std::sin(beta))) < 1e-12);

  PauliSum bad(1);
  bad.add(PauliTerm::from_letters("X", cplx(0, 1)));
  CHECK_THROWS_AS(apply_cost_evolution(psi, 0.1, bad), Error);
}

TEST_CASE("Krylov exponential agrees with the dense exponential") {
  for (int n : {4, 6, 8}) {
    const PauliSum h = tfim(n, 0.9, 1.1);
    const CircuitSpec krylov = CircuitSpec(h, fg_spec(n), 1).with_cost_path(CostPath::Krylov);
    CHECK(krylov.cost_path() == CostPath::Krylov);
    Rng rng(n);
    for (int trial = 0; trial < 3; ++trial) {
      const double alpha = uniform(rng, -2.0, 2.0);
      Eigen::VectorXcd psi = oracle::plus_state(n);
      const Eigen::VectorXcd want = oracle::expm(oracle::dense(h), alpha) * psi;
      krylov.apply_cost(psi, alpha);
      CHECK((psi - want).norm() < 1e-8);
    }
  }
}

TEST_CASE("mixer layer rotations") {
  const MixerSpec x1{{PauliType::X}, {0}};
  const std::vector<double> half_pi{kPi / 2};
  const StateVector out = apply_mixer_layer(StateVector::basis(1, 0), half_pi, x1);
  CHECK(std::abs(out.amplitudes()(1) - cplx(0, -1)) < 1e-12);
  CHECK(std::abs(out.amplitudes()(0)) < 1e-12);

  const StateVector psi = StateVector::plus(3);
  const std::vector<double> zeros(3, 0.0);
  CHECK((apply_mixer_layer(psi, zeros, ng_spec(3)).amplitudes() - psi.amplitudes()).norm() == 0);

  const std::vector<double> one{0.3}, three(3, 0.3);
  const MixerSpec fy = fg_spec(3, PauliType::Y), ny = ng_spec(3, PauliType::Y);
  const StateVector start = StateVector::basis(3, 5);
  CHECK((apply_mixer_layer(start, one, fy).amplitudes() -
         apply_mixer_layer(start, three, ny).amplitudes())
            .norm() < 1e-14);
  CHECK_THROWS_AS(apply_mixer_layer(start, one, ny), Error);
}

TEST_CASE("evolve matches the dense product oracle") {
  const PauliSum cost = maxcut_hamiltonian(ring_graph(2));
  ParameterVector x(2);
  x << kPi / 4, kPi / 8;
  const CircuitSpec c(cost, fg_spec(2), 1);
  const StateVector out = evolve(c, x);
  const auto want = oracle::evolve(cost, fg_spec(2), 1, x, oracle::plus_state(2));
  CHECK((out.amplitudes() - want).norm() < 1e-12);
  CHECK(std::abs(out.norm() - 1.0) < 1e-12);

  ParameterVector zero = ParameterVector::Zero(2);
  CHECK((evolve(c, zero).amplitudes() - oracle::plus_state(2)).norm() < 1e-15);

  const MixerSpec mixed{{PauliType::X, PauliType::Y, PauliType::Y}, {0, 1, 0}};
  const PauliSum t = tfim(3, 1.0, 0.6);
  const CircuitSpec c2(t, mixed, 3);
  Rng rng(5);
  const ParameterVector y = random_parameters(c2, rng, 1.0);
  CHECK((evolve(c2, y).amplitudes() - oracle::evolve(t, mixed, 3, y, oracle::plus_state(3))).norm() <
        1e-10);
}

TEST_CASE("expectation values") {
  CHECK(expectation(StateVector::plus(2), PauliTerm::from_letters("ZZ")) == doctest::Approx(0.0));
  CHECK(expectation(StateVector::basis(2, 0), PauliTerm::from_letters("ZZ", 0.5)) ==
        doctest::Approx(0.5));
  Rng rng(9);
  Eigen::VectorXcd v(64);
  for (auto& a : v) a = cplx(standard_normal(rng), standard_normal(rng));
  v.normalize();
  const PauliSum h = tfim(6, 0.8, 1.3);
  const double want = (v.adjoint() * oracle::dense(h) * v)(0, 0).real();
  CHECK(std::abs(expectation(StateVector(6, v), h) - want) < 1e-10);
}

TEST_CASE("adjoint gradient") {
  const PauliSum cost = maxcut_hamiltonian(ring_graph(4));
  const CircuitSpec c(cost, ng_spec(4), 2);
  ParameterVector zero = ParameterVector::Zero(static_cast<Eigen::Index>(c.parameter_count()));
  const Eigen::VectorXd g0 = gradient(c, zero, StateVector::plus(4));
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(g0(c.layer_offset(k) + 1 + j)) < 1e-14);

  Rng rng(1);
  for (const PauliSum& h : {cost, tfim(4, 1.0, 0.7)}) {
    for (const MixerSpec& m : {ng_spec(4), fg_spec(4, PauliType::Y),
                               MixerSpec{{PauliType::X, PauliType::Y, PauliType::X, PauliType::Y},
                                         {0, 1, 1, 0}}}) {
      const CircuitSpec circuit(h, m, 3);
      const ParameterVector x = random_parameters(circuit, rng, 1.5);
      const auto vg = value_and_gradient(circuit, x, StateVector::plus(4));
      CHECK(vg.value == doctest::Approx(expectation(evolve(circuit, x), h)).epsilon(1e-12));
      CHECK(max_rel_err(vg.gradient, finite_difference(circuit, x, 1e-5)) < 1e-5);
    }
  }
}

TEST_CASE("tied parameters sum the untied gradients") {
  const PauliSum cost = maxcut_hamiltonian(path_graph(3));
  const CircuitSpec fg(cost, fg_spec(3), 2), ng(cost, ng_spec(3), 2);
  ParameterVector xf(4), xn(8);
  xf << 0.3, -0.2, 0.5, 0.1;
  xn << 0.3, -0.2, -0.2, -0.2, 0.5, 0.1, 0.1, 0.1;
  const double lf = expectation(evolve(fg, xf), cost), ln = expectation(evolve(ng, xn), cost);
  CHECK(lf == ln);
  const Eigen::VectorXd gf = gradient(fg, xf, StateVector::plus(3));
  const Eigen::VectorXd gn = gradient(ng, xn, StateVector::plus(3));
  CHECK(gf(0) == doctest::Approx(gn(0)).epsilon(1e-12));
  CHECK(gf(1) == doctest::Approx(gn(1) + gn(2) + gn(3)).epsilon(1e-12));
  CHECK(gf(3) == doctest::Approx(gn(5) + gn(6) + gn(7)).epsilon(1e-12));
}

TEST_CASE("parameter shift rule") {
  // 1-qubit: <Z> after R_X(2 beta) is cos(2 beta); derivative -2 sin(2 beta).
  const CircuitSpec one(PauliTerm::from_letters("Z"), MixerSpec{{PauliType::X}, {0}}, 1);
  ParameterVector x(2);
  x << 0.0, 0.4;
  const StateVector zero = StateVector::basis(1, 0);
  const Eigen::VectorXd ps = parameter_shift_gradient(one, x, zero, kPi / 2);
  CHECK(ps(1) == doctest::Approx(-2.0 * std::sin(0.8)).epsilon(1e-12));

  const PauliSum cost = maxcut_hamiltonian(ring_graph(4));
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const CircuitSpec c(cost, ng_spec(4), 3);
    const ParameterVector y = random_parameters(c, rng, 1.0);
    const double shift = uniform(rng, 0.3, 2.5);
    const Eigen::VectorXd adj = gradient(c, y, StateVector::plus(4));
    const Eigen::VectorXd sh = parameter_shift_gradient(c, y, StateVector::plus(4), shift);
    CHECK((adj - sh).cwiseAbs().maxCoeff() < 1e-8);
  }
  const CircuitSpec c(cost, ng_spec(4), 1);
  const ParameterVector y = ParameterVector::Constant(5, 0.2);
  CHECK_THROWS_AS(parameter_shift_gradient(c, y, StateVector::plus(4), kPi), Error);
  const CircuitSpec t(tfim(4, 1.0, 1.0), ng_spec(4), 1);
  try {
    parameter_shift_gradient(t, y, StateVector::plus(4), kPi / 2);
    FAIL("expected unsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("optimize") {
  // <Z> after R_X: minimum -1.
  const CircuitSpec one(PauliTerm::from_letters("Z"), MixerSpec{{PauliType::X}, {0}}, 1);
  OptimizeOptions opts;
  const OptimizeReport r = optimize(one, 3, opts);
  CHECK(r.loss_trace.size() == 40u);
  CHECK(r.grad_norm_trace.size() == 40u);
  CHECK(r.best_loss <= r.final_loss + 1e-15);
  CHECK(r.best_loss < -0.99);

  const OptimizeReport again = optimize(one, 3, opts);
  CHECK(again.final_params == r.final_params);

  opts.epochs = 0;
  CHECK_THROWS_AS(optimize(one, 3, opts), Error);
}

TEST_CASE("sampling follows the Born rule") {
  Rng rng(2);
  const StateVector zero = StateVector::basis(2, 0);
  for (int k = 0; k < 50; ++k) CHECK(sample_bitstring(zero, rng) == std::vector<int>{0, 0});

  const StateVector plus = StateVector::plus(1);
  int ones = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) ones += sample_bitstring(plus, rng)[0];
  CHECK(std::abs(ones - draws / 2) < 3 * std::sqrt(draws * 0.25));

  Rng a(77), b(77);
  const StateVector s = evolve(CircuitSpec(maxcut_hamiltonian(ring_graph(4)), ng_spec(4), 1),
                               ParameterVector::Constant(5, 0.3));
  for (int k = 0; k < 20; ++k) CHECK(sample_bitstring(s, a) == sample_bitstring(s, b));
}
