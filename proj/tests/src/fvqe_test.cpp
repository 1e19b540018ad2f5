#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jss/fvqe.hpp"
#include "jss/oracle.hpp"
#include "jss/rng.hpp"

#include "fixtures.hpp"

using jss::AnsatzParams;
using jss::CircuitMeasurements;
using jss::EnergyHistogram;
using jss::EnergyTable;
using jss::FvqeConfig;
using jss::Instance;

namespace {

constexpr double kPi = std::numbers::pi;

AnsatzParams random_params(int n_qubits, int layers, jss::Rng& rng) {
  AnsatzParams params;
  params.n_qubits = n_qubits;
  params.layers = layers;
  const int count = jss::ansatz_param_count(n_qubits, layers);
  for (int i = 0; i < count; ++i) {
    params.theta.push_back(rng.uniform_real() * 2 * kPi - kPi);
  }
  return params;
}

double f_expectation(const AnsatzParams& params, const EnergyTable& table, double tau) {
  const jss::StateVector state = jss::run_ansatz(params);
  return jss::expectations(jss::energy_histogram(state, table, 0, 0), tau).f;
}

// Closed-form norm of the synthetic one-parameter gradient used by the
// adapt_tau cases: reference mass split over energies 1 and 2, the shifted
// circuits concentrated on one energy each.
double synthetic_norm(double tau) {
  const double f_plus = 1.0;
  const double f_minus = std::pow(2.0, -tau);
  const double f2_ref = (1.0 + std::pow(4.0, -tau)) / 2.0;
  return std::abs(-(f_plus - f_minus) / (4.0 * std::sqrt(f2_ref)));
}

CircuitMeasurements synthetic_measurements() {
  CircuitMeasurements m;
  m.reference = EnergyHistogram{{1, 1.0}, {2, 1.0}};
  m.plus = {EnergyHistogram{{1, 1.0}}};
  m.minus = {EnergyHistogram{{2, 1.0}}};
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("fvqe");

TEST_CASE("config validation lists every violation") {
  CHECK_NOTHROW(jss::require_valid(FvqeConfig{}));
  FvqeConfig config;
  config.gradient_control = 0.0;
  config.tau_step = -1.0;
  config.max_iterations = 0;
  config.layers = 0;
  try {
    jss::require_valid(config);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("gradient_control") != std::string::npos);
    CHECK(what.find("tau_step") != std::string::npos);
    CHECK(what.find("max_iterations") != std::string::npos);
    CHECK(what.find("layers") != std::string::npos);
  }
  FvqeConfig horizon;
  horizon.tau_step = 2.0;
  horizon.tau_max = 1.0;
  CHECK_THROWS_AS(jss::require_valid(horizon), std::invalid_argument);
}

TEST_CASE("default measurement budgets step with instance size and class") {
  CHECK(jss::default_shots(jss_test::single_job_instance({1, 1, 1, 1, 1})) == 100);
  CHECK(jss::default_shots(jss_test::single_job_instance({1, 1, 1, 1, 1, 1})) == 500);
  CHECK(jss::default_shots(jss_test::singleton_jobs_instance(8)) == 500);
  CHECK(jss::default_shots(jss_test::singleton_jobs_instance(9)) == 1000);

  auto flexible = [](int n_ops) {
    Instance inst = jss_test::singleton_jobs_instance(n_ops);
    inst.n_machines = 2;
    inst.machine_sets[0] = {1, 2};
    inst.durations[0] = {1, 1};
    jss::require_valid(inst);
    REQUIRE(inst.is_fjsp());
    return inst;
  };
  CHECK(jss::default_shots(flexible(4)) == 100);
  CHECK(jss::default_shots(flexible(5)) == 500);
  CHECK(jss::default_shots(flexible(6)) == 500);
  CHECK(jss::default_shots(flexible(7)) == 1000);
}

TEST_CASE("measured bitstrings map to makespans with wrap-around") {
  const Instance inst = jss_test::five_op_instance();
  CHECK(jss::energy("0000", inst) == 7);
  CHECK(jss::energy("0001", inst) == 5);
  CHECK(jss::energy("1001", inst) == 6);
  // 15 folds onto index 5, whose order runs the second job inside the first.
  CHECK(jss::energy("1111", inst) == 7);
  CHECK_THROWS_AS(jss::energy("000", inst), std::invalid_argument);
  CHECK_THROWS_AS(jss::energy("00a0", inst), std::invalid_argument);
}

TEST_CASE("filter weights decay in energy and sharpen in tau") {
  CHECK(jss::filter_value(1.0, 0.7) == doctest::Approx(1.0));
  CHECK(jss::filter_value(4.0, 0.5) == doctest::Approx(0.5));
  CHECK(jss::filter_value(2.0, 0.0) == doctest::Approx(1.0));
  CHECK(jss::filter_value(10.0, 1.0) == doctest::Approx(0.1));
  for (double tau : {0.3, 1.0, 2.5}) {
    CHECK(jss::filter_value(3.0, tau) > jss::filter_value(4.0, tau));
  }
  CHECK(jss::filter_value(5.0, 1.0) > jss::filter_value(5.0, 2.0));
  CHECK_THROWS_AS(jss::filter_value(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(jss::filter_value(2.0, -0.1), std::invalid_argument);
}

TEST_CASE("expectations normalize the weighted filter moments") {
  const EnergyHistogram weights{{2, 50.0}, {4, 50.0}};
  const jss::Expectations at_one = jss::expectations(weights, 1.0);
  CHECK(at_one.f == doctest::Approx(0.375));
  CHECK(at_one.f2 == doctest::Approx(0.15625));

  const jss::Expectations at_zero = jss::expectations(weights, 0.0);
  CHECK(at_zero.f == doctest::Approx(1.0));
  CHECK(at_zero.f2 == doctest::Approx(1.0));

  const jss::Expectations single = jss::expectations(EnergyHistogram{{3, 10.0}}, 1.0);
  CHECK(single.f == doctest::Approx(1.0 / 3.0));
  CHECK(single.f2 == doctest::Approx(1.0 / 9.0));

  CHECK_THROWS_AS(jss::expectations(EnergyHistogram{}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(jss::expectations(EnergyHistogram{{2, -1.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(jss::expectations(EnergyHistogram{{2, 0.0}}, 1.0), std::invalid_argument);

  // The bitstring overload folds outcomes through the instance's energies.
  const Instance inst = jss_test::five_op_instance();
  const std::map<std::string, double> outcomes{{"0001", 30.0}, {"0000", 70.0}};
  const jss::Expectations mixed = jss::expectations(outcomes, 1.0, inst);
  CHECK(mixed.f == doctest::Approx(0.16));
  CHECK(mixed.f2 == doctest::Approx(0.0262857142857));
}

TEST_CASE("the adaptive learning rate is the normalized filter spread") {
  CHECK(jss::learning_rate(1.0, 1.0) == doctest::Approx(4.0));
  CHECK(jss::learning_rate(0.375, 0.15625) == doctest::Approx(4.216370213557));
  // Cauchy-Schwarz keeps <F^2> >= <F>^2, so 4 is a floor.
  jss::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    EnergyHistogram weights;
    const int outcomes = 1 + static_cast<int>(rng.uniform_below(5));
    for (int i = 0; i < outcomes; ++i) {
      weights[1 + static_cast<long long>(rng.uniform_below(20))] += rng.uniform_real() + 0.01;
    }
    const jss::Expectations e = jss::expectations(weights, 0.8);
    CHECK(jss::learning_rate(e.f, e.f2) >= 4.0 - 1e-12);
  }
  // Tiny <F> with broad spread hits the clip.
  CHECK(jss::learning_rate(1e-6, 1.0) == doctest::Approx(jss::kEtaMax));
  CHECK_THROWS_AS(jss::learning_rate(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(jss::learning_rate(-0.5, 1.0), std::invalid_argument);
}

TEST_CASE("the energy table covers every register value") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  CHECK(table.width == 4);
  CHECK(table.energies ==
        std::vector<long long>{7, 5, 5, 5, 5, 7, 6, 6, 6, 6, 7, 5, 5, 5, 5, 7});

  // Strict tables exist only when the count fills the register exactly.
  CHECK_THROWS_AS(jss::make_energy_table(inst, jss::DecodeMode::Strict),
                  std::invalid_argument);
  const EnergyTable strict =
      jss::make_energy_table(jss_test::singleton_jobs_instance(2), jss::DecodeMode::Strict);
  CHECK(strict.width == 1);
  CHECK(strict.energies == std::vector<long long>{2, 2});
}

TEST_CASE("exact histograms carry probabilities on the support") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  AnsatzParams params;
  params.n_qubits = 4;
  params.layers = 1;
  params.theta = std::vector<double>(4, 0.0);
  params.theta.insert(params.theta.end(), 4, kPi / 2);

  const jss::StateVector uniform = jss::run_ansatz(params);
  const EnergyHistogram exact = jss::energy_histogram(uniform, table, 0, 0);
  REQUIRE(exact.size() == 3);
  CHECK(exact.at(5) == doctest::Approx(0.5));
  CHECK(exact.at(6) == doctest::Approx(0.25));
  CHECK(exact.at(7) == doctest::Approx(0.25));

  const EnergyHistogram sampled = jss::energy_histogram(uniform, table, 1000, 9);
  double total = 0.0;
  for (const auto& [energy_value, weight] : sampled) {
    CHECK((energy_value == 5 || energy_value == 6 || energy_value == 7));
    total += weight;
  }
  CHECK(total == doctest::Approx(1000.0));
  CHECK(jss::energy_histogram(uniform, table, 1000, 9) == sampled);
}

TEST_CASE("the gradient vanishes at tau zero and at the uniform start") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  jss::Rng rng(21);
  const AnsatzParams params = random_params(4, 1, rng);

  for (double g : jss::gradient(params, 0.0, table)) {
    CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
  }

  // This table's bit marginals coincide, so the first update sees no slope.
  AnsatzParams start;
  start.n_qubits = 4;
  start.layers = 1;
  start.theta = std::vector<double>(4, 0.0);
  start.theta.insert(start.theta.end(), 4, kPi / 2);
  for (double g : jss::gradient(start, 1.0, table)) {
    CHECK(g == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("the measured gradient matches finite differences of the overlap cost") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  jss::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const AnsatzParams params = random_params(4, 1, rng);
    const double tau = 0.2 + rng.uniform_real() * 1.5;
    const jss::StateVector reference = jss::run_ansatz(params);
    const std::vector<double> grad = jss::gradient(params, tau, table);
    const double h = 1e-4;
    for (std::size_t j = 0; j < params.theta.size(); ++j) {
      AnsatzParams plus = params;
      plus.theta[j] += h;
      AnsatzParams minus = params;
      minus.theta[j] -= h;
      const double fd = (jss::overlap_cost(reference, plus, table, tau) -
                         jss::overlap_cost(reference, minus, table, tau)) /
                        (2 * h);
      CHECK(std::abs(grad[j] - fd) < 1e-6);
    }
  }
}

TEST_CASE("filter expectations are 2-pi periodic in every parameter") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  jss::Rng rng(8);
  const AnsatzParams params = random_params(4, 1, rng);
  const double base = f_expectation(params, table, 0.9);
  for (std::size_t j = 0; j < params.theta.size(); ++j) {
    AnsatzParams shifted = params;
    shifted.theta[j] += 2 * kPi;
    CHECK(f_expectation(shifted, table, 0.9) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("second derivatives follow from half-turn shifts") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  jss::Rng rng(13);
  const double tau = 1.1;
  const double h = 1e-3;
  for (int trial = 0; trial < 4; ++trial) {
    const AnsatzParams params = random_params(4, 1, rng);
    const jss::StateVector reference = jss::run_ansatz(params);
    const std::size_t j = rng.uniform_below(params.theta.size());

    // The overlap cost curves toward its own complement: C'' = (1 - C) / 4.
    AnsatzParams plus = params;
    plus.theta[j] += h;
    AnsatzParams minus = params;
    minus.theta[j] -= h;
    const double center = jss::overlap_cost(reference, params, table, tau);
    const double fd2 = (jss::overlap_cost(reference, plus, table, tau) - 2 * center +
                        jss::overlap_cost(reference, minus, table, tau)) /
                       (h * h);
    CHECK(fd2 == doctest::Approx((1.0 - center) / 4.0).epsilon(1e-4));

    // The filter expectation is sinusoidal, so a half turn reads off its
    // second derivative directly.
    AnsatzParams fd_plus = params;
    fd_plus.theta[j] += h;
    AnsatzParams fd_minus = params;
    fd_minus.theta[j] -= h;
    const double f_center = f_expectation(params, table, tau);
    const double f_fd2 = (f_expectation(fd_plus, table, tau) - 2 * f_center +
                          f_expectation(fd_minus, table, tau)) /
                         (h * h);
    AnsatzParams half_turn = params;
    half_turn.theta[j] += kPi;
    const double shift_formula = (f_expectation(half_turn, table, tau) - f_center) / 2.0;
    CHECK(f_fd2 == doctest::Approx(shift_formula).epsilon(1e-4));
  }
}

TEST_CASE("filtering strictly grows the minimum-energy mass") {
  const EnergyHistogram weights{{3, 10.0}, {5, 30.0}, {9, 60.0}};
  const auto mass_at_min = [](const EnergyHistogram& histogram, double tau) {
    double total = 0.0;
    double lowest = 0.0;
    for (const auto& [energy_value, weight] : histogram) {
      const double filtered =
          weight * jss::filter_value(static_cast<double>(energy_value), 2 * tau);
      total += filtered;
      if (energy_value == histogram.begin()->first) lowest = filtered;
    }
    return lowest / total;
  };
  CHECK(mass_at_min(weights, 0.5) > mass_at_min(weights, 0.0));
  CHECK(mass_at_min(weights, 1.5) > mass_at_min(weights, 0.5));
}

TEST_CASE("tau adaptation stops once the gradient norm crosses the control") {
  FvqeConfig config;
  config.gradient_control = 0.1;
  config.tau_step = 0.1;
  config.tau_max = 20.0;
  const jss::TauChoice choice = jss::adapt_tau(synthetic_measurements(), config);
  CHECK_FALSE(choice.flat);
  CHECK(choice.tau == doctest::Approx(0.6));
  CHECK(choice.grad_norm == doctest::Approx(synthetic_norm(0.6)));
  REQUIRE(choice.scanned_taus.size() == 7);
  REQUIRE(choice.scanned_norms.size() == 7);
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(choice.scanned_taus[k] == doctest::Approx(0.1 * static_cast<double>(k)));
    CHECK(choice.scanned_norms[k] ==
          doctest::Approx(synthetic_norm(0.1 * static_cast<double>(k))));
  }
  REQUIRE(choice.gradient.size() == 1);
  CHECK(choice.gradient[0] < 0.0);
  CHECK(std::abs(choice.gradient[0]) == doctest::Approx(choice.grad_norm));
}

TEST_CASE("tau adaptation picks the scanned value closest to the control") {
  FvqeConfig config;
  config.tau_step = 0.1;
  config.tau_max = 20.0;

  // One step overshoots the control; the step is still the better match.
  config.gradient_control = 0.01;
  const jss::TauChoice overshoot = jss::adapt_tau(synthetic_measurements(), config);
  CHECK(overshoot.tau == doctest::Approx(0.1));
  CHECK(overshoot.scanned_taus.size() == 2);

  // With a tighter control the untouched start is closest of all.
  config.gradient_control = 0.005;
  const jss::TauChoice keep_zero = jss::adapt_tau(synthetic_measurements(), config);
  CHECK(keep_zero.tau == doctest::Approx(0.0));
  CHECK(keep_zero.grad_norm == doctest::Approx(0.0));
  CHECK_FALSE(keep_zero.flat);
}

TEST_CASE("tau adaptation reports a flat scan") {
  CircuitMeasurements flat;
  flat.reference = EnergyHistogram{{2, 1.0}};
  flat.plus = {EnergyHistogram{{2, 1.0}}};
  flat.minus = {EnergyHistogram{{2, 1.0}}};
  FvqeConfig config;
  const jss::TauChoice choice = jss::adapt_tau(flat, config);
  CHECK(choice.flat);
  CHECK(choice.grad_norm == doctest::Approx(0.0));
}

TEST_CASE("tau adaptation stalls when the norm stops moving") {
  FvqeConfig config;
  config.gradient_control = 0.5;  // saturates near 0.354, never reached
  config.tau_step = 0.1;
  config.tau_max = 20.0;
  const jss::TauChoice choice = jss::adapt_tau(synthetic_measurements(), config);
  CHECK_FALSE(choice.flat);
  // The scan halts well short of the horizon and keeps the largest norm seen.
  CHECK(choice.scanned_taus.back() < 20.0 - 1e-9);
  CHECK(choice.tau == doctest::Approx(choice.scanned_taus.back()));
  const double final_norm = choice.scanned_norms.back();
  const double previous_norm = choice.scanned_norms[choice.scanned_norms.size() - 2];
  CHECK(std::abs(final_norm - previous_norm) / previous_norm < 1e-3);
}

TEST_CASE("tau adaptation honors the horizon") {
  FvqeConfig config;
  config.gradient_control = 0.5;
  config.tau_step = 0.1;
  config.tau_max = 0.3;
  const jss::TauChoice choice = jss::adapt_tau(synthetic_measurements(), config);
  REQUIRE(choice.scanned_taus.size() == 4);
  CHECK(choice.scanned_taus.back() == doctest::Approx(0.3));
  CHECK(choice.tau == doctest::Approx(0.3));
}

TEST_CASE("a degenerate cost landscape exits flat without touching parameters") {
  const Instance inst = jss_test::single_job_instance({2, 3});
  FvqeConfig config;
  config.seed = 4;
  const jss::FvqeResult result = jss::optimize(inst, config);
  CHECK(result.flat_exit);
  // The flat iteration is still recorded: the scan ran, the step was null.
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].iteration == 0);
  CHECK_FALSE(result.records[0].tau.has_value());
  CHECK(result.records[1].iteration == 1);
  REQUIRE(result.records[1].grad_norm.has_value());
  CHECK(*result.records[1].grad_norm == doctest::Approx(0.0));
  CHECK(result.records[1].mean_energy == doctest::Approx(5.0));
  CHECK(result.best_energy == 5);
  REQUIRE(result.optimal_energy.has_value());
  CHECK(*result.optimal_energy == 5);
  CHECK(*result.approximation_ratio == doctest::Approx(1.0));
  CHECK(*result.ground_state_probability == doctest::Approx(1.0));
  // Start parameters: zero layers, closing half-pi layer, untouched.
  REQUIRE(result.final_theta.size() == 2);
  CHECK(result.final_theta[0] == doctest::Approx(0.0));
  CHECK(result.final_theta[1] == doctest::Approx(kPi / 2));
}

TEST_CASE("exact optimization on the five-operation fixture finds the optimum") {
  const Instance inst = jss_test::five_op_instance();
  FvqeConfig config;
  config.shots = 0;
  config.seed = 11;
  const jss::FvqeResult result = jss::optimize(inst, config);
  CHECK(result.n_qubits == 4);
  CHECK(result.best_energy == 5);
  REQUIRE(result.optimal_energy.has_value());
  CHECK(*result.optimal_energy == 5);
  CHECK(*result.approximation_ratio == doctest::Approx(1.0));
  // Identical bit marginals at the uniform start leave no exact slope.
  CHECK(result.flat_exit);
  CHECK(*result.ground_state_probability == doctest::Approx(0.5));
  CHECK(result.records[0].mean_energy == doctest::Approx(5.75));
}

TEST_CASE("sampled optimization concentrates on optimal schedules") {
  const Instance inst = jss_test::five_op_instance();
  FvqeConfig config;
  config.shots = 500;
  config.seed = 7;
  const jss::FvqeResult result = jss::optimize(inst, config);
  CHECK(result.shots == 500);
  CHECK(result.best_energy == 5);
  REQUIRE(result.approximation_ratio.has_value());
  CHECK(*result.approximation_ratio == doctest::Approx(1.0));
  REQUIRE(result.ground_state_probability.has_value());
  CHECK(*result.ground_state_probability > 0.3);
  CHECK(result.records.size() >= 2);

  // The running best never worsens.
  for (std::size_t i = 1; i < result.records.size(); ++i) {
    CHECK(result.records[i].best_energy <= result.records[i - 1].best_energy);
  }
  // Updated iterations carry the full trace fields.
  for (std::size_t i = 1; i < result.records.size(); ++i) {
    CHECK(result.records[i].tau.has_value());
    CHECK(result.records[i].eta.has_value());
    CHECK(result.records[i].grad_norm.has_value());
  }
}

TEST_CASE("optimization is deterministic in the seed") {
  const Instance inst = jss_test::five_op_instance();
  FvqeConfig config;
  config.shots = 200;
  config.seed = 31;
  config.max_iterations = 5;
  const jss::FvqeResult a = jss::optimize(inst, config);
  const jss::FvqeResult b = jss::optimize(inst, config);
  CHECK(jss::serialize_result(a) == jss::serialize_result(b));
  CHECK(jss::trace_csv(a) == jss::trace_csv(b));

  config.seed = 32;
  const jss::FvqeResult c = jss::optimize(inst, config);
  CHECK(jss::serialize_result(a) != jss::serialize_result(c));
}

TEST_CASE("serialized results expose the run shape") {
  const Instance inst = jss_test::five_op_instance();
  FvqeConfig config;
  config.shots = 200;
  config.seed = 2;
  config.max_iterations = 3;
  const jss::FvqeResult result = jss::optimize(inst, config);
  const std::string json = jss::serialize_result(result);
  CHECK(json.find("\"n_qubits\": 4") != std::string::npos);
  CHECK(json.find("\"shots\": 200") != std::string::npos);
  CHECK(json.find("\"iterations\"") != std::string::npos);
  CHECK(json.find("\"final_theta\"") != std::string::npos);
  CHECK(json.back() == '\n');

  const std::string csv = jss::trace_csv(result);
  std::istringstream lines(csv);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "iteration,tau,eta,mean_energy,best_energy,grad_norm");
  std::size_t rows = 0;
  std::string row;
  while (std::getline(lines, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == 5);
    CHECK(row.substr(0, row.find(',')) == std::to_string(rows));
  }
  CHECK(rows == result.records.size() - 1);
}

TEST_CASE("the overlap cost at the reference reduces to the filter moments") {
  const Instance inst = jss_test::five_op_instance();
  const EnergyTable table = jss::make_energy_table(inst);
  jss::Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const AnsatzParams params = random_params(4, 1, rng);
    const double tau = 0.3 + rng.uniform_real();
    const jss::StateVector reference = jss::run_ansatz(params);
    const jss::Expectations e =
        jss::expectations(jss::energy_histogram(reference, table, 0, 0), tau);
    const double cost = jss::overlap_cost(reference, params, table, tau);
    CHECK(cost == doctest::Approx(1.0 - e.f / std::sqrt(e.f2)));
  }
}

TEST_SUITE_END();
