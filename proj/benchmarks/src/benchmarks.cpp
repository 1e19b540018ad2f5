#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "jss/codec.hpp"
#include "jss/fvqe.hpp"
#include "jss/instance.hpp"
#include "jss/oracle.hpp"
#include "jss/qsim.hpp"
#include "jss/rng.hpp"
#include "jss/schedule.hpp"

namespace {

jss::Instance ten_op_instance() {
  static const jss::Instance inst = jss::generate_random_jsp(10, 42);
  return inst;
}

jss::AnsatzParams dense_params(int n_qubits, int layers) {
  jss::AnsatzParams params;
  params.n_qubits = n_qubits;
  params.layers = layers;
  jss::Rng rng(7);
  const int count = jss::ansatz_param_count(n_qubits, layers);
  for (int i = 0; i < count; ++i) {
    params.theta.push_back(rng.uniform_real() * std::numbers::pi);
  }
  return params;
}

void bm_decode(benchmark::State& state) {
  const jss::Instance inst = ten_op_instance();
  const jss::BigInt count = jss::count_valid_schedules(inst);
  jss::BigInt value = 0;
  for (auto _ : state) {
    const auto schedule =
        jss::decode(jss::make_code_index(value, inst), inst, jss::DecodeMode::Strict);
    benchmark::DoNotOptimize(schedule);
    value = (value + 7919) % count;
  }
}
BENCHMARK(bm_decode);

void bm_encode(benchmark::State& state) {
  const jss::Instance inst = ten_op_instance();
  const auto schedule =
      jss::decode(jss::make_code_index(123, inst), inst, jss::DecodeMode::Strict);
  for (auto _ : state) {
    const auto index = jss::encode(schedule, inst);
    benchmark::DoNotOptimize(index);
  }
}
BENCHMARK(bm_encode);

void bm_evaluate_makespan(benchmark::State& state) {
  const jss::Instance inst = ten_op_instance();
  const auto schedule =
      jss::decode(jss::make_code_index(123, inst), inst, jss::DecodeMode::Strict);
  for (auto _ : state) {
    const auto timing = jss::evaluate_makespan(inst, schedule);
    benchmark::DoNotOptimize(timing);
  }
}
BENCHMARK(bm_evaluate_makespan);

void bm_single_qubit_rotation(benchmark::State& state) {
  jss::StateVector sv = jss::zero_state(16);
  for (auto _ : state) {
    jss::apply_ry(sv, 8, 0.3);
    benchmark::DoNotOptimize(sv.amplitudes.data());
  }
}
BENCHMARK(bm_single_qubit_rotation);

void bm_entangling_gate(benchmark::State& state) {
  jss::StateVector sv = jss::zero_state(16);
  jss::apply_ry(sv, 8, 0.3);
  for (auto _ : state) {
    jss::apply_cz(sv, 8, 9);
    benchmark::DoNotOptimize(sv.amplitudes.data());
  }
}
BENCHMARK(bm_entangling_gate);

void bm_run_ansatz(benchmark::State& state) {
  const jss::AnsatzParams params =
      dense_params(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    const auto sv = jss::run_ansatz(params);
    benchmark::DoNotOptimize(sv.amplitudes.data());
  }
}
BENCHMARK(bm_run_ansatz)->Arg(8)->Arg(12);

void bm_sample_counts(benchmark::State& state) {
  const auto sv = jss::run_ansatz(dense_params(10, 1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto counts = jss::sample_counts(sv, 1000, ++seed);
    benchmark::DoNotOptimize(counts.data());
  }
}
BENCHMARK(bm_sample_counts);

void bm_ground_state(benchmark::State& state) {
  const jss::Instance inst = jss::generate_random_jsp(8, 3);
  for (auto _ : state) {
    const auto gs = jss::ground_state(inst, 1000000);
    benchmark::DoNotOptimize(gs.c_gs);
  }
}
BENCHMARK(bm_ground_state);

void bm_optimizer_iteration(benchmark::State& state) {
  const jss::Instance inst = jss::generate_random_jsp(5, 1);
  jss::FvqeConfig config;
  config.max_iterations = 1;
  config.shots = 0;
  for (auto _ : state) {
    const auto result = jss::optimize(inst, config);
    benchmark::DoNotOptimize(result.best_energy);
  }
}
BENCHMARK(bm_optimizer_iteration);

}  // namespace

BENCHMARK_MAIN();
