#include "jss/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jss/rng.hpp"

namespace jss {

namespace {

void check_qubit(const StateVector& state, int qubit) {
  if (qubit < 1 || qubit > state.n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside 1.." +
                            std::to_string(state.n_qubits));
  }
}

}  // namespace

StateVector zero_state(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("zero_state: need at least one qubit");
  if (n_qubits > kMaxQubits) {
    throw std::invalid_argument("zero_state: " + std::to_string(n_qubits) +
                                " qubits exceeds the dense-simulation limit of " +
                                std::to_string(kMaxQubits));
  }
  StateVector state;
  state.n_qubits = n_qubits;
  state.amplitudes.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  state.amplitudes[0] = {1.0, 0.0};
  return state;
}

double state_norm(const StateVector& state) {
  double sum = 0.0;
  for (const auto& amp : state.amplitudes) sum += std::norm(amp);
  return std::sqrt(sum);
}

void apply_ry(StateVector& state, int qubit, double angle) {
  check_qubit(state, qubit);
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const std::size_t stride = std::size_t{1} << (state.n_qubits - qubit);
  const std::size_t size = state.amplitudes.size();
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t low = 0; low < stride; ++low) {
      auto& a0 = state.amplitudes[base + low];
      auto& a1 = state.amplitudes[base + low + stride];
      const auto new0 = c * a0 - s * a1;
      const auto new1 = s * a0 + c * a1;
      a0 = new0;
      a1 = new1;
    }
  }
}

void apply_cz(StateVector& state, int qubit_a, int qubit_b) {
  check_qubit(state, qubit_a);
  check_qubit(state, qubit_b);
  if (qubit_a == qubit_b) throw std::invalid_argument("apply_cz: qubits must differ");
  const std::size_t mask_a = std::size_t{1} << (state.n_qubits - qubit_a);
  const std::size_t mask_b = std::size_t{1} << (state.n_qubits - qubit_b);
  const std::size_t both = mask_a | mask_b;
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    if ((i & both) == both) state.amplitudes[i] = -state.amplitudes[i];
  }
}

int ansatz_param_count(int n_qubits, int layers) {
  return n_qubits * (layers + 1);
}

StateVector run_ansatz(const AnsatzParams& params) {
  if (params.layers < 1) throw std::invalid_argument("run_ansatz: layers must be >= 1");
  const int n = params.n_qubits;
  const int expected = ansatz_param_count(n, params.layers);
  if (static_cast<int>(params.theta.size()) != expected) {
    throw std::invalid_argument("run_ansatz: expected " + std::to_string(expected) +
                                " parameters, got " + std::to_string(params.theta.size()));
  }

  StateVector state = zero_state(n);
  std::size_t next = 0;
  for (int rep = 0; rep < params.layers; ++rep) {
    for (int q = 1; q <= n; ++q) apply_ry(state, q, params.theta[next++]);
    for (int q = 1; q + 1 <= n; q += 2) apply_cz(state, q, q + 1);
    for (int q = 2; q + 1 <= n; q += 2) apply_cz(state, q, q + 1);
  }
  for (int q = 1; q <= n; ++q) apply_ry(state, q, params.theta[next++]);
  return state;
}

std::vector<double> exact_distribution(const StateVector& state) {
  std::vector<double> probs(state.amplitudes.size());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state.amplitudes[i]);
  return probs;
}

std::vector<std::uint64_t> sample_counts(const StateVector& state, std::uint64_t shots,
                                         std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  const auto probs = exact_distribution(state);
  std::vector<double> cumulative(probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    running += probs[i];
    cumulative[i] = running;
  }

  std::vector<std::uint64_t> counts(probs.size(), 0);
  Rng rng(seed);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform_real() * running;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto index = static_cast<std::size_t>(
        std::min(it - cumulative.begin(),
                 static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
    ++counts[index];
  }
  return counts;
}

std::map<std::string, std::uint64_t> sample(const StateVector& state, std::uint64_t shots,
                                            std::uint64_t seed) {
  const auto counts = sample_counts(state, shots, seed);
  std::map<std::string, std::uint64_t> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    std::string bits(static_cast<std::size_t>(state.n_qubits), '0');
    for (int q = 0; q < state.n_qubits; ++q) {
      if (i & (std::size_t{1} << (state.n_qubits - 1 - q))) bits[static_cast<std::size_t>(q)] = '1';
    }
    out.emplace(std::move(bits), counts[i]);
  }
  return out;
}

}  // namespace jss
