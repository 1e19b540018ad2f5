#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jss {

// Dense simulation only; 2^24 amplitudes is the largest register we allocate.
inline constexpr int kMaxQubits = 24;

// Dense statevector over n qubits. amplitudes[i] belongs to the basis state
// whose big-endian bitstring is i, i.e. qubit 1 is the most significant bit.
struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;
};

StateVector zero_state(int n_qubits);

double state_norm(const StateVector& state);

// R_y(angle): |0> -> cos(angle/2)|0> + sin(angle/2)|1>. Qubits are 1-based.
void apply_ry(StateVector& state, int qubit, double angle);

// Controlled-Z: flips the sign of every amplitude where both qubits are 1.
void apply_cz(StateVector& state, int qubit_a, int qubit_b);

// Hardware-efficient ansatz: per repetition one R_y layer followed by a CZ
// brickwork (pairs (1,2),(3,4),... then (2,3),(4,5),...; a dangling qubit
// idles), then one final R_y layer. Parameter count = n_qubits * (layers + 1).
struct AnsatzParams {
  std::vector<double> theta;
  int layers = 1;
  int n_qubits = 0;
};

int ansatz_param_count(int n_qubits, int layers);

StateVector run_ansatz(const AnsatzParams& params);

// Probabilities |amplitude|^2 in basis order; sums to 1 for a normalized state.
std::vector<double> exact_distribution(const StateVector& state);

// Multinomial sampling: `shots` independent draws from the exact distribution,
// deterministic in seed. Returned counts are indexed by basis state.
std::vector<std::uint64_t> sample_counts(const StateVector& state, std::uint64_t shots,
                                         std::uint64_t seed);

// Same draws keyed by big-endian bitstring; only observed outcomes appear.
std::map<std::string, std::uint64_t> sample(const StateVector& state, std::uint64_t shots,
                                            std::uint64_t seed);

}  // namespace jss
