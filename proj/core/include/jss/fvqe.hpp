#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jss/codec.hpp"
#include "jss/instance.hpp"
#include "jss/qsim.hpp"

namespace jss {

// Learning rates above this are clipped; guards the vanishing-<F> limit.
inline constexpr double kEtaMax = 100.0;

// Probabilities at or below this are treated as zero when exact distributions
// stand in for measurement histograms (shots = 0).
inline constexpr double kSupportEps = 1e-12;

// Gradient-norm scans whose largest value stays below this are flat: the
// optimizer takes a null step and terminates.
inline constexpr double kFlatEps = 1e-12;

struct FvqeConfig {
  int max_iterations = 30;
  std::uint64_t shots = 0;  // measurement draws per circuit; 0 = exact mode
  double gradient_control = 0.1;  // target gradient norm for the filter scan
  double tau_step = 0.1;
  double tau_max = 20.0;
  int layers = 1;
  std::uint64_t seed = 0;
  DecodeMode cost_mode = DecodeMode::Total;
};

// Throws std::invalid_argument listing every violated config constraint.
void require_valid(const FvqeConfig& config);

// Default measurement budget per circuit, keyed on instance size and class.
std::uint64_t default_shots(const Instance& instance);

// Makespan of the schedule a measured bitstring maps to (modulo wrap-around,
// so every register value has a cost). Always >= 1 because durations are.
long long energy(const std::string& bitstring, const Instance& instance);

// Filter weight E^-tau: strictly decreasing in E for tau > 0, so repeated
// filtering concentrates weight on low-makespan outcomes. Requires E >= 1.
double filter_value(double energy_value, double tau);

// Outcome weights aggregated by energy. Weights are shot counts in sampled
// mode and probabilities in exact mode; only the ratios matter.
using EnergyHistogram = std::map<long long, double>;

struct Expectations {
  double f = 0.0;   // <F>  = sum w * E^-tau   / sum w
  double f2 = 0.0;  // <F^2> = sum w * E^-2tau / sum w
};

Expectations expectations(const EnergyHistogram& weights, double tau);
Expectations expectations(const std::map<std::string, double>& bitstring_weights, double tau,
                          const Instance& instance);

// Energy of every register value, precomputed so histograms and gradients
// reduce measurement outcomes without repeated decoding.
struct EnergyTable {
  Instance instance;
  int width = 1;
  std::vector<long long> energies;  // size 2^width, indexed by register value
};

EnergyTable make_energy_table(const Instance& instance, DecodeMode mode = DecodeMode::Total);

// Histogram of one circuit's outcomes: `shots` draws, or the exact
// distribution restricted to its support when shots = 0.
EnergyHistogram energy_histogram(const StateVector& state, const EnergyTable& table,
                                 std::uint64_t shots, std::uint64_t seed);

// The one reference and 2m shifted circuits (+-pi/2 per parameter) measured
// for one optimizer update. Histograms are reusable across the whole tau scan
// because the states do not depend on tau.
struct CircuitMeasurements {
  EnergyHistogram reference;
  std::vector<EnergyHistogram> plus;
  std::vector<EnergyHistogram> minus;
};

// Deterministic per-circuit seeds are derived from (seed, iteration, circuit),
// so any evaluation order of the independent circuits gives identical output.
CircuitMeasurements measure_circuits(const AnsatzParams& params, const EnergyTable& table,
                                     std::uint64_t shots, std::uint64_t seed, int iteration);

// grad_j = -(<F>_plus_j - <F>_minus_j) / (4 sqrt(<F^2>_reference)).
std::vector<double> gradient_from(const CircuitMeasurements& measurements, double tau);

// Convenience wrapper that measures the 2m+1 circuits itself (iteration 0
// seed layout). With shots = 0 this is the exact gradient at `params`.
std::vector<double> gradient(const AnsatzParams& params, double tau, const EnergyTable& table,
                             std::uint64_t shots = 0, std::uint64_t seed = 0);

// Overlap cost 1 - Re<reference|F|psi(theta)> / sqrt(<F^2>_reference) from
// exact statevectors; the quantity the gradient descends at the reference.
double overlap_cost(const StateVector& reference, const AnsatzParams& params,
                    const EnergyTable& table, double tau);

// eta = 4 sqrt(<F^2>) / <F>, clipped to (0, kEtaMax]. Requires <F> > 0.
double learning_rate(double f_expectation, double f2_expectation);

struct TauChoice {
  double tau = 0.0;
  double grad_norm = 0.0;         // gradient norm at the chosen tau
  std::vector<double> gradient;   // gradient at the chosen tau
  bool flat = false;              // every scanned norm was below kFlatEps
  std::vector<double> scanned_taus;
  std::vector<double> scanned_norms;
};

// Scans tau = 0, step, 2*step, ... until the gradient norm exceeds
// gradient_control, stalls (relative change < 1e-3 over one step), or tau_max
// is reached; picks the first scanned tau whose norm is closest to the
// control value.
TauChoice adapt_tau(const CircuitMeasurements& measurements, const FvqeConfig& config);

struct IterationRecord {
  int iteration = 0;               // 0 is the initial state, before any update
  std::optional<double> tau;       // absent at iteration 0
  std::optional<double> eta;
  std::optional<double> grad_norm;
  EnergyHistogram histogram;       // outcomes of this iteration's state
  double mean_energy = 0.0;
  long long best_energy = 0;       // best outcome of any circuit so far
};

struct FvqeResult {
  std::vector<IterationRecord> records;  // iterations 0..T; T can stop early
  std::vector<double> final_theta;
  int n_qubits = 0;
  std::uint64_t shots = 0;
  bool flat_exit = false;
  long long best_energy = 0;  // best outcome ever measured, any circuit
  // Set only when the schedule count fits under the enumeration cap:
  std::optional<long long> optimal_energy;          // true minimum makespan
  std::optional<double> approximation_ratio;        // optimal / best, in (0,1]
  std::optional<double> ground_state_probability;   // exact final-state mass
                                                    // on optimal outcomes
};

// Gradient-descent loop: start from the uniform superposition, then per
// iteration choose tau, estimate the gradient from 2m+1 measured circuits,
// step with the adaptive learning rate, and record the new state's outcomes.
FvqeResult optimize(const Instance& instance, const FvqeConfig& config);

std::string serialize_result(const FvqeResult& result);

// CSV rows for iterations 1..T: iteration,tau,eta,mean_energy,best_energy,
// grad_norm. The initial state has no update, so no row.
std::string trace_csv(const FvqeResult& result);

}  // namespace jss
