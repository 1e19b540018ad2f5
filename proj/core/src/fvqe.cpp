#include "jss/fvqe.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "jss/bitstring.hpp"
#include "jss/oracle.hpp"
#include "jss/rng.hpp"
#include "jss/schedule.hpp"

namespace jss {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Slack when walking the tau grid, so the nominal endpoint k*step == tau_max
// survives floating-point rounding.
constexpr double kTauGridEps = 1e-9;
constexpr double kStallThreshold = 1e-3;

double vector_norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

std::uint64_t circuit_seed(std::uint64_t master, int iteration, int circuit) {
  const std::uint64_t iteration_seed =
      mix_seed(master ^ mix_seed(static_cast<std::uint64_t>(iteration)));
  return mix_seed(iteration_seed + static_cast<std::uint64_t>(circuit));
}

// First layers at 0 leave |0...0> untouched through the entangling pairs; the
// final half-pi layer then rotates every qubit into the uniform superposition.
std::vector<double> initial_theta(int n_qubits, int layers) {
  std::vector<double> theta(static_cast<std::size_t>(ansatz_param_count(n_qubits, layers)), 0.0);
  for (std::size_t i = theta.size() - static_cast<std::size_t>(n_qubits); i < theta.size(); ++i) {
    theta[i] = kHalfPi;
  }
  return theta;
}

double histogram_mean(const EnergyHistogram& histogram) {
  double total = 0.0;
  double weighted = 0.0;
  for (const auto& [energy_value, weight] : histogram) {
    total += weight;
    weighted += weight * static_cast<double>(energy_value);
  }
  return weighted / total;
}

std::string format_csv_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

}  // namespace

void require_valid(const FvqeConfig& config) {
  std::vector<std::string> problems;
  if (config.max_iterations < 1) problems.push_back("max_iterations must be >= 1");
  if (!(config.gradient_control > 0.0)) problems.push_back("gradient_control must be > 0");
  if (!(config.tau_step > 0.0)) problems.push_back("tau_step must be > 0");
  if (!(config.tau_max >= config.tau_step)) problems.push_back("tau_max must be >= tau_step");
  if (config.layers < 1) problems.push_back("layers must be >= 1");
  if (!problems.empty()) {
    std::string joined;
    for (const auto& p : problems) {
      if (!joined.empty()) joined += "; ";
      joined += p;
    }
    throw std::invalid_argument("invalid optimizer config: " + joined);
  }
}

std::uint64_t default_shots(const Instance& instance) {
  const int n = instance.n_ops;
  if (instance.is_fjsp()) {
    if (n < 5) return 100;
    if (n < 7) return 500;
    return 1000;
  }
  if (n < 6) return 100;
  if (n < 9) return 500;
  return 1000;
}

long long energy(const std::string& bitstring, const Instance& instance) {
  const int width = qubit_count(instance);
  if (static_cast<int>(bitstring.size()) != width) {
    throw std::invalid_argument("energy: bitstring has " + std::to_string(bitstring.size()) +
                                " characters, register width is " + std::to_string(width));
  }
  const CodeIndex index = code_index_from_bitstring(bitstring, instance);
  const Schedule schedule = decode(index, instance, DecodeMode::Total);
  return evaluate_makespan(instance, schedule).makespan;
}

double filter_value(double energy_value, double tau) {
  if (!(energy_value >= 1.0)) {
    throw std::invalid_argument("filter_value: energy must be >= 1");
  }
  if (!(tau >= 0.0)) throw std::invalid_argument("filter_value: tau must be >= 0");
  return std::pow(energy_value, -tau);
}

Expectations expectations(const EnergyHistogram& weights, double tau) {
  if (weights.empty()) throw std::invalid_argument("expectations: empty outcome weights");
  double total = 0.0;
  Expectations result;
  for (const auto& [energy_value, weight] : weights) {
    if (weight < 0.0) throw std::invalid_argument("expectations: negative weight");
    const double f = filter_value(static_cast<double>(energy_value), tau);
    total += weight;
    result.f += weight * f;
    result.f2 += weight * f * f;
  }
  if (!(total > 0.0)) throw std::invalid_argument("expectations: weights sum to zero");
  result.f /= total;
  result.f2 /= total;
  return result;
}

Expectations expectations(const std::map<std::string, double>& bitstring_weights, double tau,
                          const Instance& instance) {
  EnergyHistogram reduced;
  for (const auto& [bits, weight] : bitstring_weights) {
    reduced[energy(bits, instance)] += weight;
  }
  return expectations(reduced, tau);
}

EnergyTable make_energy_table(const Instance& instance, DecodeMode mode) {
  require_valid(instance);
  EnergyTable table;
  table.instance = instance;
  table.width = qubit_count(instance);
  if (table.width > kMaxQubits) {
    throw std::invalid_argument("instance needs " + std::to_string(table.width) +
                                " qubits, above the dense-simulation limit of " +
                                std::to_string(kMaxQubits));
  }
  const BigInt count = count_valid_schedules(instance);
  if (mode == DecodeMode::Strict && (BigInt(1) << table.width) != count) {
    throw std::invalid_argument(
        "strict cost table requires a power-of-two schedule count; register values past the "
        "count would have no cost");
  }
  const std::uint64_t size = std::uint64_t{1} << table.width;
  table.energies.resize(size);
  for (std::uint64_t value = 0; value < size; ++value) {
    const Schedule schedule = decode(make_code_index(BigInt(value), instance), instance, mode);
    table.energies[value] = evaluate_makespan(instance, schedule).makespan;
  }
  return table;
}

EnergyHistogram energy_histogram(const StateVector& state, const EnergyTable& table,
                                 std::uint64_t shots, std::uint64_t seed) {
  if (state.n_qubits != table.width) {
    throw std::invalid_argument("energy_histogram: state has " + std::to_string(state.n_qubits) +
                                " qubits, table expects " + std::to_string(table.width));
  }
  EnergyHistogram histogram;
  if (shots == 0) {
    const auto probabilities = exact_distribution(state);
    for (std::size_t value = 0; value < probabilities.size(); ++value) {
      if (probabilities[value] > kSupportEps) {
        histogram[table.energies[value]] += probabilities[value];
      }
    }
  } else {
    const auto counts = sample_counts(state, shots, seed);
    for (std::size_t value = 0; value < counts.size(); ++value) {
      if (counts[value] > 0) {
        histogram[table.energies[value]] += static_cast<double>(counts[value]);
      }
    }
  }
  return histogram;
}

CircuitMeasurements measure_circuits(const AnsatzParams& params, const EnergyTable& table,
                                     std::uint64_t shots, std::uint64_t seed, int iteration) {
  const int m = static_cast<int>(params.theta.size());
  CircuitMeasurements measurements;
  measurements.reference =
      energy_histogram(run_ansatz(params), table, shots, circuit_seed(seed, iteration, 0));
  measurements.plus.reserve(static_cast<std::size_t>(m));
  measurements.minus.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    AnsatzParams shifted = params;
    shifted.theta[static_cast<std::size_t>(j)] += kHalfPi;
    measurements.plus.push_back(
        energy_histogram(run_ansatz(shifted), table, shots, circuit_seed(seed, iteration, 1 + j)));
  }
  for (int j = 0; j < m; ++j) {
    AnsatzParams shifted = params;
    shifted.theta[static_cast<std::size_t>(j)] -= kHalfPi;
    measurements.minus.push_back(energy_histogram(run_ansatz(shifted), table, shots,
                                                  circuit_seed(seed, iteration, 1 + m + j)));
  }
  return measurements;
}

std::vector<double> gradient_from(const CircuitMeasurements& measurements, double tau) {
  if (measurements.plus.size() != measurements.minus.size()) {
    throw std::invalid_argument("gradient_from: mismatched shifted-circuit lists");
  }
  const Expectations reference = expectations(measurements.reference, tau);
  const double denominator = 4.0 * std::sqrt(reference.f2);
  if (!(denominator > 0.0)) {
    throw std::runtime_error("gradient_from: vanishing <F^2>, cannot normalize");
  }
  std::vector<double> grad(measurements.plus.size());
  for (std::size_t j = 0; j < grad.size(); ++j) {
    const double plus = expectations(measurements.plus[j], tau).f;
    const double minus = expectations(measurements.minus[j], tau).f;
    grad[j] = -(plus - minus) / denominator;
  }
  return grad;
}

std::vector<double> gradient(const AnsatzParams& params, double tau, const EnergyTable& table,
                             std::uint64_t shots, std::uint64_t seed) {
  return gradient_from(measure_circuits(params, table, shots, seed, 0), tau);
}

double overlap_cost(const StateVector& reference, const AnsatzParams& params,
                    const EnergyTable& table, double tau) {
  if (reference.n_qubits != table.width) {
    throw std::invalid_argument("overlap_cost: reference width does not match the table");
  }
  const StateVector state = run_ansatz(params);
  if (state.n_qubits != reference.n_qubits) {
    throw std::invalid_argument("overlap_cost: parameter count does not match the reference");
  }
  double f2 = 0.0;
  double overlap = 0.0;
  for (std::size_t value = 0; value < state.amplitudes.size(); ++value) {
    const double f = filter_value(static_cast<double>(table.energies[value]), tau);
    f2 += std::norm(reference.amplitudes[value]) * f * f;
    overlap += (std::conj(reference.amplitudes[value]) * state.amplitudes[value]).real() * f;
  }
  if (!(f2 > 0.0)) throw std::runtime_error("overlap_cost: vanishing <F^2>");
  return 1.0 - overlap / std::sqrt(f2);
}

double learning_rate(double f_expectation, double f2_expectation) {
  if (!(f_expectation > 0.0)) {
    throw std::invalid_argument("learning_rate: <F> must be positive");
  }
  if (f2_expectation < 0.0) {
    throw std::invalid_argument("learning_rate: <F^2> must be non-negative");
  }
  return std::min(4.0 * std::sqrt(f2_expectation) / f_expectation, kEtaMax);
}

TauChoice adapt_tau(const CircuitMeasurements& measurements, const FvqeConfig& config) {
  require_valid(config);
  TauChoice choice;
  double best_distance = std::numeric_limits<double>::infinity();
  double previous_norm = 0.0;
  for (int k = 0;; ++k) {
    const double tau = static_cast<double>(k) * config.tau_step;
    if (tau > config.tau_max + kTauGridEps) break;
    const double norm = vector_norm(gradient_from(measurements, tau));
    choice.scanned_taus.push_back(tau);
    choice.scanned_norms.push_back(norm);
    const double distance = std::abs(norm - config.gradient_control);
    if (distance < best_distance) {
      best_distance = distance;
      choice.tau = tau;
      choice.grad_norm = norm;
    }
    if (norm > config.gradient_control) break;
    if (k >= 1) {
      const double reference = std::max(std::abs(previous_norm), 1e-12);
      if (std::abs(norm - previous_norm) / reference < kStallThreshold) break;
    }
    previous_norm = norm;
  }
  choice.flat =
      *std::max_element(choice.scanned_norms.begin(), choice.scanned_norms.end()) <= kFlatEps;
  choice.gradient = gradient_from(measurements, choice.tau);
  return choice;
}

FvqeResult optimize(const Instance& instance, const FvqeConfig& config) {
  require_valid(instance);
  require_valid(config);
  const EnergyTable table = make_energy_table(instance, config.cost_mode);
  const int n = table.width;

  FvqeResult result;
  result.n_qubits = n;
  result.shots = config.shots;

  long long best = 0;
  bool have_best = false;
  const auto track_best = [&](const EnergyHistogram& histogram) {
    if (histogram.empty()) return;
    const long long lowest = histogram.begin()->first;
    if (!have_best || lowest < best) {
      best = lowest;
      have_best = true;
    }
  };
  const auto track_shifts = [&](const CircuitMeasurements& measurements) {
    for (const auto& histogram : measurements.plus) track_best(histogram);
    for (const auto& histogram : measurements.minus) track_best(histogram);
  };

  AnsatzParams params;
  params.n_qubits = n;
  params.layers = config.layers;
  params.theta = initial_theta(n, config.layers);

  CircuitMeasurements bundle = measure_circuits(params, table, config.shots, config.seed, 1);
  track_best(bundle.reference);
  IterationRecord initial;
  initial.iteration = 0;
  initial.histogram = bundle.reference;
  initial.mean_energy = histogram_mean(initial.histogram);
  initial.best_energy = best;
  result.records.push_back(std::move(initial));
  track_shifts(bundle);

  for (int t = 1; t <= config.max_iterations; ++t) {
    const TauChoice choice = adapt_tau(bundle, config);
    const Expectations reference = expectations(bundle.reference, choice.tau);
    const double eta = learning_rate(reference.f, reference.f2);
    if (!choice.flat) {
      for (std::size_t j = 0; j < params.theta.size(); ++j) {
        params.theta[j] -= eta * choice.gradient[j];
      }
    }

    const bool last = choice.flat || t == config.max_iterations;
    IterationRecord record;
    record.iteration = t;
    record.tau = choice.tau;
    record.eta = eta;
    record.grad_norm = choice.grad_norm;
    if (last) {
      record.histogram = energy_histogram(run_ansatz(params), table, config.shots,
                                          circuit_seed(config.seed, t + 1, 0));
      track_best(record.histogram);
    } else {
      bundle = measure_circuits(params, table, config.shots, config.seed, t + 1);
      record.histogram = bundle.reference;
      track_best(record.histogram);
    }
    record.mean_energy = histogram_mean(record.histogram);
    record.best_energy = best;
    result.records.push_back(std::move(record));
    if (!last) track_shifts(bundle);
    if (choice.flat) {
      result.flat_exit = true;
      break;
    }
  }

  result.final_theta = params.theta;
  result.best_energy = best;

  try {
    const GroundState gs = ground_state(instance, oracle_cap());
    result.optimal_energy = gs.c_gs;
    result.approximation_ratio = approximation_ratio(gs.c_gs, static_cast<int>(best));
    const auto probabilities = exact_distribution(run_ansatz(params));
    double mass = 0.0;
    for (std::size_t value = 0; value < probabilities.size(); ++value) {
      if (table.energies[value] == gs.c_gs) mass += probabilities[value];
    }
    result.ground_state_probability = mass;
  } catch (const OracleCapExceeded&) {
    // Too many schedules to enumerate: report the measured best on its own.
  }
  return result;
}

std::string serialize_result(const FvqeResult& result) {
  ordered_json root;
  root["n_qubits"] = result.n_qubits;
  root["shots"] = result.shots;
  root["flat_exit"] = result.flat_exit;
  root["best_energy"] = result.best_energy;
  if (result.optimal_energy) root["optimal_energy"] = *result.optimal_energy;
  if (result.approximation_ratio) root["approximation_ratio"] = *result.approximation_ratio;
  if (result.ground_state_probability) {
    root["ground_state_probability"] = *result.ground_state_probability;
  }
  root["final_theta"] = result.final_theta;
  ordered_json iterations = ordered_json::array();
  for (const auto& record : result.records) {
    ordered_json item;
    item["iteration"] = record.iteration;
    item["tau"] = record.tau ? ordered_json(*record.tau) : ordered_json(nullptr);
    item["eta"] = record.eta ? ordered_json(*record.eta) : ordered_json(nullptr);
    item["grad_norm"] = record.grad_norm ? ordered_json(*record.grad_norm) : ordered_json(nullptr);
    item["mean_energy"] = record.mean_energy;
    item["best_energy"] = record.best_energy;
    ordered_json histogram = ordered_json::object();
    for (const auto& [energy_value, weight] : record.histogram) {
      histogram[std::to_string(energy_value)] = weight;
    }
    item["histogram"] = std::move(histogram);
    iterations.push_back(std::move(item));
  }
  root["iterations"] = std::move(iterations);
  return root.dump(2) + "\n";
}

std::string trace_csv(const FvqeResult& result) {
  std::string out = "iteration,tau,eta,mean_energy,best_energy,grad_norm\n";
  for (const auto& record : result.records) {
    if (record.iteration == 0) continue;
    out += std::to_string(record.iteration);
    out += ',';
    out += format_csv_double(record.tau.value());
    out += ',';
    out += format_csv_double(record.eta.value());
    out += ',';
    out += format_csv_double(record.mean_energy);
    out += ',';
    out += std::to_string(record.best_energy);
    out += ',';
    out += format_csv_double(record.grad_norm.value());
    out += '\n';
  }
  return out;
}

}  // namespace jss
