#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jss/bitstring.hpp"
#include "jss/codec.hpp"
#include "jss/fvqe.hpp"
#include "jss/instance.hpp"
#include "jss/oracle.hpp"
#include "jss/schedule.hpp"

namespace {

using jss::BigInt;
using jss::Instance;
using jss::Schedule;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

Instance load_instance(const std::string& path) {
  try {
    return jss::parse_instance(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

ordered_json schedule_to_json(const Schedule& schedule) {
  ordered_json list = ordered_json::array();
  for (const auto& entry : schedule.entries) {
    list.push_back(ordered_json{{"op", entry.op}, {"machine", entry.machine}});
  }
  return list;
}

Schedule schedule_from_json(const std::string& text) {
  const auto root = ordered_json::parse(text);
  if (!root.is_object() || !root.contains("schedule") || !root["schedule"].is_array()) {
    throw std::runtime_error("schedule file must be an object with a \"schedule\" array");
  }
  Schedule schedule;
  for (const auto& item : root["schedule"]) {
    if (!item.is_object() || !item.contains("op") || !item.contains("machine")) {
      throw std::runtime_error("schedule entries need \"op\" and \"machine\" fields");
    }
    schedule.entries.push_back({item["op"].get<int>(), item["machine"].get<int>()});
  }
  return schedule;
}

std::string format_ratio(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

// N jobs of N unit-duration operations on N machines, assigned as a latin
// square so no two same-position operations share a machine.
Instance cubic_instance(int n) {
  Instance instance;
  instance.n_ops = n * n;
  instance.n_machines = n;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> job;
    for (int j = 1; j <= n; ++j) job.push_back((i - 1) * n + j);
    instance.jobs.push_back(std::move(job));
    for (int j = 1; j <= n; ++j) {
      instance.machine_sets.push_back({(i + j - 2) % n + 1});
      instance.durations.push_back({1});
    }
  }
  jss::require_valid(instance);
  return instance;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

struct ComparisonRow {
  std::string id;
  Instance instance;
};

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string csv = "instance,n_ops,n_qubits,n_qubits_ind,ratio,t_used,t_is_cgs\n";
  for (const auto& row : rows) {
    const int n_qubits = jss::qubit_count(row.instance);
    int horizon = 0;
    bool horizon_is_optimum = false;
    try {
      horizon = jss::ground_state(row.instance, jss::oracle_cap()).c_gs;
      horizon_is_optimum = true;
    } catch (const jss::OracleCapExceeded&) {
      horizon = jss::t_min(row.instance);
    }
    const long long n_ind = jss::qubit_count_time_indexed(row.instance, horizon);
    csv += row.id;
    csv += ',';
    csv += std::to_string(row.instance.n_ops);
    csv += ',';
    csv += std::to_string(n_qubits);
    csv += ',';
    csv += std::to_string(n_ind);
    csv += ',';
    csv += format_ratio(static_cast<double>(n_ind) / n_qubits);
    csv += ',';
    csv += std::to_string(horizon);
    csv += ',';
    csv += horizon_is_optimum ? "true" : "false";
    csv += '\n';
  }
  return csv;
}

// First register value whose cost equals `target`; always exists because the
// cost table attains its minimum on the strict range.
jss::CodeIndex witness_index(const Instance& instance, long long target) {
  const int width = jss::qubit_count(instance);
  const std::uint64_t size = std::uint64_t{1} << width;
  for (std::uint64_t value = 0; value < size; ++value) {
    const auto index = jss::make_code_index(BigInt(value), instance);
    const auto schedule = jss::decode(index, instance, jss::DecodeMode::Total);
    if (jss::evaluate_makespan(instance, schedule).makespan == target) return index;
  }
  throw std::logic_error("no register value attains the reported best energy");
}

int run_generate(int n_ops, bool fjsp, std::uint64_t seed, const std::string& out_path) {
  const Instance instance =
      fjsp ? jss::generate_random_fjsp(n_ops, seed) : jss::generate_random_jsp(n_ops, seed);
  emit(out_path, jss::serialize_instance(instance));
  return 0;
}

int run_decode(const std::string& instance_path, const std::string& index_text,
               const std::string& bits, const std::string& mode_name) {
  const Instance instance = load_instance(instance_path);
  if (bits.empty() && index_text.empty()) {
    throw std::runtime_error("decode needs --index or --bitstring");
  }
  const jss::DecodeMode mode =
      mode_name == "total" ? jss::DecodeMode::Total : jss::DecodeMode::Strict;
  jss::CodeIndex index;
  if (!bits.empty()) {
    index = jss::code_index_from_bitstring(bits, instance);
  } else {
    index = jss::make_code_index(BigInt(index_text), instance);
    if (index.value >> index.width != 0) {
      throw std::runtime_error("--index " + index.value.str() + " does not fit the " +
                               std::to_string(index.width) + "-bit register (largest value " +
                               ((BigInt(1) << index.width) - 1).str() + ")");
    }
  }
  const Schedule schedule = jss::decode(index, instance, mode);
  const jss::Timing timing = jss::evaluate_makespan(instance, schedule);

  ordered_json out;
  out["index"] = index.value.str();
  out["bitstring"] = index.bitstring();
  out["mode"] = mode_name;
  out["schedule"] = schedule_to_json(schedule);
  out["timing"] = ordered_json::parse(jss::serialize_timing(timing));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_encode(const std::string& instance_path, const std::string& schedule_path) {
  const Instance instance = load_instance(instance_path);
  const Schedule schedule = schedule_from_json(read_file(schedule_path));
  const jss::CodeIndex index = jss::encode(schedule, instance);
  ordered_json out;
  out["index"] = index.value.str();
  out["bitstring"] = index.bitstring();
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& method, std::uint64_t shots,
              bool shots_given, int iters, std::uint64_t seed, const std::string& out_prefix) {
  const Instance instance = load_instance(instance_path);
  if (method == "brute") {
    const jss::GroundState gs = jss::ground_state(instance, jss::oracle_cap());
    const auto& best = gs.optimal_indices.front();
    const auto schedule = jss::decode(best, instance, jss::DecodeMode::Strict);
    const auto timing = jss::evaluate_makespan(instance, schedule);
    ordered_json out;
    out["method"] = "brute";
    out["count"] = jss::count_valid_schedules(instance).str();
    out["c_gs"] = gs.c_gs;
    out["optimal_count"] = gs.optimal_indices.size();
    out["best_index"] = best.value.str();
    out["best_bitstring"] = best.bitstring();
    const std::string json_text = out.dump(2) + "\n";
    const std::string gantt = jss::render_gantt(instance, timing);
    if (out_prefix.empty()) {
      std::cout << json_text << gantt;
    } else {
      write_file(out_prefix + ".json", json_text);
      write_file(out_prefix + ".gantt.txt", gantt);
    }
    return 0;
  }

  jss::FvqeConfig config;
  config.max_iterations = iters;
  config.shots = shots_given ? shots : jss::default_shots(instance);
  config.seed = seed;
  const jss::FvqeResult result = jss::optimize(instance, config);
  const auto witness = witness_index(instance, result.best_energy);
  const auto schedule = jss::decode(witness, instance, jss::DecodeMode::Total);
  const auto timing = jss::evaluate_makespan(instance, schedule);
  const std::string json_text = jss::serialize_result(result);
  const std::string gantt = jss::render_gantt(instance, timing);
  if (out_prefix.empty()) {
    std::cout << json_text << gantt;
  } else {
    write_file(out_prefix + ".json", json_text);
    write_file(out_prefix + ".csv", jss::trace_csv(result));
    write_file(out_prefix + ".gantt.txt", gantt);
  }
  return 0;
}

int run_compare(const std::string& instances_dir, const std::string& family, int family_n,
                const std::string& out_path) {
  std::vector<ComparisonRow> rows;
  if (!instances_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(instances_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .json instance files in " + instances_dir);
    for (const auto& path : files) {
      rows.push_back({path.stem().string(), load_instance(path.string())});
    }
  } else {
    for (int n = 1; n <= family_n; ++n) {
      const std::string id =
          std::to_string(n) + "x" + std::to_string(n) + "x" + std::to_string(n);
      rows.push_back({id, cubic_instance(n)});
    }
  }
  emit(out_path, comparison_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Job shop schedules on compact qubit registers: generate instances, map register values "
      "to schedules and back, solve by enumeration or the filtering variational optimizer, and "
      "compare register sizes against the time-indexed encoding.\n"
      "The JSS_ORACLE_CAP environment variable bounds every exhaustive enumeration "
      "(default 1000000 schedules)."};
  app.require_subcommand(1);

  int n_ops = 1;
  bool fjsp = false;
  std::uint64_t seed = 0;
  std::string out_path;
  auto* generate = app.add_subcommand("generate", "Write a random instance as JSON.");
  generate->add_option("--n-ops", n_ops, "Total number of operations")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_flag("--fjsp", fjsp, "Draw several admissible machines per operation");
  generate->add_option("--seed", seed, "Generator seed (default 0)");
  generate->add_option("--out", out_path, "Output file (default stdout)");

  std::string instance_path;
  std::string index_text;
  std::string bits;
  std::string mode_name = "strict";
  auto* decode = app.add_subcommand(
      "decode", "Map a register value to its schedule and print schedule JSON with timing.");
  decode->add_option("--instance", instance_path, "Instance JSON file")->required();
  auto* index_opt = decode->add_option("--index", index_text, "Register value, decimal");
  auto* bits_opt = decode->add_option("--bitstring", bits, "Register value, binary");
  index_opt->excludes(bits_opt);
  decode->add_option("--mode", mode_name,
                     "strict = reject values past the schedule count; total = wrap around "
                     "(default strict)")
      ->check(CLI::IsMember({"strict", "total"}));

  std::string schedule_path;
  auto* encode = app.add_subcommand(
      "encode", "Map a schedule JSON file to its register value and bitstring.");
  encode->add_option("--instance", instance_path, "Instance JSON file")->required();
  encode->add_option("--schedule", schedule_path, "Schedule JSON file (decode's output format)")
      ->required();

  std::string method;
  std::uint64_t shots = 0;
  int iters = 30;
  auto* solve = app.add_subcommand(
      "solve",
      "Minimize the makespan. brute enumerates every schedule; fvqe runs the filtering "
      "variational optimizer. With --out PREFIX, writes PREFIX.json, PREFIX.gantt.txt and (fvqe) "
      "the iteration trace PREFIX.csv; otherwise prints JSON and the Gantt chart.");
  solve->add_option("--instance", instance_path, "Instance JSON file")->required();
  solve->add_option("--method", method, "brute or fvqe")
      ->required()
      ->check(CLI::IsMember({"brute", "fvqe"}));
  auto* shots_opt = solve->add_option(
      "--shots", shots, "Measurements per circuit; 0 = exact expectations (default: by size)");
  solve->add_option("--iters", iters, "Optimizer iteration cap (default 30)")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed, "Sampling seed (default 0)");
  solve->add_option("--out", out_path, "Output path prefix (default stdout)");

  std::string instances_dir;
  std::string family;
  int family_n = 3;
  auto* compare = app.add_subcommand(
      "compare-encodings",
      "Emit a CSV comparing register widths against the time-indexed encoding, one row per "
      "instance. Columns: instance,n_ops,n_qubits,n_qubits_ind,ratio,t_used,t_is_cgs. "
      "n_qubits_ind is evaluated at horizon T = the optimal makespan when enumeration fits "
      "under the cap (t_is_cgs true), else at the smallest admissible horizon.");
  auto* dir_opt =
      compare->add_option("--instances", instances_dir, "Directory of instance JSON files");
  auto* family_opt = compare->add_option(
      "--family", family, "Built-in family: NxNxN (N jobs x N ops x N machines, unit durations)");
  family_opt->check(CLI::IsMember({"NxNxN"}));
  dir_opt->excludes(family_opt);
  family_opt->excludes(dir_opt);
  compare->add_option("--n", family_n, "Largest N for --family (rows 1..N)")
      ->check(CLI::PositiveNumber);
  compare->add_option("--out", out_path, "Output CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(n_ops, fjsp, seed, out_path);
    if (decode->parsed()) {
      if (index_opt->count() == 0 && bits_opt->count() == 0) {
        throw std::runtime_error("decode needs --index or --bitstring");
      }
      return run_decode(instance_path, index_text, bits, mode_name);
    }
    if (encode->parsed()) return run_encode(instance_path, schedule_path);
    if (solve->parsed()) {
      return run_solve(instance_path, method, shots, shots_opt->count() > 0, iters, seed,
                       out_path);
    }
    if (compare->parsed()) {
      if (dir_opt->count() == 0 && family_opt->count() == 0) {
        throw std::runtime_error("compare-encodings needs --instances or --family");
      }
      return run_compare(instances_dir, family, family_n, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
