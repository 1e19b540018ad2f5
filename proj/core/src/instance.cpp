#include "jss/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "jss/rng.hpp"

namespace jss {

namespace {

using OrderedJson = nlohmann::ordered_json;

long long floor_normal(Rng& rng, double mean, double stddev) {
  return static_cast<long long>(std::floor(rng.normal(mean, stddev)));
}

long long clamp_ll(long long v, long long lo, long long hi) {
  return std::max(lo, std::min(hi, v));
}

// Shared head of both generators. Draw order is fixed and load-bearing for
// seed reproducibility: job sizes until all operations are allocated, then the
// machine count.
void generate_jobs_and_machine_count(Rng& rng, int n_ops, Instance& out) {
  const double mean = std::sqrt(static_cast<double>(n_ops)) + 0.5;
  const double stddev = (std::sqrt(static_cast<double>(n_ops)) - 0.5) / 3.0;

  int next_op = 1;
  while (next_op <= n_ops) {
    const int remaining = n_ops - next_op + 1;
    const int size = static_cast<int>(clamp_ll(floor_normal(rng, mean, stddev), 1, remaining));
    std::vector<int> job(static_cast<std::size_t>(size));
    std::iota(job.begin(), job.end(), next_op);
    out.jobs.push_back(std::move(job));
    next_op += size;
  }

  out.n_ops = n_ops;
  out.n_machines = static_cast<int>(clamp_ll(floor_normal(rng, mean, stddev), 1, n_ops));
}

std::vector<int> uniform_subset(Rng& rng, int n_machines, int size) {
  std::vector<int> pool(static_cast<std::size_t>(n_machines));
  std::iota(pool.begin(), pool.end(), 1);
  for (int k = 0; k < size; ++k) {
    const auto j = k + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_machines - k)));
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(size));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

int Instance::job_of(int op) const {
  if (op < 1) throw std::out_of_range("Instance::job_of: operation id out of range");
  int seen = 0;
  for (int j = 0; j < n_jobs(); ++j) {
    seen += job_size(j);
    if (op <= seen) return j;
  }
  throw std::out_of_range("Instance::job_of: operation id out of range");
}

int Instance::job_first_op(int job) const {
  return jobs[static_cast<std::size_t>(job)].front();
}

bool Instance::is_fjsp() const {
  return std::any_of(machine_sets.begin(), machine_sets.end(),
                     [](const std::vector<int>& mu) { return mu.size() > 1; });
}

int Instance::duration_on(int op, int machine) const {
  const auto& mu = machines_of(op);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] == machine) return durations[static_cast<std::size_t>(op - 1)][k];
  }
  throw std::invalid_argument("duration_on: machine " + std::to_string(machine) +
                              " is not admissible for operation " + std::to_string(op));
}

int Instance::min_duration(int op) const {
  const auto& row = durations[static_cast<std::size_t>(op - 1)];
  return *std::min_element(row.begin(), row.end());
}

std::vector<std::string> validate_instance(const Instance& instance) {
  std::vector<std::string> errors;
  const auto add = [&errors](std::string path, std::string message) {
    errors.push_back(std::move(path) + ": " + std::move(message));
  };

  if (instance.n_ops < 1) add("n_ops", "must be >= 1");
  if (instance.n_machines < 1) add("n_machines", "must be >= 1");

  int next_expected = 1;
  bool contiguous = true;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const auto& job = instance.jobs[j];
    if (job.empty()) {
      add("jobs[" + std::to_string(j) + "]", "job must contain at least one operation");
      contiguous = false;
      continue;
    }
    for (int op : job) {
      if (op != next_expected) contiguous = false;
      ++next_expected;
    }
  }
  if (!contiguous || next_expected != instance.n_ops + 1) {
    add("jobs", "jobs must be contiguous blocks covering 1.." + std::to_string(instance.n_ops) +
                    " in order");
  }

  if (static_cast<int>(instance.machine_sets.size()) != instance.n_ops) {
    add("ops", "expected " + std::to_string(instance.n_ops) + " operations, got " +
                   std::to_string(instance.machine_sets.size()));
    return errors;
  }
  if (instance.durations.size() != instance.machine_sets.size()) {
    add("ops", "durations and machine sets differ in length");
    return errors;
  }

  for (int op = 1; op <= instance.n_ops; ++op) {
    const auto& mu = instance.machine_sets[static_cast<std::size_t>(op - 1)];
    const auto& dur = instance.durations[static_cast<std::size_t>(op - 1)];
    const std::string path = "ops[" + std::to_string(op - 1) + "]";
    if (mu.empty()) add(path + ".machines", "operation " + std::to_string(op) + " has no admissible machine");
    std::vector<int> seen;
    for (int machine : mu) {
      if (machine < 1 || machine > instance.n_machines) {
        add(path + ".machines", "machine " + std::to_string(machine) + " outside 1.." +
                                    std::to_string(instance.n_machines));
      }
      if (std::find(seen.begin(), seen.end(), machine) != seen.end()) {
        add(path + ".machines", "machine " + std::to_string(machine) + " listed twice");
      }
      seen.push_back(machine);
    }
    if (dur.size() != mu.size()) {
      add(path + ".durations", "expected one duration per admissible machine");
      continue;
    }
    for (std::size_t k = 0; k < dur.size(); ++k) {
      if (dur[k] < 1) {
        add(path + ".durations." + std::to_string(mu[k]),
            "duration of operation " + std::to_string(op) + " must be >= 1");
      }
    }
  }
  return errors;
}

void require_valid(const Instance& instance) {
  const auto errors = validate_instance(instance);
  if (errors.empty()) return;
  std::ostringstream joined;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i > 0) joined << "; ";
    joined << errors[i];
  }
  throw std::invalid_argument("invalid instance: " + joined.str());
}

Instance generate_random_jsp(int n_ops, std::uint64_t seed) {
  if (n_ops < 1) throw std::invalid_argument("generate_random_jsp: n_ops must be >= 1");
  Rng rng(seed);
  Instance out;
  generate_jobs_and_machine_count(rng, n_ops, out);
  for (int op = 1; op <= n_ops; ++op) {
    const int machine = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(out.n_machines)));
    out.machine_sets.push_back({machine});
  }
  for (int op = 1; op <= n_ops; ++op) {
    out.durations.push_back({1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_ops)))});
  }
  return out;
}

Instance generate_random_fjsp(int n_ops, std::uint64_t seed) {
  if (n_ops < 1) throw std::invalid_argument("generate_random_fjsp: n_ops must be >= 1");
  Rng rng(seed);
  Instance out;
  generate_jobs_and_machine_count(rng, n_ops, out);
  const double mean = std::sqrt(static_cast<double>(out.n_machines)) + 0.5;
  const double stddev = (std::sqrt(static_cast<double>(out.n_machines)) - 0.5) / 3.0;
  for (int op = 1; op <= n_ops; ++op) {
    const int size = static_cast<int>(clamp_ll(floor_normal(rng, mean, stddev), 1, out.n_machines));
    out.machine_sets.push_back(uniform_subset(rng, out.n_machines, size));
  }
  for (int op = 1; op <= n_ops; ++op) {
    const int p = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_ops)));
    out.durations.emplace_back(out.machine_sets[static_cast<std::size_t>(op - 1)].size(), p);
  }
  return out;
}

Instance parse_instance(const std::string& text) {
  OrderedJson root;
  try {
    root = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }

  const auto require_field = [&root](const char* name) -> const OrderedJson& {
    if (!root.contains(name)) throw std::invalid_argument(std::string(name) + ": missing field");
    return root.at(name);
  };

  Instance out;
  try {
    out.n_ops = require_field("n_ops").get<int>();
    out.n_machines = require_field("n_machines").get<int>();
    for (const auto& job : require_field("jobs")) {
      out.jobs.push_back(job.get<std::vector<int>>());
    }
    const auto& ops = require_field("ops");
    int index = 0;
    for (const auto& op : ops) {
      const std::string path = "ops[" + std::to_string(index) + "]";
      if (!op.contains("id") || op.at("id").get<int>() != index + 1) {
        throw std::invalid_argument(path + ".id: operations must be listed as ids 1..n_ops in order");
      }
      auto machines = op.at("machines").get<std::vector<int>>();
      std::vector<int> durations;
      const auto& table = op.at("durations");
      for (int machine : machines) {
        const std::string key = std::to_string(machine);
        if (!table.contains(key)) {
          throw std::invalid_argument(path + ".durations." + key + ": missing duration for machine");
        }
        durations.push_back(table.at(key).get<int>());
      }
      if (table.size() != machines.size()) {
        throw std::invalid_argument(path + ".durations: durations listed for non-admissible machines");
      }
      out.machine_sets.push_back(std::move(machines));
      out.durations.push_back(std::move(durations));
      ++index;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }

  require_valid(out);
  return out;
}

std::string serialize_instance(const Instance& instance) {
  OrderedJson root;
  root["n_ops"] = instance.n_ops;
  root["jobs"] = instance.jobs;
  root["n_machines"] = instance.n_machines;
  OrderedJson ops = OrderedJson::array();
  for (int op = 1; op <= instance.n_ops; ++op) {
    OrderedJson entry;
    entry["id"] = op;
    entry["machines"] = instance.machines_of(op);
    OrderedJson table;
    const auto& mu = instance.machines_of(op);
    for (std::size_t k = 0; k < mu.size(); ++k) {
      table[std::to_string(mu[k])] = instance.durations[static_cast<std::size_t>(op - 1)][k];
    }
    entry["durations"] = std::move(table);
    ops.push_back(std::move(entry));
  }
  root["ops"] = std::move(ops);
  return root.dump();
}

}  // namespace jss
