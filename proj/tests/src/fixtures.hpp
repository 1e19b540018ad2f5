#pragma once

#include <vector>

#include "jss/instance.hpp"

namespace jss_test {

// 5 operations in 2 jobs ({1,2,3}, {4,5}) on 2 machines, durations 1,2,2,1,1.
// Small enough to enumerate by hand: 10 valid orders, best makespan 5.
inline jss::Instance five_op_instance() {
  jss::Instance instance;
  instance.n_ops = 5;
  instance.jobs = {{1, 2, 3}, {4, 5}};
  instance.n_machines = 2;
  instance.machine_sets = {{1}, {2}, {1}, {1}, {2}};
  instance.durations = {{1}, {2}, {2}, {1}, {1}};
  jss::require_valid(instance);
  return instance;
}

// n unconstrained single-operation jobs on one machine, unit durations: every
// one of the n! orders is valid, so indices sweep the full factorial range.
inline jss::Instance singleton_jobs_instance(int n) {
  jss::Instance instance;
  instance.n_ops = n;
  instance.n_machines = 1;
  for (int op = 1; op <= n; ++op) {
    instance.jobs.push_back({op});
    instance.machine_sets.push_back({1});
    instance.durations.push_back({1});
  }
  jss::require_valid(instance);
  return instance;
}

// One job owning every operation: exactly one valid order.
inline jss::Instance single_job_instance(const std::vector<int>& durations) {
  jss::Instance instance;
  instance.n_ops = static_cast<int>(durations.size());
  instance.n_machines = 1;
  std::vector<int> job;
  for (int op = 1; op <= instance.n_ops; ++op) {
    job.push_back(op);
    instance.machine_sets.push_back({1});
    instance.durations.push_back({durations[static_cast<std::size_t>(op - 1)]});
  }
  instance.jobs.push_back(job);
  jss::require_valid(instance);
  return instance;
}

// Contiguous jobs over 1..n with the given sizes, one machine, unit durations.
// The machine layout is irrelevant to permutation-level tests.
inline jss::Instance composition_instance(const std::vector<int>& job_sizes) {
  jss::Instance instance;
  instance.n_machines = 1;
  int op = 1;
  for (int size : job_sizes) {
    std::vector<int> job;
    for (int k = 0; k < size; ++k, ++op) {
      job.push_back(op);
      instance.machine_sets.push_back({1});
      instance.durations.push_back({1});
    }
    instance.jobs.push_back(std::move(job));
  }
  instance.n_ops = op - 1;
  jss::require_valid(instance);
  return instance;
}

// Every composition of n (ordered job-size tuples), enumerated by bitmask over
// the n-1 possible block boundaries.
inline std::vector<std::vector<int>> all_compositions(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> sizes;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask & (1u << i)) {
        sizes.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    sizes.push_back(run);
    out.push_back(std::move(sizes));
  }
  return out;
}

// True when the list respects every job's internal order, checked naively.
inline bool order_respects_jobs(const std::vector<int>& order, const jss::Instance& instance) {
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (instance.job_of(order[a]) == instance.job_of(order[b]) && order[a] > order[b]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace jss_test
