#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jss {

// A (flexible) job-shop instance. Operation ids are 1-based and partitioned
// into jobs as contiguous, increasing blocks: job 0 owns 1..k_0, job 1 owns
// k_0+1..k_1, and so on. machine_sets[i] lists the admissible machines of
// operation i+1 in file order (the codec relies on that order); durations[i][k]
// is the integer execution time on machine_sets[i][k], always >= 1.
struct Instance {
  int n_ops = 0;
  std::vector<std::vector<int>> jobs;
  int n_machines = 0;
  std::vector<std::vector<int>> machine_sets;
  std::vector<std::vector<int>> durations;

  int n_jobs() const { return static_cast<int>(jobs.size()); }
  int job_of(int op) const;
  int job_first_op(int job) const;
  int job_size(int job) const { return static_cast<int>(jobs[static_cast<std::size_t>(job)].size()); }
  bool is_first_in_job(int op) const { return job_first_op(job_of(op)) == op; }
  bool is_fjsp() const;

  const std::vector<int>& machines_of(int op) const {
    return machine_sets[static_cast<std::size_t>(op - 1)];
  }
  int duration_on(int op, int machine) const;
  int min_duration(int op) const;

  bool operator==(const Instance&) const = default;
};

// Structural invariant check; one message per violation, each prefixed with the
// offending field path. Empty result means the instance is valid.
std::vector<std::string> validate_instance(const Instance& instance);

// Throws std::invalid_argument listing all violations.
void require_valid(const Instance& instance);

// Random JSP: job sizes drawn as floor(Normal(sqrt(n)+1/2, (sqrt(n)-1/2)/3))
// clamped to [1, unallocated] until all operations are placed; machine count
// from the same distribution clamped to [1, n]; one uniform machine per
// operation; durations uniform on {1..n}. Deterministic in (n_ops, seed).
Instance generate_random_jsp(int n_ops, std::uint64_t seed);

// Random FJSP: jobs and machine count as for the JSP, then per operation a
// machine-set size floor(Normal(sqrt(n_ma)+1/2, (sqrt(n_ma)-1/2)/3)) clamped to
// [1, n_ma], a uniform subset of that size, and one duration shared by every
// admissible machine.
Instance generate_random_fjsp(int n_ops, std::uint64_t seed);

// JSON (de)serialization. parse_instance validates and throws
// std::invalid_argument with field paths on malformed input;
// serialize_instance emits the canonical form (fixed key order).
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& instance);

}  // namespace jss
