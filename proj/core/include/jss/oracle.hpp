#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jss/codec.hpp"
#include "jss/instance.hpp"
#include "jss/schedule.hpp"

namespace jss {

// Exhaustive enumeration refuses to run past this many schedules. Read from
// the JSS_ORACLE_CAP environment variable, defaulting to 10^6.
std::uint64_t oracle_cap();

struct OracleCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleEntry {
  CodeIndex index;
  Schedule schedule;
  int makespan = 0;
};

// Visits every strict-domain index in increasing order; exactly
// count_valid_schedules entries. Throws OracleCapExceeded above the cap.
void for_each_valid(const Instance& instance, std::uint64_t cap,
                    const std::function<void(const OracleEntry&)>& visit);

std::vector<OracleEntry> enumerate_valid(const Instance& instance);
std::vector<OracleEntry> enumerate_valid(const Instance& instance, std::uint64_t cap);

struct GroundState {
  int c_gs = 0;
  std::vector<CodeIndex> optimal_indices;
};

// Minimum makespan over the whole strict domain and every index attaining it.
GroundState ground_state(const Instance& instance);
GroundState ground_state(const Instance& instance, std::uint64_t cap);

// c_gs / c_opt in (0, 1]; requires c_opt >= c_gs >= 1.
double approximation_ratio(int c_gs, int c_opt);

// End-to-end audit of the index <-> schedule mapping over the strict domain.
struct BijectionReport {
  BigInt count = 0;
  std::uint64_t distinct_schedules = 0;
  std::uint64_t encode_mismatches = 0;
  std::uint64_t validity_failures = 0;
  bool clean() const {
    return BigInt(distinct_schedules) == count && encode_mismatches == 0 && validity_failures == 0;
  }
};

BijectionReport bijection_report(const Instance& instance);
BijectionReport bijection_report(const Instance& instance, std::uint64_t cap);

std::string serialize_report(const BijectionReport& report);

}  // namespace jss
