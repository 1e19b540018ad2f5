#pragma once

#include <string>
#include <vector>

#include "jss/instance.hpp"

namespace jss {

// Sequencing list: position s runs entries[s].op on entries[s].machine. The
// induced permutation maps position s+1 to operation entries[s].op.
struct ScheduleEntry {
  int op = 0;
  int machine = 0;
  bool operator==(const ScheduleEntry&) const = default;
};

struct Schedule {
  std::vector<ScheduleEntry> entries;
  bool operator==(const Schedule&) const = default;
};

// Start/finish times indexed by operation id - 1. makespan is the maximum
// finish time; intervals on one machine never overlap and job-internal
// intervals appear in operation-id order.
struct Timing {
  std::vector<int> start;
  std::vector<int> finish;
  std::vector<int> machine_of;
  int makespan = 0;
  bool operator==(const Timing&) const = default;
};

struct ScheduleViolation {
  enum class Kind { DuplicateOp, MissingOp, UnknownOp, Precedence, Machine };
  Kind kind;
  std::string message;
};

// Empty result iff every operation appears exactly once, operations of each
// job appear in increasing id order, and every machine choice is admissible.
std::vector<ScheduleViolation> validate_schedule(const Instance& instance,
                                                 const Schedule& schedule);

// Left-to-right scan: each operation starts at the later of its job
// predecessor's finish and the finish of the last operation already placed on
// its machine (no gap filling). Throws std::invalid_argument on an invalid
// schedule.
Timing evaluate_makespan(const Instance& instance, const Schedule& schedule);

// Plain-text chart: a time ruler plus one row per machine; every time unit is
// one fixed-width cell ('.' when idle, the operation id when busy).
std::string render_gantt(const Instance& instance, const Timing& timing);

// JSON {"makespan":..,"ops":[{"id":..,"machine":..,"start":..,"finish":..},..]}
// with operations in id order.
std::string serialize_timing(const Timing& timing);

}  // namespace jss
