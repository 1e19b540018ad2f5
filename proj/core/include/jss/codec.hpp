#pragma once

#include <string>
#include <vector>

#include "jss/bitstring.hpp"
#include "jss/instance.hpp"
#include "jss/schedule.hpp"

namespace jss {

// Inversion table of a permutation of 1..n: element j counts how many larger
// values appear to its left, so 0 <= b_j <= n - j. A permutation respects the
// job order iff b is non-decreasing inside every job's contiguous id block.
using InversionVector = std::vector<int>;

InversionVector permutation_to_inversion(const std::vector<int>& perm);
std::vector<int> inversion_to_permutation(const InversionVector& inv);

// Factorial-base digits, most significant first: digits[i] has base n_digits-i
// and place value (n_digits-i-1)!. Requires 0 <= x < n_digits!.
std::vector<int> int_to_fns(const BigInt& x, int n_digits);
BigInt fns_to_int(const std::vector<int>& digits);

// Number of schedules that respect job order, times the number of machine
// configurations: n_ops! / prod |J_k|! * prod |mu_i|. Exact.
BigInt count_valid_schedules(const Instance& instance);

// Admissible digit-block count for one job from its per-position value counts
// (count at position j is n_ops - j + 1): prod(counts) / job_size!.
// Throws if the product is not divisible (malformed window).
BigInt n_digit(const std::vector<int>& value_counts, int job_size);

// Same count from the job's window position. g is the first inversion position
// of the job (1-based), job_size its length.
BigInt n_digit_at(int g, int job_size, int n_op);

// Mixed-radix digits of the job number system. r[0] is extracted first and
// belongs to the LAST job; in general r[i] indexes job n_jobs-1-i (0-based),
// with base n_digit_at of that job. value == sum r[i] * prod(bases[0..i-1]).
struct JnsDigits {
  std::vector<BigInt> r;
  std::vector<BigInt> bases;
};

JnsDigits jns_decompose(const BigInt& x, const Instance& instance);
BigInt jns_compose(const JnsDigits& digits);

// Rank/unrank one job's inversion-vector block among all its admissible
// blocks (non-decreasing, position-bounded), in lexicographic order.
std::vector<int> jns_digit_to_block(const BigInt& r, int g, int job_size, int n_op);
BigInt block_to_jns_digit(const std::vector<int>& block, int g, int job_size, int n_op);

// An index into the schedule space plus the register width of its instance.
// The bitstring form is big-endian with exactly `width` characters.
struct CodeIndex {
  BigInt value;
  int width = 1;
  std::string bitstring() const { return to_bitstring(value, width); }
  bool operator==(const CodeIndex&) const = default;
};

CodeIndex make_code_index(const BigInt& value, const Instance& instance);
CodeIndex code_index_from_bitstring(const std::string& bits, const Instance& instance);

// Strict mode requires value < count_valid_schedules (machine-assignment
// factor included); total mode reduces any register value modulo that count so
// every bitstring decodes.
enum class DecodeMode { Strict, Total };

Schedule decode(const CodeIndex& index, const Instance& instance, DecodeMode mode);
CodeIndex encode(const Schedule& schedule, const Instance& instance);

// ceil(log2(count_valid_schedules)), floored at 1.
int qubit_count(const Instance& instance);

// Earliest-start window of one operation inside its job, using the minimum
// duration over admissible machines: head = predecessor time, tail = successor
// time. head + duration + tail <= the job's total minimum processing time.
struct OpWindow {
  int head = 0;
  int tail = 0;
  int duration = 0;
  bool operator==(const OpWindow&) const = default;
};

std::vector<OpWindow> op_windows(const Instance& instance);

// Smallest admissible horizon: the largest per-job total minimum duration.
int t_min(const Instance& instance);

// Variable count of the time-indexed formulation with head/tail pruning at
// horizon T: sum over operations of (T - head - tail - duration + 1)*|mu|.
// Requires T >= t_min.
long long qubit_count_time_indexed(const Instance& instance, int T);

}  // namespace jss
