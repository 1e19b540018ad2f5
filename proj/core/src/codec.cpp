#include "jss/codec.hpp"

#include <algorithm>
#include <stdexcept>

namespace jss {

namespace {

BigInt factorial(int n) {
  BigInt out = 1;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

BigInt binomial(int a, int b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  BigInt out = 1;
  for (int i = 1; i <= b; ++i) {
    out *= a - b + i;
    out /= i;
  }
  return out;
}

BigInt machine_config_count(const Instance& instance) {
  BigInt out = 1;
  for (const auto& mu : instance.machine_sets) out *= static_cast<int>(mu.size());
  return out;
}

// Completions of one job's block: non-decreasing suffixes for the positions
// starting at `pos` whose values are all >= floor and within position bounds.
// Requiring value >= floor at position t is the same as an unconstrained
// window shifted right by floor, which collapses to one binomial.
BigInt suffix_count(int pos, int floor, int len, int n_op) {
  return binomial(n_op - floor - pos + 1, len);
}

void check_job_window(int g, int job_size, int n_op) {
  if (job_size < 1 || g < 1 || g + job_size - 1 > n_op) {
    throw std::invalid_argument("job window outside 1..n_op");
  }
}

}  // namespace

InversionVector permutation_to_inversion(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int value : perm) {
    if (value < 1 || value > n || seen[static_cast<std::size_t>(value)]) {
      throw std::invalid_argument("permutation_to_inversion: not a permutation of 1..n");
    }
    seen[static_cast<std::size_t>(value)] = true;
  }
  InversionVector inv(static_cast<std::size_t>(n), 0);
  for (int pos = 0; pos < n; ++pos) {
    const int value = perm[static_cast<std::size_t>(pos)];
    int count = 0;
    for (int left = 0; left < pos; ++left) {
      if (perm[static_cast<std::size_t>(left)] > value) ++count;
    }
    inv[static_cast<std::size_t>(value - 1)] = count;
  }
  return inv;
}

std::vector<int> inversion_to_permutation(const InversionVector& inv) {
  const int n = static_cast<int>(inv.size());
  for (int j = 1; j <= n; ++j) {
    const int b = inv[static_cast<std::size_t>(j - 1)];
    if (b < 0 || b > n - j) {
      throw std::invalid_argument("inversion_to_permutation: element " + std::to_string(j) +
                                  " outside 0.." + std::to_string(n - j));
    }
  }
  std::vector<int> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (int j = n; j >= 1; --j) {
    perm.insert(perm.begin() + inv[static_cast<std::size_t>(j - 1)], j);
  }
  return perm;
}

std::vector<int> int_to_fns(const BigInt& x, int n_digits) {
  if (x < 0) throw std::invalid_argument("int_to_fns: negative value");
  std::vector<int> digits(static_cast<std::size_t>(n_digits), 0);
  BigInt rest = x;
  for (int k = 1; k <= n_digits; ++k) {
    digits[static_cast<std::size_t>(n_digits - k)] = static_cast<int>(rest % k);
    rest /= k;
  }
  if (rest != 0) throw std::invalid_argument("int_to_fns: value needs more digits");
  return digits;
}

BigInt fns_to_int(const std::vector<int>& digits) {
  const int n = static_cast<int>(digits.size());
  BigInt out = 0;
  for (int i = 0; i < n; ++i) {
    const int base = n - i;
    const int digit = digits[static_cast<std::size_t>(i)];
    if (digit < 0 || digit >= base) {
      throw std::invalid_argument("fns_to_int: digit " + std::to_string(digit) +
                                  " outside base " + std::to_string(base));
    }
    if (i > 0) out *= base;
    out += digit;
  }
  return out;
}

BigInt count_valid_schedules(const Instance& instance) {
  BigInt count = factorial(instance.n_ops);
  for (int job = 0; job < instance.n_jobs(); ++job) {
    count /= factorial(instance.job_size(job));
  }
  return count * machine_config_count(instance);
}

BigInt n_digit(const std::vector<int>& value_counts, int job_size) {
  if (static_cast<int>(value_counts.size()) != job_size) {
    throw std::invalid_argument("n_digit: window length does not match job size");
  }
  BigInt product = 1;
  for (int count : value_counts) product *= count;
  const BigInt divisor = factorial(job_size);
  if (product % divisor != 0) {
    throw std::invalid_argument("n_digit: malformed window (count not integral)");
  }
  return product / divisor;
}

BigInt n_digit_at(int g, int job_size, int n_op) {
  check_job_window(g, job_size, n_op);
  return binomial(n_op - g + 1, job_size);
}

JnsDigits jns_decompose(const BigInt& x, const Instance& instance) {
  JnsDigits out;
  for (int job = instance.n_jobs() - 1; job >= 0; --job) {
    out.bases.push_back(
        n_digit_at(instance.job_first_op(job), instance.job_size(job), instance.n_ops));
  }
  BigInt rest = x;
  for (const BigInt& base : out.bases) {
    out.r.push_back(rest % base);
    rest /= base;
  }
  if (x < 0 || rest != 0) {
    throw std::invalid_argument("jns_decompose: value outside the schedule count");
  }
  return out;
}

BigInt jns_compose(const JnsDigits& digits) {
  if (digits.r.size() != digits.bases.size()) {
    throw std::invalid_argument("jns_compose: digit/base length mismatch");
  }
  BigInt out = 0;
  for (std::size_t i = digits.r.size(); i-- > 0;) {
    if (digits.r[i] < 0 || digits.r[i] >= digits.bases[i]) {
      throw std::invalid_argument("jns_compose: digit outside its base");
    }
    out = out * digits.bases[i] + digits.r[i];
  }
  return out;
}

std::vector<int> jns_digit_to_block(const BigInt& r, int g, int job_size, int n_op) {
  check_job_window(g, job_size, n_op);
  if (r < 0 || r >= n_digit_at(g, job_size, n_op)) {
    throw std::invalid_argument("jns_digit_to_block: rank outside the block count");
  }
  std::vector<int> block;
  block.reserve(static_cast<std::size_t>(job_size));
  BigInt rest = r;
  int floor = 0;
  for (int offset = 0; offset < job_size; ++offset) {
    const int pos = g + offset;
    const int len_after = job_size - offset - 1;
    int value = floor;
    for (;; ++value) {
      if (value > n_op - pos) throw std::logic_error("jns_digit_to_block: rank accounting failed");
      const BigInt completions = suffix_count(pos + 1, value, len_after, n_op);
      if (rest < completions) break;
      rest -= completions;
    }
    block.push_back(value);
    floor = value;
  }
  return block;
}

BigInt block_to_jns_digit(const std::vector<int>& block, int g, int job_size, int n_op) {
  check_job_window(g, job_size, n_op);
  if (static_cast<int>(block.size()) != job_size) {
    throw std::invalid_argument("block_to_jns_digit: block length does not match job size");
  }
  BigInt rank = 0;
  int floor = 0;
  for (int offset = 0; offset < job_size; ++offset) {
    const int pos = g + offset;
    const int len_after = job_size - offset - 1;
    const int value = block[static_cast<std::size_t>(offset)];
    if (value < floor || value > n_op - pos) {
      throw std::invalid_argument("block_to_jns_digit: block is not admissible");
    }
    for (int v = floor; v < value; ++v) {
      rank += suffix_count(pos + 1, v, len_after, n_op);
    }
    floor = value;
  }
  return rank;
}

CodeIndex make_code_index(const BigInt& value, const Instance& instance) {
  if (value < 0) throw std::invalid_argument("make_code_index: negative value");
  return CodeIndex{value, qubit_count(instance)};
}

CodeIndex code_index_from_bitstring(const std::string& bits, const Instance& instance) {
  const int width = qubit_count(instance);
  if (static_cast<int>(bits.size()) != width) {
    throw std::invalid_argument("code_index_from_bitstring: expected exactly " +
                                std::to_string(width) + " characters");
  }
  return CodeIndex{from_bitstring(bits), width};
}

Schedule decode(const CodeIndex& index, const Instance& instance, DecodeMode mode) {
  const BigInt count = count_valid_schedules(instance);
  BigInt value = index.value;
  if (mode == DecodeMode::Strict) {
    if (value < 0 || value >= count) {
      throw std::out_of_range("decode: index outside the valid-schedule count");
    }
  } else {
    value %= count;
  }

  const BigInt machine_count = machine_config_count(instance);
  BigInt q = value / machine_count;
  BigInt rem = value % machine_count;

  const JnsDigits digits = jns_decompose(q, instance);
  InversionVector inv(static_cast<std::size_t>(instance.n_ops), 0);
  for (int job = 0; job < instance.n_jobs(); ++job) {
    const int g = instance.job_first_op(job);
    const auto block = jns_digit_to_block(
        digits.r[static_cast<std::size_t>(instance.n_jobs() - 1 - job)], g,
        instance.job_size(job), instance.n_ops);
    std::copy(block.begin(), block.end(), inv.begin() + (g - 1));
  }
  const std::vector<int> order = inversion_to_permutation(inv);

  std::vector<int> pick(static_cast<std::size_t>(instance.n_ops), 0);
  for (int op = 1; op <= instance.n_ops; ++op) {
    const auto size = static_cast<int>(instance.machines_of(op).size());
    pick[static_cast<std::size_t>(op - 1)] = static_cast<int>(rem % size);
    rem /= size;
  }

  Schedule schedule;
  schedule.entries.reserve(static_cast<std::size_t>(instance.n_ops));
  for (int op : order) {
    schedule.entries.push_back(
        {op, instance.machines_of(op)[static_cast<std::size_t>(pick[static_cast<std::size_t>(op - 1)])]});
  }
  return schedule;
}

CodeIndex encode(const Schedule& schedule, const Instance& instance) {
  const auto violations = validate_schedule(instance, schedule);
  if (!violations.empty()) {
    throw std::invalid_argument("encode: " + violations.front().message);
  }

  std::vector<int> order;
  order.reserve(schedule.entries.size());
  for (const auto& entry : schedule.entries) order.push_back(entry.op);
  const InversionVector inv = permutation_to_inversion(order);

  JnsDigits digits;
  for (int job = instance.n_jobs() - 1; job >= 0; --job) {
    const int g = instance.job_first_op(job);
    const int size = instance.job_size(job);
    std::vector<int> block(inv.begin() + (g - 1), inv.begin() + (g - 1) + size);
    digits.r.push_back(block_to_jns_digit(block, g, size, instance.n_ops));
    digits.bases.push_back(n_digit_at(g, size, instance.n_ops));
  }
  const BigInt q = jns_compose(digits);

  BigInt rem = 0;
  for (int op = instance.n_ops; op >= 1; --op) {
    const auto& mu = instance.machines_of(op);
    int machine = 0;
    for (const auto& entry : schedule.entries) {
      if (entry.op == op) {
        machine = entry.machine;
        break;
      }
    }
    const auto it = std::find(mu.begin(), mu.end(), machine);
    rem = rem * static_cast<int>(mu.size()) + static_cast<int>(it - mu.begin());
  }

  return make_code_index(q * machine_config_count(instance) + rem, instance);
}

int qubit_count(const Instance& instance) {
  return bit_width_for_count(count_valid_schedules(instance));
}

std::vector<OpWindow> op_windows(const Instance& instance) {
  std::vector<OpWindow> out(static_cast<std::size_t>(instance.n_ops));
  for (int job = 0; job < instance.n_jobs(); ++job) {
    const auto& ops = instance.jobs[static_cast<std::size_t>(job)];
    int head = 0;
    for (int op : ops) {
      out[static_cast<std::size_t>(op - 1)].head = head;
      out[static_cast<std::size_t>(op - 1)].duration = instance.min_duration(op);
      head += instance.min_duration(op);
    }
    int tail = 0;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      out[static_cast<std::size_t>(*it - 1)].tail = tail;
      tail += instance.min_duration(*it);
    }
  }
  return out;
}

int t_min(const Instance& instance) {
  int bound = 0;
  for (int job = 0; job < instance.n_jobs(); ++job) {
    int total = 0;
    for (int op : instance.jobs[static_cast<std::size_t>(job)]) total += instance.min_duration(op);
    bound = std::max(bound, total);
  }
  return bound;
}

long long qubit_count_time_indexed(const Instance& instance, int T) {
  const int bound = t_min(instance);
  if (T < bound) {
    throw std::invalid_argument("qubit_count_time_indexed: horizon " + std::to_string(T) +
                                " below the minimum " + std::to_string(bound));
  }
  long long sum = 0;
  const auto windows = op_windows(instance);
  for (int op = 1; op <= instance.n_ops; ++op) {
    const auto& w = windows[static_cast<std::size_t>(op - 1)];
    sum += static_cast<long long>(T - w.head - w.tail - w.duration + 1) *
           static_cast<long long>(instance.machines_of(op).size());
  }
  return sum;
}

}  // namespace jss
