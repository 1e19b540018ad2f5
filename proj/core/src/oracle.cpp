#include "jss/oracle.hpp"

#include <cstdlib>
#include <unordered_set>

#include <json.hpp>

namespace jss {

std::uint64_t oracle_cap() {
  if (const char* raw = std::getenv("JSS_ORACLE_CAP")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(raw, &end, 10);
    if (end != raw && *end == '\0' && parsed > 0) return parsed;
    throw std::invalid_argument("JSS_ORACLE_CAP must be a positive integer");
  }
  return 1000000;
}

void for_each_valid(const Instance& instance, std::uint64_t cap,
                    const std::function<void(const OracleEntry&)>& visit) {
  const BigInt count = count_valid_schedules(instance);
  if (count > cap) {
    throw OracleCapExceeded("schedule count " + count.str() + " exceeds the enumeration cap " +
                            std::to_string(cap));
  }
  const auto total = static_cast<std::uint64_t>(count);
  for (std::uint64_t x = 0; x < total; ++x) {
    OracleEntry entry;
    entry.index = make_code_index(BigInt(x), instance);
    entry.schedule = decode(entry.index, instance, DecodeMode::Strict);
    entry.makespan = evaluate_makespan(instance, entry.schedule).makespan;
    visit(entry);
  }
}

std::vector<OracleEntry> enumerate_valid(const Instance& instance) {
  return enumerate_valid(instance, oracle_cap());
}

std::vector<OracleEntry> enumerate_valid(const Instance& instance, std::uint64_t cap) {
  std::vector<OracleEntry> out;
  for_each_valid(instance, cap, [&out](const OracleEntry& entry) { out.push_back(entry); });
  return out;
}

GroundState ground_state(const Instance& instance) {
  return ground_state(instance, oracle_cap());
}

GroundState ground_state(const Instance& instance, std::uint64_t cap) {
  GroundState out;
  bool first = true;
  for_each_valid(instance, cap, [&out, &first](const OracleEntry& entry) {
    if (first || entry.makespan < out.c_gs) {
      out.c_gs = entry.makespan;
      out.optimal_indices.clear();
      first = false;
    }
    if (entry.makespan == out.c_gs) out.optimal_indices.push_back(entry.index);
  });
  return out;
}

double approximation_ratio(int c_gs, int c_opt) {
  if (c_gs < 1 || c_opt < c_gs) {
    throw std::invalid_argument("approximation_ratio: requires c_opt >= c_gs >= 1");
  }
  return static_cast<double>(c_gs) / static_cast<double>(c_opt);
}

BijectionReport bijection_report(const Instance& instance) {
  return bijection_report(instance, oracle_cap());
}

BijectionReport bijection_report(const Instance& instance, std::uint64_t cap) {
  BijectionReport report;
  report.count = count_valid_schedules(instance);
  std::unordered_set<std::string> seen;
  for_each_valid(instance, cap, [&](const OracleEntry& entry) {
    std::string key;
    for (const auto& e : entry.schedule.entries) {
      key += std::to_string(e.op) + ":" + std::to_string(e.machine) + ",";
    }
    seen.insert(std::move(key));
    if (!validate_schedule(instance, entry.schedule).empty()) ++report.validity_failures;
    if (encode(entry.schedule, instance).value != entry.index.value) ++report.encode_mismatches;
  });
  report.distinct_schedules = seen.size();
  return report;
}

std::string serialize_report(const BijectionReport& report) {
  nlohmann::ordered_json root;
  root["count"] = report.count.str();
  root["distinct_schedules"] = report.distinct_schedules;
  root["encode_mismatches"] = report.encode_mismatches;
  root["validity_failures"] = report.validity_failures;
  root["clean"] = report.clean();
  return root.dump();
}

}  // namespace jss
