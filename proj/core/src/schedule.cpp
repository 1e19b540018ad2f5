#include "jss/schedule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace jss {

std::vector<ScheduleViolation> validate_schedule(const Instance& instance,
                                                 const Schedule& schedule) {
  std::vector<ScheduleViolation> out;
  const auto add = [&out](ScheduleViolation::Kind kind, std::string message) {
    out.push_back({kind, std::move(message)});
  };

  std::vector<int> position_of(static_cast<std::size_t>(instance.n_ops), 0);
  for (std::size_t s = 0; s < schedule.entries.size(); ++s) {
    const auto& entry = schedule.entries[s];
    if (entry.op < 1 || entry.op > instance.n_ops) {
      add(ScheduleViolation::Kind::UnknownOp,
          "position " + std::to_string(s + 1) + " names unknown operation " +
              std::to_string(entry.op));
      continue;
    }
    auto& slot = position_of[static_cast<std::size_t>(entry.op - 1)];
    if (slot != 0) {
      add(ScheduleViolation::Kind::DuplicateOp,
          "operation " + std::to_string(entry.op) + " appears more than once");
      continue;
    }
    slot = static_cast<int>(s + 1);
    const auto& mu = instance.machines_of(entry.op);
    if (std::find(mu.begin(), mu.end(), entry.machine) == mu.end()) {
      add(ScheduleViolation::Kind::Machine,
          "operation " + std::to_string(entry.op) + " assigned to inadmissible machine " +
              std::to_string(entry.machine));
    }
  }
  for (int op = 1; op <= instance.n_ops; ++op) {
    if (position_of[static_cast<std::size_t>(op - 1)] == 0) {
      add(ScheduleViolation::Kind::MissingOp,
          "operation " + std::to_string(op) + " is missing");
    }
  }
  for (int job = 0; job < instance.n_jobs(); ++job) {
    const auto& ops = instance.jobs[static_cast<std::size_t>(job)];
    for (std::size_t k = 1; k < ops.size(); ++k) {
      const int prev = position_of[static_cast<std::size_t>(ops[k - 1] - 1)];
      const int curr = position_of[static_cast<std::size_t>(ops[k] - 1)];
      if (prev == 0 || curr == 0) continue;
      if (prev > curr) {
        add(ScheduleViolation::Kind::Precedence,
            "job " + std::to_string(job + 1) + ": operation " + std::to_string(ops[k]) +
                " is scheduled before operation " + std::to_string(ops[k - 1]));
      }
    }
  }
  return out;
}

Timing evaluate_makespan(const Instance& instance, const Schedule& schedule) {
  const auto violations = validate_schedule(instance, schedule);
  if (!violations.empty()) {
    std::ostringstream joined;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i > 0) joined << "; ";
      joined << violations[i].message;
    }
    throw std::invalid_argument("invalid schedule: " + joined.str());
  }

  Timing timing;
  timing.start.assign(static_cast<std::size_t>(instance.n_ops), 0);
  timing.finish.assign(static_cast<std::size_t>(instance.n_ops), 0);
  timing.machine_of.assign(static_cast<std::size_t>(instance.n_ops), 0);

  std::vector<int> machine_busy_until(static_cast<std::size_t>(instance.n_machines) + 1, 0);
  for (const auto& entry : schedule.entries) {
    const int job_ready =
        instance.is_first_in_job(entry.op) ? 0 : timing.finish[static_cast<std::size_t>(entry.op - 2)];
    const int machine_ready = machine_busy_until[static_cast<std::size_t>(entry.machine)];
    const int start = std::max(job_ready, machine_ready);
    const int finish = start + instance.duration_on(entry.op, entry.machine);
    timing.start[static_cast<std::size_t>(entry.op - 1)] = start;
    timing.finish[static_cast<std::size_t>(entry.op - 1)] = finish;
    timing.machine_of[static_cast<std::size_t>(entry.op - 1)] = entry.machine;
    machine_busy_until[static_cast<std::size_t>(entry.machine)] = finish;
    timing.makespan = std::max(timing.makespan, finish);
  }
  return timing;
}

std::string render_gantt(const Instance& instance, const Timing& timing) {
  const int cell = static_cast<int>(std::to_string(instance.n_ops).size());
  const int label = static_cast<int>(std::to_string(instance.n_machines).size()) + 1;

  const auto pad_label = [label](const std::string& text) {
    std::string out = text;
    out.resize(static_cast<std::size_t>(label), ' ');
    return out + "|";
  };
  const auto pad_cell = [cell](const std::string& text) {
    std::string out(static_cast<std::size_t>(cell) - text.size(), ' ');
    return out + text;
  };

  std::ostringstream chart;
  chart << pad_label("t");
  for (int t = 0; t < timing.makespan; ++t) chart << pad_cell(std::to_string(t % 10));
  chart << "\n";

  for (int machine = 1; machine <= instance.n_machines; ++machine) {
    chart << pad_label("M" + std::to_string(machine));
    for (int t = 0; t < timing.makespan; ++t) {
      int running = 0;
      for (int op = 1; op <= instance.n_ops; ++op) {
        if (timing.machine_of[static_cast<std::size_t>(op - 1)] == machine &&
            timing.start[static_cast<std::size_t>(op - 1)] <= t &&
            t < timing.finish[static_cast<std::size_t>(op - 1)]) {
          running = op;
          break;
        }
      }
      chart << (running == 0 ? std::string(static_cast<std::size_t>(cell), '.')
                             : pad_cell(std::to_string(running)));
    }
    chart << "\n";
  }
  return chart.str();
}

std::string serialize_timing(const Timing& timing) {
  nlohmann::ordered_json root;
  root["makespan"] = timing.makespan;
  nlohmann::ordered_json ops = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < timing.start.size(); ++i) {
    nlohmann::ordered_json entry;
    entry["id"] = static_cast<int>(i + 1);
    entry["machine"] = timing.machine_of[i];
    entry["start"] = timing.start[i];
    entry["finish"] = timing.finish[i];
    ops.push_back(std::move(entry));
  }
  root["ops"] = std::move(ops);
  return root.dump();
}

}  // namespace jss
