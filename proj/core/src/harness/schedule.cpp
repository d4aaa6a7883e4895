#include "listlab/harness/schedule.hpp"

#include <stdexcept>
#include <string>

namespace listlab::harness {

namespace {

struct KindName {
  ScheduleKind kind;
  const char* name;
};
constexpr KindName kKinds[] = {
    {ScheduleKind::kExplicit, "explicit"},       {ScheduleKind::kRoundRobin, "round_robin"},
    {ScheduleKind::kRandom, "random"},           {ScheduleKind::kSequential, "sequential"},
    {ScheduleKind::kSynchronized, "synchronized"}, {ScheduleKind::kBatches, "batches"},
    {ScheduleKind::kMergeOrder, "merge_order"},
};

std::vector<std::size_t> id_list(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) {
      throw std::invalid_argument(std::string(what) + " must hold process ids");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace

std::string_view schedule_kind_name(ScheduleKind k) {
  for (const auto& e : kKinds) {
    if (e.kind == k) return e.name;
  }
  return "?";
}

ScheduleSpec schedule_from_json(const nlohmann::json& j) {
  ScheduleSpec s;
  if (j.is_array()) {
    s.kind = ScheduleKind::kExplicit;
    s.steps = id_list(j, "schedule");
    return s;
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("schedule must be an array or an object with \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  bool found = false;
  for (const auto& e : kKinds) {
    if (kind == e.name) {
      s.kind = e.kind;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown schedule kind: " + kind);
  switch (s.kind) {
    case ScheduleKind::kExplicit:
      s.steps = id_list(j.value("steps", nlohmann::json::array()), "steps");
      break;
    case ScheduleKind::kRandom:
      if (!j.contains("seed") || !j["seed"].is_number_unsigned()) {
        throw std::invalid_argument("random schedule needs an unsigned \"seed\"");
      }
      s.seed = j["seed"].get<std::uint64_t>();
      break;
    case ScheduleKind::kBatches:
      if (!j.contains("groups") || !j["groups"].is_array()) {
        throw std::invalid_argument("batches schedule needs \"groups\"");
      }
      for (const auto& g : j["groups"]) s.groups.push_back(id_list(g, "group"));
      break;
    case ScheduleKind::kMergeOrder:
      s.order = id_list(j.value("order", nlohmann::json::array()), "order");
      break;
    default:
      break;
  }
  return s;
}

nlohmann::json to_json(const ScheduleSpec& s) {
  nlohmann::json j{{"kind", std::string(schedule_kind_name(s.kind))}};
  switch (s.kind) {
    case ScheduleKind::kExplicit: j["steps"] = s.steps; break;
    case ScheduleKind::kRandom: j["seed"] = s.seed; break;
    case ScheduleKind::kBatches: j["groups"] = s.groups; break;
    case ScheduleKind::kMergeOrder: j["order"] = s.order; break;
    default: break;
  }
  return j;
}

Scheduler::Scheduler(ScheduleSpec spec, std::size_t processes)
    : spec_(std::move(spec)),
      processes_(processes),
      rng_(spec_.seed),
      in_wave_(processes, false),
      invoked_(processes, false) {
  auto check = [&](std::size_t p) {
    if (p >= processes_) throw std::invalid_argument("schedule names process " + std::to_string(p));
  };
  for (auto p : spec_.steps) check(p);
  for (auto p : spec_.order) check(p);
  for (const auto& g : spec_.groups) {
    for (auto p : g) check(p);
  }
  if (spec_.kind == ScheduleKind::kMergeOrder) {
    for (auto p : spec_.order) spec_.groups.push_back({p});
  }
}

std::optional<std::size_t> Scheduler::round_robin(const std::vector<ProcessStatus>& status,
                                                  const std::vector<bool>& eligible) {
  for (std::size_t k = 0; k < processes_; ++k) {
    const auto p = (cursor_ + k) % processes_;
    if (eligible[p] && status[p].active()) {
      cursor_ = p + 1;
      return p;
    }
  }
  return std::nullopt;
}

// A wave opens with its members, each invokes once and steps round robin with
// the others until every member has responded.
std::optional<std::size_t> Scheduler::wave(const std::vector<ProcessStatus>& status) {
  for (;;) {
    if (!wave_open_) {
      std::fill(in_wave_.begin(), in_wave_.end(), false);
      std::fill(invoked_.begin(), invoked_.end(), false);
      bool any = false;
      if (spec_.kind == ScheduleKind::kSynchronized) {
        for (std::size_t p = 0; p < processes_; ++p) {
          in_wave_[p] = status[p].remaining > 0;
          any = any || in_wave_[p];
        }
      } else {
        while (!any && pos_ < spec_.groups.size()) {
          for (auto p : spec_.groups[pos_]) {
            if (status[p].remaining > 0) {
              in_wave_[p] = true;
              any = true;
            }
          }
          ++pos_;
        }
      }
      if (!any) return std::nullopt;
      wave_open_ = true;
      cursor_ = 0;
    }
    std::vector<bool> eligible(processes_, false);
    bool any = false;
    for (std::size_t p = 0; p < processes_; ++p) {
      eligible[p] = in_wave_[p] && (status[p].busy || (!invoked_[p] && status[p].remaining > 0));
      any = any || eligible[p];
    }
    if (!any) {
      wave_open_ = false;
      continue;
    }
    const auto p = round_robin(status, eligible);
    if (p && !status[*p].busy) invoked_[*p] = true;
    return p;
  }
}

std::optional<std::size_t> Scheduler::next(const std::vector<ProcessStatus>& status) {
  if (status.size() != processes_) throw std::invalid_argument("status size mismatch");
  switch (spec_.kind) {
    case ScheduleKind::kExplicit:
      if (pos_ >= spec_.steps.size()) return std::nullopt;
      return spec_.steps[pos_++];
    case ScheduleKind::kRoundRobin:
      return round_robin(status, std::vector<bool>(processes_, true));
    case ScheduleKind::kRandom: {
      std::vector<std::size_t> live;
      for (std::size_t p = 0; p < processes_; ++p) {
        if (status[p].active()) live.push_back(p);
      }
      if (live.empty()) return std::nullopt;
      return live[rng_() % live.size()];
    }
    case ScheduleKind::kSequential: {
      if (current_ && status[*current_].busy) return current_;
      const std::size_t start = current_ ? *current_ + 1 : 0;
      for (std::size_t k = 0; k < processes_; ++k) {
        const auto p = (start + k) % processes_;
        if (status[p].active()) {
          current_ = p;
          return p;
        }
      }
      return std::nullopt;
    }
    case ScheduleKind::kSynchronized:
    case ScheduleKind::kBatches:
    case ScheduleKind::kMergeOrder:
      return wave(status);
  }
  return std::nullopt;
}

}  // namespace listlab::harness
