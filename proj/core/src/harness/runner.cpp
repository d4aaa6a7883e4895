#include "listlab/harness/runner.hpp"

#include <algorithm>
#include <cstring>

namespace listlab::harness {

namespace {

constexpr std::size_t kMaxRecordedViolations = 32;

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

dmtf::MachineConfig machine_config(const Workload& w, const RunConfig& c) {
  dmtf::MachineConfig m;
  m.processes = w.processes();
  m.phi = c.phi;
  m.faults = c.faults;
  return m;
}

}  // namespace

class Execution::Recorder : public dmtf::Observer {
 public:
  explicit Recorder(Execution* owner) : owner_(owner) {}

  void on_alloc(std::size_t process, NodeRef node, ItemId item) override {
    auto& h = owner_->history_;
    Event e;
    e.kind = EventKind::kAlloc;
    e.process = process;
    e.op = owner_->current_op_[process];
    e.node = node;
    e.item = item;
    h.events.push_back(e);
    if (h.node_items.size() <= node) h.node_items.resize(node + 1, dmtf::kBottom);
    h.node_items[node] = item;
  }

  void on_access(const dmtf::AccessRecord& a) override {
    Event e;
    e.kind = EventKind::kAccess;
    e.process = a.process;
    e.op = owner_->current_op_[a.process];
    e.access = a;
    owner_->history_.events.push_back(e);
    if (a.cell == dmtf::CellKind::kHead && a.kind == dmtf::AccessKind::kCas && a.success) {
      const auto before = dmtf::unpack_head(a.observed);
      const auto after = dmtf::unpack_head(a.desired);
      if (before.first != after.first) owner_->on_prepend(after.first);
    }
  }

 private:
  Execution* owner_;
};

Execution::Execution(const Workload& workload, const RunConfig& config)
    : config_(config),
      interp_(workload.initial, machine_config(workload, config)),
      next_request_(workload.processes(), 0),
      current_op_(workload.processes(), 0),
      front_at_invoke_(workload.processes(), dmtf::kNull),
      prepended_since_(workload.processes()),
      recorder_(std::make_unique<Recorder>(this)) {
  history_.workload = workload;
  history_.phi = config.phi;
  history_.node_items = workload.initial;
  interp_.set_observer(recorder_.get());
}

Execution::Execution(const Execution& other)
    : config_(other.config_),
      interp_(other.interp_),
      history_(other.history_),
      next_request_(other.next_request_),
      current_op_(other.current_op_),
      front_at_invoke_(other.front_at_invoke_),
      prepended_since_(other.prepended_since_),
      uncovered_(other.uncovered_),
      seen_violations_(other.seen_violations_),
      recorder_(std::make_unique<Recorder>(this)) {
  interp_.set_observer(recorder_.get());
}

Execution::~Execution() = default;

Execution& Execution::operator=(const Execution& other) {
  if (this == &other) return *this;
  config_ = other.config_;
  interp_ = other.interp_;
  history_ = other.history_;
  next_request_ = other.next_request_;
  current_op_ = other.current_op_;
  front_at_invoke_ = other.front_at_invoke_;
  prepended_since_ = other.prepended_since_;
  uncovered_ = other.uncovered_;
  seen_violations_ = other.seen_violations_;
  interp_.set_observer(recorder_.get());
  return *this;
}

std::vector<ProcessStatus> Execution::status() const {
  std::vector<ProcessStatus> out(next_request_.size());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p].busy = !interp_.idle(p);
    out[p].remaining = history_.workload.requests[p].size() - next_request_[p];
  }
  return out;
}

bool Execution::active(std::size_t p) const {
  return !interp_.idle(p) || next_request_[p] < history_.workload.requests[p].size();
}

bool Execution::finished() const {
  for (std::size_t p = 0; p < next_request_.size(); ++p) {
    if (active(p)) return false;
  }
  return true;
}

void Execution::add_violation(dmtf::Violation v) {
  if (history_.violations.size() < kMaxRecordedViolations) {
    history_.violations.push_back(std::move(v));
  }
}

void Execution::on_prepend(NodeRef node) {
  for (std::size_t p = 0; p < next_request_.size(); ++p) {
    if (!interp_.idle(p)) prepended_since_[p].push_back(node);
  }
  uncovered_.push_back(node);
}

void Execution::step(std::size_t p) {
  if (p >= next_request_.size() || !active(p)) return;
  if (interp_.idle(p)) {
    Operation op;
    op.id = history_.ops.size();
    op.process = p;
    op.item = history_.workload.requests[p][next_request_[p]++];
    op.invoke_event = history_.events.size();
    current_op_[p] = op.id;
    Event e;
    e.kind = EventKind::kInvoke;
    e.process = p;
    e.op = op.id;
    e.item = op.item;
    history_.events.push_back(e);
    history_.ops.push_back(op);
    front_at_invoke_[p] = interp_.snapshot().head.first;
    prepended_since_[p].clear();
    interp_.invoke(p, op.item);
  }
  history_.schedule.push_back(p);
  ++history_.steps;
  const auto out = interp_.step(p);
  auto& op = history_.ops[current_op_[p]];
  op.item_reads = interp_.program(p).item_reads;
  op.shared_accesses = interp_.program(p).shared_accesses;

  if (out.result.returned) {
    const NodeRef r = out.result.result;
    op.respond_event = history_.events.size();
    op.result = r;
    Event e;
    e.kind = EventKind::kRespond;
    e.process = p;
    e.op = op.id;
    e.node = r;
    history_.events.push_back(e);

    const auto& initial = history_.workload.initial;
    const bool present = std::find(initial.begin(), initial.end(), op.item) != initial.end();
    const auto who = "op " + std::to_string(op.id) + " (p" + std::to_string(p) + ")";
    if (r == dmtf::kNotPresent) {
      if (present) add_violation({"not-present", who + " missed a present item"});
    } else if (history_.item_of(r) != op.item) {
      add_violation({"returned-item", who + " returned a node holding another item"});
    } else {
      auto& seen = prepended_since_[p];
      const bool during = std::find(seen.begin(), seen.end(), r) != seen.end();
      if (!during && r != front_at_invoke_[p]) {
        add_violation({"returned-at-front", who + " returned node " + std::to_string(r) +
                                                " that was not at the front during the search"});
      }
      if (during) {
        auto it = std::find(uncovered_.begin(), uncovered_.end(), r);
        if (it != uncovered_.end()) uncovered_.erase(it);
      }
    }
    prepended_since_[p].clear();
    front_at_invoke_[p] = dmtf::kNull;
  }

  const auto& mv = interp_.memory().violations();
  for (; seen_violations_ < mv.size(); ++seen_violations_) add_violation(mv[seen_violations_]);
  if (config_.check_invariants && history_.violations.size() < kMaxRecordedViolations) {
    for (auto& v : dmtf::snapshot_invariants(interp_.snapshot(), false)) add_violation(v);
  }
}

void Execution::close() {
  history_.complete = finished();
  history_.final_list = dmtf::list_items(interp_.snapshot());
  if (!history_.complete) return;
  for (auto& v : dmtf::snapshot_invariants(interp_.snapshot(), true)) add_violation(v);
  for (NodeRef n : uncovered_) {
    add_violation({"prepend-accounted", "node " + std::to_string(n) +
                                            " was prepended but no search returned it"});
  }
}

void Execution::encode(std::string& out) const {
  interp_.encode(out);
  for (std::size_t p = 0; p < next_request_.size(); ++p) {
    put(out, static_cast<std::uint32_t>(next_request_[p]));
    if (interp_.idle(p)) continue;
    put(out, front_at_invoke_[p]);
    auto seen = prepended_since_[p];
    std::sort(seen.begin(), seen.end());
    put(out, static_cast<std::uint32_t>(seen.size()));
    for (auto n : seen) put(out, n);
  }
  auto unc = uncovered_;
  std::sort(unc.begin(), unc.end());
  put(out, static_cast<std::uint32_t>(unc.size()));
  for (auto n : unc) put(out, n);
  put(out, static_cast<std::uint32_t>(history_.violations.size()));
}

ExecutionHistory run(const Workload& workload, const ScheduleSpec& schedule,
                     const RunConfig& config) {
  Execution ex(workload, config);
  ex.history().spec = schedule;
  Scheduler sched(schedule, workload.processes());
  while (!ex.finished() && ex.steps() < config.step_bound) {
    const auto p = sched.next(ex.status());
    if (!p) break;
    ex.step(*p);
  }
  ex.close();
  return std::move(ex.history());
}

}  // namespace listlab::harness
