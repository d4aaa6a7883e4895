#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "config_json.hpp"
#include "listlab/errors.hpp"
#include "listlab/findvalue/findvalue.hpp"
#include "listlab/harness/account.hpp"
#include "listlab/harness/explore.hpp"
#include "listlab/harness/linearize.hpp"
#include "listlab/harness/runner.hpp"
#include "listlab/merge/lower_bound.hpp"
#include "listlab/rational.hpp"
#include "listlab/seq/distance.hpp"

namespace listlab::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Integers separated by commas and/or whitespace.
std::vector<std::uint32_t> parse_ids(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 1 || v > 0xFFFFFFF0LL) {
      throw std::invalid_argument("not a positive item id: " + tok);
    }
    out.push_back(static_cast<std::uint32_t>(v));
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return out;
}

std::string rat(const Rational& r) { return to_string(r); }

struct Common {
  std::string out_path;
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::size_t budget = 0;
  bool budget_set = false;
};

// ---------------------------------------------------------------- distance

struct DistanceOpts {
  std::string sequence;
  std::string input;
  std::int64_t ell = 0;
  std::string format = "csv";
};

void cmd_distance(const DistanceOpts& o, std::ostream& out) {
  const auto ids = parse_ids(o.input.empty() ? o.sequence : read_file(o.input));
  const auto s = seq::make_sequence(ids);
  std::set<std::uint32_t> distinct(ids.begin(), ids.end());
  if (o.ell < 1 || static_cast<std::size_t>(o.ell) < distinct.size()) {
    throw std::invalid_argument("--ell must be at least the number of distinct items");
  }
  const auto d = seq::distance(s, o.ell);
  json cfg{{"command", "distance"}, {"ell", o.ell}, {"sequence", ids}};
  if (o.format == "json") {
    out << json{{"config", cfg}, {"per_index", d.per_index}, {"total", d.total}}.dump() << '\n';
    return;
  }
  out << "# listlab " << cfg.dump() << '\n';
  out << "index,item,distance\n";
  for (std::size_t j = 0; j < ids.size(); ++j) {
    out << j + 1 << ',' << ids[j] << ',' << d.per_index[j] << '\n';
  }
  out << "total,," << d.total << '\n';
}

// ------------------------------------------------------------- merge-ratio

struct MergeRatioOpts {
  std::int64_t p = 2;
  std::int64_t ell = 8;
  std::vector<std::int64_t> r{1, 2, 5, 10, 50};
  std::vector<std::int64_t> s;
};

void cmd_merge_ratio(const MergeRatioOpts& o, std::ostream& out, std::ostream& err) {
  auto s = o.s.empty() ? o.r : o.s;
  auto r = o.r;
  if (r.size() == 1 && s.size() > 1) r.assign(s.size(), r.front());
  if (s.size() == 1 && r.size() > 1) s.assign(r.size(), s.front());
  if (r.size() != s.size()) throw std::invalid_argument("--r and --s lengths differ");
  json cfg{{"command", "merge-ratio"}, {"p", o.p}, {"ell", o.ell}, {"r", r}, {"s", s}};
  out << "# listlab " << cfg.dump() << '\n';
  out << "r,s,avg_hi,avg_lo,ratio,limit,gap\n";
  std::vector<merge::MergeRatioRow> rows;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const auto row = merge::merge_ratio_row(o.p, o.ell, r[k], s[k]);
    out << row.r << ',' << row.s << ',' << rat(row.avg_hi) << ',' << rat(row.avg_lo) << ','
        << rat(row.ratio) << ',' << rat(row.limit) << ',' << rat(row.gap) << '\n';
    rows.push_back(row);
  }
  bool ok = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const bool grows = rows[k].r >= rows[k - 1].r && rows[k].s >= rows[k - 1].s;
    if (grows && rows[k].gap > rows[k - 1].gap) {
      err << "gap grew from (" << rows[k - 1].r << "," << rows[k - 1].s << ") to (" << rows[k].r
          << "," << rows[k].s << ")\n";
      ok = false;
    }
  }
  if (!ok) throw CheckFailed("gap is not shrinking");
}

// -------------------------------------------------------------------- dmtf

struct WorkloadOpts {
  std::string workload_file;
  std::string initial;
  std::string requests;
};

harness::Workload load_workload(const WorkloadOpts& o) {
  if (!o.workload_file.empty()) return harness::workload_from_json(read_json_file(o.workload_file));
  if (o.initial.empty() || o.requests.empty()) {
    throw std::invalid_argument("give --workload or both --initial and --requests");
  }
  json j{{"initial", parse_ids(o.initial)}, {"requests", json::array()}};
  std::string part;
  std::istringstream in(o.requests);
  while (std::getline(in, part, ';')) j["requests"].push_back(parse_ids(part));
  return harness::workload_from_json(j);
}

struct DmtfOpts {
  WorkloadOpts workload;
  std::string schedule = R"({"kind":"round_robin"})";
  std::string schedule_file;
  std::uint32_t phi = 1;
  std::string model = "full";
  std::string cost_csv;
  bool skip_inform = false;
  bool null_tail = false;
};

seq::CostModel parse_model(const std::string& m) {
  if (m == "full") return seq::CostModel::kFull;
  if (m == "partial") return seq::CostModel::kPartial;
  throw std::invalid_argument("--model must be full or partial");
}

void cmd_dmtf(const DmtfOpts& o, const Common& c, std::ostream& out) {
  const auto w = load_workload(o.workload);
  json sj;
  try {
    sj = o.schedule_file.empty() ? json::parse(o.schedule) : read_json_file(o.schedule_file);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("--schedule: ") + e.what());
  }
  if (sj.is_object() && sj.value("kind", "") == "random" && !sj.contains("seed")) {
    sj["seed"] = c.seed;
  }
  const auto spec = harness::schedule_from_json(sj);
  harness::RunConfig rc;
  rc.phi = o.phi;
  rc.faults.skip_inform = o.skip_inform;
  rc.faults.null_tail = o.null_tail;
  if (c.budget_set) rc.step_bound = c.budget;
  const auto model = parse_model(o.model);

  const auto h = harness::run(w, spec, rc);
  json cfg{{"type", "config"},       {"command", "dmtf"},         {"workload", to_json(w)},
           {"schedule", to_json(spec)}, {"phi", o.phi},             {"step_bound", rc.step_bound},
           {"model", o.model},           {"skip_inform", o.skip_inform},
           {"null_tail", o.null_tail}};
  out << cfg.dump() << '\n';
  harness::write_ndjson(h, out);

  const auto lin = harness::check_linearizable(h);
  json report{{"type", "report"},
              {"complete", h.complete},
              {"linearizable", lin.ok()},
              {"violations", h.violations.size()}};
  std::optional<harness::CostReport> cost;
  if (lin.ok()) {
    cost = harness::account(h, *lin.witness, model);
    report["witness"] = lin.witness->order;
    report["cost"] = {{"model", o.model},
                      {"op_level", cost->op_level},
                      {"item_level", cost->item_level},
                      {"actual", cost->actual},
                      {"completed", cost->completed},
                      {"pending", cost->pending}};
  } else {
    report["reason"] = lin.counterexample->reason;
    report["event"] = lin.counterexample->event;
  }
  out << report.dump() << '\n';
  if (!o.cost_csv.empty() && cost) {
    std::ofstream f(o.cost_csv);
    if (!f) throw IoError("cannot write " + o.cost_csv);
    f << "# listlab " << cfg.dump() << '\n'
      << harness::cost_csv_header() << '\n'
      << harness::to_csv_row(*cost) << '\n';
  }
  if (!lin.ok() || !h.violations.empty()) throw CheckFailed("execution failed its checks");
}

// ----------------------------------------------------------------- explore

struct ExploreOpts {
  WorkloadOpts workload;
  std::size_t processes = 2;
  std::size_t ell = 2;
  std::size_t requests = 1;
  std::uint32_t phi = 1;
  std::size_t max_states = 2'000'000;
  bool skip_inform = false;
  bool null_tail = false;
};

std::string label(const harness::Workload& w) {
  std::string s;
  for (std::size_t p = 0; p < w.requests.size(); ++p) {
    if (p) s += '/';
    for (std::size_t k = 0; k < w.requests[p].size(); ++k) {
      if (k) s += '.';
      s += std::to_string(w.requests[p][k]);
    }
  }
  return s;
}

std::vector<harness::Workload> explore_workloads(const ExploreOpts& o) {
  if (!o.workload.workload_file.empty() || !o.workload.requests.empty()) {
    return {load_workload(o.workload)};
  }
  if (o.processes < 1 || o.ell < 2) throw std::invalid_argument("need processes >= 1, ell >= 2");
  harness::Workload base;
  for (std::size_t k = 1; k <= o.ell; ++k) base.initial.push_back(static_cast<harness::ItemId>(k));
  base.requests.assign(o.processes, std::vector<harness::ItemId>(o.requests, 1));
  const std::size_t slots = o.processes * o.requests;
  std::size_t total = 1;
  for (std::size_t k = 0; k < slots; ++k) {
    total *= o.ell;
    if (total > 100000) throw BudgetExceeded("too many workloads to enumerate");
  }
  std::vector<harness::Workload> out;
  for (std::size_t code = 0; code < total; ++code) {
    auto w = base;
    std::size_t c = code;
    for (std::size_t k = slots; k-- > 0;) {
      w.requests[k / o.requests][k % o.requests] = static_cast<harness::ItemId>(1 + c % o.ell);
      c /= o.ell;
    }
    out.push_back(std::move(w));
  }
  return out;
}

void cmd_explore(const ExploreOpts& o, const Common& c, std::ostream& out) {
  const auto loads = explore_workloads(o);
  harness::ExploreConfig ec;
  ec.run.phi = o.phi;
  ec.run.faults.skip_inform = o.skip_inform;
  ec.run.faults.null_tail = o.null_tail;
  ec.run.step_bound = c.budget_set ? c.budget : 400;
  ec.max_states = o.max_states;
  json cfg{{"command", "explore"},         {"workloads", loads.size()},
           {"initial", loads.front().initial}, {"phi", o.phi},
           {"step_bound", ec.run.step_bound},  {"max_states", o.max_states},
           {"skip_inform", o.skip_inform}, {"null_tail", o.null_tail}};
  out << "# listlab " << cfg.dump() << '\n';
  out << "workload,states,terminals,pruned,bounded,max_depth,violations\n";
  std::size_t states = 0, terminals = 0, violations = 0, bounded = 0;
  std::vector<std::string> notes;
  for (const auto& w : loads) {
    ec.workload = w;
    const auto rep = harness::explore_all(ec);
    out << label(w) << ',' << rep.states << ',' << rep.terminals << ',' << rep.pruned << ','
        << rep.bounded << ',' << rep.max_depth << ',' << rep.violations.size() << '\n';
    states += rep.states;
    terminals += rep.terminals;
    bounded += rep.bounded;
    violations += rep.violations.size();
    for (const auto& v : rep.violations) {
      if (notes.size() >= 10) break;
      std::string sched;
      for (auto p : v.schedule) sched += std::to_string(p);
      notes.push_back(label(w) + " schedule " + sched + ": " + v.reason);
    }
  }
  out << "# total states=" << states << " terminals=" << terminals << " bounded=" << bounded
      << " violations=" << violations << '\n';
  for (const auto& n : notes) out << "# violation " << n << '\n';
  if (violations > 0) throw CheckFailed("exploration found violations");
}

// --------------------------------------------------------------- findvalue

struct FindValueOpts {
  std::string mode = "exact";
  std::size_t n = 1;
  std::size_t samples = 1'000'000;
  std::string policy = "adaptive";
  int target = 0;
  std::string tape;
};

findvalue::AdversaryPolicy parse_policy(const FindValueOpts& o) {
  if (o.policy == "adaptive") return {findvalue::PolicyKind::kAdaptiveOffline, 0};
  if (o.policy == "lower-bound") return {findvalue::PolicyKind::kLowerBound, 0};
  if (o.policy == "fixed") return {findvalue::PolicyKind::kFixedTarget, o.target};
  throw std::invalid_argument("--policy must be adaptive, lower-bound or fixed");
}

void cmd_findvalue(const FindValueOpts& o, const Common& c, std::ostream& out) {
  if (o.n < 1) throw std::invalid_argument("--n must be at least 1");
  const auto policy = parse_policy(o);
  json cfg{{"command", "findvalue"}, {"mode", o.mode},     {"n", o.n},
           {"policy", o.policy},     {"target", o.target}, {"seed", c.seed}};
  if (o.mode == "mc") cfg["samples"] = o.samples;
  if (o.mode == "tape") cfg["tape"] = o.tape;
  out << "# listlab " << cfg.dump() << '\n';
  std::vector<std::int64_t> inputs;
  for (std::size_t k = 0; k < o.n; ++k) inputs.push_back(static_cast<std::int64_t>(k + 1));
  const Rational expected(23, 8);

  auto per_input = [&](const findvalue::RunResult& r) {
    out << "input,target,reads,opt_reads\n";
    for (std::size_t k = 0; k < r.inputs.size(); ++k) {
      out << k + 1 << ',' << r.inputs[k].target << ',' << r.inputs[k].reads << ",2\n";
    }
    out << "total,," << r.reads << ',' << r.opt_reads << '\n';
    out << "# ratio " << rat(r.ratio()) << (r.safe ? "" : " UNSAFE") << '\n';
  };

  if (o.mode == "deterministic") {
    const auto r = findvalue::run_deterministic(inputs, policy);
    per_input(r);
    if (r.reads != 3 * static_cast<std::int64_t>(o.n) || !r.safe) {
      throw CheckFailed("deterministic reads differ from 3 per input");
    }
  } else if (o.mode == "tape") {
    auto tape = o.tape.empty() ? findvalue::CoinTape::from_seed(c.seed)
                               : findvalue::CoinTape::from_hex(o.tape);
    findvalue::RunResult r;
    try {
      r = findvalue::run_randomized(inputs, policy, tape);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("--tape has too few coins for " + std::to_string(o.n) +
                                  " inputs");
    }
    per_input(r);
    if (!r.safe) throw CheckFailed("registers disagree");
  } else if (o.mode == "lower-bound") {
    out << "f0,f1,f2,case,target,reads\n";
    int least = 1 << 30;
    for (const auto& f : findvalue::all_first_read_maps()) {
      const auto play = findvalue::lower_bound_adversary(f);
      out << f[0] << ',' << f[1] << ',' << f[2] << ',' << (play.shared_target ? "shared" : "cyclic")
          << ',' << play.target << ',' << play.reads << '\n';
      least = std::min(least, play.reads);
    }
    out << "# min reads " << least << " over first-read maps with immediate reads\n";
    if (least < 3) throw CheckFailed("a first-read map escaped the lower bound");
  } else if (o.mode == "exact") {
    const auto e = findvalue::run_randomized_exact(o.n, policy);
    out << "n,expected_reads,per_input,ratio,branch_1,branch_2,branch_3,branch_4\n";
    out << o.n << ',' << rat(e.expected_reads) << ',' << rat(e.per_input) << ',' << rat(e.ratio);
    for (const auto& b : e.branches) out << ',' << rat(b);
    out << '\n';
    if (e.per_input != expected) throw CheckFailed("exact expectation differs from 23/8");
  } else if (o.mode == "mc") {
    const auto m = findvalue::run_randomized_monte_carlo(o.n, o.samples, c.seed, policy);
    const double rel = std::abs(m.mean_reads - to_double(expected)) / to_double(expected);
    std::ostringstream row;
    row.precision(6);
    row << std::fixed << o.n << ',' << m.samples << ',' << c.seed << ',' << m.mean_reads << ','
        << m.ratio << ",23/8," << rel;
    out << "n,samples,seed,mean_reads,ratio,exact,rel_error\n" << row.str() << '\n';
    if (rel > 0.01) throw CheckFailed("Monte Carlo mean is more than 1% from 23/8");
  } else {
    throw std::invalid_argument("--mode must be deterministic, tape, lower-bound, exact or mc");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed list-accessing laboratory", "listlab"};
  app.config_formatter(std::make_shared<ConfigJson>());
  app.set_config("--config", "", "JSON config file; nested objects configure subcommands");
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out_path, "Write results to this file instead of stdout");
  app.add_option("--seed", common.seed, "Seed for pseudorandom choices");
  app.add_option("--budget", common.budget, "Step bound for DMTF runs and exploration");

  DistanceOpts dist;
  auto* d = app.add_subcommand("distance", "Distance profile of a request sequence");
  auto* dseq = d->add_option("--sequence", dist.sequence, "Items, comma separated");
  auto* din = d->add_option("--input", dist.input, "File with items");
  dseq->excludes(din);
  d->add_option("--ell", dist.ell, "Number of list items")->required();
  d->add_option("--format", dist.format)->check(CLI::IsMember({"csv", "json"}));

  MergeRatioOpts mr;
  auto* m = app.add_subcommand("merge-ratio", "Lower-bound construction: average distance ratio");
  m->add_option("--p", mr.p, "Processes")->capture_default_str();
  m->add_option("--ell", mr.ell, "List length, a multiple of p")->capture_default_str();
  m->add_option("--r", mr.r, "Rounds, one row each")->delimiter(',')->capture_default_str();
  m->add_option("--s", mr.s, "Repetitions per block; defaults to --r")->delimiter(',');

  DmtfOpts dm;
  auto* dt = app.add_subcommand("dmtf", "Run DMTF under a schedule and account its cost");
  dt->add_option("--workload", dm.workload.workload_file, "Workload JSON file");
  dt->add_option("--initial", dm.workload.initial, "Initial list, comma separated");
  dt->add_option("--requests", dm.workload.requests, "Per-process requests, ';' between processes");
  dt->add_option("--schedule", dm.schedule, "Schedule as JSON")->capture_default_str();
  dt->add_option("--schedule-file", dm.schedule_file, "Schedule JSON file");
  dt->add_option("--phi", dm.phi)->capture_default_str()->check(CLI::PositiveNumber);
  dt->add_option("--model", dm.model)->check(CLI::IsMember({"full", "partial"}));
  dt->add_option("--cost-csv", dm.cost_csv, "Also write the cost report as CSV");
  dt->add_flag("--inject-skip-inform", dm.skip_inform, "Disable the inform step (fault injection)");
  dt->add_flag("--inject-null-tail", dm.null_tail, "Unlink the last node with NULL (fault injection)");

  ExploreOpts ex;
  auto* e = app.add_subcommand("explore", "Exhaustive interleavings with invariant checks");
  e->add_option("--workload", ex.workload.workload_file, "Workload JSON file");
  e->add_option("--initial", ex.workload.initial, "Initial list with --requests");
  e->add_option("--requests", ex.workload.requests, "Per-process requests, ';' between processes");
  e->add_option("--processes", ex.processes)->capture_default_str();
  e->add_option("--ell", ex.ell)->capture_default_str();
  e->add_option("--per-process", ex.requests, "Requests per process when enumerating")
      ->capture_default_str();
  e->add_option("--phi", ex.phi)->capture_default_str()->check(CLI::PositiveNumber);
  e->add_option("--max-states", ex.max_states)->capture_default_str();
  e->add_flag("--inject-skip-inform", ex.skip_inform, "Disable the inform step (fault injection)");
  e->add_flag("--inject-null-tail", ex.null_tail, "Unlink the last node with NULL (fault injection)");

  FindValueOpts fv;
  auto* f = app.add_subcommand("findvalue", "FindValue simulator");
  f->add_option("--mode", fv.mode)
      ->check(CLI::IsMember({"deterministic", "tape", "lower-bound", "exact", "mc"}))
      ->capture_default_str();
  f->add_option("--n", fv.n, "Inputs")->capture_default_str();
  f->add_option("--samples", fv.samples, "Monte Carlo tapes")->capture_default_str();
  f->add_option("--policy", fv.policy)
      ->check(CLI::IsMember({"adaptive", "lower-bound", "fixed"}))
      ->capture_default_str();
  f->add_option("--target", fv.target, "Target for --policy fixed")->check(CLI::Range(0, 2));
  f->add_option("--tape", fv.tape, "Coin tape as hex (mode tape); default draws from --seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kOk : kUsage;
  }
  common.seed_set = app.get_option("--seed")->count() > 0;
  common.budget_set = app.get_option("--budget")->count() > 0;

  std::ostringstream buffer;
  try {
    if (d->parsed()) {
      if (dist.sequence.empty() && dist.input.empty()) {
        throw std::invalid_argument("give --sequence or --input");
      }
      cmd_distance(dist, buffer);
    } else if (m->parsed()) {
      cmd_merge_ratio(mr, buffer, err);
    } else if (dt->parsed()) {
      cmd_dmtf(dm, common, buffer);
    } else if (e->parsed()) {
      cmd_explore(ex, common, buffer);
    } else if (f->parsed()) {
      cmd_findvalue(fv, common, buffer);
    }
  } catch (const CheckFailed& cf) {
    err << "check failed: " << cf.what() << '\n';
    out << buffer.str();
    return kCheckFailed;
  } catch (const BudgetExceeded& be) {
    err << "budget exceeded: " << be.what() << '\n';
    return kBudget;
  } catch (const IoError& io) {
    err << "error: " << io.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& ia) {
    err << "error: " << ia.what() << '\n';
    return kUsage;
  } catch (const std::exception& ex2) {
    err << "internal error: " << ex2.what() << '\n';
    return kInternal;
  }
  if (common.out_path.empty()) {
    out << buffer.str();
    return kOk;
  }
  std::ofstream file(common.out_path);
  if (!file || !(file << buffer.str())) {
    err << "error: cannot write " << common.out_path << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace listlab::cli
