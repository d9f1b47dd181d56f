#include "pcplus/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

#include "pcplus/serialize.hpp"
#include "pcplus/steps.hpp"

namespace pcplus::cli {

namespace {

struct Options {
  std::string command;
  std::string file;
  std::string format = "text";
  int verbosity = 0;
  std::string uniqueness = "rigid";
  std::string prior, steps, occurred, hypothesis, plan, goal, history;
  size_t horizon = 1;
  std::string threshold = "0";
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int run();

 private:
  bool json() const { return o_.format == "json"; }
  bool verbose() const { return o_.verbosity > 0; }
  const Signature& sig() const { return ts_->signature(); }

  int load();
  int emit(int code, Json result);
  void report(const std::vector<Diagnostic>& ds);
  std::string prob(const Rational& q) const {
    return to_fraction_string(q) + " = " + to_decimal_string(q);
  }
  void print_belief(const BeliefState& b, const std::string& heading);

  int cmd_validate();
  int cmd_consistency();
  int cmd_init_belief();
  int cmd_simulate();
  int cmd_query(const QueryResult& r, const std::string& undefined_what);
  int cmd_plan_search();

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<Domain> domain_;
  std::vector<Diagnostic> warnings_;
  std::unique_ptr<TransitionSystem> ts_;
};

unsigned long long max_states() {
  if (const char* env = std::getenv("PCPLUS_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultMaxStates;
}

void Runner::report(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) err_ << o_.file << ":" << to_string(d) << "\n";
}

int Runner::emit(int code, Json result) {
  if (json()) {
    Json record{{"command", o_.command}, {"domain", o_.file}, {"exit", code}};
    record["result"] = std::move(result);
    out_ << record.dump(2) << "\n";
  }
  return code;
}

int Runner::load() {
  std::ifstream in(o_.file, std::ios::binary);
  if (!in) {
    err_ << "error: cannot read '" << o_.file << "'\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = parse(buf.str());
  report(parsed.diagnostics);
  if (!parsed.ok()) {
    int code = parsed.has_parse_errors() ? kParseError : kInvalid;
    return emit(code, {{"ok", false}, {"errors", std::count_if(parsed.diagnostics.begin(),
                                                              parsed.diagnostics.end(),
                                                              [](const Diagnostic& d) {
                                                                return d.severity == Severity::kError;
                                                              })}});
  }
  domain_ = std::move(parsed.domain);

  const auto& s = domain_->signature;
  // Product of state-variable domain sizes, saturating.
  unsigned long long candidates = 1;
  const unsigned long long cap = max_states();
  for (VarId v : s.state_variables()) {
    candidates *= s[v].domain.size();
    if (candidates > cap) {
      err_ << "error: the domain has more than " << cap
           << " candidate states (raise PCPLUS_MAX_STATES to allow it)\n";
      return kUsage;
    }
  }
  TransitionOptions opts;
  opts.uniqueness = o_.uniqueness == "all" ? Uniqueness::kAllInterpretations : Uniqueness::kRigidEqual;
  ts_ = std::make_unique<TransitionSystem>(*domain_, opts);
  return kOk;
}

void Runner::print_belief(const BeliefState& b, const std::string& heading) {
  out_ << heading << "p = " << prob(b.probability) << ", " << b.support.size()
       << (b.support.size() == 1 ? " state set\n" : " state sets\n");
  for (const auto& [set, mass] : b.support) {
    out_ << "  " << prob(mass) << ": " << set.size() << (set.size() == 1 ? " state\n" : " states\n");
    if (verbose())
      for (const auto& st : set) out_ << "    " << ts_->describe(st) << "\n";
  }
}

int Runner::cmd_validate() {
  const auto& s = domain_->signature;
  size_t actions = s.of_class(VarClass::kAction).size();
  size_t dyn = domain_->dynamics.context_variables(s).size();
  size_t ini = domain_->initial.context_variables(s).size();
  if (!json())
    out_ << "OK: " << actions << " action vars, " << dyn << " context vars (dynamics), " << ini
         << " context vars (initially)\n";
  return emit(kOk, {{"ok", true},
                    {"action_vars", actions},
                    {"context_vars_dynamics", dyn},
                    {"context_vars_initially", ini}});
}

int Runner::cmd_consistency() {
  auto ds = ts_->check_consistency();
  report(ds);
  size_t states = ts_->state_space().size();
  size_t actions = ts_->all_actions().size();
  if (has_errors(ds)) {
    if (!json()) out_ << "inconsistent\n";
    return emit(kInvalid, {{"consistent", false}, {"states", states}, {"actions", actions}});
  }
  if (!json()) out_ << "consistent: " << states << " states, " << actions << " actions\n";
  return emit(kOk, {{"consistent", true}, {"states", states}, {"actions", actions}});
}

int Runner::cmd_init_belief() {
  auto b = initial_belief(*ts_);
  if (!json()) print_belief(b, "");
  return emit(kOk, belief_json(sig(), b, verbose()));
}

int Runner::cmd_simulate() {
  History h = parse_history(sig(), o_.history);
  auto trace = belief_trace(*ts_, h);
  Json snapshots = Json::array();
  for (size_t i = 0; i < trace.size(); ++i) {
    std::string heading = i == 0 ? "initial: " : "step " + std::to_string(i) + " " +
                                                    to_string(sig(), h.steps[i - 1]) + ": ";
    if (!json()) print_belief(trace[i], heading);
    Json snap = belief_json(sig(), trace[i], verbose());
    snap["step"] = i;
    if (i > 0) snap["label"] = to_string(sig(), h.steps[i - 1]);
    snapshots.push_back(std::move(snap));
  }
  Json result{{"history", history_json(sig(), h)}, {"snapshots", std::move(snapshots)}};
  if (trace.size() < h.steps.size() + 1) {
    size_t k = trace.size();
    std::string msg = "undefined at step " + std::to_string(k) + " (" +
                      to_string(sig(), h.steps[k - 1]) + "): no supported state set meets its precondition";
    if (json()) result["undefined_at"] = k;
    else out_ << msg << "\n";
    return emit(kUndefined, std::move(result));
  }
  return emit(kOk, std::move(result));
}

int Runner::cmd_query(const QueryResult& r, const std::string& undefined_what) {
  if (!json()) {
    if (!r.defined()) {
      out_ << "undefined: " << undefined_what << " has probability 0\n";
    } else {
      out_ << prob(*r.value) << "\n";
      if (verbose()) {
        out_ << "  numerator:   " << to_string(sig(), r.numerator) << "\n    Pr = "
             << (r.numerator_probability ? prob(*r.numerator_probability) : "undefined") << "\n";
        out_ << "  denominator: " << to_string(sig(), r.denominator) << "\n    Pr = "
             << prob(*r.denominator_probability) << "\n";
      }
    }
  }
  return emit(r.defined() ? kOk : kUndefined, query_json(sig(), r, o_.verbosity > 1));
}

int Runner::cmd_plan_search() {
  auto threshold = parse_rational(o_.threshold);
  if (!threshold) {
    err_ << "error: invalid threshold '" << o_.threshold << "'\n";
    return kUsage;
  }
  auto prior = parse_steps(sig(), o_.prior);
  auto goal = parse_observation(sig(), o_.goal);
  auto plans = plan_search(*ts_, prior, goal, o_.horizon, *threshold);
  if (!json()) {
    if (plans.empty()) out_ << "no plan reaches the threshold\n";
    for (const auto& p : plans) {
      std::string steps;
      for (size_t i = 0; i < p.plan.size(); ++i) steps += (i ? "; " : "") + to_string(sig(), Step(p.plan[i]));
      out_ << prob(p.goodness) << "  " << (steps.empty() ? "(empty plan)" : steps) << "\n";
    }
  }
  return emit(kOk, {{"plans", plans_json(sig(), plans)}});
}

int Runner::run() {
  try {
    if (int code = load(); code != kOk) return code;
    if (o_.command == "validate") return cmd_validate();
    if (o_.command == "consistency") return cmd_consistency();
    if (o_.command == "init-belief") return cmd_init_belief();
    if (o_.command == "simulate") return cmd_simulate();
    if (o_.command == "pred") {
      return cmd_query(pred(*ts_, parse_steps(sig(), o_.prior), parse_steps(sig(), o_.steps),
                            {verbose()}),
                       "prior history");
    }
    if (o_.command == "post") {
      return cmd_query(post(*ts_, parse_steps(sig(), o_.occurred), parse_steps(sig(), o_.hypothesis),
                            {verbose()}),
                       "occurred history");
    }
    if (o_.command == "plan-goodness") {
      std::vector<Action> plan;
      for (const auto& step : parse_steps(sig(), o_.plan)) {
        if (!std::holds_alternative<Action>(step)) throw StepSyntaxError("a plan may contain only actions");
        plan.push_back(std::get<Action>(step));
      }
      return cmd_query(plan_goodness(*ts_, parse_steps(sig(), o_.prior), plan,
                                     parse_observation(sig(), o_.goal), {verbose()}),
                       "prior history");
    }
    if (o_.command == "plan-search") return cmd_plan_search();
    err_ << "error: unknown command '" << o_.command << "'\n";
    return kUsage;
  } catch (const StepSyntaxError& e) {
    err_ << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const SubsequenceError& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InconsistencyError& e) {
    err_ << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err_ << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic reasoning about actions: belief tracking, prediction, "
               "postdiction and planning over domain descriptions."};
  app.name("pcplus");
  app.require_subcommand(1, 1);
  // One options record per subcommand: CLI11 resets variables shared
  // between subcommands.
  std::map<std::string, Options> options;

  auto common = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    Options& o = options[name];
    o.command = name;
    sub->add_option("domain", o.file, "domain file")->required();
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");
    sub->add_flag("-v,--verbose", o.verbosity, "more detail (repeatable)");
    sub->add_option("--uniqueness", o.uniqueness,
                    "successor uniqueness scope: rigid (compare against states with the same "
                    "rigid values) or all")
        ->check(CLI::IsMember({"rigid", "all"}))
        ->default_val("rigid");
    return std::pair<CLI::App*, Options*>{sub, &o};
  };

  common("validate", "parse and validate a domain file");
  common("consistency", "check that every context and transition admits a state");
  common("init-belief", "print the initial belief state");
  auto [sim, so] = common("simulate", "print beliefs along a labeled history");
  sim->add_option("--history", so->history, "steps with <> or [] labels, separated by ';'");
  auto [pr, pro] = common("pred", "probability that steps are certainly possible after a prior");
  pr->add_option("--prior", pro->prior, "prior steps");
  pr->add_option("--steps", pro->steps, "query steps")->required();
  auto [po, poo] = common("post", "probability that removed observations held");
  po->add_option("--occurred", poo->occurred, "steps that occurred")->required();
  po->add_option("--hypothesis", poo->hypothesis, "occurred steps plus hypothesized observations")
      ->required();
  auto [pg, pgo] = common("plan-goodness", "goodness of a plan for a goal");
  pg->add_option("--prior", pgo->prior, "prior steps");
  pg->add_option("--plan", pgo->plan, "action steps")->required();
  pg->add_option("--goal", pgo->goal, "goal formula")->required();
  auto [ps, pso] = common("plan-search", "enumerate plans reaching a goodness threshold");
  ps->add_option("--prior", pso->prior, "prior steps");
  ps->add_option("--goal", pso->goal, "goal formula")->required();
  ps->add_option("--horizon", pso->horizon, "maximum plan length")
      ->check(CLI::PositiveNumber)
      ->default_val(1);
  ps->add_option("--threshold", pso->threshold, "minimum goodness, e.g. 0.8 or 4/5")->default_val("0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return Runner(options.at(app.get_subcommands().front()->get_name()), out, err).run();
}

}  // namespace pcplus::cli
