// eqbase: prove, check, model, test-base, hunt, bases.
//
// Exit status: 0 success, 1 refuted or failed, 2 unknown or limits hit,
// 3 usage or I/O error (CLI11 parse errors keep their own codes, all > 2).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqbase/base_lab.hpp"
#include "eqbase/engine.hpp"
#include "eqbase/finite_algebra.hpp"
#include "eqbase/model_search.hpp"
#include "eqbase/parse.hpp"
#include "eqbase/proof_check.hpp"
#include "eqbase/proof_script.hpp"

namespace fs = std::filesystem;
using namespace eqbase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument naming an existing file is read as an equation list;
// anything else is parsed as one equation.
std::vector<Equation> equations_from(const std::vector<std::string>& args) {
  std::vector<Equation> out;
  for (const auto& a : args) {
    if (fs::is_regular_file(a)) {
      auto eqs = read_equation_file(a);
      out.insert(out.end(), eqs.begin(), eqs.end());
    } else {
      out.push_back(parse_equation(a));
    }
  }
  return out;
}

Equation single_equation(const std::string& arg) {
  auto eqs = equations_from({arg});
  if (eqs.size() != 1) throw UsageError("expected exactly one equation in '" + arg + "'");
  return eqs.front();
}

// Hints come from a proof listing (derived positive steps) or a plain list.
std::vector<Equation> read_hints(const std::string& path) {
  if (!fs::is_regular_file(path)) throw std::runtime_error("cannot open " + path);
  try {
    ProofScript script = read_proof_file(path);
    bool derived = false;
    for (const auto& s : script.steps) derived = derived || !s.parents.empty();
    if (derived) return hints_from_script(script);
  } catch (const ProofFormatError&) {
  }
  return read_equation_file(path);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  write_file_atomic(output, text);
}

struct SearchFlags {
  std::optional<std::uint32_t> max_weight;
  std::optional<double> max_seconds;
  std::optional<std::uint64_t> max_given;
  std::vector<std::string> hints;
  bool hints_exempt = false;
  bool back_demod = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-weight", max_weight, "Discard generated clauses heavier than this");
    cmd->add_option("--max-seconds", max_seconds, "Time limit for the search");
    cmd->add_option("--max-given", max_given, "Limit on given clauses");
    cmd->add_option("--hints", hints, "Proof listing or equation file used as hints");
    cmd->add_flag("--hints-exempt", hints_exempt, "Keep hint matchers regardless of limits");
    cmd->add_flag("--back-demod", back_demod, "Rewrite kept positive clauses with new rules");
  }

  SearchParams params() const {
    SearchParams p;
    p.max_weight = max_weight;
    p.max_seconds = max_seconds;
    p.max_given = max_given;
    for (const auto& h : hints) {
      auto eqs = read_hints(h);
      p.hints.insert(p.hints.end(), eqs.begin(), eqs.end());
    }
    p.hint_exempt_from_limits = hints_exempt;
    p.back_demodulate = back_demod;
    return p;
  }
};

struct ModelFlags {
  std::optional<std::uint64_t> budget;
  bool no_symmetry = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget", budget, "Node budget (default: EQBASE_BUDGET or 1e8)");
    cmd->add_flag("--no-symmetry", no_symmetry, "Disable least-number symmetry reduction");
  }

  FindOptions options() const {
    FindOptions o;
    if (budget) o.node_budget = *budget;
    o.symmetry_reduction = !no_symmetry;
    return o;
  }
};

// ------------------------------------------------------------------ prove

struct ProveCmd {
  std::vector<std::string> axioms;
  std::vector<std::string> assume;
  std::string goal;
  std::string output;
  SearchFlags search;

  int run() const {
    auto ax = equations_from(axioms);
    auto extra = equations_from(assume);
    ax.insert(ax.end(), extra.begin(), extra.end());
    if (ax.empty()) throw UsageError("--axioms: no equations given");
    Equation g = single_equation(goal);
    SearchParams params = search.params();
    ProveResult r = prove(ax, g, params);
    std::cerr << "status=" << to_string(r.status) << " given=" << r.stats.given
              << " generated=" << r.stats.generated << " kept=" << r.stats.kept
              << " seconds=" << r.stats.seconds << "\n";
    if (r.status == ProveStatus::Proved) {
      emit(format_proof(to_script(r.proof)), output);
      return kExitOk;
    }
    // Saturation without a weight limit means the goal does not follow.
    if (r.status == ProveStatus::Saturated && !params.max_weight) return kExitFailed;
    return kExitUnknown;
  }
};

// ------------------------------------------------------------------ check

struct CheckCmd {
  std::string proof;
  std::vector<std::string> axioms;
  std::string goal;
  std::string output;
  std::size_t budget = kDefaultReconstructionBudget;

  int run() const {
    ProofScript script = read_proof_file(proof);
    auto ax = equations_from(axioms);
    std::optional<Equation> g;
    if (!goal.empty()) {
      g = single_equation(goal);
    } else {
      for (const auto& s : script.steps) {
        if (s.label == "goal" && s.statement) g = *s.statement;
      }
      if (!g) throw UsageError("--goal not given and the listing labels no goal");
    }
    CheckOptions opts;
    opts.budget = budget;
    CheckReport report = check_proof(script, ax, *g, opts);
    std::string text = format_certificates(report);
    emit(text, output);
    if (!output.empty()) std::cout << "verdict=" << (report.passed ? "PASS" : "FAIL") << "\n";
    return report.passed ? kExitOk : kExitFailed;
  }
};

// ------------------------------------------------------------------ model

struct ModelCmd {
  std::vector<std::string> hold;
  std::vector<std::string> fail;
  int min_size = 1;
  int max_size = 4;
  std::string output;
  ModelFlags flags;

  int run() const {
    ModelQuery q{equations_from(hold), equations_from(fail), min_size, max_size};
    if (min_size < 1 || max_size < min_size) throw UsageError("bad size range");
    ModelResult r = find_model(q, flags.options());
    std::cerr << "nodes=" << r.nodes << " exhausted_through=" << r.exhausted_through << "\n";
    switch (r.status) {
      case SearchStatus::Found:
        emit(format_model(*r.model) + "# class " + std::string(to_string(classify(*r.model))) +
                 "\n",
             output);
        return kExitOk;
      case SearchStatus::Exhausted:
        std::cout << "exhausted sizes " << min_size << ".." << max_size << "\n";
        return kExitUnknown;
      case SearchStatus::BudgetExceeded:
        std::cout << "budget exceeded; exhausted through size " << r.exhausted_through << "\n";
        return kExitUnknown;
    }
    return kExitUnknown;
  }
};

// -------------------------------------------------------------- test-base

struct LimitFlags {
  int min_size = 2;
  int max_size = 6;
  int quick_size = 3;
  double seconds_per_goal = 60.0;
  SearchFlags search;
  ModelFlags model;

  void attach(CLI::App* cmd) {
    cmd->add_option("--min-size", min_size, "Smallest countermodel size");
    cmd->add_option("--max-size", max_size, "Largest countermodel size");
    cmd->add_option("--quick-size", quick_size, "Largest size searched before proving");
    cmd->add_option("--seconds-per-goal", seconds_per_goal, "Time limit per prover goal");
    search.attach(cmd);
    model.attach(cmd);
  }

  TestLimits limits() const {
    TestLimits l;
    l.search = search.params();
    l.seconds_per_goal = seconds_per_goal;
    l.min_model_size = min_size;
    l.max_model_size = max_size;
    l.quick_model_size = quick_size;
    l.find = model.options();
    return l;
  }
};

void write_verdict_artifacts(const std::string& dir, const std::string& id, const Verdict& v) {
  fs::create_directories(dir);
  if (v.countermodel) {
    std::string text = format_model(*v.countermodel);
    text += "# class " + std::string(to_string(classify(*v.countermodel))) + "\n";
    if (v.violated) text += "# violates " + to_string(*v.violated) + "\n";
    write_file_atomic((fs::path(dir) / (id + ".model")).string(), text);
  }
  for (std::size_t i = 0; i < v.proofs.size(); ++i) {
    if (v.proofs[i].status != ProveStatus::Proved) continue;
    write_file_atomic((fs::path(dir) / (id + ".goal" + std::to_string(i + 1) + ".proof")).string(),
                      format_proof(v.proofs[i].proof));
  }
}

int verdict_exit(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::ProvedBase:
      return kExitOk;
    case Verdict::Kind::Refuted:
      return kExitFailed;
    case Verdict::Kind::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

struct TestBaseCmd {
  std::vector<std::string> axioms;
  std::string system;
  std::string id = "candidate";
  std::string output_dir;
  bool no_filter = false;
  LimitFlags limits;

  int run() const {
    std::vector<Equation> ax;
    if (!system.empty()) {
      auto s = lookup(system);
      if (!s) throw UsageError("unknown system '" + system + "'");
      ax = s->axioms;
    } else {
      ax = equations_from(axioms);
    }
    Verdict v;
    if (ax.size() == 2 && !no_filter) {
      auto f = filter_candidate_pair(ax[0], ax[1]);
      if (auto* rej = std::get_if<Rejection>(&f)) {
        std::cout << id << " REJECTED " << rej->reason << "\n";
        return kExitFailed;
      }
      v = test_base(std::get<CandidatePair>(f), limits.limits());
    } else {
      v = test_axioms(ax, limits.limits());
    }
    for (const auto& p : v.proofs) {
      std::cerr << to_string(p.goal) << ": " << to_string(p.status) << " (" << p.stats.seconds
                << " s)\n";
    }
    if (v.countermodel) {
      std::cerr << format_model(*v.countermodel) << "class " << to_string(classify(*v.countermodel))
                << "\n";
    }
    std::cout << format_verdict_line(id, v) << "\n";
    if (!output_dir.empty()) write_verdict_artifacts(output_dir, id, v);
    return verdict_exit(v);
  }
};

// ------------------------------------------------------------------- hunt

struct HuntCmd {
  std::string mode = "enumerate";
  int jobs = 1;
  std::string out_dir = "hunt-out";
  std::uint32_t unary_weight = 6;
  std::uint32_t main_weight = 9;
  int variables = 3;
  std::uint64_t limit = 20;
  std::uint64_t cap = 1'000'000;
  int guidance_max_size = 4;
  LimitFlags limits;

  std::vector<HuntJob> enumerate_jobs() const {
    CandidateShape ushape;
    ushape.max_weight = unary_weight;
    ushape.unary_identity = true;
    ushape.cap = cap;
    CandidateShape mshape;
    mshape.max_weight = main_weight;
    mshape.variables = variables;
    mshape.cap = cap;
    auto units = generate_candidates(ushape);
    std::vector<HuntJob> out;
    generate_candidates(mshape, [&](const Equation& m) {
      for (const auto& u : units) {
        if (out.size() >= limit) return false;
        auto f = filter_candidate_pair(u, m);
        if (auto* p = std::get_if<CandidatePair>(&f)) {
          out.push_back({"c" + std::to_string(out.size() + 1), *p});
        }
      }
      return out.size() < limit;
    });
    return out;
  }

  std::vector<HuntJob> guided_jobs() const {
    GuidanceLimits g;
    g.max_model_size = guidance_max_size;
    g.find = limits.model.options();
    g.search = limits.search.params();
    if (!g.search.max_given && !g.search.max_seconds) g.search.max_seconds = 10.0;
    auto r = semantic_guidance_round({parse_equation("x = x * (x' * x)")},
                                     {parse_equation("x * (y * z) = (x * y) * z")},
                                     {parse_equation("(x * x') * (y' * y) = (y' * y) * (x * x')")},
                                     g);
    std::cerr << "interpretations=" << r.interpretations.size()
              << " false_clauses=" << r.false_clauses.size()
              << " candidates=" << r.candidates.size() << "\n";
    if (r.abc_unfalsified) std::cerr << "note: no model of A, B falsifying C; unguided\n";
    if (r.acb_unfalsified) std::cerr << "note: no model of A, C falsifying B; unguided\n";
    std::vector<HuntJob> out;
    for (const auto& c : r.candidates) {
      if (out.size() >= limit) break;
      out.push_back({"g" + std::to_string(out.size() + 1), c});
    }
    return out;
  }

  int run() const {
    if (jobs < 1) throw UsageError("--jobs must be positive");
    std::vector<HuntJob> list;
    if (mode == "enumerate") {
      list = enumerate_jobs();
    } else if (mode == "guided") {
      list = guided_jobs();
    } else {
      throw UsageError("--mode must be enumerate or guided");
    }
    fs::create_directories(out_dir);
    std::string index;
    for (const auto& j : list) {
      index += j.id + "\t" + to_string(j.pair.unary_axiom) + "\t" + to_string(j.pair.main_axiom) +
               "\n";
    }
    write_file_atomic((fs::path(out_dir) / "candidates.tsv").string(), index);
    auto lines = hunt(list, limits.limits(), jobs, out_dir);
    bool proved = false;
    for (const auto& l : lines) {
      std::cout << l << "\n";
      proved = proved || l.find(" PROVED") != std::string::npos;
    }
    return proved ? kExitOk : kExitUnknown;
  }
};

// ------------------------------------------------------------------ bases

struct BasesCmd {
  std::string show;
  std::string save;
  std::string load;

  int run() const {
    if (!load.empty()) {
      auto systems = load_registry(load);
      std::cout << systems.size() << " systems loaded and re-verified from " << load << "\n";
      return kExitOk;
    }
    if (!save.empty()) {
      save_registry(save, registry());
      std::cout << "wrote " << registry().size() << " systems to " << save << "\n";
      return kExitOk;
    }
    if (!show.empty()) {
      auto s = lookup(show);
      if (!s) {
        std::cerr << "not found: " << show << "\n";
        return kExitFailed;
      }
      std::cout << "# " << s->name << " (" << to_string(s->status) << "): " << s->provenance
                << "\n";
      for (const auto& e : s->axioms) std::cout << to_string(e) << "\n";
      if (s->countermodel) {
        std::cout << "# countermodel, class " << to_string(classify(*s->countermodel)) << "\n"
                  << format_model(*s->countermodel);
      }
      return kExitOk;
    }
    for (const auto& s : registry()) {
      std::cout << s.name << "\t" << to_string(s.status) << "\t" << s.axioms.size()
                << " axioms\t" << s.provenance << "\n";
    }
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equational bases for inverse semigroups: prover, checker, model finder"};
  app.require_subcommand(1, 1);

  ProveCmd prove_cmd;
  auto* p = app.add_subcommand("prove", "Prove a goal from axioms");
  p->add_option("--axioms", prove_cmd.axioms, "Axiom files or inline equations")->required();
  p->add_option("--assume", prove_cmd.assume, "Extra axioms, e.g. previously proved goals");
  p->add_option("--goal", prove_cmd.goal, "Goal equation or file")->required();
  p->add_option("-o,--output", prove_cmd.output, "Write the proof listing here");
  prove_cmd.search.attach(p);

  CheckCmd check_cmd;
  auto* c = app.add_subcommand("check", "Certify a proof listing");
  c->add_option("--proof", check_cmd.proof, "Proof listing")->required()->check(CLI::ExistingFile);
  c->add_option("--axioms", check_cmd.axioms, "Axiom files or inline equations")->required();
  c->add_option("--goal", check_cmd.goal, "Goal (default: the step labelled goal)");
  c->add_option("-o,--output", check_cmd.output, "Write the certificate here");
  c->add_option("--budget", check_cmd.budget, "Reconstruction node budget per step");

  ModelCmd model_cmd;
  auto* m = app.add_subcommand("model", "Search for a finite model");
  m->add_option("--hold", model_cmd.hold, "Identities that must hold")->required();
  m->add_option("--fail", model_cmd.fail, "Identities that must fail");
  m->add_option("--min-size", model_cmd.min_size, "Smallest domain size");
  m->add_option("--max-size", model_cmd.max_size, "Largest domain size");
  m->add_option("-o,--output", model_cmd.output, "Write the model here");
  model_cmd.flags.attach(m);

  TestBaseCmd test_cmd;
  auto* t = app.add_subcommand("test-base", "Prove or refute that axioms form a base");
  auto* t_ax = t->add_option("--axioms", test_cmd.axioms, "Axiom files or inline equations");
  auto* t_sys = t->add_option("--system", test_cmd.system, "Registry system name");
  t_ax->excludes(t_sys);
  t->add_option("--id", test_cmd.id, "Identifier printed in the verdict line");
  t->add_option("-o,--output-dir", test_cmd.output_dir, "Write proofs and countermodel here");
  t->add_flag("--no-filter", test_cmd.no_filter, "Skip the pair shape filter");
  test_cmd.limits.attach(t);

  HuntCmd hunt_cmd;
  auto* h = app.add_subcommand("hunt", "Generate candidate pairs and test them");
  h->add_option("--mode", hunt_cmd.mode, "enumerate or guided");
  h->add_option("--jobs", hunt_cmd.jobs, "Parallel workers");
  h->add_option("--out-dir", hunt_cmd.out_dir, "Directory for verdict files");
  h->add_option("--unary-weight", hunt_cmd.unary_weight, "Max weight of u(x)");
  h->add_option("--main-weight", hunt_cmd.main_weight, "Max side weight of s = t");
  h->add_option("--variables", hunt_cmd.variables, "Variables in s = t");
  h->add_option("--limit", hunt_cmd.limit, "Number of candidate pairs to test");
  h->add_option("--cap", hunt_cmd.cap, "Candidate stream cap");
  h->add_option("--guidance-max-size", hunt_cmd.guidance_max_size, "Interpretation size bound");
  hunt_cmd.limits.attach(h);

  BasesCmd bases_cmd;
  auto* b = app.add_subcommand("bases", "List the registry of axiom systems");
  b->add_option("--show", bases_cmd.show, "Print one system");
  b->add_option("--save", bases_cmd.save, "Persist the registry to a directory");
  b->add_option("--load", bases_cmd.load, "Load and re-verify a persisted registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : std::max(code, kExitError);
  }

  try {
    if (*p) return prove_cmd.run();
    if (*c) return check_cmd.run();
    if (*m) return model_cmd.run();
    if (*t) return test_cmd.run();
    if (*h) return hunt_cmd.run();
    if (*b) return bases_cmd.run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
