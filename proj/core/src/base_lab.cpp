#include "eqbase/base_lab.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eqbase/parse.hpp"

namespace eqbase {

namespace fs = std::filesystem;

std::string_view to_string(BaseStatus s) {
  switch (s) {
    case BaseStatus::VerifiedBase:
      return "verified-base";
    case BaseStatus::VerifiedNonBase:
      return "verified-non-base";
    case BaseStatus::Candidate:
      return "candidate";
  }
  return "?";
}

std::optional<BaseStatus> parse_base_status(std::string_view s) {
  for (auto st : {BaseStatus::VerifiedBase, BaseStatus::VerifiedNonBase, BaseStatus::Candidate}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

namespace {

std::vector<Equation> parse_all(std::initializer_list<const char*> texts) {
  std::vector<Equation> out;
  for (const char* t : texts) out.push_back(parse_equation(t));
  return out;
}

const char* const kS[] = {
    "",
    "x * (y * z) = (x * y) * z",
    "(x * x') * x = x",
    "(x' * x) * x' = x'",
    "((x' * x) * y) * y' = ((y * y') * x') * x",
    "x'' = x",
    "(x * y)' = y' * x'",
    "(x * y') * z = x * (z' * y)'",
    "(x * x')' * x = x",
    "(x * x') * (y * y') = (y * y') * (x' * x)'",
};

std::vector<Equation> s_set(std::initializer_list<int> idx) {
  std::vector<Equation> out;
  for (int i : idx) out.push_back(parse_equation(kS[i]));
  return out;
}

constexpr const char* kAssoc = "x * (y * z) = (x * y) * z";
constexpr const char* kInvImplies = "(x * x') * x = x";
constexpr const char* kIdemCommute = "(x * x') * (y' * y) = (y' * y) * (x * x')";
constexpr const char* kUnaryAxiom = "x = x * (x' * x)";
constexpr const char* kLong =
    "x * (x' * (y * (y' * ((z * u)' * w')'))) = y * (y' * (x * (x' * ((w * z) * u))))";
constexpr const char* kLongSwapped =
    "x * (x' * (y' * (y * ((z * u)' * w')'))) = y' * (y * (x * (x' * ((w * z) * u))))";

FiniteAlgebra table(int n, std::vector<Element> bin, std::vector<Element> un) {
  return FiniteAlgebra(n, std::move(bin), std::move(un));
}

std::vector<AxiomSystem> build_registry() {
  using S = BaseStatus;
  std::vector<AxiomSystem> r;
  auto add = [&](std::string name, std::vector<Equation> axioms, S status, std::string prov,
                 std::optional<FiniteAlgebra> model = std::nullopt) {
    r.push_back({std::move(name), std::move(axioms), status, std::move(prov), std::move(model)});
  };
  add("schein-5",
      parse_all({kAssoc, "(x * y)' = y' * x'", "x'' = x", kInvImplies, kIdemCommute}),
      S::VerifiedBase, "Schein's characterization; (x * y)' = y' * x' is dependent on the rest");
  add("schein-4", parse_all({kAssoc, "x'' = x", kInvImplies, kIdemCommute}), S::VerifiedBase,
      "Schein's characterization without (x * y)' = y' * x'");
  add("schein-5b",
      parse_all({kAssoc, "(x * y)' = y' * x'", "x'' = x", kInvImplies,
                 "(x * x') * (x' * x) = (x' * x) * (x * x')"}),
      S::VerifiedBase, "Schein's 5-base with x x' x' x = x' x x x'");
  add("am-4", parse_all({kAssoc, "(x' * x) * x' = x'", kInvImplies, kIdemCommute}),
      S::VerifiedBase, "Schein-4 with x'' = x replaced by x' x x' = x'");
  add("S-set-i", s_set({1, 2, 4, 5, 6}), S::VerifiedBase, "S1, S2, S4, S5, S6");
  add("S-set-ii", s_set({1, 2, 3, 4}), S::VerifiedBase, "S1, S2, S3, S4");
  add("S-set-iii", s_set({1, 2, 4, 5}), S::VerifiedBase, "S1, S2, S4, S5");
  add("S-set-iv", s_set({1, 3, 4, 5}), S::VerifiedBase, "S1, S3, S4, S5");
  add("S-set-v", s_set({7, 8, 9}), S::VerifiedBase, "S7, S8, S9");
  add("ak-3", parse_all({"x * (y * z'') = (x * y) * z", "x = (x * x') * x", kIdemCommute}),
      S::VerifiedBase, "3-base with a weakened associative law");
  add("2-base", parse_all({kUnaryAxiom, kLong}), S::VerifiedBase,
      "x = x(x'x) with one uniform 5-variable identity");
  // Rectangular band of order 4 with a non-inverse unary: idempotents fail
  // to commute.
  add("intermediate-pair", parse_all({"x * (x' * x) = x", "(x * y) * z = ((y * z)' * x')'"}),
      S::VerifiedNonBase, "implies associativity and x'' = x but not commuting idempotents",
      table(4, {0, 0, 2, 2, 1, 1, 3, 3, 0, 0, 2, 2, 1, 1, 3, 3}, {3, 1, 2, 0}));
  add("2-base-swapped", parse_all({kUnaryAxiom, kLongSwapped}), S::Candidate,
      "2-base with the roles of y and y' exchanged");
  // Two-element semilattice, 1 the identity, both elements sent to 1.
  add("weak-triple", parse_all({kAssoc, kUnaryAxiom, kIdemCommute}), S::VerifiedNonBase,
      "inverse semigroups, but the unary operation need not be the natural inversion",
      table(2, {0, 0, 0, 1}, {1, 1}));
  return r;
}

}  // namespace

std::optional<std::string> verify_countermodel(const AxiomSystem& system) {
  if (!system.countermodel) {
    if (system.status == BaseStatus::VerifiedNonBase) return "no countermodel stored";
    return std::nullopt;
  }
  const FiniteAlgebra& m = *system.countermodel;
  for (const auto& ax : system.axioms) {
    if (!evaluate(m, ax)) return "countermodel violates axiom " + to_string(ax);
  }
  if (classify(m) == AlgebraClass::InverseNaturalInversion) {
    return "countermodel is an inverse semigroup with natural inversion";
  }
  return std::nullopt;
}

const std::vector<AxiomSystem>& registry() {
  static const std::vector<AxiomSystem> systems = [] {
    auto r = build_registry();
    for (const auto& s : r) {
      if (auto why = verify_countermodel(s)) {
        throw std::logic_error("registry entry " + s.name + ": " + *why);
      }
    }
    return r;
  }();
  return systems;
}

std::optional<AxiomSystem> lookup(std::string_view name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

const std::vector<Equation>& reference_properties() {
  static const std::vector<Equation> props =
      parse_all({"x'' = x", "(x * y) * z = x * (y * z)", kIdemCommute, "x * (x' * x) = x",
                 "x' * (x * x') = x'"});
  return props;
}


// ---------------------------------------------------------------- filter

namespace {

bool has_constant(const Term& t) {
  switch (t.kind()) {
    case TermKind::Constant:
      return true;
    case TermKind::Variable:
      return false;
    case TermKind::Unary:
      return has_constant(t.arg());
    case TermKind::Binary:
      return has_constant(t.left()) || has_constant(t.right());
  }
  return false;
}

// u(x) = x up to orientation; returns it with the variable on the right.
std::optional<Equation> as_unary_identity(const Equation& e) {
  if (!e.positive()) return std::nullopt;
  for (const Equation& o : {e, e.flipped()}) {
    if (!o.rhs.is_variable() || o.lhs.is_variable() || has_constant(o.lhs)) continue;
    std::vector<VarId> vars;
    collect_variables(o.lhs, vars);
    if (vars.size() == 1 && vars[0] == o.rhs.var()) return o;
  }
  return std::nullopt;
}

std::optional<std::string> check_pair(const Equation& u, const Equation& st) {
  if (count_unary(u.lhs) == 0) return "the unary operation does not occur in u(x)";
  if (!st.positive()) return "s = t is not an identity";
  Measures m = measures(st);
  if (!m.uniform) return "s = t is not uniform";
  if (m.lhs_vars.size() < 3) return "s = t involves fewer than three variables";
  if (count_unary(st.lhs) + count_unary(st.rhs) == 0) {
    return "the unary operation occurs in neither s nor t";
  }
  return std::nullopt;
}

}  // namespace

std::variant<CandidatePair, Rejection> filter_candidate_pair(
    const Equation& a, const Equation& b, const std::vector<PairPredicate>& extra) {
  std::optional<std::string> first_reason;
  for (const auto& [u_src, st] : {std::pair{a, b}, std::pair{b, a}}) {
    auto u = as_unary_identity(u_src);
    if (!u) continue;
    auto reason = check_pair(*u, st);
    if (!reason) {
      CandidatePair pair{*u, st};
      for (const auto& pred : extra) {
        if (auto why = pred(pair)) return Rejection{*why};
      }
      return pair;
    }
    if (!first_reason) first_reason = reason;
  }
  return Rejection{first_reason.value_or("neither identity has the form u(x) = x")};
}

// ------------------------------------------------------------ generation

namespace {

// All terms over variables 0..n-1 by exact weight.
class TermPool {
 public:
  TermPool(int variables, std::uint32_t max_weight, std::uint64_t cap) {
    by_weight_.resize(max_weight + 1);
    if (max_weight == 0) return;
    for (int v = 0; v < variables; ++v) by_weight_[1].push_back(Term::variable(static_cast<VarId>(v)));
    for (std::uint32_t w = 2; w <= max_weight; ++w) {
      auto& out = by_weight_[w];
      for (const Term& t : by_weight_[w - 1]) out.push_back(Term::unary(t));
      for (std::uint32_t lw = 1; lw + 1 < w; ++lw) {
        for (const Term& l : by_weight_[lw]) {
          for (const Term& r : by_weight_[w - 1 - lw]) {
            out.push_back(Term::binary(l, r));
            if (out.size() > cap) throw ResourceError("term pool exceeds the candidate cap");
          }
        }
      }
    }
  }
  const std::vector<Term>& of_weight(std::uint32_t w) const { return by_weight_[w]; }

 private:
  std::vector<std::vector<Term>> by_weight_;
};

struct Ranked {
  std::uint32_t total;
  std::uint32_t larger;
  std::string text;
  Equation eq;
  bool operator<(const Ranked& o) const {
    return std::tie(total, larger, text) < std::tie(o.total, o.larger, o.text);
  }
};

}  // namespace

void generate_candidates(const CandidateShape& shape,
                         const std::function<bool(const Equation&)>& visit) {
  if (shape.variables < 1 || shape.max_weight == 0) return;
  if (shape.unary_identity && shape.variables != 1) return;
  TermPool pool(shape.variables, shape.max_weight, shape.cap);
  const auto n = static_cast<std::size_t>(shape.variables);

  std::set<std::string> seen;
  std::vector<Ranked> out;
  auto consider = [&](const Term& s, const Term& t) {
    if (s == t) return;
    Equation eq{s, t, Polarity::Equal};
    Measures m = measures(eq);
    if (!m.uniform || m.lhs_vars.size() != n) return;
    if (shape.unary_count &&
        static_cast<int>(count_unary(s) + count_unary(t)) != *shape.unary_count) {
      return;
    }
    Equation canon = shape.unary_identity ? renumber_variables(eq) : canonical_form(eq);
    std::string text = to_string(canon);
    if (!seen.insert(text).second) return;
    if (out.size() >= shape.cap) throw ResourceError("candidate stream exceeds the cap");
    out.push_back({s.weight() + t.weight(), std::max(s.weight(), t.weight()), std::move(text),
                   std::move(canon)});
  };

  if (shape.unary_identity) {
    const Term x = Term::variable(0);
    for (std::uint32_t w = 2; w <= shape.max_weight; ++w) {
      for (const Term& u : pool.of_weight(w)) consider(u, x);
    }
  } else {
    for (std::uint32_t ws = 1; ws <= shape.max_weight; ++ws) {
      for (std::uint32_t wt = ws; wt <= shape.max_weight; ++wt) {
        for (const Term& s : pool.of_weight(ws)) {
          for (const Term& t : pool.of_weight(wt)) consider(t, s);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  for (const auto& r : out) {
    if (!visit(r.eq)) return;
  }
}

std::vector<Equation> generate_candidates(const CandidateShape& shape) {
  std::vector<Equation> out;
  generate_candidates(shape, [&](const Equation& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

// --------------------------------------------------------------- testing

namespace {

struct Refutation {
  FiniteAlgebra model;
  Equation violated;
};

std::optional<Equation> first_violated(const FiniteAlgebra& m) {
  for (const auto& p : reference_properties()) {
    if (!evaluate(m, p)) return p;
  }
  return std::nullopt;
}

// Sizes lo..hi, all open properties at each size before the next size.
std::optional<Refutation> search_countermodel(const std::vector<Equation>& hold,
                                              const std::vector<Equation>& open, int lo, int hi,
                                              const FindOptions& find, bool& budget_hit,
                                              int& exhausted_through) {
  for (int n = lo; n <= hi; ++n) {
    bool size_done = true;
    for (const auto& p : open) {
      ModelQuery q{hold, {p}, n, n};
      ModelResult r = find_model(q, find);
      if (r.status == SearchStatus::Found) return Refutation{*r.model, p};
      if (r.status == SearchStatus::BudgetExceeded) {
        budget_hit = true;
        size_done = false;
      }
    }
    if (size_done && exhausted_through == n - 1) exhausted_through = n;
  }
  return std::nullopt;
}

bool certify_small_models(const std::vector<Equation>& axioms, std::optional<FiniteAlgebra>& bad) {
  std::vector<CompiledEquation> compiled(axioms.begin(), axioms.end());
  for (int n = 1; n <= 3 && !bad; ++n) {
    enumerate_all(n, [&](const FiniteAlgebra& a, Tally&) {
      if (bad) return;
      for (const auto& c : compiled) {
        if (!evaluate(a, c)) return;
      }
      if (classify(a) != AlgebraClass::InverseNaturalInversion) bad = a;
    });
  }
  return !bad;
}

}  // namespace

Verdict test_axioms(const std::vector<Equation>& axioms, const TestLimits& limits) {
  Verdict v;
  const auto& props = reference_properties();
  bool budget_hit = false;
  int exhausted_through = limits.min_model_size - 1;

  auto refuted = [&](Refutation r) {
    v.kind = Verdict::Kind::Refuted;
    v.violated = r.violated;
    v.countermodel = std::move(r.model);
    return v;
  };

  const int quick_hi = std::min(limits.quick_model_size, limits.max_model_size);
  if (auto r = search_countermodel(axioms, props, limits.min_model_size, quick_hi, limits.find,
                                   budget_hit, exhausted_through)) {
    return refuted(std::move(*r));
  }

  std::vector<Equation> assumed = axioms;
  std::vector<Equation> open;
  for (const auto& goal : props) {
    SearchParams params = limits.search;
    if (!params.max_seconds) params.max_seconds = limits.seconds_per_goal;
    ProveResult pr = prove(limits.staged ? assumed : axioms, goal, params);
    GoalProof gp{goal, pr.status, {}, pr.stats};
    if (pr.status == ProveStatus::Proved) {
      gp.proof = to_script(pr.proof);
      assumed.push_back(goal);
    } else {
      open.push_back(goal);
    }
    v.proofs.push_back(std::move(gp));
  }

  if (open.empty()) {
    std::optional<FiniteAlgebra> bad;
    v.small_models_certified = certify_small_models(axioms, bad);
    if (!v.small_models_certified) {
      auto violated = first_violated(*bad);
      return refuted({*bad, violated.value_or(props.front())});
    }
    v.kind = Verdict::Kind::ProvedBase;
    return v;
  }

  // Proved goals are consequences, so adding them prunes the search
  // without losing models.
  if (auto r = search_countermodel(assumed, open, quick_hi + 1, limits.max_model_size,
                                   limits.find, budget_hit, exhausted_through)) {
    return refuted(std::move(*r));
  }
  std::ostringstream why;
  why << open.size() << "-goals-unproved";
  why << (budget_hit ? ",model-budget-exceeded" : ",no-countermodel");
  why << ",exhausted-through=" << exhausted_through;
  v.reason = why.str();
  return v;
}

Verdict test_base(const CandidatePair& candidate, const TestLimits& limits) {
  return test_axioms(candidate.axioms(), limits);
}

std::string format_verdict_line(std::string_view id, const Verdict& v) {
  std::string out(id);
  switch (v.kind) {
    case Verdict::Kind::ProvedBase:
      return out + " PROVED";
    case Verdict::Kind::Refuted:
      return out + " REFUTED size=" + std::to_string(v.countermodel ? v.countermodel->size() : 0);
    case Verdict::Kind::Unknown:
      return out + " UNKNOWN " + (v.reason.empty() ? std::string("limits") : v.reason);
  }
  return out;
}

// -------------------------------------------------------------- guidance

GuidanceResult semantic_guidance_round(const std::vector<Equation>& a,
                                       const std::vector<Equation>& b,
                                       const std::vector<Equation>& c,
                                       const GuidanceLimits& limits) {
  GuidanceResult out;
  auto collect = [&](const std::vector<Equation>& hold_extra, const std::vector<Equation>& fail) {
    bool any = false;
    std::vector<Equation> hold = a;
    hold.insert(hold.end(), hold_extra.begin(), hold_extra.end());
    for (const auto& f : fail) {
      ModelResult r =
          find_model({hold, {f}, limits.min_model_size, limits.max_model_size}, limits.find);
      if (r.status != SearchStatus::Found) continue;
      any = true;
      if (std::find(out.interpretations.begin(), out.interpretations.end(), *r.model) ==
          out.interpretations.end()) {
        out.interpretations.push_back(*r.model);
      }
    }
    return any;
  };
  out.abc_unfalsified = !collect(b, c);
  out.acb_unfalsified = !collect(c, b);

  std::vector<Equation> all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  SearchParams params = limits.search;
  params.interpretations = out.interpretations;
  for (const Clause& cl : derive_consequences(all, params)) {
    if (!cl.positive() || !cl.false_in_all || cl.just.kind == JustKind::Input) continue;
    out.false_clauses.push_back(*cl.eq);
  }

  if (out.false_clauses.empty()) return out;
  if (a.size() != 1) throw std::invalid_argument("candidate pairs need exactly one identity in A");
  for (const auto& d : out.false_clauses) {
    if (!limits.filter_pairs) {
      out.candidates.push_back({a.front(), d});
      continue;
    }
    auto f = filter_candidate_pair(a.front(), d);
    if (auto* p = std::get_if<CandidatePair>(&f)) {
      out.candidates.push_back(*p);
    } else {
      out.rejections.push_back(to_string(d) + ": " + std::get<Rejection>(f).reason);
    }
  }
  return out;
}

// ----------------------------------------------------------- persistence

void write_file_atomic(const std::string& path, const std::string& contents) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

}  // namespace

void save_registry(const std::string& dir, const std::vector<AxiomSystem>& systems) {
  fs::create_directories(dir);
  std::string manifest = "# name\tstatus\taxioms\tcountermodel\tprovenance\n";
  for (const auto& s : systems) {
    if (s.name.empty() || s.name.find_first_of("/\t\n") != std::string::npos) {
      throw std::invalid_argument("unusable system name '" + s.name + "'");
    }
    std::string ax;
    for (const auto& e : s.axioms) ax += to_string(e) + "\n";
    const std::string ax_file = s.name + ".ax";
    write_file_atomic((fs::path(dir) / ax_file).string(), ax);
    std::string model_file = "-";
    if (s.countermodel) {
      model_file = s.name + ".model";
      write_file_atomic((fs::path(dir) / model_file).string(), format_model(*s.countermodel));
    }
    manifest += s.name + "\t" + std::string(to_string(s.status)) + "\t" + ax_file + "\t" +
                model_file + "\t" + s.provenance + "\n";
  }
  write_file_atomic((fs::path(dir) / "manifest.tsv").string(), manifest);
}

std::vector<AxiomSystem> load_registry(const std::string& dir) {
  std::istringstream in(read_text(fs::path(dir) / "manifest.tsv"));
  std::vector<AxiomSystem> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split_tabs(line);
    if (f.size() != 5) throw std::runtime_error("manifest line needs 5 fields: " + line);
    AxiomSystem s;
    s.name = f[0];
    auto st = parse_base_status(f[1]);
    if (!st) throw std::runtime_error("unknown status '" + f[1] + "'");
    s.status = *st;
    s.axioms = parse_equation_list(read_text(fs::path(dir) / f[2]));
    if (f[3] != "-") {
      auto models = parse_models(read_text(fs::path(dir) / f[3]));
      if (models.size() != 1) throw std::runtime_error(f[3] + ": expected one model");
      s.countermodel = models.front();
    }
    s.provenance = f[4];
    if (auto why = verify_countermodel(s)) {
      throw std::runtime_error("system " + s.name + ": " + *why);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ------------------------------------------------------------------ hunt

std::vector<std::string> hunt(const std::vector<HuntJob>& jobs_list, const TestLimits& limits,
                              int jobs, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<std::string> lines(jobs_list.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs_list.size()) return;
      try {
        const auto& job = jobs_list[i];
        std::string line = format_verdict_line(job.id, test_base(job.pair, limits));
        write_file_atomic((fs::path(out_dir) / (job.id + ".verdict")).string(), line + "\n");
        lines[i] = std::move(line);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(jobs_list.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  std::string report;
  for (const auto& l : lines) report += l + "\n";
  write_file_atomic((fs::path(out_dir) / "report.txt").string(), report);
  return lines;
}

}  // namespace eqbase
