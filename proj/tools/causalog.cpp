// causalog: command-line front end for the causality, abduction and
// delete-propagation solvers. Reports are JSON on stdout, errors on stderr.
//
// Exit codes: 0 success, 1 domain error (or a crosscheck disagreement),
// 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "causalog/abduction.hpp"
#include "causalog/causality.hpp"
#include "causalog/datalog.hpp"
#include "causalog/delprop.hpp"
#include "causalog/error.hpp"
#include "causalog/flownet.hpp"
#include "causalog/oracle.hpp"
#include "causalog/relmodel.hpp"
#include "causalog/treewidth.hpp"
#include "testkit/crosscheck.hpp"
#include "testkit/random_corpus.hpp"

namespace {

using namespace causalog;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parse error tagged with the file it came from.
struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string db;
  std::string query;
  std::string answer;
  std::string tuple;
  std::vector<std::string> obs;
  std::string kind = "minimal";
  bool endogenous_only = false;
  bool exact = false;
  bool timing = false;
  std::size_t random = 0;
  std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw UsageError("missing input file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a over the input texts, for the report header.
std::string digest(const std::vector<std::string>& texts) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& t : texts) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <typename T>
T parse_file(const std::string& path, const std::string& text, T (*parse)(std::string_view)) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw FileParseError(path + ":" + e.what());
  }
}

Tuple parse_answer(const std::string& text) {
  try {
    return parse_tuple(text);
  } catch (const ParseError& e) {
    throw FileParseError(std::string("--answer: ") + e.what());
  }
}

Atom parse_flag_atom(const std::string& flag, const std::string& text) {
  try {
    return parse_atom(text);
  } catch (const ParseError& e) {
    throw FileParseError(flag + ": " + e.what());
  }
}

Json atoms(const AtomSet& s) {
  Json out = Json::array();
  for (const auto& a : s) out.push_back(a.to_string());
  return out;
}

Json family(const AtomFamily& f) {
  Json out = Json::array();
  for (const auto& s : f) out.push_back(atoms(s));
  return out;
}

Json deletions(const std::vector<DeletionSolution>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(Json{{"deleted", atoms(s.deleted)}, {"size", s.deleted.size()}});
  return out;
}

// Loaded inputs shared by most commands.
struct Inputs {
  std::optional<Instance> instance;
  std::optional<Program> program;
  Tuple answer;
  Json echo = Json::object();
};

Inputs load(const Options& o, bool need_db, bool need_query) {
  Inputs in;
  std::vector<std::string> texts;
  if (need_db) {
    auto text = read_file(o.db);
    in.instance = parse_file<Instance>(o.db, text, &parse_instance);
    in.echo["db"] = o.db;
    texts.push_back(std::move(text));
  }
  if (need_query) {
    auto text = read_file(o.query);
    in.program = parse_file<Program>(o.query, text, &parse_program);
    in.echo["query"] = o.query;
    texts.push_back(std::move(text));
    in.answer = parse_answer(o.answer);
    in.echo["answer"] = o.answer;
  }
  in.echo["digest"] = digest(texts);
  return in;
}

Atom required_tuple(const Options& o) {
  if (o.tuple.empty()) throw UsageError("--tuple is required");
  return parse_flag_atom("--tuple", o.tuple);
}

CauseQuery cause_query(const Inputs& in) { return CauseQuery(*in.program, *in.instance, in.answer); }

// The abduction problem described by the inputs: E is the exogenous part of
// the instance and Hyp the endogenous part. Without --obs the observation is
// the query answer itself.
AbductionProblem abduction_problem(const Options& o, const Inputs& in) {
  if (o.obs.empty()) return cdap_of(*in.instance, specialize(*in.program, in.answer));
  std::vector<Atom> obs;
  for (const auto& text : o.obs) obs.push_back(parse_flag_atom("--obs", text));
  return AbductionProblem(*in.program, in.instance->exogenous(), in.instance->endogenous(), std::move(obs));
}

Json cmd_causes(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto q = cause_query(in);
  Json causes = Json::array();
  for (const auto& e : actual_causes(q)) {
    causes.push_back(Json{{"tuple", e.cause.to_string()},
                          {"responsibility", e.responsibility.to_string()},
                          {"contingencies", family(e.contingencies)}});
  }
  return Json{{"count", causes.size()}, {"causes", causes}};
}

Json cmd_responsibility(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto t = required_tuple(o);
  auto q = cause_query(in);
  auto rho = responsibility(q, t);
  return Json{{"tuple", t.to_string()},
              {"actual_cause", rho != Rational::zero()},
              {"responsibility", rho.to_string()}};
}

Json cmd_mrc(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto q = cause_query(in);
  auto mrc = most_responsible_causes(q);
  Json out{{"most_responsible_causes", atoms(mrc)}};
  out["responsibility"] = mrc.empty() ? "0" : responsibility(q, *mrc.begin()).to_string();
  return out;
}

Json cmd_vc_causes(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto q = cause_query(in);
  Json causes = Json::array();
  for (const auto& [t, gammas] : vc_explanations(q)) {
    causes.push_back(Json{{"tuple", t.to_string()}, {"contingencies", family(gammas)}});
  }
  return Json{{"has_vc_cause", !causes.empty()}, {"vc_causes", causes}};
}

Json cmd_abduce(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto ap = abduction_problem(o, in);
  AtomFamily ds;
  for (const auto& d : diagnoses(ap)) ds.insert(d.delta);
  return Json{{"diagnoses", family(ds)}, {"relevant", atoms(relevant_hypotheses(ap))}};
}

Json cmd_relevance(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto h = required_tuple(o);
  auto ap = abduction_problem(o, in);
  auto width = tree_decomposition(hypergraph_of(ap.edb()), DecompositionMode::kHeuristic).second.width;
  return Json{{"hypothesis", h.to_string()},
              {"relevant", is_relevant(ap, h)},
              {"guarded", is_guarded(ap.program())},
              {"edb_width", width}};
}

Json cmd_necessary_sets(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  auto ap = abduction_problem(o, in);
  AtomFamily sets;
  for (const auto& n : necessary_hypothesis_sets(ap)) sets.insert(n.atoms);
  return Json{{"necessary_sets", family(sets)}};
}

Json cmd_delprop(const Options& o, Json& echo) {
  auto in = load(o, true, true);
  echo = in.echo;
  echo["kind"] = o.kind;
  echo["scope"] = o.endogenous_only ? "endogenous-only" : "all";
  DeletionTask task(*in.program, *in.instance, in.answer,
                    o.endogenous_only ? DeletionScope::kEndogenousOnly : DeletionScope::kAll);
  if (o.kind == "view-safe") {
    auto all = minimal_view_safe_deletions(task);
    Json out{{"status", all.empty() ? "no solution" : "solved"}};
    out["solution"] = all.empty() ? Json() : deletions({all.front()}).front();
    out["solutions"] = deletions(all);
    return out;
  }
  auto sols = o.kind == "minimum" ? minimum_source_deletions(task) : minimal_source_deletions(task);
  return Json{{"status", sols.empty() ? "no solution" : "solved"}, {"solutions", deletions(sols)}};
}

Json cmd_treewidth(const Options& o, Json& echo) {
  auto in = load(o, true, false);
  echo = in.echo;
  auto h = hypergraph_of(*in.instance);
  auto [td, report] = tree_decomposition(h, o.exact ? DecompositionMode::kExact : DecompositionMode::kHeuristic);
  Json bags = Json::array();
  for (const auto& b : td.bags) {
    Json bag = Json::array();
    for (const auto& v : b) bag.push_back(v.to_string());
    bags.push_back(bag);
  }
  Json edges = Json::array();
  for (auto [a, b] : td.edges) edges.push_back(Json::array({a, b}));
  return Json{{"vertices", h.vertices.size()}, {"hyperedges", h.hyperedges.size()},
              {"width", report.width},     {"exact", report.is_exact},
              {"bags", bags},              {"tree_edges", edges}};
}

Json cmd_shape(const Options& o, Json& echo) {
  auto in = load(o, false, true);
  echo = in.echo;
  const auto& p = *in.program;
  Json out{{"rules", p.rules().size()}, {"guarded", is_guarded(p)}};
  if (p.rules().size() != 1) {
    out["conjunctive"] = false;
    out["linear"] = false;
    out["chain_join"] = false;
    return out;
  }
  auto shape = query_shape(p);
  Json order = Json::array();
  for (auto i : shape.witness_order) order.push_back(p.rules().front().body[i].to_string());
  out["conjunctive"] = true;
  out["linear"] = shape.linear;
  out["chain_join"] = shape.chain_join;
  out["witness_order"] = order;
  return out;
}

Json cmd_crosscheck(const Options& o, Json& echo, bool& agree) {
  std::vector<testkit::CorpusCase> cases;
  if (o.random > 0) {
    echo = Json{{"random", o.random}, {"seed", o.seed}};
    testkit::RandomCorpus corpus(o.seed);
    for (std::size_t i = 0; i < o.random; ++i) cases.push_back(corpus.next());
  } else {
    auto in = load(o, true, true);
    echo = in.echo;
    std::set<Tuple> answers;
    if (o.answer.empty() && !in.program->is_boolean()) {
      answers = evaluate(*in.program, in.instance->all()).answers();
    } else {
      answers.insert(in.answer);
    }
    for (const auto& a : answers) cases.push_back({*in.program, *in.instance, a, "input"});
  }
  std::size_t checks = 0;
  Json mismatches = Json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (const auto& r : testkit::crosscheck_case(cases[i])) {
      ++checks;
      if (r.ok) continue;
      mismatches.push_back(Json{{"case", i},
                                {"answer", to_string(cases[i].answer)},
                                {"check", r.name},
                                {"kind", r.group == testkit::CheckGroup::kOracle ? "oracle" : "bridge"},
                                {"detail", r.detail}});
    }
  }
  agree = mismatches.empty();
  return Json{{"cases", cases.size()},
              {"checks", checks},
              {"status", agree ? "agree" : "disagree"},
              {"mismatches", mismatches}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query causality, abduction and delete propagation over Datalog"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--timing", o.timing, "Add solver wall time to the report");

  auto common = [&](CLI::App* sub, bool tuple) {
    sub->add_option("--db", o.db, "Instance file (.cdb)")->required();
    sub->add_option("--query", o.query, "Program file (.dl)")->required();
    sub->add_option("--answer", o.answer, "Answer tuple, comma separated; empty for boolean queries");
    if (tuple) sub->add_option("--tuple", o.tuple, "A ground atom, e.g. Author(John,TODS)")->required();
    sub->fallthrough();
  };
  auto abduction = [&](CLI::App* sub) {
    sub->add_option("--obs", o.obs, "Observed atom (repeatable); defaults to the query answer");
  };

  std::map<std::string, std::function<Json(Json&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<Json(const Options&, Json&)> f) {
    auto* sub = app.add_subcommand(name, help);
    handlers[name] = [f, &o](Json& echo) { return f(o, echo); };
    return sub;
  };

  common(add("causes", "Actual causes with contingencies and responsibilities", cmd_causes), false);
  common(add("responsibility", "Responsibility of one tuple", cmd_responsibility), true);
  common(add("mrc", "Most responsible causes", cmd_mrc), false);
  common(add("vc-causes", "View-conditioned causes", cmd_vc_causes), false);
  auto* abduce = add("abduce", "Diagnoses with E = exogenous and Hyp = endogenous facts", cmd_abduce);
  common(abduce, false);
  abduction(abduce);
  auto* relevance = add("relevance", "Whether a hypothesis is relevant", cmd_relevance);
  common(relevance, true);
  abduction(relevance);
  auto* necessary = add("necessary-sets", "Necessary-hypothesis sets", cmd_necessary_sets);
  common(necessary, false);
  abduction(necessary);
  auto* delprop = add("delprop", "Delete propagation of one view tuple", cmd_delprop);
  common(delprop, false);
  delprop->add_option("--kind", o.kind, "minimal, minimum or view-safe")
      ->check(CLI::IsMember({"minimal", "minimum", "view-safe"}));
  delprop->add_flag("--endogenous-only", o.endogenous_only, "Delete endogenous tuples only");

  auto* tw = add("treewidth", "Tree decomposition of the instance hypergraph", cmd_treewidth);
  tw->add_option("--db", o.db, "Instance file (.cdb)")->required();
  tw->add_flag("--exact", o.exact, "Exact width (at most 12 constants)");
  tw->fallthrough();

  auto* shape = add("shape", "Linearity, chain joins and guardedness of a program", cmd_shape);
  shape->add_option("--query", o.query, "Program file (.dl)")->required();
  shape->fallthrough();

  bool agree = true;
  auto* cross = app.add_subcommand("crosscheck", "Compare solvers, oracles and reductions");
  handlers["crosscheck"] = [&](Json& echo) { return cmd_crosscheck(o, echo, agree); };
  cross->add_option("--db", o.db, "Instance file (.cdb)");
  cross->add_option("--query", o.query, "Program file (.dl)");
  cross->add_option("--answer", o.answer, "Answer tuple; all answers when omitted");
  cross->add_option("--random", o.random, "Check this many generated cases instead of files");
  cross->add_option("--seed", o.seed, "Generator seed");
  cross->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  try {
    if (sub->get_name() == "crosscheck" && o.random == 0 && (o.db.empty() || o.query.empty())) {
      throw UsageError("crosscheck needs --db and --query, or --random N");
    }
    Json echo;
    auto start = std::chrono::steady_clock::now();
    Json results = handlers.at(sub->get_name())(echo);
    auto elapsed = std::chrono::steady_clock::now() - start;
    Json report{{"command", sub->get_name()}, {"inputs", echo}, {"results", results}};
    if (o.timing) report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    std::cout << report.dump(2) << "\n";
    return agree ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "causalog: " << e.what() << "\n";
    return 2;
  } catch (const FileParseError& e) {
    std::cerr << "causalog: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "causalog: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "causalog: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "causalog: " << e.what() << "\n";
    return 1;
  }
}
