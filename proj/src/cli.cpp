#include "dlq/cli.hpp"

#include <filesystem>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlq/kb_text.hpp"
#include "dlq/lang/lang.hpp"
#include "dlq/query_eval.hpp"
#include "dlq/query_typer.hpp"
#include "dlq/reasoner.hpp"

namespace dlq::cli {

namespace {

using Json = nlohmann::ordered_json;

// Carries an exit code and a header category out of a command.
struct Failure {
  int code;
  std::string category;
  SourcePos pos;
  std::string message;
};

struct Config {
  std::string kb_path;
  std::string mode = "full";
  std::string output = "text";

  bool json() const { return output == "json"; }
  bool tbox_only() const { return mode == "tbox-only"; }
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw Failure{kEnvironment, "E-ENV", {0, 0}, what + " not given"};
  if (!std::filesystem::is_regular_file(path))
    throw Failure{kEnvironment, "E-ENV", {0, 0}, "cannot read " + what + " '" + path + "'"};
}

KnowledgeBase load_kb(const Config& cfg) {
  require_file(cfg.kb_path, "knowledge base (--kb)");
  return load_kb_file(cfg.kb_path);
}

// The reasoner used for checking: the T-Box alone in tbox-only mode.
Reasoner checking_reasoner(const Config& cfg, const KnowledgeBase& k) {
  return Reasoner(cfg.tbox_only() ? k.tbox_only() : k);
}

void print_bool(const Config& cfg, std::ostream& out, const std::string& command, bool result,
                const std::optional<std::string>& model = std::nullopt) {
  if (cfg.json()) {
    Json j{{"command", command}, {"result", result}};
    if (model) j["model"] = *model;
    out << j.dump() << "\n";
    return;
  }
  out << (result ? "true" : "false") << "\n";
  if (model) out << *model;
}

std::string outcome_category(const ValidationOutcome& o) {
  if (std::holds_alternative<Unsatisfiable>(o)) return "E-SAT";
  if (const auto* m = std::get_if<SpliceMismatch>(&o)) return m->mode == ValidationMode::Strict ? "E-SUB" : "E-SAT";
  return "E-TYPE";
}

std::map<SpliceId, Concept> parse_splices(const std::vector<std::string>& specs, const PrefixTable& prefixes) {
  std::map<SpliceId, Concept> out;
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Failure{kParseError, "E-SYNTAX", {1, 1}, "--splice expects name=TYPE, got '" + spec + "'"};
    std::string name = spec.substr(0, eq);
    if (name.front() == '$') name.erase(0, 1);
    out.insert_or_assign(SpliceId{name}, parse_concept(spec.substr(eq + 1), prefixes));
  }
  return out;
}

// Validates `sq` and returns the resolved types, or throws a Failure.
ResolvedPhi validate(Reasoner& r, const SelectQuery& sq, const std::map<SpliceId, Concept>& splices, bool strict,
                     const PrefixTable& prefixes) {
  ValidationOutcome o = validate_query(r, sq, splices, strict ? ValidationMode::Strict : ValidationMode::NonStrict);
  if (const auto* ok = std::get_if<Valid>(&o)) return ok->phi;
  throw Failure{kTypeError, outcome_category(o), {1, 1}, describe_outcome(o, prefixes)};
}

class Commands {
 public:
  Commands(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void reason_sat(const std::string& concept_text, bool model) {
    KnowledgeBase k = load_kb(cfg_);
    Reasoner r = checking_reasoner(cfg_, k);
    SatResult s = r.is_satisfiable(parse_concept(concept_text, k.prefixes));
    std::optional<std::string> summary;
    if (model && s.witness) summary = describe_model(*s.witness, k.prefixes);
    print_bool(cfg_, out_, "sat", s.satisfiable, summary);
  }

  void reason_sub(const std::string& c, const std::string& d) {
    KnowledgeBase k = load_kb(cfg_);
    Reasoner r = checking_reasoner(cfg_, k);
    print_bool(cfg_, out_, "sub", r.entails_subsumption(parse_concept(c, k.prefixes), parse_concept(d, k.prefixes)));
  }

  void reason_instance(const std::string& a, const std::string& c) {
    KnowledgeBase k = load_kb(cfg_);
    Reasoner r = checking_reasoner(cfg_, k);
    print_bool(cfg_, out_, "instance", r.entails_instance(parse_iri(a, k.prefixes), parse_concept(c, k.prefixes)));
  }

  void reason_role(const std::string& a, const std::string& role, const std::string& b) {
    KnowledgeBase k = load_kb(cfg_);
    Reasoner r = checking_reasoner(cfg_, k);
    print_bool(cfg_, out_, "role",
               r.entails_role(parse_iri(a, k.prefixes), parse_role(role, k.prefixes), parse_iri(b, k.prefixes)));
  }

  void query_type(const std::string& text, bool strict, const std::vector<std::string>& splice_specs) {
    KnowledgeBase k = load_kb(cfg_);
    SelectQuery sq = parse_query(text, k.prefixes);
    auto splices = parse_splices(splice_specs, k.prefixes);
    Reasoner r = checking_reasoner(cfg_, k);
    ResolvedPhi phi = validate(r, sq, splices, strict, k.prefixes);
    if (cfg_.json()) {
      Json types = Json::object();
      for (const auto& [v, c] : phi) types[v.name] = print_concept(c, k.prefixes);
      out_ << Json{{"valid", true}, {"types", types}}.dump() << "\n";
      return;
    }
    for (const auto& [v, c] : phi) out_ << "?" << v.name << " : " << print_concept(c, k.prefixes) << "\n";
  }

  void query_run(const std::string& text, bool strict) {
    KnowledgeBase k = load_kb(cfg_);
    SelectQuery sq = parse_query(text, k.prefixes, {}, false);
    Reasoner checker = checking_reasoner(cfg_, k);
    validate(checker, sq, {}, strict, k.prefixes);
    Reasoner r(k);
    ResultTable t = project(eval_algebraic(r, sq.body), sq.select_vars);
    out_ << (cfg_.json() ? table_to_json(t) + "\n" : table_to_text(t, k.prefixes));
  }

  void lang_check(const std::string& path) {
    KnowledgeBase k = load_kb(cfg_);
    lang::Program p = load(path);
    lang::typecheck(k, p, mode());
    if (cfg_.json()) {
      Json defs = Json::array();
      for (const auto& d : p.defs) defs.push_back(d.name);
      out_ << Json{{"ok", true}, {"definitions", defs}}.dump() << "\n";
      return;
    }
    for (const auto& d : p.defs) out_ << "OK " << d.name << "\n";
    out_ << "OK main\n";
  }

  void lang_run(const std::string& path) {
    KnowledgeBase k = load_kb(cfg_);
    lang::Program p = load(path);
    lang::typecheck(k, p, mode());
    lang::Value v = lang::evaluate(k, p);
    out_ << (cfg_.json() ? lang::value_to_json(v) : lang::print_value(v, p.prefixes)) << "\n";
  }

 private:
  lang::CheckMode mode() const { return cfg_.tbox_only() ? lang::CheckMode::TboxOnly : lang::CheckMode::Full; }

  lang::Program load(const std::string& path) {
    require_file(path, "program");
    return lang::load_program_file(path);
  }

  const Config& cfg_;
  std::ostream& out_;
};

void report(std::ostream& err, const std::string& category, SourcePos pos, const std::string& message) {
  err << "ERROR " << category << " " << pos.line << ":" << pos.column << "\n" << message << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Description-logic reasoning, typed queries and programs over a knowledge base", "dlq"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--kb", cfg.kb_path, "knowledge base file (.kb)");
  app.add_option("--mode", cfg.mode, "full or tbox-only")->check(CLI::IsMember({"full", "tbox-only"}));
  app.add_option("--output", cfg.output, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::function<void(Commands&)> action;
  std::string a, b, c;
  bool model = false, strict = false;
  std::vector<std::string> splices;

  auto* reason = app.add_subcommand("reason", "entailment checks")->require_subcommand(1);
  auto* sat = reason->add_subcommand("sat", "is CONCEPT satisfiable");
  sat->add_option("concept", a)->required();
  sat->add_flag("--model", model, "print a witness model");
  sat->callback([&] { action = [&](Commands& x) { x.reason_sat(a, model); }; });
  auto* sub = reason->add_subcommand("sub", "is C subsumed by D");
  sub->add_option("C", a)->required();
  sub->add_option("D", b)->required();
  sub->callback([&] { action = [&](Commands& x) { x.reason_sub(a, b); }; });
  auto* inst = reason->add_subcommand("instance", "is IRI an instance of CONCEPT");
  inst->add_option("iri", a)->required();
  inst->add_option("concept", b)->required();
  inst->callback([&] { action = [&](Commands& x) { x.reason_instance(a, b); }; });
  auto* role = reason->add_subcommand("role", "is (A, B) in ROLE");
  role->add_option("A", a)->required();
  role->add_option("role", b)->required();
  role->add_option("B", c)->required();
  role->callback([&] { action = [&](Commands& x) { x.reason_role(a, b, c); }; });

  auto* query = app.add_subcommand("query", "typed query commands")->require_subcommand(1);
  auto* qtype = query->add_subcommand("type", "infer and validate variable types");
  qtype->add_option("query", a)->required();
  qtype->add_flag("--strict", strict, "strict splice validation");
  qtype->add_option("--splice", splices, "splice type as name=TYPE");
  qtype->callback([&] { action = [&](Commands& x) { x.query_type(a, strict, splices); }; });
  auto* qrun = query->add_subcommand("run", "validate and evaluate a query");
  qrun->add_option("query", a)->required();
  qrun->add_flag("--strict", strict, "strict validation");
  qrun->callback([&] { action = [&](Commands& x) { x.query_run(a, strict); }; });

  auto* lang_cmd = app.add_subcommand("lang", "program commands")->require_subcommand(1);
  auto* check = lang_cmd->add_subcommand("check", "typecheck a program");
  check->add_option("program", a)->required();
  check->callback([&] { action = [&](Commands& x) { x.lang_check(a); }; });
  auto* lrun = lang_cmd->add_subcommand("run", "typecheck and run a program");
  lrun->add_option("program", a)->required();
  lrun->callback([&] { action = [&](Commands& x) { x.lang_run(a); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kEnvironment;
  }

  Commands commands(cfg, out);
  try {
    action(commands);
    return kOk;
  } catch (const Failure& f) {
    report(err, f.category, f.pos, f.message);
    return f.code;
  } catch (const ParseError& e) {
    report(err, "E-SYNTAX", e.pos(), e.message());
    return kParseError;
  } catch (const lang::TypeError& e) {
    report(err, e.category(), e.pos(), e.message());
    return kTypeError;
  } catch (const lang::RuntimeError& e) {
    report(err, "E-RUNTIME", e.pos(), e.message());
    return kRuntimeError;
  } catch (const std::exception& e) {
    report(err, "E-RUNTIME", {0, 0}, e.what());
    return kRuntimeError;
  }
}

}  // namespace dlq::cli
