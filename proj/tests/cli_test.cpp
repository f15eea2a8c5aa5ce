#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dlq/cli.hpp"
#include "fixtures.hpp"

using namespace dlq;
using namespace dlq::test;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result dlq_run(std::vector<std::string> args, const std::string& kb = "fixtures/university.kb") {
  if (!kb.empty()) {
    args.push_back("--kb");
    args.push_back(source_path(kb));
  }
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string header(const Result& r) { return r.err.substr(0, r.err.find('\n')); }

}  // namespace

TEST_CASE("reason subcommands print booleans and exit 0 either way") {
  CHECK(dlq_run({"reason", "sat", ":Person and :Organization"}).out == "false\n");
  CHECK(dlq_run({"reason", "sub", "Thing", "Thing"}).out == "true\n");
  CHECK(dlq_run({"reason", "sub", ":Chair", ":Person"}).out == "true\n");
  CHECK(dlq_run({"reason", "instance", ":bob", ":Person"}).out == "true\n");
  Result chair = dlq_run({"reason", "instance", ":bob", ":Chair"});
  CHECK(chair.code == 0);
  CHECK(chair.out == "false\n");
  CHECK(dlq_run({"reason", "role", ":bob", ":worksFor", ":softlang"}).out == "true\n");
  CHECK(dlq_run({"reason", "role", ":softlang", "inv(:worksFor)", ":bob"}).out == "true\n");
  // The T-Box alone says nothing about bob.
  CHECK(dlq_run({"--mode", "tbox-only", "reason", "instance", ":bob", ":Person"}).out == "false\n");

  Result model = dlq_run({"reason", "sat", ":Chair", "--model", "--output", "json"});
  auto j = nlohmann::json::parse(model.out);
  CHECK(j["result"] == true);
  CHECK(j.contains("model"));
}

TEST_CASE("query type prints resolved concepts or a categorized error") {
  Result ok = dlq_run({"query", "type", "SELECT ?x ?y WHERE { ?y :worksFor ?x . ?x a :ResearchGroup }"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("?x : ") == 0);
  CHECK(ok.out.find("\n?y : ") != std::string::npos);

  Result unsat = dlq_run({"query", "type", "SELECT ?x WHERE { ?x a [:Person and :Organization] }"});
  CHECK(unsat.code == 1);
  CHECK(header(unsat) == "ERROR E-SAT 1:1");

  const std::string spliced = "SELECT ?x WHERE { ?y :worksFor ?x . ?x a :ResearchGroup . $s :worksFor ?x }";
  CHECK(dlq_run({"query", "type", spliced, "--splice", "s=:Employee"}).code == 0);
  CHECK(header(dlq_run({"query", "type", spliced, "--splice", "s=:Organization"})) == "ERROR E-SAT 1:1");
  CHECK(header(dlq_run({"query", "type", spliced, "--strict", "--splice", "s=:Employee"})) == "ERROR E-SUB 1:1");
  CHECK(dlq_run({"query", "type", spliced, "--strict", "--splice", "s=:ResearchAssistant"}).code == 0);

  Result syntax = dlq_run({"query", "type", "SELECT ?x WHERE { ?x a :Person"});
  CHECK(syntax.code == 2);
  CHECK(header(syntax).rfind("ERROR E-SYNTAX ", 0) == 0);
}

TEST_CASE("query run prints tables and treats empty results as success") {
  Result r = dlq_run({"query", "run", "SELECT ?x ?y WHERE { ?y :worksFor ?x . ?x a :ResearchGroup }", "--output", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["vars"] == nlohmann::json::array({"x", "y"}));
  REQUIRE(j["solutions"].size() == 1);
  CHECK(j["solutions"][0]["y"] == I(":bob").str());

  Result empty = dlq_run({"query", "run", "SELECT ?d WHERE { ?d a :Department }"});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("(0 rows)") != std::string::npos);
}

TEST_CASE("lang commands check and run the bundled program") {
  Result check = dlq_run({"lang", "check", source_path("programs/university.dlq")});
  CHECK(check.code == 0);
  CHECK(check.out == "OK researchGroups\nOK supervises\nOK main\n");
  Result run = dlq_run({"lang", "run", source_path("programs/university.dlq")});
  CHECK(run.code == 0);
  CHECK(run.out == "[]\n");
  Result ext = dlq_run({"lang", "run", source_path("programs/university.dlq"), "--output", "json"},
                       "fixtures/university_extended.kb");
  CHECK(ext.out == "[\"" + I(":rg1").str() + "\"]\n");
}

TEST_CASE("the error corpus maps onto categories and exit codes") {
  struct Case {
    const char* file;
    int code;
    const char* category;
  };
  for (const Case& c : {Case{"e_sat", 1, "E-SAT"}, Case{"e_sat_splice", 1, "E-SAT"}, Case{"e_sub", 1, "E-SUB"},
                        Case{"e_access", 1, "E-ACCESS"}, Case{"e_syntax", 2, "E-SYNTAX"}}) {
    CAPTURE(c.file);
    Result r = dlq_run({"lang", "check", source_path(std::string("programs/errors/") + c.file + ".dlq")});
    CHECK(r.code == c.code);
    CHECK(header(r).rfind(std::string("ERROR ") + c.category + " ", 0) == 0);
    CHECK(r.out.empty());
  }
  Result empty = dlq_run({"lang", "run", source_path("programs/errors/e_empty.dlq")});
  CHECK(empty.code == 0);
  CHECK(empty.out == "[]\n");
}

TEST_CASE("runtime and environment failures have their own exit codes") {
  Result missing = dlq_run({"reason", "sub", "Thing", "Thing"}, "fixtures/absent.kb");
  CHECK(missing.code == 4);
  CHECK(header(missing) == "ERROR E-ENV 0:0");
  CHECK(dlq_run({"reason", "sub", "Thing", "Thing"}, "").code == 4);
  CHECK(dlq_run({"lang", "check", "/nonexistent.dlq"}).code == 4);
  CHECK(dlq_run({"reason", "sat", ":Person and"}).code == 2);
}

TEST_CASE("head of an empty list exits with the runtime code") {
  auto path = std::filesystem::temp_directory_path() / "dlq_cli_head_empty.dlq";
  {
    std::ofstream f(path);
    f << "main = head(nil[`Thing`])\n";
  }
  Result r = dlq_run({"lang", "run", path.string()});
  CHECK(r.code == 3);
  CHECK(header(r) == "ERROR E-RUNTIME 1:8");
  std::filesystem::remove(path);
}
