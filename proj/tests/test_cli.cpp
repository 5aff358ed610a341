#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "mvbasis/cli.hpp"
#include "mvbasis/errors.hpp"

using namespace mvbasis;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mvbasis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json term(const char* word, const char* coeff) { return {{"word", word}, {"coeff", coeff}}; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("vector specs") {
    const TensorVector v = cli::parse_vector_spec("x:-+ + 2*x:+-");
    CHECK(v.basis() == BasisTag::x);
    CHECK(v.coeff(Word::parse("+-")) == 2);
    CHECK(cli::parse_vector_spec("-1/2*y:+- - y:-+").coeff(Word::parse("-+")) == -1);
    CHECK(cli::parse_vector_spec("0", 3).length() == 3);
    CHECK(cli::parse_vector_spec("x:+- - x:+-").is_zero());
    CHECK_THROWS_AS(cli::parse_vector_spec("x:-+ + y:+-"), ParseError);
    CHECK_THROWS_AS(cli::parse_vector_spec("x:-+ + x:+"), ParseError);
    CHECK_THROWS_AS(cli::parse_vector_spec("x:-+", 3), ParseError);
    CHECK_THROWS_AS(cli::parse_vector_spec("z:-+"), ParseError);
    CHECK_THROWS_AS(cli::parse_vector_spec("x:-+ +x:+-"), ParseError);
    CHECK_THROWS_AS(cli::parse_vector_spec("x:-a"), ParseError);
    CHECK_THROWS_AS(cli::parse_vector_spec("1/0*x:-+"), ParseError);
  }

  TEST_CASE("expand") {
    Run r = run({"expand", "x:-+"});
    CHECK(r.code == 0);
    CHECK(r.parsed() == json{{"n", 2}, {"basis", "y"}, {"terms", {term("-+", "1"), term("+-", "1")}}});
    r = run({"expand", "y:-+"});
    CHECK(r.parsed()["terms"] == json{term("-+", "1"), term("+-", "-1")});
    r = run({"expand", "0", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.parsed()["terms"] == json::array());
    r = run({"expand", "x:-+ + x:+-", "--to", "x"});
    CHECK(r.parsed()["basis"] == "x");
    r = run({"--format", "csv", "expand", "x:-+"});
    CHECK(r.out == "word,coeff\n-+,1\n+-,1\n");
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({"expand", "x:-+ + x:+"}).code == 2);
    CHECK(run({"expand", "q:-+"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"charts", "--v", "+-", "--w", "-+-"}).code == 2);
    CHECK(run({"charts", "--v", "++", "--w", "--", "--mode", "tilde"}).code == 2);
    CHECK(run({"cartan", "--shape", "2,x"}).code == 2);
    CHECK(run({"table", "--n", "30"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("table") {
    const Run r = run({"table", "--n", "2"});
    CHECK(r.code == 0);
    const json t = r.parsed();
    REQUIRE(t.size() == 4);
    CHECK(t[1]["word"] == "-+");
    CHECK(t[1]["y_in_x"] == json{term("-+", "1"), term("+-", "-1")});
    CHECK(t[1]["x_in_y"] == json{term("-+", "1"), term("+-", "1")});
  }

  TEST_CASE("cartan") {
    Run r = run({"cartan", "--shape", "2"});
    CHECK(r.code == 0);
    json j = r.parsed();
    CHECK(j["shape"] == json{2});
    CHECK(j["basis"].size() == 3);
    CHECK(j["basis"][1]["blocks"] == json{"+-"});
    CHECK(j["basis"][1]["vector"] == json{term("-+", "1/2"), term("+-", "1/2")});
    r = run({"cartan", "--shape", "2,1"});
    CHECK(r.parsed()["basis"].size() == 6);
  }

  TEST_CASE("charts") {
    Run r = run({"charts", "--v", "+-", "--w", "-+", "--mode", "transition", "--print-poly"});
    CHECK(r.code == 0);
    json j = r.parsed();
    CHECK(j["pair"] == json{{"v", "+-"}, {"w", "-+"}});
    CHECK(j["passed"] == true);
    CHECK(j["polynomials"]["transition"][0]["b"] == "(1)/(a1)");
    CHECK(j["polynomials"]["transition"][1]["b"] == "x1*a1 - x2*a1 - a1^2*a2");
    for (const auto& c : j["checks"]) CHECK(c["status"] != "fail");

    r = run({"charts", "--v", "+-", "--w", "-+", "--mode", "tilde", "--print-poly"});
    j = r.parsed();
    CHECK(j["polynomials"]["tilde"]["c_last"] == "-x + a1*a2");
    CHECK(j["polynomials"]["tilde"]["states"][0]["P"] == "z - x");

    r = run({"charts", "--v", "++--", "--w", "-+-+"});
    CHECK(r.code == 0);
    bool saw_rule = false;
    j = r.parsed();
    for (const auto& c : j["checks"]) saw_rule = saw_rule || c["name"] == "rule.coefficient";
    CHECK(saw_rule);
    r = run({"--format", "csv", "charts", "--v", "+-", "--w", "-+", "--mode", "transition"});
    CHECK(r.out.rfind("name,status,cases,detail\n", 0) == 0);
  }

  TEST_CASE("word") {
    const json j = run({"word", "--w", "+-"}).parsed();
    CHECK(j["factorization"] == json{{"r", 1}, {"s", 1}, {"blocks", {"", "", ""}}, {"sig_positions", {1, 2}}});
    CHECK(j["e"] == "++");
    CHECK(j["f"] == "--");
  }

  TEST_CASE("verify suites") {
    Run r = run({"verify", "--suite", "words", "--n-max", "0"});
    CHECK(r.code == 0);
    CHECK(r.parsed()["passed"] == true);
    r = run({"verify", "--suite", "theorem", "--n-max", "8"});
    CHECK(r.code == 0);
    for (const char* suite : {"words", "basis", "rep"}) {
      r = run({"verify", "--suite", suite, "--n-max", "5"});
      INFO(suite << r.out);
      CHECK(r.code == 0);
    }
    r = run({"verify", "--suite", "charts", "--n-max", "3", "--random", "3", "--seed", "9"});
    CHECK(r.code == 0);
    const json j = r.parsed();
    bool random_seen = false;
    for (const auto& c : j["checks"]) random_seen = random_seen || c["name"] == "random.transition.determinant";
    CHECK(random_seen);
    // same seed, same output
    CHECK(run({"verify", "--suite", "charts", "--n-max", "3", "--random", "3", "--seed", "9"}).out == r.out);
  }
}
