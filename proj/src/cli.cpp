#include "mvbasis/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>

#include "mvbasis/basis.hpp"
#include "mvbasis/charts.hpp"
#include "mvbasis/errors.hpp"
#include "mvbasis/rep.hpp"

namespace mvbasis::cli {

using json = nlohmann::ordered_json;

namespace {

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_blanks() {
    while (pos < text.size() && is_blank(text[pos])) ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("vector spec: " + what + " at offset " + std::to_string(pos) + " in \"" +
                     std::string(text) + "\"");
  }
};

// [sign] [coeff '*'] basis ':' word
void parse_term(Cursor& c, Scalar sign, std::optional<BasisTag>& basis, std::optional<std::size_t>& length,
                std::vector<std::pair<Word, Scalar>>& out) {
  if (!c.done() && (c.peek() == '-' || c.peek() == '+')) {
    if (c.peek() == '-') sign = -sign;
    ++c.pos;
  }
  Scalar coeff = 1;
  const std::size_t star = c.text.find('*', c.pos);
  const std::size_t colon = c.text.find(':', c.pos);
  if (star != std::string_view::npos && (colon == std::string_view::npos || star < colon)) {
    coeff = parse_scalar(c.text.substr(c.pos, star - c.pos));
    c.pos = star + 1;
  }
  if (c.done() || (c.peek() != 'x' && c.peek() != 'y')) c.fail("expected 'x:' or 'y:'");
  const BasisTag tag = c.peek() == 'x' ? BasisTag::x : BasisTag::y;
  ++c.pos;
  if (c.done() || c.peek() != ':') c.fail("expected ':' after the basis letter");
  ++c.pos;
  const std::size_t start = c.pos;
  while (!c.done() && (c.peek() == '+' || c.peek() == '-')) ++c.pos;
  if (!c.done() && !is_blank(c.peek())) c.fail("unexpected character in word");
  const Word w = Word::parse(c.text.substr(start, c.pos - start));
  if (basis && *basis != tag) c.fail("terms mix the x and y bases");
  if (length && *length != w.size()) c.fail("terms have different lengths");
  basis = tag;
  length = w.size();
  out.emplace_back(w, sign * coeff);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string terms_text(const TensorVector& v) {
  std::string s;
  for (const auto& [w, c] : v.terms()) {
    if (!s.empty()) s += ' ';
    s += to_string(c) + "*" + w.to_string();
  }
  return s;
}

void write_report_csv(const Report& r, std::ostream& out) {
  out << "name,status,cases,detail\n";
  for (const CheckResult& c : r.checks) {
    out << csv_field(c.name) << ',' << to_string(c.status) << ',' << c.cases << ',' << csv_field(c.detail) << '\n';
  }
}

Report merge_lengths(std::size_t from, std::size_t to, const std::function<Report(std::size_t)>& check) {
  std::vector<Report> parts;
  std::vector<std::string> labels;
  for (std::size_t n = from; n <= to; ++n) {
    parts.push_back(check(n));
    labels.push_back("n=" + std::to_string(n));
  }
  return merge_by_name(parts, labels);
}

void compositions(std::size_t n, std::vector<std::size_t>& prefix, std::vector<Shape>& out) {
  if (n == 0) {
    if (!prefix.empty()) out.push_back(Shape{prefix});
    return;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    prefix.push_back(k);
    compositions(n - k, prefix, out);
    prefix.pop_back();
  }
}

Report basis_suite(std::size_t n_max) {
  Report r = check_characterization(n_max, std::min<std::size_t>(n_max, 4));
  r.append(merge_lengths(0, n_max, check_transition_matrix));
  r.append(merge_lengths(0, n_max, check_factor_product));
  r.append(merge_lengths(0, n_max, check_round_trip));
  if (n_max >= 1) {
    std::vector<Report> parts;
    for (const Word& w : enumerate_words(n_max)) {
      for (std::size_t n2 = 0; n2 < n_max; ++n2) parts.push_back(check_truncation(w, {1, n2, n_max - 1 - n2}));
    }
    r.append(merge_by_name(parts, {}));
  }
  return r;
}

Report rep_suite(std::size_t n_max) {
  Report r = merge_lengths(1, n_max, check_crystal_compat);
  r.append(merge_lengths(1, n_max, check_filtration_stability));
  r.append(merge_lengths(0, n_max, check_layer_dimensions));
  r.append(merge_lengths(0, n_max / 2, check_invariants));
  r.append(merge_lengths(1, n_max, check_cartan_projection));
  std::vector<Shape> shapes;
  std::vector<std::size_t> prefix;
  for (std::size_t n = 1; n <= std::min<std::size_t>(n_max, 5); ++n) compositions(n, prefix, shapes);
  std::vector<Report> parts;
  for (const Shape& s : shapes) parts.push_back(check_shape_basis(s));
  if (!parts.empty()) r.append(merge_by_name(parts, {}));
  return r;
}

// charts --mode verify also checks the coefficient rule for the pair when it applies.
Report rule_checks(const Word& v, const Word& w) {
  Report r;
  if (w.empty() || w.at(1) != Letter::minus || weight(v) != weight(w)) return r;
  CheckBuilder rule("rule.coefficient");
  const Scalar expected = first_letter_expansion(w).coeff(v);
  const Scalar got = coefficient_rule(v, w);
  rule.expect(got == expected, "rule " + to_string(got) + " expansion " + to_string(expected));
  rule.set_detail("coefficient " + to_string(got));
  r.checks.push_back(rule.finish());
  if (v.at(1) == Letter::plus && v.size() >= 2) {
    const PathProfile pv = path_profile(v);
    const PathProfile pw = path_profile(w);
    bool above = true;
    for (std::size_t j = 1; j < w.size(); ++j) above = above && pv.d[j] > pw.d[j];
    if (above) {
      CheckBuilder incl("rule.inclusion");
      const bool inc = inclusion_predicate(v, w);
      incl.expect(inc == (expected == 1), std::string("predicate ") + (inc ? "true" : "false"));
      incl.set_detail(inc ? "included" : "not included");
      r.checks.push_back(incl.finish());
    }
  }
  return r;
}

struct Options {
  std::string format = "json";
  std::size_t n = 0;
  bool n_given = false;
  std::size_t n_max = 5;
  std::string suite;
  std::string v, w, mode = "verify", shape, spec, to;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t random = 0;
  bool print_poly = false;
};

int cmd_expand(const Options& o, std::ostream& out) {
  const TensorVector in = parse_vector_spec(o.spec, o.n_given ? std::optional(o.n) : std::nullopt);
  BasisTag target = other(in.basis());
  if (!o.to.empty()) target = o.to == "x" ? BasisTag::x : BasisTag::y;
  TensorVector result = in;
  if (target != in.basis()) result = target == BasisTag::y ? expand_in_y(in) : expand_in_x(in);
  if (o.format == "csv") {
    out << "word,coeff\n";
    for (const auto& [w, c] : result.terms()) out << w.to_string() << ',' << to_string(c) << '\n';
  } else {
    out << vector_json(result).dump(2) << '\n';
  }
  return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
  Report r = run_suite(o.suite, o.n_max, o.seed, o.threads);
  if (o.suite == "charts" && o.random > 0) {
    ChartsVerifyOptions c;
    c.n_max = 0;
    c.random_n = o.n_max + 1;
    c.random_count = o.random;
    c.seed = o.seed;
    c.threads = o.threads;
    Report extra = verify_transitions(c);
    for (CheckResult& ch : extra.checks) ch.name = "random." + ch.name;
    r.append(extra);
  }
  if (o.format == "csv") {
    write_report_csv(r, out);
  } else {
    json j = report_json(r);
    j["suite"] = o.suite;
    j["n_max"] = o.n_max;
    j["seed"] = o.seed;
    out << j.dump(2) << '\n';
  }
  return r.passed() ? exit_ok : exit_failed;
}

int cmd_table(const Options& o, std::ostream& out) {
  if (o.format == "csv") out << "word,y_in_x,x_in_y\n";
  json rows = json::array();
  for (const Word& w : enumerate_words(o.n)) {
    if (o.format == "csv") {
      out << w.to_string() << ',' << terms_text(y_in_x(w)) << ',' << terms_text(x_in_y(w)) << '\n';
    } else {
      rows.push_back({{"word", w.to_string()}, {"y_in_x", terms_json(y_in_x(w))}, {"x_in_y", terms_json(x_in_y(w))}});
    }
  }
  if (o.format != "csv") out << rows.dump(2) << '\n';
  return exit_ok;
}

int cmd_cartan(const Options& o, std::ostream& out) {
  const Shape shape = Shape::parse(o.shape);
  const std::vector<ShapeBasisVector> basis = mv_basis_of_shape(shape);
  if (o.format == "csv") {
    out << "index,blocks,word,coeff\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::string blocks;
      for (const Word& b : basis[i].index) blocks += (blocks.empty() ? "" : " ") + b.to_string();
      for (const auto& [w, c] : basis[i].vector.terms()) {
        out << i << ',' << blocks << ',' << w.to_string() << ',' << to_string(c) << '\n';
      }
    }
    return exit_ok;
  }
  json entries = json::array();
  for (const ShapeBasisVector& b : basis) {
    json blocks = json::array();
    for (const Word& w : b.index) blocks.push_back(w.to_string());
    entries.push_back({{"blocks", blocks}, {"vector", terms_json(b.vector)}});
  }
  out << json{{"shape", shape.parts}, {"basis", entries}}.dump(2) << '\n';
  return exit_ok;
}

int cmd_charts(const Options& o, std::ostream& out, std::ostream& err) {
  const Word v = Word::parse(o.v);
  const Word w = Word::parse(o.w);
  if (v.size() != w.size()) throw ParseError("--v and --w must have the same length");
  if (v.empty()) throw ParseError("--v and --w must be nonempty");
  const bool parallel = is_parallel_pair(v, w);
  if (o.mode == "tilde" && !parallel) {
    err << "tilde mode needs a parallel pair: v = +u-, w = -u+\n";
    return exit_usage;
  }

  Report r;
  json polys;
  if (o.mode == "transition" || o.mode == "verify") {
    r.append(check_transition(v, w));
    if (o.print_poly) {
      json states = json::array();
      for (const TransitionState& s : transition_sequence(v, w)) {
        states.push_back({{"ell", s.ell},
                          {"b", s.b.to_string()},
                          {"f", s.f_den.to_string()},
                          {"P", s.M.p.to_string()},
                          {"Q", s.M.q.to_string()},
                          {"R", s.M.r.to_string()},
                          {"S", s.M.s.to_string()}});
      }
      polys["transition"] = states;
    }
  }
  if (parallel && (o.mode == "tilde" || o.mode == "verify")) {
    const ParallelCase pc = ParallelCase::make(v, w);
    r.append(check_induc_congruences(pc));
    r.append(check_valtilde(pc));
    r.append(check_prepnaka(pc));
    if (pc.n() <= 5) r.append(elimination_demo(pc));
    if (o.print_poly) {
      const TildeSequence seq = tilde_sequence(pc);
      json states = json::array();
      for (const TildeState& s : seq.states) {
        json st{{"ell", s.ell}, {"P", s.P.to_string()}, {"Q", s.Q.to_string()}};
        if (s.c) st["c"] = s.c->to_string();
        states.push_back(st);
      }
      polys["tilde"] = {{"states", states}, {"c_last", seq.c_last.to_string()}};
    }
  }
  if (o.mode == "verify") r.append(rule_checks(v, w));

  if (o.format == "csv") {
    write_report_csv(r, out);
  } else {
    json j{{"pair", {{"v", v.to_string()}, {"w", w.to_string()}}}, {"mode", o.mode}};
    const json rep = report_json(r);
    j["checks"] = rep["checks"];
    j["passed"] = rep["passed"];
    if (o.print_poly) j["polynomials"] = polys;
    out << j.dump(2) << '\n';
  }
  return r.passed() ? exit_ok : exit_failed;
}

int cmd_word(const Options& o, std::ostream& out) {
  const Word w = Word::parse(o.w);
  const CrystalData c = crystal(w);
  const PathProfile p = path_profile(w);
  json flips = json::array();
  for (const Word& f : flip_set(w)) flips.push_back(f.to_string());
  json j{{"word", w.to_string()},
         {"weight", weight(w)},
         {"semistable", is_semistable(w)},
         {"factorization", factorization_json(factorize(w))},
         {"flip_set", flips},
         {"d", std::vector<int>(p.d.begin() + (p.d.empty() ? 0 : 1), p.d.end())},
         {"D", std::vector<int>(p.D.begin() + (p.D.empty() ? 0 : 1), p.D.end())},
         {"eps", c.eps},
         {"phi", c.phi},
         {"ell", c.ell},
         {"e", c.e_result ? json(c.e_result->to_string()) : json(nullptr)},
         {"f", c.f_result ? json(c.f_result->to_string()) : json(nullptr)}};
  out << j.dump(2) << '\n';
  return exit_ok;
}

}  // namespace

TensorVector parse_vector_spec(std::string_view text, std::optional<std::size_t> n) {
  Cursor c{text};
  c.skip_blanks();
  std::optional<BasisTag> basis;
  std::optional<std::size_t> length = n;
  std::vector<std::pair<Word, Scalar>> terms;
  std::string_view trimmed = text.substr(c.pos);
  while (!trimmed.empty() && is_blank(trimmed.back())) trimmed.remove_suffix(1);
  if (trimmed.empty() || trimmed == "0") return TensorVector(n.value_or(0), BasisTag::x);
  parse_term(c, 1, basis, length, terms);
  for (;;) {
    c.skip_blanks();
    if (c.done()) break;
    const char op = c.peek();
    if (op != '+' && op != '-') c.fail("expected '+' or '-' between terms");
    ++c.pos;
    if (c.done() || !is_blank(c.peek())) c.fail("operators must be followed by a blank");
    c.skip_blanks();
    parse_term(c, op == '-' ? -1 : 1, basis, length, terms);
  }
  TensorVector v(*length, *basis);
  for (const auto& [w, k] : terms) v.add_term(w, k);
  return v;
}

json terms_json(const TensorVector& v) {
  json terms = json::array();
  for (const auto& [w, c] : v.terms()) terms.push_back({{"word", w.to_string()}, {"coeff", to_string(c)}});
  return terms;
}

json vector_json(const TensorVector& v) {
  return {{"n", v.length()}, {"basis", std::string(1, to_char(v.basis()))}, {"terms", terms_json(v)}};
}

json factorization_json(const Factorization& f) {
  json blocks = json::array();
  for (const Word& b : f.blocks) blocks.push_back(b.to_string());
  return {{"r", f.r}, {"s", f.s}, {"blocks", blocks}, {"sig_positions", f.sig_positions}};
}

json report_json(const Report& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"detail", c.detail},
                      {"cases", c.cases},
                      {"counterexamples", c.counterexamples}});
  }
  return {{"passed", r.passed()}, {"checks", checks}};
}

Report run_suite(const std::string& suite, std::size_t n_max, std::uint64_t seed, unsigned threads) {
  if (suite == "words") return merge_lengths(0, n_max, check_word_invariants);
  if (suite == "basis") return basis_suite(n_max);
  if (suite == "rep") return rep_suite(n_max);
  if (suite == "charts") {
    ChartsVerifyOptions o;
    o.n_max = n_max;
    o.parallel_n_max = n_max;
    o.elimination_n_max = std::min<std::size_t>(n_max, 5);
    o.seed = seed;
    o.threads = threads;
    Report r = verify_transitions(o);
    r.append(verify_parallel_lemmas(o));
    return r;
  }
  if (suite == "theorem") return verify_coefficient_rule(n_max, threads);
  throw ParseError("unknown suite '" + suite + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact y-basis, sl2 action and chart-transition verification for tensor powers of C^2"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", o.threads, "Worker threads (0: all cores)");

  auto* expand = app.add_subcommand("expand", "Rewrite a vector in the other basis");
  expand->add_option("spec", o.spec, "Formal sum, e.g. \"x:-+ + 2*x:+-\"")->required();
  expand->add_option("--to", o.to, "Target basis (default: the other one)")->check(CLI::IsMember({"x", "y"}));
  expand->add_option("--n", o.n, "Word length, needed only for \"0\"")->each([&](const std::string&) { o.n_given = true; });

  auto* verify = app.add_subcommand("verify", "Run a property suite; exit 1 if any check fails");
  verify->add_option("--suite", o.suite)->required()->check(CLI::IsMember({"words", "basis", "rep", "charts", "theorem"}));
  verify->add_option("--n-max", o.n_max, "Largest word length");
  verify->add_option("--seed", o.seed, "Seed for random chart pairs");
  verify->add_option("--random", o.random, "charts suite: extra random pairs of length n-max + 1");

  auto* table = app.add_subcommand("table", "y_in_x and x_in_y for every word of one length");
  table->add_option("--n", o.n)->required();

  auto* cartan = app.add_subcommand("cartan", "Basis of a tensor product of irreducibles");
  cartan->add_option("--shape", o.shape, "Comma-separated parts, e.g. 2,1")->required();

  auto* charts = app.add_subcommand("charts", "Chart transition and truncated recursions for a pair");
  charts->add_option("--v", o.v)->required();
  charts->add_option("--w", o.w)->required();
  charts->add_option("--mode", o.mode)->check(CLI::IsMember({"transition", "tilde", "verify"}));
  charts->add_flag("--print-poly", o.print_poly, "Include the polynomials of each step");

  auto* word = app.add_subcommand("word", "Factorization, path and crystal data of one word");
  word->add_option("--w", o.w)->required();

  // the global options may also follow the subcommand
  for (CLI::App* sub : {expand, verify, table, cartan, charts, word}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*expand) return cmd_expand(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*table) return cmd_table(o, out);
    if (*cartan) return cmd_cartan(o, out);
    if (*charts) return cmd_charts(o, out, err);
    if (*word) return cmd_word(o, out);
  } catch (const RecursionFalsified& e) {
    err << "error: " << e.what() << '\n';
    return exit_failed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace mvbasis::cli
