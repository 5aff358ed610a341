// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mvbasis/basis.hpp"
#include "mvbasis/charts.hpp"
#include "mvbasis/errors.hpp"
#include "mvbasis/rep.hpp"

using namespace mvbasis;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool condition, const std::string& why) {
    if (condition) return;
    if (ok) note = why;
    ok = false;
  }
  void require(const Report& r, const std::string& what) {
    for (const CheckResult& c : r.checks) {
      if (c.ok()) continue;
      require(false, what + ": " + c.name +
                         (c.counterexamples.empty() ? std::string() : " (" + c.counterexamples.front() + ")"));
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0: no stated limit
  std::function<Outcome()> body;
};

Word W(const char* s) { return Word::parse(s); }

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome worked_example() {
  Outcome o;
  const TensorVector ymp = TensorVector::unit(W("-+"), BasisTag::y), ypm = TensorVector::unit(W("+-"), BasisTag::y);
  const TensorVector xmp = TensorVector::unit(W("-+"), BasisTag::x), xpm = TensorVector::unit(W("+-"), BasisTag::x);
  o.require(expand_in_y(xmp) == ymp + ypm, "x_{-+} != y_{-+} + y_{+-}");
  o.require(y_in_x(W("-+")) == xmp - xpm, "y_{-+} != x_{-+} - x_{+-}");
  o.note = o.ok ? "x_{-+} = y_{-+} + y_{+-}, y_{-+} = x_{-+} - x_{+-}" : o.note;
  return o;
}

Outcome characterization() {
  Outcome o;
  o.require(check_characterization(8, 4), "characterization");
  if (o.ok) o.note = "all words of length <= 8, insertions |u| <= 4";
  return o;
}

Outcome crystal_compat() {
  Outcome o;
  for (std::size_t n = 1; n <= 8; ++n) o.require(check_crystal_compat(n), "n=" + std::to_string(n));
  if (o.ok) o.note = "e and f congruences, lengths 1..8";
  return o;
}

Outcome invariants() {
  Outcome o;
  const std::vector<std::size_t> catalan{1, 2, 5, 14, 42, 132};
  std::string counts;
  for (std::size_t m = 1; m <= 6; ++m) {
    const std::size_t c = enumerate_semistable(2 * m).size();
    counts += (m > 1 ? "," : "") + std::to_string(c);
    o.require(c == catalan[m - 1], "semistable count for m=" + std::to_string(m) + " is " + std::to_string(c));
    o.require(check_invariants(m), "m=" + std::to_string(m));
  }
  if (o.ok) o.note = "counts " + counts + "; e, f kill every y_w";
  return o;
}

Outcome layer_dimensions() {
  Outcome o;
  for (int n = 0; n <= 10; ++n) {
    std::vector<long long> seen(n + 1, 0);
    for (const Word& w : enumerate_words(n)) ++seen[crystal(w).ell];
    for (int p = 0; p <= n; ++p) {
      const int k = (n - p) / 2;
      const long long m = (n - p) % 2 ? 0 : binomial(n, k) - binomial(n, k - 1);
      o.require(seen[p] == (p + 1) * m, "n=" + std::to_string(n) + " p=" + std::to_string(p));
    }
    o.require(check_layer_dimensions(n), "n=" + std::to_string(n));
  }
  if (o.ok) o.note = "all layers, n <= 10";
  return o;
}

Outcome transition_matrix() {
  Outcome o;
  for (std::size_t n = 0; n <= 10; ++n) o.require(check_transition_matrix(n), "n=" + std::to_string(n));
  if (o.ok) o.note = "unit diagonal, nonnegative integers, path-dominance support, n <= 10";
  return o;
}

std::size_t cases_of(const Report& r, const std::string& name) {
  for (const CheckResult& c : r.checks) {
    if (c.name == name) return c.cases;
  }
  return 0;
}

Outcome transitions() {
  Outcome o;
  ChartsVerifyOptions opts;
  opts.n_max = 5;
  opts.random_n = 6;
  opts.random_count = 500;
  opts.seed = 1;
  try {
    const Report r = verify_transitions(opts);
    o.require(r, "transitions");
    const std::size_t pairs = 4 + 16 + 64 + 256 + 1024 + 500;
    // merged checks report how many pairs contributed
    for (const CheckResult& c : r.checks) {
      o.require(c.detail.rfind(std::to_string(pairs) + " items", 0) == 0, c.name + " covered " + c.detail);
    }
    if (o.ok) {
      o.note = std::to_string(pairs) + " pairs (all n <= 5, 500 random at n = 6), " +
               std::to_string(cases_of(r, "transition.determinant")) + " determinant and " +
               std::to_string(cases_of(r, "transition.intertwining")) + " intertwining identities";
    }
  } catch (const RecursionFalsified& e) {
    o.require(false, std::string("inexact division: ") + e.what());
  }
  return o;
}

Outcome lemma_battery() {
  Outcome o;
  ChartsVerifyOptions opts;
  opts.parallel_n_max = 7;
  try {
    const Report r = verify_parallel_lemmas(opts);
    o.require(r, "lemmas");
    o.require(cases_of(r, "induc.exclusion") > 0, "no pair with a non-significant last letter was exercised");
    if (o.ok) {
      std::size_t pairs = 0;
      for (std::size_t n = 2; n <= 7; ++n) pairs += parallel_cases(n).size();
      o.note = std::to_string(pairs) + " parallel pairs, n <= 7; " + std::to_string(cases_of(r, "induc.exclusion")) +
               " vanishing constant terms";
    }
  } catch (const RecursionFalsified& e) {
    o.require(false, std::string("inexact division: ") + e.what());
  }
  return o;
}

Outcome coefficient_rule_oracle() {
  Outcome o;
  const Report r = verify_coefficient_rule(10);
  o.require(r, "theorem");
  if (o.ok) o.note = std::to_string(cases_of(r, "theorem.coefficient_rule")) + " coefficients, n <= 10, all 0 or 1";
  return o;
}

Outcome cartan() {
  Outcome o;
  for (std::size_t n = 0; n <= 6; ++n) o.require(check_cartan_projection(n), "projection n=" + std::to_string(n));
  for (std::size_t N = 1; N <= 6; ++N) {
    const auto basis = mv_basis_of_shape(Shape{{N}});
    o.require(basis.size() == N + 1, "shape (" + std::to_string(N) + ") has " + std::to_string(basis.size()) + " vectors");
    for (std::size_t a = 0; a <= N && a < basis.size(); ++a) {
      const Word w = Word::repeat(Letter::plus, a) + Word::repeat(Letter::minus, N - a);
      o.require(basis[a].index == std::vector<Word>{w} && basis[a].vector == cartan_project(y_in_x(w), N),
                "shape (" + std::to_string(N) + ") vector " + std::to_string(a));
    }
  }
  for (const Word& w : enumerate_words(6)) o.require(check_truncation(w, {1, 2, 3}), "truncation");
  if (o.ok) o.note = "idempotent and equivariant n <= 6; N+1 vectors for N <= 6; truncation on 64 words";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked two-letter example", 1, worked_example},
      {2, "characterization of the y-basis", 30, characterization},
      {3, "crystal compatibility", 60, crystal_compat},
      {4, "invariants and Catalan counts", 0, invariants},
      {5, "filtration layer dimensions", 0, layer_dimensions},
      {6, "x-to-y transition matrix", 0, transition_matrix},
      {7, "chart transition invariants", 300, transitions},
      {8, "truncated recursion lemmas", 300, lemma_battery},
      {9, "coefficient rule against the expansion", 120, coefficient_rule_oracle},
      {10, "Cartan projections and truncation", 0, cartan},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    }
    if (!o.ok) ++failed;
    std::printf("criterion %2d: %s  %s; %s [%.2f s]\n", c.id, o.ok ? "PASS" : "FAIL", c.title, o.note.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
