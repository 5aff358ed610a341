#include <doctest.h>

#include <random>

#include "mvbasis/errors.hpp"
#include "mvbasis/symbolic.hpp"

using namespace mvbasis;

namespace {

VarTablePtr table_of(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back("v" + std::to_string(i));
  return VarTable::make(names);
}

// Random sparse polynomial; `max_exp` bounds each exponent, `fractions` allows non-integer coefficients.
Polynomial random_poly(std::mt19937_64& rng, const VarTablePtr& t, std::size_t terms, int max_exp, bool fractions) {
  std::vector<Monomial> ms;
  std::uniform_int_distribution<int> e(0, max_exp), c(-9, 9), d(1, 5);
  for (std::size_t k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t i = 0; i < t->size(); ++i) m.exp[i] = static_cast<std::uint8_t>(rng() % 3 == 0 ? e(rng) : 0);
    m.coeff = Scalar(c(rng), fractions ? d(rng) : 1);
    m.coeff.canonicalize();
    if (m.coeff != 0) ms.push_back(m);
  }
  return Polynomial::from_terms(t, ms);
}

// Schoolbook product through from_terms, independent of the multiplication kernels.
Polynomial schoolbook(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> ms;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      Monomial m;
      for (std::size_t i = 0; i < a.vars()->size(); ++i) m.exp[i] = static_cast<std::uint8_t>(s.exp[i] + t.exp[i]);
      m.coeff = s.coeff * t.coeff;
      ms.push_back(m);
    }
  }
  return Polynomial::from_terms(a.vars(), ms);
}

}  // namespace

TEST_SUITE("symbolic") {
  TEST_CASE("variable tables") {
    auto t = VarTable::make({"z", "x", "a1"});
    CHECK(t->index("x") == 1);
    CHECK(t->contains("a1"));
    CHECK_FALSE(t->contains("a2"));
    CHECK_THROWS_AS(t->index("q"), ContractViolation);
    CHECK_THROWS(VarTable::make({"z", "z"}));
  }

  TEST_CASE("basic arithmetic and printing") {
    auto t = VarTable::make({"z", "x1", "x2"});
    const Polynomial z = Polynomial::variable(t, "z"), x1 = Polynomial::variable(t, "x1"),
                     x2 = Polynomial::variable(t, "x2");
    const Polynomial zero(t);
    CHECK(z + zero == z);
    CHECK((z - x1) * Polynomial::constant(t, 1) == z - x1);
    const Polynomial prod = (z - x1) * (z - x2);
    CHECK(prod == z * z - (x1 + x2) * z + x1 * x2);
    CHECK(prod.to_string() == "z^2 - z*x1 - z*x2 + x1*x2");
    CHECK(poly_arith(PolyOp::sub, z, z).is_zero());
    CHECK(Polynomial::constant(t, Scalar(-3, 4)).to_string() == "-3/4");
    CHECK(prod.degree_in(0) == 2);
    CHECK(prod.coefficient_of(0, 1) == -(x1 + x2));
    CHECK((z * x1).min_degree_in(0) == 1);
    CHECK((z - x1).pow(3) == (z - x1) * (z - x1) * (z - x1));
  }

  TEST_CASE("tables must match") {
    auto t = VarTable::make({"z", "x"});
    auto u = VarTable::make({"z", "y", "x"});
    CHECK_THROWS_AS(Polynomial::variable(t, 0) + Polynomial::variable(u, 0), VarTableMismatch);
    CHECK(rebase(Polynomial::variable(t, "x"), u) == Polynomial::variable(u, "x"));
    // equal name lists count as the same table
    CHECK(Polynomial::variable(t, 0) + Polynomial::variable(VarTable::make({"z", "x"}), 0) ==
          Polynomial::constant(t, 2) * Polynomial::variable(t, 0));
  }

  TEST_CASE("exact division") {
    auto t = VarTable::make({"z", "x"});
    const Polynomial z = Polynomial::variable(t, "z"), x = Polynomial::variable(t, "x");
    CHECK(exact_div(z * z - x * x, z - x) == z + x);
    CHECK(exact_div(Polynomial(t), z - x).is_zero());
    CHECK_THROWS_AS(exact_div(z * z + x, z - x), InexactDivision);
    Polynomial q(t);
    CHECK_FALSE(try_exact_div(z + Polynomial::constant(t, 1), z - x, q));
  }

  TEST_CASE("multiplication kernels agree with the schoolbook product") {
    std::mt19937_64 rng(17);
    // small integer, fractional, wide exponent keys and keys too wide to pack
    struct Setup { std::size_t vars; int max_exp; bool fractions; };
    for (const Setup s : {Setup{4, 3, false}, Setup{4, 3, true}, Setup{12, 60, false}, Setup{36, 14, true}}) {
      auto t = table_of(s.vars);
      for (int i = 0; i < 15; ++i) {
        const Polynomial a = random_poly(rng, t, 12, s.max_exp, s.fractions);
        const Polynomial b = random_poly(rng, t, 9, s.max_exp, s.fractions);
        const Polynomial c = random_poly(rng, t, 7, s.max_exp, s.fractions);
        const Polynomial d = random_poly(rng, t, 11, s.max_exp, s.fractions);
        CHECK(a * b == schoolbook(a, b));
        CHECK(mul_add(a, b, c, d) == schoolbook(a, b) + schoolbook(c, d));
        CHECK(mul_add(a, b, c, d, true) == schoolbook(a, b) - schoolbook(c, d));
        if (!b.is_zero()) CHECK(exact_div(a * b, b) == a);
      }
    }
  }

  TEST_CASE("large integer coefficients take the exact path") {
    auto t = table_of(2);
    Polynomial a = Polynomial::variable(t, 0) * Polynomial::constant(t, Scalar("123456789012345678901234567890")) +
                   Polynomial::constant(t, 1);
    Polynomial b = Polynomial::variable(t, 1) * Polynomial::constant(t, Scalar("98765432109876543210")) -
                   Polynomial::constant(t, 3);
    CHECK(a * b == schoolbook(a, b));
    CHECK(exact_div(a * b, a) == b);
  }

  TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(23);
    auto t = table_of(5);
    for (int i = 0; i < 30; ++i) {
      const Polynomial a = random_poly(rng, t, 6, 3, true), b = random_poly(rng, t, 5, 3, true),
                       c = random_poly(rng, t, 4, 3, false);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
    }
  }

  TEST_CASE("substitution") {
    auto t = VarTable::make({"z", "x", "x1", "x2"});
    const Polynomial z = Polynomial::variable(t, "z"), x = Polynomial::variable(t, "x");
    const std::size_t zi = 0;
    CHECK(eval_at(z - x, zi, RationalFunction(x)).is_zero());
    CHECK(eval_at(z - x, zi, RationalFunction(Polynomial(t))) == RationalFunction(-x));
    const Polynomial x1 = Polynomial::variable(t, "x1"), x2 = Polynomial::variable(t, "x2");
    CHECK(eval_at(z - x1, zi, RationalFunction(x2)) == RationalFunction(x2 - x1));
    const Polynomial x1p = x1 + Polynomial::constant(t, 1);
    CHECK(substitute(z * z + x, zi, x1p) == x1p * x1p + x);
  }

  TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 rng(29);
    auto t = table_of(4);
    for (int i = 0; i < 20; ++i) {
      const Polynomial a = random_poly(rng, t, 5, 3, true), b = random_poly(rng, t, 5, 3, false);
      const Polynomial v = random_poly(rng, t, 3, 2, false);
      const Polynomial va = substitute(v, 1, Polynomial(t));  // keep the value free of v1
      CHECK(substitute(a * b, 1, va) == substitute(a, 1, va) * substitute(b, 1, va));
      CHECK(substitute(a + b, 1, va) == substitute(a, 1, va) + substitute(b, 1, va));
    }
  }

  TEST_CASE("graded truncation") {
    auto t = VarTable::make({"z", "x", "a"});
    const Polynomial z = Polynomial::variable(t, "z"), x = Polynomial::variable(t, "x"),
                     a = Polynomial::variable(t, "a");
    const Polynomial one = Polynomial::constant(t, 1);
    GradedIdealSpec spec{{0, 1, 2}, 1};
    CHECK(truncate_graded(one + x + a + z, spec) == one + z);
    spec.threshold = 3;
    CHECK(truncate_graded(x * a, spec).is_zero());
    spec.threshold = 4;
    CHECK(truncate_graded(x * a, spec) == x * a);
    CHECK(spec.degree_of((x * a * a).leading().exp) == 5);
  }

  TEST_CASE("reduction modulo a monomial ideal and its square") {
    auto t = VarTable::make({"x", "ai", "aj", "ak"});
    const Polynomial x = Polynomial::variable(t, "x"), ai = Polynomial::variable(t, "ai"),
                     aj = Polynomial::variable(t, "aj"), ak = Polynomial::variable(t, "ak");
    const std::set<std::size_t> p{0, 1, 2};
    CHECK(reduce_mod_variables(x, p, 1).is_zero());
    CHECK(reduce_mod_variables(ai * aj, p, 2).is_zero());
    CHECK(reduce_mod_variables(-x + ai * aj + ak * ak * ak, p, 2) == -x + ak * ak * ak);
    CHECK(reduce_mod_variables(-x + ai * ak, p, 2) == -x + ai * ak);
    CHECK(reduce_mod_variables(-x + ai * ak + ak, p, 1) == ak);
  }

  TEST_CASE("rational functions") {
    auto t = VarTable::make({"z", "x", "a"});
    const Polynomial z = Polynomial::variable(t, "z"), x = Polynomial::variable(t, "x"),
                     a = Polynomial::variable(t, "a");
    const RationalFunction one(Polynomial::constant(t, 1));
    const RationalFunction inv_a = one / RationalFunction(a);
    CHECK(inv_a.to_string() == "(1)/(a)");
    CHECK(inv_a * RationalFunction(a) == one);
    CHECK((inv_a * RationalFunction(a)).is_polynomial());
    const RationalFunction r = RationalFunction(z * z - x * x) / RationalFunction(z - x);
    CHECK(r.is_polynomial());
    CHECK(r.as_polynomial() == z + x);
    // equality across different but equivalent denominators
    const RationalFunction s = RationalFunction(z) / RationalFunction(a * (z + x));
    const RationalFunction s2 = RationalFunction(z * (z - x)) / RationalFunction(a * (z * z - x * x));
    CHECK(s == s2);
    CHECK(s - s2 == RationalFunction(t));
    CHECK(s.eval(0, RationalFunction(x)) == RationalFunction(Polynomial::constant(t, Scalar(1, 2))) / RationalFunction(a));
    CHECK_THROWS_AS(RationalFunction(x) / RationalFunction(Polynomial(t)), std::domain_error);
    CHECK_THROWS_AS(inv_a.as_polynomial(), ContractViolation);
  }

  TEST_CASE("2x2 matrices") {
    auto t = VarTable::make({"z", "x", "a"});
    const RationalFunction z(Polynomial::variable(t, "z")), x(Polynomial::variable(t, "x")),
        a(Polynomial::variable(t, "a")), one(Polynomial::constant(t, 1)), zero(t);
    const PolyMatrix2 plus{z - x, a, zero, one};
    const PolyMatrix2 minus{one, zero, a, z - x};
    CHECK((plus * minus).det() == (z - x) * (z - x));
    CHECK(PolyMatrix2{one, a, zero, one}.det() == one);
    CHECK(PolyMatrix2{one, a, zero, one}.det(false) == one);
    const PolyMatrix2 id{one, zero, zero, one};
    CHECK(plus * id == plus);
  }
}
