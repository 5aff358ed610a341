#include <doctest.h>

#include <random>

#include "mvbasis/basis.hpp"
#include "mvbasis/errors.hpp"
#include "mvbasis/tensor_vector.hpp"

using namespace mvbasis;

namespace {
Word W(const char* s) { return Word::parse(s); }
TensorVector X(const char* s, const Scalar& c = 1) { return TensorVector::unit(W(s), BasisTag::x, c); }
TensorVector Y(const char* s, const Scalar& c = 1) { return TensorVector::unit(W(s), BasisTag::y, c); }

Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
  Scalar q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

TensorVector random_vector(std::mt19937_64& rng, std::size_t n, BasisTag tag) {
  TensorVector v(n, tag);
  for (const Word& w : enumerate_words(n)) {
    if (rng() % 3 == 0) v.add_term(w, random_scalar(rng));
  }
  return v;
}
}  // namespace

TEST_SUITE("exactalg") {
  TEST_CASE("scalars print and parse canonically") {
    CHECK(to_string(parse_scalar("6/4")) == "3/2");
    CHECK(to_string(parse_scalar("-2/1")) == "-2");
    CHECK(to_string(parse_scalar("+7")) == "7");
    CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1.5"), ParseError);
    CHECK_THROWS_AS(parse_scalar(""), ParseError);
    CHECK_THROWS_AS(parse_scalar("/3"), ParseError);
  }

  TEST_CASE("scalar field axioms on random values") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      if (b != 0) CHECK((a / b) * b == a);
      const Scalar s = a * b;
      CHECK(to_string(s) == to_string(parse_scalar(to_string(s))));
    }
  }

  TEST_CASE("addition") {
    const TensorVector u = X("-+") + X("+-");
    CHECK(u + TensorVector(2, BasisTag::x) == u);
    CHECK((X("-+") + X("-+", -1)).is_zero());
    CHECK(u.support_size() == 2);
    CHECK(add(X("-+"), X("+-")) == u);
    CHECK_THROWS_AS(add(X("-+"), Y("-+")), ContractViolation);
    CHECK_THROWS_AS(add(X("-+"), X("-")), ContractViolation);
  }

  TEST_CASE("zero coefficients are never stored") {
    TensorVector v(2, BasisTag::x);
    v.add_term(W("+-"), 0);
    CHECK(v.is_zero());
    v.add_term(W("+-"), Scalar(1, 2));
    v.add_term(W("+-"), Scalar(-1, 2));
    CHECK(v.is_zero());
  }

  TEST_CASE("tensor product") {
    CHECK(tensor(X("+"), X("-")) == X("+-"));
    CHECK(tensor(X("-+") - X("+-"), X("+")) == X("-++") - X("+-+"));
    CHECK(tensor(TensorVector(1, BasisTag::x), X("+")).is_zero());
    CHECK_THROWS_AS(tensor(Y("-+"), X("+")), ContractViolation);
  }

  TEST_CASE("tensor product is bilinear and associative") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      const TensorVector a = random_vector(rng, 2, BasisTag::x);
      const TensorVector b = random_vector(rng, 2, BasisTag::x);
      const TensorVector c = random_vector(rng, 1, BasisTag::x);
      const Scalar k = random_scalar(rng);
      CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
      CHECK(tensor(a + b, c) == tensor(a, c) + tensor(b, c));
      CHECK(tensor(k * a, c) == k * tensor(a, c));
    }
  }

  TEST_CASE("triangular solve") {
    ChangeOfBasis id;
    for (const Word& w : enumerate_words(2)) id.emplace(w, TensorVector::unit(w, BasisTag::x));
    const TensorVector t = X("-+", 3) + X("++", Scalar(-1, 2));
    TensorVector expect = Y("-+", 3) + Y("++", Scalar(-1, 2));
    CHECK(solve_triangular(id, t, BasisTag::y) == expect);

    ChangeOfBasis change;
    change.emplace(W("-+"), X("-+") - X("+-"));
    change.emplace(W("+-"), X("+-"));
    CHECK(solve_triangular(change, X("-+"), BasisTag::y) == Y("-+") + Y("+-"));

    ChangeOfBasis bad;
    bad.emplace(W("+-"), X("+-") + X("-+"));
    bad.emplace(W("-+"), X("-+"));
    CHECK_THROWS_AS(solve_triangular(bad, X("+-"), BasisTag::y), ContractViolation);
  }

  TEST_CASE("random length-4 vectors survive a trip through the y basis") {
    std::mt19937_64 rng(3);
    const ChangeOfBasis change = thread_basis().y_change(4);
    for (int i = 0; i < 25; ++i) {
      const TensorVector v = random_vector(rng, 4, BasisTag::x);
      const TensorVector in_y = solve_triangular(change, v, BasisTag::y);
      CHECK(expand_in_x(in_y) == v);
      CHECK(expand_in_y(v) == in_y);
    }
  }

  TEST_CASE("rank") {
    CHECK(rank({X("-+"), X("+-"), X("-+") + X("+-")}) == 2);
    CHECK(rank({}) == 0);
  }

  TEST_CASE("text form") {
    CHECK(TensorVector(2, BasisTag::x).to_string() == "0");
    CHECK(reverse_factors(X("+--")) == X("--+"));
  }
}
