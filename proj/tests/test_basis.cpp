#include <doctest.h>

#include "mvbasis/basis.hpp"

using namespace mvbasis;

namespace {
Word W(const char* s) { return Word::parse(s); }
TensorVector X(const char* s, const Scalar& c = 1) { return TensorVector::unit(W(s), BasisTag::x, c); }
TensorVector Y(const char* s, const Scalar& c = 1) { return TensorVector::unit(W(s), BasisTag::y, c); }

void require_pass(const Report& r) {
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << (c.counterexamples.empty() ? std::string() : c.counterexamples.front()));
    CHECK(c.ok());
  }
}
}  // namespace

TEST_SUITE("basis") {
  TEST_CASE("y in x") {
    CHECK(y_in_x(W("+--")) == X("+--"));
    CHECK(y_in_x(W("++-")) == X("++-"));
    CHECK(y_in_x(W("-+")) == X("-+") - X("+-"));
    CHECK(y_in_x(W("--+")) == X("--+") - X("-+-"));
    CHECK(y_in_x(Word()) == X(""));
  }

  TEST_CASE("x in y") {
    CHECK(x_in_y(W("+-")) == Y("+-"));
    CHECK(x_in_y(W("-+")) == Y("-+") + Y("+-"));
    CHECK(x_in_y(W("--++")) ==
          Y("--++") + Y("-+-+") + Y("-++-") + Y("+--+") + Y("+-+-", 2) + Y("++--"));
  }

  TEST_CASE("x in y agrees with back-substitution for every length-4 word") {
    const ChangeOfBasis change = thread_basis().y_change(4);
    for (const Word& w : enumerate_words(4)) {
      CHECK(solve_triangular(change, TensorVector::unit(w, BasisTag::x), BasisTag::y) == x_in_y(w));
    }
  }

  TEST_CASE("expanding in y") {
    CHECK(expand_in_y(TensorVector(3, BasisTag::x)).is_zero());
    CHECK(expand_in_y(prepend(Letter::minus, y_in_x(W("++")))) == Y("-++") + Y("+-+") + Y("++-"));
    for (std::size_t n = 0; n <= 8; ++n) {
      for (const Word& w : enumerate_words(n)) {
        CHECK(expand_in_y(y_in_x(w)) == TensorVector::unit(w, BasisTag::y));
      }
    }
  }

  TEST_CASE("factor product") {
    CHECK(factor_product(W("--++-+")) == y_in_x(W("--++-+")));
    CHECK(factor_product(W("+-")) == X("+-"));
    const Word example = W("-++-+-+++--+--++++--+-");
    CHECK(factor_product(example) == y_in_x(example));
  }

  TEST_CASE("memo is per thread and can be cleared") {
    YBasis local;
    CHECK(local.y_in_x(W("-+-+")) == y_in_x(W("-+-+")));
    local.clear();
    CHECK(local.x_in_y(W("-+")) == Y("-+") + Y("+-"));
  }

  TEST_CASE("characterization") {
    require_pass(check_characterization(0));
    require_pass(check_characterization(2));
    const Report r = check_characterization(8, 4);
    require_pass(r);
    CHECK(r.checks.size() == 3);
  }

  TEST_CASE("transition matrix shape up to length 10") {
    for (std::size_t n = 0; n <= 10; ++n) require_pass(check_transition_matrix(n));
  }

  TEST_CASE("factor product and round trip up to length 10") {
    for (std::size_t n = 0; n <= 10; ++n) {
      require_pass(check_factor_product(n));
      require_pass(check_round_trip(n));
    }
  }

  TEST_CASE("truncation") {
    const Report empty = check_truncation(W("-+-+"), {2, 2, 0});
    for (const auto& c : empty.checks) CHECK(c.status == CheckStatus::skip);
    require_pass(check_truncation(W("-+-+"), {1, 1, 2}));
    for (const Word& w : enumerate_words(6)) require_pass(check_truncation(w, {1, 2, 3}));
  }

  TEST_CASE("path helpers") {
    CHECK(is_shape_word(W("++--")));
    CHECK(is_shape_word(Word()));
    CHECK_FALSE(is_shape_word(W("+-+")));
    CHECK(path_weakly_above(W("+-"), W("-+")));
    CHECK_FALSE(path_weakly_above(W("-+"), W("+-")));
  }
}
