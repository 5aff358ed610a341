#include "mvbasis/basis.hpp"

#include <sstream>

#include "mvbasis/errors.hpp"

namespace mvbasis {

TensorVector prepend(Letter l, const TensorVector& v) {
  TensorVector out(v.length() + 1, v.basis());
  for (const auto& [w, c] : v.terms()) out.add_term(l + w, c);
  return out;
}

const TensorVector& YBasis::y_in_x(const Word& w) {
  if (auto it = y_cache_.find(w); it != y_cache_.end()) return it->second;

  TensorVector result(w.size(), BasisTag::x);
  if (w.empty()) {
    result.add_term(w, 1);
  } else {
    const Word tail = w.drop(1);
    if (w.at(1) == Letter::plus) {
      result = prepend(Letter::plus, y_in_x(tail));
    } else {
      result = prepend(Letter::minus, y_in_x(tail));
      for (const Word& v : flip_set(tail)) result -= prepend(Letter::plus, y_in_x(v));
    }
  }
  return y_cache_.emplace(w, std::move(result)).first->second;
}

const TensorVector& YBasis::x_in_y(const Word& w) {
  if (auto it = x_cache_.find(w); it != x_cache_.end()) return it->second;

  TensorVector result(w.size(), BasisTag::y);
  if (w.empty()) {
    result.add_term(w, 1);
  } else {
    const Letter head = w.at(1);
    const TensorVector& tail = x_in_y(w.drop(1));
    for (const auto& [u, c] : tail.terms()) {
      result.add_term(head + u, c);
      if (head == Letter::minus) {
        for (const Word& v : flip_set(u)) result.add_term(Letter::plus + v, c);
      }
    }
  }
  return x_cache_.emplace(w, std::move(result)).first->second;
}

TensorVector YBasis::expand_in_y(const TensorVector& v) {
  if (v.basis() != BasisTag::x) throw ContractViolation("expand_in_y: input must be in the x basis");
  TensorVector out(v.length(), BasisTag::y);
  for (const auto& [w, c] : v.terms()) out.add_scaled(x_in_y(w), c);
  return out;
}

TensorVector YBasis::expand_in_x(const TensorVector& v) {
  if (v.basis() != BasisTag::y) throw ContractViolation("expand_in_x: input must be in the y basis");
  TensorVector out(v.length(), BasisTag::x);
  for (const auto& [w, c] : v.terms()) out.add_scaled(y_in_x(w), c);
  return out;
}

TensorVector YBasis::factor_product(const Word& w) {
  const Factorization f = factorize(w);
  TensorVector out = y_in_x(f.blocks.front());
  for (std::size_t i = 0; i < f.sig_positions.size(); ++i) {
    out = tensor(out, TensorVector::unit(Word{w.at(f.sig_positions[i])}, BasisTag::x));
    out = tensor(out, y_in_x(f.blocks[i + 1]));
  }
  return out;
}

ChangeOfBasis YBasis::y_change(std::size_t n) {
  ChangeOfBasis change;
  for (const Word& w : enumerate_words(n)) change.emplace(w, y_in_x(w));
  return change;
}

void YBasis::clear() {
  y_cache_.clear();
  x_cache_.clear();
}

YBasis& thread_basis() {
  thread_local YBasis instance;
  return instance;
}

// ---------------------------------------------------------------------------

bool is_shape_word(const Word& w) {
  bool seen_minus = false;
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (w.at(p) == Letter::minus) {
      seen_minus = true;
    } else if (seen_minus) {
      return false;
    }
  }
  return true;
}

bool path_weakly_above(const Word& upper, const Word& lower) {
  if (upper.size() != lower.size()) return false;
  int du = 0;
  int dl = 0;
  for (std::size_t p = 1; p <= upper.size(); ++p) {
    du += letter_weight(upper.at(p));
    dl += letter_weight(lower.at(p));
    if (du < dl) return false;
  }
  return true;
}

namespace {

/// Replaces each term c * x_{ab} (|a| = k) by c * x_a (x) y_u (x) x_b.
TensorVector insert_between(const TensorVector& v, std::size_t k, const TensorVector& yu) {
  TensorVector out(v.length() + yu.length(), BasisTag::x);
  for (const auto& [w, c] : v.terms()) {
    const Word left = w.prefix(k);
    const Word right = w.drop(k);
    for (const auto& [u, cu] : yu.terms()) out.add_term(left + u + right, c * cu);
  }
  return out;
}

}  // namespace

Report check_characterization(std::size_t n, std::size_t max_inserted) {
  YBasis& basis = thread_basis();
  Report report;

  CheckBuilder shape("characterization.shape_words");
  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t a = 0; a <= len; ++a) {
      Word w = Word::repeat(Letter::plus, a) + Word::repeat(Letter::minus, len - a);
      const TensorVector& y = basis.y_in_x(w);
      shape.expect_lazy(y == TensorVector::unit(w, BasisTag::x),
                        [&] { return "y[" + w.to_string() + "] = " + y.to_string(); });
    }
  }
  report.checks.push_back(shape.finish());

  CheckBuilder minus_plus("characterization.y_minus_plus");
  if (n >= 2) {
    TensorVector expected = TensorVector::unit(Word::parse("-+"), BasisTag::x) -
                            TensorVector::unit(Word::parse("+-"), BasisTag::x);
    const TensorVector& y = basis.y_in_x(Word::parse("-+"));
    minus_plus.expect(y == expected, "y[-+] = " + y.to_string());
  } else {
    minus_plus.skip("needs n >= 2");
  }
  report.checks.push_back(minus_plus.finish());

  CheckBuilder insertion("characterization.semistable_insertion");
  std::ostringstream detail;
  detail << "semistable u with 0 < |u| <= " << max_inserted << ", total length <= " << n;
  insertion.set_detail(detail.str());
  for (std::size_t ulen = 2; ulen <= std::min(max_inserted, n); ulen += 2) {
    for (const Word& u : enumerate_semistable(ulen)) {
      const TensorVector& yu = basis.y_in_x(u);
      for (std::size_t len = 0; len + ulen <= n; ++len) {
        for (const Word& w : enumerate_words(len)) {
          const TensorVector& yw = basis.y_in_x(w);
          for (std::size_t k = 0; k <= len; ++k) {
            const Word inserted = w.prefix(k) + u + w.drop(k);
            const TensorVector lhs = insert_between(yw, k, yu);
            insertion.expect_lazy(lhs == basis.y_in_x(inserted), [&] {
              return "u=" + u.to_string() + " w'=" + w.prefix(k).to_string() +
                     " w''=" + w.drop(k).to_string();
            });
          }
        }
      }
    }
  }
  report.checks.push_back(insertion.finish());
  return report;
}

Report check_transition_matrix(std::size_t n) {
  YBasis& basis = thread_basis();
  CheckBuilder diag("transition_matrix.unit_diagonal");
  CheckBuilder integral("transition_matrix.nonnegative_integers");
  CheckBuilder support("transition_matrix.path_dominance");
  CheckBuilder same_weight("transition_matrix.length_and_weight");
  for (const Word& w : enumerate_words(n)) {
    const TensorVector& xw = basis.x_in_y(w);
    diag.expect(xw.coeff(w) == 1, w.to_string());
    for (const auto& [v, c] : xw.terms()) {
      integral.expect_lazy(is_integer(c) && c > 0,
                           [&] { return w.to_string() + " -> " + v.to_string() + ": " + c.get_str(); });
      support.expect_lazy(path_weakly_above(v, w),
                          [&] { return w.to_string() + " -> " + v.to_string(); });
      same_weight.expect_lazy(v.size() == w.size() && weight(v) == weight(w),
                              [&] { return w.to_string() + " -> " + v.to_string(); });
    }
  }
  Report report;
  report.checks = {diag.finish(), integral.finish(), support.finish(), same_weight.finish()};
  return report;
}

Report check_factor_product(std::size_t n) {
  YBasis& basis = thread_basis();
  CheckBuilder agree("basis.factor_product");
  for (const Word& w : enumerate_words(n)) {
    agree.expect(basis.factor_product(w) == basis.y_in_x(w), w.to_string());
  }
  Report report;
  report.checks = {agree.finish()};
  return report;
}

Report check_round_trip(std::size_t n) {
  YBasis& basis = thread_basis();
  CheckBuilder back("basis.round_trip");
  CheckBuilder oracle("basis.triangular_solve");
  const ChangeOfBasis change = basis.y_change(n);
  for (const Word& w : enumerate_words(n)) {
    back.expect(basis.expand_in_y(basis.y_in_x(w)) == TensorVector::unit(w, BasisTag::y), w.to_string());
    // path dominance refines to lex order, so the y-to-x change is unitriangular for std::less
    const TensorVector solved = solve_triangular(change, TensorVector::unit(w, BasisTag::x), BasisTag::y);
    oracle.expect(solved == basis.x_in_y(w), w.to_string());
  }
  Report report;
  report.checks = {back.finish(), oracle.finish()};
  return report;
}

Report check_truncation(const Word& w, const Split& split) {
  const auto [n1, n2, n3] = split;
  if (n1 + n2 + n3 != w.size()) {
    throw ContractViolation("check_truncation: split does not add up to the word length");
  }
  YBasis& basis = thread_basis();
  const Word w1 = w.prefix(n1);
  const Word w2 = w.subword(n1 + 1, n2);
  const Word w3 = w.drop(n1 + n2);

  CheckBuilder suffix("truncation.suffix_weight");
  CheckBuilder reproduce("truncation.prefix_expansion");
  const std::string tag = w.to_string() + " split (" + std::to_string(n1) + "," +
                          std::to_string(n2) + "," + std::to_string(n3) + ")";
  suffix.set_detail(tag);
  reproduce.set_detail(tag);
  if (n3 == 0) {
    suffix.skip("empty third block");
    reproduce.skip("empty third block");
  } else {
    const TensorVector full = basis.expand_in_y(tensor(basis.y_in_x(w1), basis.y_in_x(w2 + w3)));
    TensorVector matching(n1 + n2, BasisTag::y);
    for (const auto& [v, c] : full.terms()) {
      const Word v3 = v.drop(n1 + n2);
      suffix.expect_lazy(weight(v3) < weight(w3) || v3 == w3,
                         [&] { return tag + ": term " + v.to_string(); });
      if (v3 == w3) matching.add_term(v.prefix(n1 + n2), c);
    }
    const TensorVector expected = basis.expand_in_y(tensor(basis.y_in_x(w1), basis.y_in_x(w2)));
    reproduce.expect_lazy(matching == expected, [&] {
      return tag + ": got " + matching.to_string() + ", expected " + expected.to_string();
    });
  }
  Report report;
  report.checks = {suffix.finish(), reproduce.finish()};
  return report;
}

}  // namespace mvbasis
