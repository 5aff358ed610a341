#include "mvbasis/tensor_vector.hpp"

#include <sstream>

#include "mvbasis/errors.hpp"

namespace mvbasis {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text) {
  auto bad = [&] { return ParseError("invalid rational \"" + std::string(text) + "\""); };
  if (text.empty()) throw bad();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw bad();
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) throw bad();
  std::string s(text.front() == '+' ? text.substr(1) : text);
  Scalar q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

TensorVector TensorVector::unit(const Word& w, BasisTag basis, const Scalar& coeff) {
  TensorVector v(w.size(), basis);
  v.add_term(w, coeff);
  return v;
}

Scalar TensorVector::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void TensorVector::add_term(const Word& w, const Scalar& c) {
  if (w.size() != n_) {
    throw ContractViolation("word " + w.to_string() + " has length " + std::to_string(w.size()) +
                            " but the vector has length " + std::to_string(n_));
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TensorVector::check_compatible(const TensorVector& other, const char* op) const {
  if (other.n_ != n_ || other.basis_ != basis_) {
    std::ostringstream msg;
    msg << op << ": incompatible vectors (length " << n_ << ", basis " << to_char(basis_)
        << ") and (length " << other.n_ << ", basis " << to_char(other.basis_) << ")";
    throw ContractViolation(msg.str());
  }
}

void TensorVector::add_scaled(const TensorVector& other, const Scalar& c) {
  check_compatible(other, "add");
  if (c == 0) return;
  for (const auto& [w, a] : other.terms_) add_term(w, a * c);
}

TensorVector& TensorVector::operator+=(const TensorVector& other) {
  add_scaled(other, 1);
  return *this;
}

TensorVector& TensorVector::operator-=(const TensorVector& other) {
  add_scaled(other, -1);
  return *this;
}

TensorVector& TensorVector::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, a] : terms_) a *= c;
  return *this;
}

std::string TensorVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << to_char(basis_) << "[" << w.to_string() << "]";
    first = false;
  }
  return out.str();
}

TensorVector add(const TensorVector& u, const TensorVector& v) { return u + v; }

TensorVector tensor(const TensorVector& u, const TensorVector& v) {
  if (u.basis() != BasisTag::x || v.basis() != BasisTag::x) {
    throw ContractViolation("tensor: both factors must be written in the x basis");
  }
  TensorVector out(u.length() + v.length(), BasisTag::x);
  for (const auto& [wu, cu] : u.terms()) {
    for (const auto& [wv, cv] : v.terms()) out.add_term(wu + wv, cu * cv);
  }
  return out;
}

TensorVector solve_triangular(const ChangeOfBasis& change, const TensorVector& target,
                              BasisTag result_basis, const WordOrder& less) {
  TensorVector residual = target;
  TensorVector result(target.length(), result_basis);
  while (!residual.is_zero()) {
    auto pivot_it = residual.terms().begin();
    for (auto it = std::next(pivot_it); it != residual.terms().end(); ++it) {
      if (less(it->first, pivot_it->first)) pivot_it = it;
    }
    const Word pivot = pivot_it->first;
    const Scalar c = pivot_it->second;
    auto col = change.find(pivot);
    if (col == change.end()) {
      throw ContractViolation("solve_triangular: no basis vector indexed by " + pivot.to_string());
    }
    const TensorVector& image = col->second;
    if (image.basis() != target.basis() || image.length() != target.length()) {
      throw ContractViolation("solve_triangular: basis vector " + pivot.to_string() +
                              " is not written in the target's basis");
    }
    if (image.coeff(pivot) != 1) {
      throw ContractViolation("solve_triangular: diagonal entry at " + pivot.to_string() +
                              " is not 1");
    }
    for (const auto& [w, a] : image.terms()) {
      if (w != pivot && !less(pivot, w)) {
        throw ContractViolation("solve_triangular: basis vector " + pivot.to_string() +
                                " has support on " + w.to_string() + " below the diagonal");
      }
    }
    result.add_term(pivot, c);
    residual.add_scaled(image, -c);
  }
  return result;
}

std::size_t rank(const std::vector<TensorVector>& family) {
  // Rows reduced so that each pivot word is the smallest word of its row.
  std::map<Word, TensorVector> pivots;
  for (const TensorVector& v : family) {
    TensorVector row = v;
    while (!row.is_zero()) {
      const auto& [lead, c] = *row.terms().begin();
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const Word key = lead;
        row *= Scalar(1) / Scalar(c);
        pivots.emplace(key, std::move(row));
        break;
      }
      row.add_scaled(it->second, -Scalar(c));
    }
  }
  return pivots.size();
}

TensorVector reverse_factors(const TensorVector& v) {
  TensorVector out(v.length(), v.basis());
  for (const auto& [w, c] : v.terms()) out.add_term(w.reversed(), c);
  return out;
}

}  // namespace mvbasis
