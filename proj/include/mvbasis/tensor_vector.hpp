#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mvbasis/scalar.hpp"
#include "mvbasis/word.hpp"

namespace mvbasis {

/// Which basis of V^{(x)n} a vector is written in: the tensor basis x_w or the y_w basis.
enum class BasisTag { x, y };

inline char to_char(BasisTag t) { return t == BasisTag::x ? 'x' : 'y'; }
inline BasisTag other(BasisTag t) { return t == BasisTag::x ? BasisTag::y : BasisTag::x; }

/// A sparse exact linear combination of words of one fixed length.
///
/// Terms are kept in lexicographic word order and never store a zero coefficient.
class TensorVector {
 public:
  using Terms = std::map<Word, Scalar>;

  TensorVector(std::size_t n, BasisTag basis) : n_(n), basis_(basis) {}

  static TensorVector unit(const Word& w, BasisTag basis, const Scalar& coeff = 1);

  std::size_t length() const { return n_; }
  BasisTag basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  Scalar coeff(const Word& w) const;

  /// Adds c * w, dropping the entry if it cancels. Throws ContractViolation on a length mismatch.
  void add_term(const Word& w, const Scalar& c);

  TensorVector& operator+=(const TensorVector& other);
  TensorVector& operator-=(const TensorVector& other);
  TensorVector& operator*=(const Scalar& c);

  /// Adds c * other without materializing the scaled copy.
  void add_scaled(const TensorVector& other, const Scalar& c);

  friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
  friend TensorVector operator-(TensorVector a) { return a *= Scalar(-1); }
  friend TensorVector operator*(const Scalar& c, TensorVector a) { return a *= c; }
  friend bool operator==(const TensorVector&, const TensorVector&) = default;

  /// Human-readable sum such as "x[-+] - x[+-]"; "0" for the zero vector.
  std::string to_string() const;

 private:
  void check_compatible(const TensorVector& other, const char* op) const;

  std::size_t n_;
  BasisTag basis_;
  Terms terms_;
};

TensorVector add(const TensorVector& u, const TensorVector& v);

/// Tensor product of two x-basis vectors: lengths add, supports concatenate.
/// y-tagged inputs are rejected; convert to the x-basis first.
TensorVector tensor(const TensorVector& u, const TensorVector& v);

/// New basis vectors written in the old basis: change[w] is the expansion of new_w.
using ChangeOfBasis = std::map<Word, TensorVector>;

/// Strict total order on words of one length.
using WordOrder = std::function<bool(const Word&, const Word&)>;

/// Coordinates of `target` (old basis) in the new basis described by `change`.
///
/// `change` must be unitriangular for `less`: change[w] has coefficient 1 on w and
/// every other word in its support comes after w. Back-substitution proceeds from the
/// smallest word upward. Violations throw ContractViolation.
TensorVector solve_triangular(const ChangeOfBasis& change, const TensorVector& target,
                              BasisTag result_basis, const WordOrder& less = std::less<Word>{});

/// Rank of a family of vectors of one length and basis, by exact Gaussian elimination.
std::size_t rank(const std::vector<TensorVector>& family);

/// Reverses the order of the tensor factors of every term.
TensorVector reverse_factors(const TensorVector& v);

}  // namespace mvbasis
