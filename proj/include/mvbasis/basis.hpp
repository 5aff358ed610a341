#pragma once

// The y-basis of V^{(x)n}, V = K^2 with basis (x_+, x_-):
//
//   y_() = 1,   y_{+w} = x_+ (x) y_w,   y_{-w} = x_- (x) y_w - sum_{v in P(w)} x_+ (x) y_v,
//
// together with the inverse expansion of x_w in the y-basis and the structural
// checks that characterize the family.

#include <array>
#include <cstddef>
#include <unordered_map>

#include "mvbasis/report.hpp"
#include "mvbasis/tensor_vector.hpp"
#include "mvbasis/word.hpp"

namespace mvbasis {

/// Memoized expansions between the x- and y-bases.
///
/// An instance is not thread-safe: confine each instance to one thread. The free
/// functions below use one instance per thread.
class YBasis {
 public:
  /// y_w written in the x-basis.
  const TensorVector& y_in_x(const Word& w);
  /// x_w written in the y-basis, peeling letters off the front:
  /// x_+ (x) y_u = y_{+u},  x_- (x) y_u = y_{-u} + sum_{v in P(u)} y_{+v}.
  const TensorVector& x_in_y(const Word& w);

  /// Linear extension of x_in_y.
  TensorVector expand_in_y(const TensorVector& v);
  /// Linear extension of y_in_x.
  TensorVector expand_in_x(const TensorVector& v);

  /// y_w assembled as y_{w_-r} (x) x_+ (x) ... (x) x_+ (x) y_{w_0} (x) x_- (x) ... (x) y_{w_s}
  /// from the semistable factorization of w.
  TensorVector factor_product(const Word& w);

  /// The change of basis {y_w -> y_in_x(w)} for every word of length n.
  ChangeOfBasis y_change(std::size_t n);

  void clear();

 private:
  std::unordered_map<Word, TensorVector> y_cache_;
  std::unordered_map<Word, TensorVector> x_cache_;
};

/// Per-thread shared instance used by the free functions.
YBasis& thread_basis();

inline const TensorVector& y_in_x(const Word& w) { return thread_basis().y_in_x(w); }
inline const TensorVector& x_in_y(const Word& w) { return thread_basis().x_in_y(w); }
inline TensorVector expand_in_y(const TensorVector& v) { return thread_basis().expand_in_y(v); }
inline TensorVector expand_in_x(const TensorVector& v) { return thread_basis().expand_in_x(v); }
inline TensorVector factor_product(const Word& w) { return thread_basis().factor_product(w); }

/// x_l (x) v for an x-basis vector v.
TensorVector prepend(Letter l, const TensorVector& v);

/// Words of the form +...+-...-.
bool is_shape_word(const Word& w);

/// Pointwise path dominance: d_upper[l] >= d_lower[l] for every l.
bool path_weakly_above(const Word& upper, const Word& lower);

/// Verifies, for all words of length <= n, that (a) shape words satisfy y_w = x_w,
/// (b) y_{-+} = x_{-+} - x_{+-}, and (c) y_{w'uw''} is obtained from y_{w'w''} by
/// inserting y_u between the two tensor legs, for every nonempty semistable u with
/// |u| <= max_inserted and every split.
Report check_characterization(std::size_t n, std::size_t max_inserted = 4);

/// The x-to-y transition matrix for length n: unit diagonal, nonnegative integer
/// entries, and support only on words whose path lies weakly above.
Report check_transition_matrix(std::size_t n);

/// factor_product(w) = y_in_x(w) for every word of length n.
Report check_factor_product(std::size_t n);

/// For every word of length n: expand_in_y undoes y_in_x, and x_in_y agrees with an
/// independent back-substitution against the y-to-x change of basis.
Report check_round_trip(std::size_t n);

/// Block split (n1, n2, n3) of a word of length n1 + n2 + n3.
using Split = std::array<std::size_t, 3>;

/// Truncation property of the expansion of y_{w(1)} (x) y_{w(2)w(3)} in the y-basis:
/// each term v has wt(v(3)) < wt(w(3)) or v(3) = w(3), and the terms with v(3) = w(3)
/// reproduce the expansion of y_{w(1)} (x) y_{w(2)} in length n1 + n2.
Report check_truncation(const Word& w, const Split& split);

}  // namespace mvbasis
