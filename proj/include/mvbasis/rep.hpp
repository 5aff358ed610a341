#pragma once

// sl2 acting on V^{(x)n}: the Leibniz-rule action of e, f, h, the Casimir element,
// the isotypical filtration spanned by the y-basis, and projections onto Cartan
// components of tensor products V(n_1) (x) ... (x) V(n_r) embedded in V^{(x)N}.

#include <cstddef>
#include <string>
#include <vector>

#include "mvbasis/report.hpp"
#include "mvbasis/tensor_vector.hpp"
#include "mvbasis/word.hpp"

namespace mvbasis {

enum class LieGenerator { e, f, h };

inline const char* to_string(LieGenerator g) {
  switch (g) {
    case LieGenerator::e: return "e";
    case LieGenerator::f: return "f";
    case LieGenerator::h: return "h";
  }
  return "?";
}

/// g . v, extended from e x_- = x_+, f x_+ = x_-, h x_(+/-) = (+/-) x_(+/-) by the Leibniz rule.
/// y-basis input is converted to the x-basis and the result converted back.
TensorVector act(LieGenerator g, const TensorVector& v);

/// Eigenvalue of the Casimir element on V(p): p^2/2 + p.
Scalar casimir_eigenvalue(int p);

/// C v with C = ef + fe + h^2/2.
TensorVector casimir(const TensorVector& v);

/// Projection of V^{(x)n} onto its top isotypical component V(n), as the Lagrange
/// polynomial in the Casimir element over the weights p < n with p = n mod 2.
TensorVector cartan_project(const TensorVector& v, std::size_t n);

/// Multiplicity of V(p) in V^{(x)n}: C(n, (n-p)/2) - C(n, (n-p)/2 - 1), zero on the wrong parity.
std::size_t isotypic_multiplicity(std::size_t n, std::size_t p);

/// A composition (n_1, ..., n_r) of N = sum n_j with every part >= 1.
struct Shape {
  std::vector<std::size_t> parts;

  std::size_t total() const;
  /// Comma-separated positive integers, e.g. "2,1".
  static Shape parse(const std::string& text);
  /// Splits a word of length total() into its blocks.
  std::vector<Word> blocks(const Word& w) const;
};

struct ShapeBasisVector {
  std::vector<Word> index;  ///< the blocks of the surviving word
  TensorVector vector;      ///< image of y_w under the block-wise projection, x-basis
};

/// Applies p_(1) (x) ... (x) p_(r) to every y_w, |w| = N, and keeps the nonzero images,
/// in lexicographic order of w.
std::vector<ShapeBasisVector> mv_basis_of_shape(const Shape& shape);

/// Every block of w (split according to `shape`) is of the form +...+-...-.
bool is_block_shaped(const Word& w, const Shape& shape);

// ---------------------------------------------------------------------------
// Verification suites

/// e y_w - eps(w) y_{e~(w)} and f y_w - phi(w) y_{f~(w)} lie in the span of the y_v with
/// l(v) <= l(w) - 1, for all words of length n.
Report check_crystal_compat(std::size_t n);

/// Every generator maps span{y_w : l(w) <= p} into itself, length n.
Report check_filtration_stability(std::size_t n);

/// #{w : l(w) = p} = (p + 1) * isotypic_multiplicity(n, p) for all p.
Report check_layer_dimensions(std::size_t n);

/// Semistable words of length 2m are counted by Catalan(m) and their y_w are killed by e and f.
Report check_invariants(std::size_t m);

/// Idempotence, equivariance, the highest-weight vector, and p(y_w) = 0 for l(w) < n.
Report check_cartan_projection(std::size_t n);

/// Survivors of mv_basis_of_shape are exactly the block-shaped words and are independent.
Report check_shape_basis(const Shape& shape);

}  // namespace mvbasis
