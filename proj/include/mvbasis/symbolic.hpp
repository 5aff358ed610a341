#pragma once

// Exact sparse multivariate polynomials over Q, rational functions with factored
// denominators, and 2x2 matrices over them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvbasis/scalar.hpp"

namespace mvbasis {

/// Ordered, unique variable names. Order fixes the lex monomial order: the first
/// variable is the most significant.
class VarTable {
 public:
  static constexpr std::size_t max_vars = 40;

  static std::shared_ptr<const VarTable> make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of a variable; throws ContractViolation if absent.
  std::size_t index(const std::string& name) const;
  bool contains(const std::string& name) const;

 private:
  explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

using Exponents = std::array<std::uint8_t, VarTable::max_vars>;

struct Monomial {
  Exponents exp{};
  Scalar coeff;
};

class RationalFunction;

/// Sparse polynomial; terms sorted by decreasing lex order of exponents, no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(VarTablePtr vars) : vars_(std::move(vars)) {}

  static Polynomial constant(VarTablePtr vars, const Scalar& c);
  static Polynomial variable(VarTablePtr vars, std::size_t index);
  static Polynomial variable(VarTablePtr vars, const std::string& name);
  /// Builds from unsorted terms, combining duplicates.
  static Polynomial from_terms(VarTablePtr vars, std::vector<Monomial> terms);

  const VarTablePtr& vars() const { return vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of the empty monomial).
  Scalar constant_term() const;
  const Monomial& leading() const { return terms_.front(); }

  std::size_t degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  /// Coefficient of var^k, as a polynomial free of var.
  Polynomial coefficient_of(std::size_t var, std::size_t k) const;
  /// Smallest exponent of var over all terms (0 for the zero polynomial).
  std::size_t min_degree_in(std::size_t var) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned k) const;

  /// Canonical text: monomials in decreasing lex order with explicit coefficients.
  std::string to_string() const;

 private:
  void check_same_table(const Polynomial& other) const;

  VarTablePtr vars_;
  std::vector<Monomial> terms_;
};

bool operator==(const Monomial& a, const Monomial& b);

/// All of add/sub/mul in one entry point.
enum class PolyOp { add, sub, mul };
Polynomial poly_arith(PolyOp op, const Polynomial& a, const Polynomial& b);

/// a*b + c*d (or a*b - c*d), merged in one pass without forming either product.
Polynomial mul_add(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& d,
                   bool subtract = false);

/// Exact quotient a / b; throws InexactDivision if b does not divide a.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
/// True and the quotient when b divides a.
bool try_exact_div(const Polynomial& a, const Polynomial& b, Polynomial& quotient);

/// Substitutes a polynomial for one variable.
Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value);

/// Substitutes a rational function for one variable.
RationalFunction eval_at(const Polynomial& p, std::size_t var, const RationalFunction& value);

/// J_d: monomials whose weighted degree is at least `threshold`.
struct GradedIdealSpec {
  std::vector<int> weights;  ///< one per variable of the table
  int threshold = 1;

  int degree_of(const Exponents& e) const;
};

/// Reduces p modulo J_d, i.e. drops every monomial of weighted degree >= threshold.
Polynomial truncate_graded(const Polynomial& p, const GradedIdealSpec& spec);

/// Reduction modulo the ideal generated by `gens` (power 1) or its square (power 2).
Polynomial reduce_mod_variables(const Polynomial& p, const std::set<std::size_t>& gens, int power);

/// Moves the variables of `p` into a table that contains all of them (by name).
Polynomial rebase(const Polynomial& p, const VarTablePtr& target);

// ---------------------------------------------------------------------------

/// num / prod(factor_i ^ e_i). Factors are monic, non-constant, and pairwise distinct.
///
/// Denominators are kept factored instead of gcd-reduced: the chart recursion only
/// ever divides by quantities it has already produced, so cancellation is done by
/// trial division of the numerator against the known factors. Equality is decided by
/// bringing both sides over a common factored denominator.
class RationalFunction {
 public:
  struct Factor {
    Polynomial poly;
    int power;
  };

  explicit RationalFunction(VarTablePtr vars) : num_(std::move(vars)) {}
  RationalFunction(Polynomial num) : num_(std::move(num)) {}  // NOLINT(implicit)

  const VarTablePtr& vars() const { return num_.vars(); }
  const Polynomial& numerator() const { return num_; }
  const std::vector<Factor>& factors() const { return den_; }
  /// Expanded denominator.
  Polynomial denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  /// The polynomial, if the denominator is trivial; throws ContractViolation otherwise.
  const Polynomial& as_polynomial() const;

  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(RationalFunction a);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction mul_add(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                                  const RationalFunction& d, bool subtract, bool reduce);

  /// Substitutes a rational function for one variable. Throws std::domain_error if a
  /// denominator factor vanishes.
  RationalFunction eval(std::size_t var, const RationalFunction& value) const;

  /// Exact division of the numerator by a polynomial (the denominator is untouched).
  RationalFunction divide_numerator(const Polynomial& divisor) const;

  std::string to_string() const;

 private:
  void add_signed(const RationalFunction& other, bool negate);
  void add_denominator_factor(Polynomial p, int power);
  /// p monic and free of monomial content.
  void insert_factor(Polynomial p, int power);
  void cancel();

  Polynomial num_;
  std::vector<Factor> den_;
};

/// a*b + c*d (or a*b - c*d) over one denominator, with a single merged numerator product.
/// Without `reduce` the result may share factors between numerator and denominator,
/// which is enough for a comparison and skips the trial divisions.
RationalFunction mul_add(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                         const RationalFunction& d, bool subtract = false, bool reduce = true);

/// [[p, q], [r, s]] over rational functions.
struct PolyMatrix2 {
  RationalFunction p, q, r, s;

  RationalFunction det(bool reduce = true) const { return mul_add(p, s, q, r, true, reduce); }
  friend PolyMatrix2 operator*(const PolyMatrix2& a, const PolyMatrix2& b);
  friend bool operator==(const PolyMatrix2& a, const PolyMatrix2& b) {
    return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s;
  }
};

}  // namespace mvbasis
