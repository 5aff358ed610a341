#pragma once

// Chart transition maps between the parametrizations indexed by two words v, w,
// the truncated recursions used to locate one chart's special fibre inside the
// closure of another, and the resulting 0/1 rule for the coefficients of
// x_- (x) y_{w'} in the y-basis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mvbasis/report.hpp"
#include "mvbasis/symbolic.hpp"
#include "mvbasis/tensor_vector.hpp"
#include "mvbasis/word.hpp"

namespace mvbasis {

/// generic: variables z, x1..xn, a1..an.
/// base_changed: x2 = ... = xn specialized to 0 and x = x1, so the variables are z, x, a1..an
/// (z then plays the role of the shifted variable z - x2).
enum class ChartMode { generic, base_changed };

class ChartVariables {
 public:
  ChartVariables(std::size_t n, ChartMode mode);

  std::size_t n() const { return n_; }
  ChartMode mode() const { return mode_; }
  const VarTablePtr& table() const { return table_; }

  std::size_t z() const { return 0; }
  /// Index of a_l, 1-based.
  std::size_t a(std::size_t l) const;
  /// Index of x (base-changed mode only).
  std::size_t x() const;

  Polynomial z_poly() const { return Polynomial::variable(table_, z()); }
  Polynomial a_poly(std::size_t l) const { return Polynomial::variable(table_, a(l)); }
  /// The point x_l: a variable in generic mode; x for l = 1 and 0 otherwise when base-changed.
  Polynomial x_at(std::size_t l) const;
  Polynomial constant(const Scalar& c) const { return Polynomial::constant(table_, c); }

 private:
  std::size_t n_;
  ChartMode mode_;
  VarTablePtr table_;
};

// ---------------------------------------------------------------------------
// Transition maps

struct TransitionState {
  std::size_t ell = 0;
  RationalFunction b;
  PolyMatrix2 M;
  /// Denominator of the fraction defining b (the function inverted at this step).
  RationalFunction f_den;
};

/// phi_+(x, a) = [[z - x, a], [0, 1]],  phi_-(x, a) = [[1, 0], [a, z - x]].
PolyMatrix2 chart_factor(Letter l, const ChartVariables& vars, const Polynomial& x, const RationalFunction& a);

/// States for l = 1..n. Throws RecursionFalsified if a division by (z - x_l) is not exact.
std::vector<TransitionState> transition_sequence(const Word& v, const Word& w,
                                                 ChartMode mode = ChartMode::generic);

/// Determinant one and phi_{w(l)}(x_l, b_l) M_l = M_{l-1} phi_{v(l)}(x_l, a_l) at every step.
Report check_transition(const Word& v, const Word& w, ChartMode mode = ChartMode::generic);

// ---------------------------------------------------------------------------
// Parallel pairs

/// v(1) = +, w(1) = -, v(l) = w(l) for 1 < l < n and (v(n), w(n)) = (-, +).
bool is_parallel_pair(const Word& v, const Word& w);

/// Combinatorial data of a parallel pair, read off the path of v.
struct ParallelCase {
  Word v;
  Word w;
  std::vector<int> d;            ///< prefix weights of v, index 0..n
  std::vector<int> D;            ///< running maxima, index 0..n
  std::vector<bool> significant; ///< S(v), index 1..n
  int top = 0;                   ///< D_n
  std::size_t L = 0;             ///< largest significant '+' of v

  /// Throws ContractViolation unless is_parallel_pair(v, w).
  static ParallelCase make(const Word& v, const Word& w);

  std::size_t n() const { return v.size(); }
  bool plus_at(std::size_t l) const { return v.at(l) == Letter::plus; }
  /// l in P(v) and S(v).
  bool plus_significant(std::size_t l) const { return plus_at(l) && significant[l]; }
  /// Largest element of {1..l} among the significant '+' of v.
  std::size_t lower(std::size_t l) const;
  /// The last letter of w' = w(2..n) is significant in w'.
  bool last_letter_significant() const { return d[n() - 1] == D[n() - 1]; }

  /// R(l) = {j in 2..l : v(j) = -, d_{j-1} = D_{j-1}}.
  std::vector<std::size_t> R(std::size_t l) const;
  /// Sum of a_j over j in 2..l with v(j) = - and d_{j-1} = D_n.
  Polynomial sigma(const ChartVariables& vars, std::size_t l) const;
  /// Sum of a_j over j in 2..n with v(j) = - and d_{j-1} = D_{j-1} = d_l.
  Polynomial tau(const ChartVariables& vars, std::size_t l) const;
  /// deg x = 1, deg a_l = D_n + 1 - d_l on the significant '+', 0 elsewhere.
  GradedIdealSpec grading(const ChartVariables& vars, int threshold) const;
  /// x and the a_l with v(l) = +.
  std::set<std::size_t> p_generators(const ChartVariables& vars) const;

  std::string label() const { return v.to_string() + "/" + w.to_string(); }
};

/// All parallel pairs of length n, ordered by v.
std::vector<ParallelCase> parallel_cases(std::size_t n);

struct TildeState {
  std::size_t ell = 0;
  Polynomial P;
  Polynomial Q;
  std::optional<Polynomial> c;  ///< present when v(l) = w(l) = +
};

struct TildeSequence {
  ChartVariables vars;
  std::vector<TildeState> states;  ///< l = 1..n-1
  Polynomial c_last;               ///< (P_{n-1} + a_n Q_{n-1})(0)

  const TildeState& at(std::size_t l) const { return states.at(l - 1); }
};

/// The truncated recursion in base-changed variables. Throws RecursionFalsified on an
/// inexact division by z.
TildeSequence tilde_sequence(const ParallelCase& pc);

/// z^{D_l - d_l} divides Q_l; Q_{n-1}(0) = 0 when the last letter of w' is not
/// significant; independence from a_j for non-significant '+'; and, for small n,
/// agreement with the base-changed transition matrices on the locus cut out by the c_l.
Report check_induc_congruences(const ParallelCase& pc);

/// Graded congruences for P, Q and the c_l.
Report check_valtilde(const ParallelCase& pc);

/// Congruences modulo the ideal p of x and the a_l with v(l) = +, and its square.
Report check_prepnaka(const ParallelCase& pc);

/// Elimination of the interior significant a_l from c_n x^{D-1} + ..., ending with an
/// element in x, a_1 and the a_j with v(j) = - congruent to x^q (a_1 sigma_n - x^D).
Report elimination_demo(const ParallelCase& pc);

// ---------------------------------------------------------------------------
// Coefficient rule

/// Coefficient of y_v in x_- (x) y_{w'} where w = -w'. Always 0 or 1.
/// Throws ContractViolation unless w(1) = -, |v| = |w| and wt(v) = wt(w).
Scalar coefficient_rule(const Word& v, const Word& w);

/// Whether the special fibre of v's chart lies in the closure attached to w, for v above w.
/// Throws ContractViolation unless (v(1), w(1)) = (+, -), wt(v) = wt(w), and the path of v
/// stays strictly above that of w before the last step.
bool inclusion_predicate(const Word& v, const Word& w);

/// x_- (x) y_{w'} in the y-basis, solved against the y-to-x change of basis.
TensorVector first_letter_expansion(const Word& w);

// ---------------------------------------------------------------------------
// Drivers

struct ChartsVerifyOptions {
  std::size_t n_max = 5;              ///< exhaustive transition pairs up to this length
  std::size_t random_n = 6;           ///< length of the random pairs
  std::size_t random_count = 0;       ///< number of random pairs
  std::size_t parallel_n_max = 7;     ///< lemma battery up to this length
  std::size_t elimination_n_max = 5;
  std::uint64_t seed = 1;
  unsigned threads = 0;               ///< 0: hardware concurrency
};

Report verify_transitions(const ChartsVerifyOptions& opts);
Report verify_parallel_lemmas(const ChartsVerifyOptions& opts);

/// coefficient_rule against first_letter_expansion for every w(1) = - of length <= n_max.
Report verify_coefficient_rule(std::size_t n_max, unsigned threads = 0);

}  // namespace mvbasis
