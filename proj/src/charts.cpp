#include "mvbasis/charts.hpp"

#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mvbasis/basis.hpp"
#include "mvbasis/errors.hpp"
#include "mvbasis/parallel.hpp"

namespace mvbasis {

// ---------------------------------------------------------------------------
// Variables

ChartVariables::ChartVariables(std::size_t n, ChartMode mode) : n_(n), mode_(mode) {
  std::vector<std::string> names{"z"};
  if (mode == ChartMode::generic) {
    for (std::size_t l = 1; l <= n; ++l) names.push_back("x" + std::to_string(l));
  } else {
    names.push_back("x");
  }
  for (std::size_t l = 1; l <= n; ++l) names.push_back("a" + std::to_string(l));
  table_ = VarTable::make(std::move(names));
}

std::size_t ChartVariables::a(std::size_t l) const {
  if (l < 1 || l > n_) throw ContractViolation("a_" + std::to_string(l) + " out of range");
  return (mode_ == ChartMode::generic ? n_ : 1) + l;
}

std::size_t ChartVariables::x() const {
  if (mode_ != ChartMode::base_changed) throw ContractViolation("x is only defined after the base change");
  return 1;
}

Polynomial ChartVariables::x_at(std::size_t l) const {
  if (l < 1 || l > n_) throw ContractViolation("x_" + std::to_string(l) + " out of range");
  if (mode_ == ChartMode::generic) return Polynomial::variable(table_, l);
  return l == 1 ? Polynomial::variable(table_, 1) : constant(0);
}

// ---------------------------------------------------------------------------
// Transition maps

namespace {

RationalFunction at_point(const RationalFunction& f, const ChartVariables& vars, const Polynomial& x) {
  return f.eval(vars.z(), RationalFunction(x));
}

RationalFunction div_linear(const RationalFunction& f, const Polynomial& lin, std::size_t ell) {
  try {
    return f.divide_numerator(lin);
  } catch (const InexactDivision&) {
    throw RecursionFalsified("step " + std::to_string(ell) + ": " + f.to_string() +
                             " is not divisible by " + lin.to_string());
  }
}

}  // namespace

PolyMatrix2 chart_factor(Letter l, const ChartVariables& vars, const Polynomial& x, const RationalFunction& a) {
  const RationalFunction lin = vars.z_poly() - x;
  const RationalFunction one = vars.constant(1);
  const RationalFunction zero = vars.constant(0);
  if (l == Letter::plus) return {lin, a, zero, one};
  return {one, zero, a, lin};
}

std::vector<TransitionState> transition_sequence(const Word& v, const Word& w, ChartMode mode) {
  if (v.size() != w.size()) throw ContractViolation("transition_sequence: words of different lengths");
  const std::size_t n = v.size();
  const ChartVariables vars(n, mode);
  RationalFunction P = vars.constant(1), Q = vars.constant(0), R = vars.constant(0), S = vars.constant(1);
  std::vector<TransitionState> out;
  out.reserve(n);
  for (std::size_t l = 1; l <= n; ++l) {
    const Polynomial xl = vars.x_at(l);
    const Polynomial lin = vars.z_poly() - xl;
    const RationalFunction a = vars.a_poly(l);
    RationalFunction num(vars.table()), den(vars.table());
    const bool vp = v.at(l) == Letter::plus;
    const bool wp = w.at(l) == Letter::plus;
    if (vp && wp) {
      const RationalFunction top = a * P + Q;
      num = at_point(top, vars, xl);
      den = at_point(a * R + S, vars, xl);
      const RationalFunction b = num / den;
      RationalFunction S1 = a * R + S;
      RationalFunction Q1 = div_linear(top - b * S1, lin, l);
      P = P - b * R;
      R = RationalFunction(lin) * R;
      Q = std::move(Q1);
      S = std::move(S1);
      out.push_back({l, b, {P, Q, R, S}, den});
    } else if (!vp && wp) {
      const RationalFunction top = P + a * Q;
      num = at_point(top, vars, xl);
      den = at_point(R + a * S, vars, xl);
      const RationalFunction b = num / den;
      RationalFunction R1 = R + a * S;
      RationalFunction P1 = div_linear(top - b * R1, lin, l);
      Q = Q - b * S;
      S = RationalFunction(lin) * S;
      P = std::move(P1);
      R = std::move(R1);
      out.push_back({l, b, {P, Q, R, S}, den});
    } else if (vp && !wp) {
      const RationalFunction top = a * R + S;
      num = at_point(top, vars, xl);
      den = at_point(a * P + Q, vars, xl);
      const RationalFunction b = num / den;
      RationalFunction Q1 = a * P + Q;
      RationalFunction S1 = div_linear(top - b * Q1, lin, l);
      R = R - b * P;
      P = RationalFunction(lin) * P;
      Q = std::move(Q1);
      S = std::move(S1);
      out.push_back({l, b, {P, Q, R, S}, den});
    } else {
      const RationalFunction top = R + a * S;
      num = at_point(top, vars, xl);
      den = at_point(P + a * Q, vars, xl);
      const RationalFunction b = num / den;
      RationalFunction P1 = P + a * Q;
      RationalFunction R1 = div_linear(top - b * P1, lin, l);
      S = S - b * Q;
      Q = RationalFunction(lin) * Q;
      P = std::move(P1);
      R = std::move(R1);
      out.push_back({l, b, {P, Q, R, S}, den});
    }
  }
  return out;
}

Report check_transition(const Word& v, const Word& w, ChartMode mode) {
  CheckBuilder division("transition.exact_division");
  CheckBuilder det("transition.determinant");
  CheckBuilder inter("transition.intertwining");
  std::vector<TransitionState> states;
  try {
    states = transition_sequence(v, w, mode);
    division.expect(true, "");
  } catch (const RecursionFalsified& e) {
    division.expect(false, e.what());
  }
  const ChartVariables vars(v.size(), mode);
  const RationalFunction one = vars.constant(1);
  const RationalFunction zero = vars.constant(0);
  PolyMatrix2 prev{one, zero, zero, one};
  for (const TransitionState& st : states) {
    det.expect_lazy(st.M.det(false) == one, [&] { return "l=" + std::to_string(st.ell) + " det=" + st.M.det().to_string(); });
    const Polynomial xl = vars.x_at(st.ell);
    const PolyMatrix2 lhs = chart_factor(w.at(st.ell), vars, xl, st.b) * st.M;
    const PolyMatrix2 rhs = prev * chart_factor(v.at(st.ell), vars, xl, vars.a_poly(st.ell));
    inter.expect(lhs == rhs, "l=" + std::to_string(st.ell));
    prev = st.M;
  }
  Report r;
  r.checks = {division.finish(), det.finish(), inter.finish()};
  return r;
}

// ---------------------------------------------------------------------------
// Parallel pairs

bool is_parallel_pair(const Word& v, const Word& w) {
  const std::size_t n = v.size();
  if (n < 2 || w.size() != n) return false;
  if (v.at(1) != Letter::plus || w.at(1) != Letter::minus) return false;
  if (v.at(n) != Letter::minus || w.at(n) != Letter::plus) return false;
  for (std::size_t l = 2; l < n; ++l) {
    if (v.at(l) != w.at(l)) return false;
  }
  return true;
}

ParallelCase ParallelCase::make(const Word& v, const Word& w) {
  if (!is_parallel_pair(v, w)) {
    throw ContractViolation(v.to_string() + "/" + w.to_string() + " is not a parallel pair");
  }
  ParallelCase pc;
  pc.v = v;
  pc.w = w;
  const PathProfile prof = path_profile(v);
  pc.d = prof.d;
  pc.D = prof.D;
  pc.significant = significant_mask(v);
  pc.top = pc.D[v.size()];
  for (std::size_t l = 1; l <= v.size(); ++l) {
    if (pc.plus_significant(l)) pc.L = l;
  }
  return pc;
}

std::size_t ParallelCase::lower(std::size_t l) const {
  for (std::size_t j = l; j >= 1; --j) {
    if (plus_significant(j)) return j;
  }
  throw ContractViolation("no significant '+' up to position " + std::to_string(l));
}

std::vector<std::size_t> ParallelCase::R(std::size_t l) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 2; j <= l; ++j) {
    if (!plus_at(j) && d[j - 1] == D[j - 1]) out.push_back(j);
  }
  return out;
}

Polynomial ParallelCase::sigma(const ChartVariables& vars, std::size_t l) const {
  Polynomial s = vars.constant(0);
  for (std::size_t j = 2; j <= l; ++j) {
    if (!plus_at(j) && d[j - 1] == top) s += vars.a_poly(j);
  }
  return s;
}

Polynomial ParallelCase::tau(const ChartVariables& vars, std::size_t l) const {
  Polynomial s = vars.constant(0);
  for (std::size_t j = 2; j <= n(); ++j) {
    if (!plus_at(j) && d[j - 1] == D[j - 1] && d[j - 1] == d[l]) s += vars.a_poly(j);
  }
  return s;
}

GradedIdealSpec ParallelCase::grading(const ChartVariables& vars, int threshold) const {
  GradedIdealSpec spec;
  spec.weights.assign(vars.table()->size(), 0);
  spec.weights[vars.x()] = 1;
  for (std::size_t l = 1; l <= n(); ++l) {
    if (plus_significant(l)) spec.weights[vars.a(l)] = top + 1 - d[l];
  }
  spec.threshold = threshold;
  return spec;
}

std::set<std::size_t> ParallelCase::p_generators(const ChartVariables& vars) const {
  std::set<std::size_t> gens{vars.x()};
  for (std::size_t l = 1; l <= n(); ++l) {
    if (plus_at(l)) gens.insert(vars.a(l));
  }
  return gens;
}

std::vector<ParallelCase> parallel_cases(std::size_t n) {
  std::vector<ParallelCase> out;
  if (n < 2) return out;
  for (const Word& mid : enumerate_words(n - 2)) {
    const Word v = Letter::plus + mid + Letter::minus;
    const Word w = Letter::minus + mid + Letter::plus;
    out.push_back(ParallelCase::make(v, w));
  }
  return out;
}

namespace {

Polynomial at_zero(const Polynomial& p, const ChartVariables& vars) { return p.coefficient_of(vars.z(), 0); }

Polynomial div_z(const Polynomial& p, const ChartVariables& vars, std::size_t ell) {
  Polynomial q(vars.table());
  if (!try_exact_div(p, vars.z_poly(), q)) {
    throw RecursionFalsified("step " + std::to_string(ell) + ": " + p.to_string() + " is not divisible by z");
  }
  return q;
}

}  // namespace

TildeSequence tilde_sequence(const ParallelCase& pc) {
  const std::size_t n = pc.n();
  TildeSequence seq{ChartVariables(n, ChartMode::base_changed), {}, Polynomial(nullptr)};
  const ChartVariables& vars = seq.vars;
  Polynomial P = vars.z_poly() - vars.x_at(1);
  Polynomial Q = vars.a_poly(1);
  seq.states.push_back({1, P, Q, std::nullopt});
  for (std::size_t l = 2; l + 1 <= n; ++l) {
    const Polynomial a = vars.a_poly(l);
    std::optional<Polynomial> c;
    if (pc.plus_at(l)) {
      if (pc.significant[l]) {
        const Polynomial t = a * P + Q;
        c = at_zero(t, vars);
        Q = div_z(t - *c, vars, l);
      } else {
        c = a;
        Q = div_z(Q - at_zero(Q, vars), vars, l);
      }
    } else {
      P = P + a * Q;
      Q = vars.z_poly() * Q;
    }
    seq.states.push_back({l, P, Q, c});
  }
  seq.c_last = at_zero(P + vars.a_poly(n) * Q, vars);
  return seq;
}

namespace {

std::string show(const Polynomial& p) { return p.to_string(); }

std::string at_step(std::size_t l, const std::string& what) { return "l=" + std::to_string(l) + ": " + what; }

constexpr std::size_t substitution_n_max = 6;

/// Values of a_j on the locus where the c_j with j in P(w), j < n, vanish, written in the
/// remaining variables. Empty optional when a pivot P_{j-1}(0) vanishes identically.
std::optional<std::map<std::size_t, RationalFunction>> solve_interior_equations(const ParallelCase& pc,
                                                                                 const TildeSequence& seq) {
  const ChartVariables& vars = seq.vars;
  std::map<std::size_t, RationalFunction> values;
  auto apply = [&](RationalFunction f) {
    for (const auto& [j, val] : values) f = f.eval(vars.a(j), val);
    return f;
  };
  for (std::size_t j = 2; j + 1 <= pc.n(); ++j) {
    if (!pc.plus_at(j)) continue;
    if (!pc.significant[j]) {
      values.emplace(j, RationalFunction(vars.constant(0)));
      continue;
    }
    const RationalFunction p0 = apply(at_zero(seq.at(j - 1).P, vars));
    const RationalFunction q0 = apply(at_zero(seq.at(j - 1).Q, vars));
    if (p0.is_zero()) return std::nullopt;
    values.emplace(j, -q0 / p0);
  }
  return values;
}

}  // namespace

Report check_induc_congruences(const ParallelCase& pc) {
  const TildeSequence seq = tilde_sequence(pc);
  const ChartVariables& vars = seq.vars;
  const std::size_t n = pc.n();

  CheckBuilder divis("induc.divisibility");
  for (std::size_t l = 1; l < n; ++l) {
    const Polynomial& Q = seq.at(l).Q;
    const std::size_t k = static_cast<std::size_t>(pc.D[l] - pc.d[l]);
    divis.expect_lazy(Q.is_zero() || Q.min_degree_in(vars.z()) >= k,
                      [&] { return at_step(l, "z^" + std::to_string(k) + " does not divide " + show(Q)); });
  }

  CheckBuilder exclus("induc.exclusion");
  if (pc.last_letter_significant()) {
    exclus.skip("last letter of w' is significant");
  } else {
    const Polynomial q0 = at_zero(seq.at(n - 1).Q, vars);
    exclus.expect_lazy(q0.is_zero(), [&] { return "Q(0) = " + show(q0); });
  }

  CheckBuilder indep("induc.independence");
  for (std::size_t j = 2; j <= n; ++j) {
    if (!pc.plus_at(j) || pc.significant[j]) continue;
    const std::size_t aj = vars.a(j);
    for (std::size_t l = 1; l < n; ++l) {
      const TildeState& st = seq.at(l);
      indep.expect(!st.P.depends_on(aj) && !st.Q.depends_on(aj), at_step(l, "P or Q involves a" + std::to_string(j)));
      if (st.c && pc.plus_significant(l)) {
        indep.expect(!st.c->depends_on(aj), at_step(l, "c involves a" + std::to_string(j)));
      }
    }
    indep.expect(!seq.c_last.depends_on(aj), "c_n involves a" + std::to_string(j));
  }
  if (indep.finish().cases == 0) indep.skip("no non-significant '+' in v");

  CheckBuilder subst("induc.substitution");
  if (n > substitution_n_max) {
    subst.skip("only run for n <= " + std::to_string(substitution_n_max));
  } else {
    const auto values = solve_interior_equations(pc, seq);
    if (!values) {
      subst.skip("a pivot vanishes identically on the locus");
    } else {
      const std::vector<TransitionState> trans = transition_sequence(pc.v, pc.w, ChartMode::base_changed);
      auto apply = [&](RationalFunction f) {
        for (const auto& [j, val] : *values) f = f.eval(vars.a(j), val);
        return f;
      };
      try {
        for (std::size_t l = 1; l < n; ++l) {
          const RationalFunction P = apply(trans[l - 1].M.p);
          const RationalFunction Q = apply(trans[l - 1].M.q);
          const RationalFunction Pt = apply(seq.at(l).P);
          const RationalFunction Qt = apply(seq.at(l).Q);
          subst.expect_lazy(P == Pt, [&] { return at_step(l, "P " + P.to_string() + " vs " + Pt.to_string()); });
          subst.expect_lazy(Q == Qt, [&] { return at_step(l, "Q " + Q.to_string() + " vs " + Qt.to_string()); });
        }
      } catch (const std::domain_error&) {
        subst.skip("a denominator vanishes on the locus");
      }
    }
  }

  Report r;
  r.checks = {divis.finish(), exclus.finish(), indep.finish(), subst.finish()};
  return r;
}

Report check_valtilde(const ParallelCase& pc) {
  const TildeSequence seq = tilde_sequence(pc);
  const ChartVariables& vars = seq.vars;
  const std::size_t n = pc.n();
  const int D = pc.top;
  const Polynomial z = vars.z_poly();
  const Polynomial x = vars.x_at(1);
  const Polynomial aL = vars.a_poly(pc.L);
  auto vanishes = [&](const Polynomial& p, int threshold) {
    return truncate_graded(p, pc.grading(vars, threshold)).is_zero();
  };

  CheckBuilder cp("valtilde.p");
  for (std::size_t l = 1; l < n; ++l) {
    const Polynomial& P = seq.at(l).P;
    if (l <= pc.L) {
      cp.expect_lazy(vanishes(P - (z - x), 2), [&] { return at_step(l, "P = " + show(P)); });
    }
    if (l >= pc.L) {
      const Polynomial target = aL * pc.sigma(vars, l) - x;
      const Polynomial p0 = at_zero(P, vars);
      cp.expect_lazy(vanishes(p0 - target, 2), [&] { return at_step(l, "P(0) = " + show(p0)); });
    }
  }

  CheckBuilder cq("valtilde.q");
  for (std::size_t l = 1; l < n; ++l) {
    const Polynomial& Q = seq.at(l).Q;
    const std::size_t lm = pc.lower(l);
    const Polynomial target = z.pow(static_cast<unsigned>(pc.D[l] - pc.d[l])) * vars.a_poly(lm);
    cq.expect_lazy(vanishes(Q - target, D + 2 - pc.d[lm]), [&] { return at_step(l, "Q = " + show(Q)); });
  }

  CheckBuilder cc("valtilde.c_interior");
  for (std::size_t l = 2; l < n; ++l) {
    if (!pc.plus_significant(l)) continue;
    const Polynomial& c = *seq.at(l).c;
    const Polynomial target = vars.a_poly(pc.lower(l - 1)) - vars.a_poly(l) * x;
    cc.expect_lazy(vanishes(c - target, D + 3 - pc.d[l]), [&] { return at_step(l, "c = " + show(c)); });
  }
  if (cc.finish().cases == 0) cc.skip("no interior significant '+'");

  CheckBuilder cn("valtilde.c_last");
  if (!pc.last_letter_significant()) {
    cn.skip("last letter of w' is not significant");
  } else {
    const Polynomial target = aL * pc.sigma(vars, n) - x;
    cn.expect_lazy(vanishes(seq.c_last - target, 2), [&] { return "c_n = " + show(seq.c_last); });
  }

  Report r;
  r.checks = {cp.finish(), cq.finish(), cc.finish(), cn.finish()};
  return r;
}

Report check_prepnaka(const ParallelCase& pc) {
  CheckBuilder pz("prepnaka.p_mod_p");
  CheckBuilder qz("prepnaka.q_mod_p2");
  CheckBuilder p0("prepnaka.p0_mod_p2");
  CheckBuilder cn("prepnaka.c_last");
  CheckBuilder gen("prepnaka.generators");
  Report r;
  if (!pc.last_letter_significant()) {
    for (CheckBuilder* b : {&pz, &qz, &p0, &cn, &gen}) b->skip("last letter of w' is not significant");
    r.checks = {pz.finish(), qz.finish(), p0.finish(), cn.finish(), gen.finish()};
    return r;
  }
  const TildeSequence seq = tilde_sequence(pc);
  const ChartVariables& vars = seq.vars;
  const std::size_t n = pc.n();
  const std::set<std::size_t> gens = pc.p_generators(vars);
  const Polynomial z = vars.z_poly();
  const Polynomial x = vars.x_at(1);
  auto mod = [&](const Polynomial& p, int power) { return reduce_mod_variables(p, gens, power).is_zero(); };

  for (std::size_t l = 1; l < n; ++l) {
    const TildeState& st = seq.at(l);
    pz.expect_lazy(mod(st.P - z, 1), [&] { return at_step(l, "P = " + show(st.P)); });
    const Polynomial qt = z.pow(static_cast<unsigned>(pc.D[l] - pc.d[l])) * vars.a_poly(pc.lower(l));
    qz.expect_lazy(mod(st.Q - qt, 2), [&] { return at_step(l, "Q = " + show(st.Q)); });
    Polynomial pt = -x;
    for (std::size_t j : pc.R(l)) pt += vars.a_poly(pc.lower(j - 1)) * vars.a_poly(j);
    const Polynomial pzero = at_zero(st.P, vars);
    p0.expect_lazy(mod(pzero - pt, 2), [&] { return at_step(l, "P(0) = " + show(pzero)); });
  }

  Polynomial ct = -x;
  for (std::size_t l = 1; l <= n; ++l) {
    if (pc.plus_significant(l)) ct += vars.a_poly(l) * pc.tau(vars, l);
  }
  cn.expect_lazy(mod(seq.c_last - ct, 2), [&] { return "c_n = " + show(seq.c_last); });
  cn.expect(pc.tau(vars, pc.L) == pc.sigma(vars, n), "tau_L differs from sigma_n");

  for (std::size_t l = 2; l < n; ++l) {
    if (!pc.plus_at(l) || pc.significant[l]) continue;
    gen.expect(*seq.at(l).c == vars.a_poly(l), at_step(l, "c differs from a_l"));
  }
  for (std::size_t l = 1; l <= n; ++l) {
    if (!pc.plus_significant(l) || l == pc.L) continue;
    std::size_t m = 0;
    for (std::size_t k = 2; k < n; ++k) {
      if (pc.plus_significant(k) && pc.d[k] == pc.d[l] + 1) m = k;
    }
    gen.expect(m != 0 && pc.lower(m - 1) == l, at_step(l, "no successor among the significant '+'"));
    if (m == 0) continue;
    const Polynomial& cm = *seq.at(m).c;
    gen.expect_lazy(mod(vars.a_poly(l) - cm, 2), [&] { return at_step(l, "a_l - c_" + std::to_string(m) + " = " + show(vars.a_poly(l) - cm)); });
  }
  if (gen.finish().cases == 0) gen.skip("no generator relations to check");

  r.checks = {pz.finish(), qz.finish(), p0.finish(), cn.finish(), gen.finish()};
  return r;
}

Report elimination_demo(const ParallelCase& pc) {
  CheckBuilder init("elimin.initial");
  CheckBuilder fin("elimin.final");
  CheckBuilder vars_used("elimin.variables");
  Report r;
  if (!pc.last_letter_significant()) {
    for (CheckBuilder* b : {&init, &fin, &vars_used}) b->skip("last letter of w' is not significant");
    r.checks = {init.finish(), fin.finish(), vars_used.finish()};
    return r;
  }
  const TildeSequence seq = tilde_sequence(pc);
  const ChartVariables& vars = seq.vars;
  const std::size_t n = pc.n();
  const int D = pc.top;
  const Polynomial x = vars.x_at(1);
  const Polynomial sn = pc.sigma(vars, n);
  const Polynomial target = vars.a_poly(1) * sn - x.pow(static_cast<unsigned>(D));

  Polynomial g = seq.c_last * x.pow(static_cast<unsigned>(D - 1));
  for (std::size_t l = 2; l < n; ++l) {
    if (pc.plus_significant(l)) g += *seq.at(l).c * sn * x.pow(static_cast<unsigned>(pc.d[l] - 2));
  }
  init.expect_lazy(truncate_graded(g - target, pc.grading(vars, D + 1)).is_zero(),
                   [&] { return "g = " + show(g); });

  unsigned q = 0;
  for (std::size_t l = n - 1; l >= 2; --l) {
    if (!pc.plus_significant(l)) continue;
    const std::size_t al = vars.a(l);
    const std::size_t deg = g.degree_in(al);
    if (deg == 0) continue;
    const Polynomial mp = -at_zero(seq.at(l - 1).P, vars);
    const Polynomial q0 = at_zero(seq.at(l - 1).Q, vars);
    Polynomial next = vars.constant(0);
    for (std::size_t s = 0; s <= deg; ++s) {
      next += g.coefficient_of(al, s) * mp.pow(static_cast<unsigned>(deg - s)) * q0.pow(static_cast<unsigned>(s));
    }
    g = std::move(next);
    q += static_cast<unsigned>(deg);
  }
  const Polynomial final_target = x.pow(q) * target;
  fin.expect_lazy(truncate_graded(g - final_target, pc.grading(vars, static_cast<int>(q) + D + 1)).is_zero(),
                  [&] { return "q=" + std::to_string(q) + " g = " + show(g); });
  fin.set_detail("q=" + std::to_string(q));
  for (std::size_t j = 2; j <= n; ++j) {
    if (!pc.plus_at(j)) continue;
    vars_used.expect(!g.depends_on(vars.a(j)), "g involves a" + std::to_string(j));
  }
  vars_used.expect(!g.depends_on(vars.z()), "g involves z");
  r.checks = {init.finish(), fin.finish(), vars_used.finish()};
  return r;
}

// ---------------------------------------------------------------------------
// Coefficient rule

Scalar coefficient_rule(const Word& v, const Word& w) {
  const std::size_t n = w.size();
  if (n == 0 || w.at(1) != Letter::minus) throw ContractViolation("coefficient_rule: w must start with '-'");
  if (v.size() != n) throw ContractViolation("coefficient_rule: words of different lengths");
  if (weight(v) != weight(w)) throw ContractViolation("coefficient_rule: words of different weights");
  if (v == w) return 1;
  if (v.at(1) == Letter::minus) return 0;
  // Paths: v starts two above w; find where they meet again.
  int gap = 2;
  std::size_t m = 0;
  for (std::size_t j = 2; j <= n; ++j) {
    gap += letter_weight(v.at(j)) - letter_weight(w.at(j));
    if (gap == 0) {
      m = j;
      break;
    }
  }
  if (m == 0) return 0;
  if (v.at(m) != Letter::minus || w.at(m) != Letter::plus) return 0;
  for (std::size_t j = 2; j < m; ++j) {
    if (v.at(j) != w.at(j)) return 0;
  }
  for (std::size_t j = m + 1; j <= n; ++j) {
    if (v.at(j) != w.at(j)) return 0;
  }
  const Word block = w.subword(2, m - 1);
  return significant_mask(block)[m - 1] ? 1 : 0;
}

bool inclusion_predicate(const Word& v, const Word& w) {
  const std::size_t n = v.size();
  if (w.size() != n || n < 2) throw ContractViolation("inclusion_predicate: words of different lengths");
  if (v.at(1) != Letter::plus || w.at(1) != Letter::minus) {
    throw ContractViolation("inclusion_predicate: needs v(1) = + and w(1) = -");
  }
  if (weight(v) != weight(w)) throw ContractViolation("inclusion_predicate: words of different weights");
  const PathProfile pv = path_profile(v);
  const PathProfile pw = path_profile(w);
  for (std::size_t j = 1; j < n; ++j) {
    if (pv.d[j] <= pw.d[j]) throw ContractViolation("inclusion_predicate: paths meet before the last step");
  }
  if (!is_parallel_pair(v, w)) return false;
  return ParallelCase::make(v, w).last_letter_significant();
}

namespace {

const ChangeOfBasis& cached_y_change(std::size_t n) {
  thread_local std::map<std::size_t, ChangeOfBasis> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, thread_basis().y_change(n)).first;
  return it->second;
}

}  // namespace

TensorVector first_letter_expansion(const Word& w) {
  if (w.empty() || w.at(1) != Letter::minus) throw ContractViolation("first_letter_expansion: w must start with '-'");
  const TensorVector target = prepend(Letter::minus, y_in_x(w.drop(1)));
  return solve_triangular(cached_y_change(w.size()), target, BasisTag::y);
}

// ---------------------------------------------------------------------------
// Drivers

Report verify_transitions(const ChartsVerifyOptions& opts) {
  std::vector<std::pair<Word, Word>> pairs;
  for (std::size_t n = 1; n <= opts.n_max; ++n) {
    const std::vector<Word> words = enumerate_words(n);
    for (const Word& v : words) {
      for (const Word& w : words) pairs.emplace_back(v, w);
    }
  }
  if (opts.random_count > 0) {
    std::mt19937_64 rng(opts.seed);
    const std::vector<Word> words = enumerate_words(opts.random_n);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (std::size_t i = 0; i < opts.random_count; ++i) pairs.emplace_back(words[pick(rng)], words[pick(rng)]);
  }
  std::vector<Report> parts(pairs.size());
  std::vector<std::string> labels(pairs.size());
  parallel_for(pairs.size(), opts.threads, [&](std::size_t i) {
    parts[i] = check_transition(pairs[i].first, pairs[i].second);
    labels[i] = pairs[i].first.to_string() + "/" + pairs[i].second.to_string();
  });
  return merge_by_name(parts, labels);
}

Report verify_parallel_lemmas(const ChartsVerifyOptions& opts) {
  std::vector<ParallelCase> cases;
  for (std::size_t n = 2; n <= opts.parallel_n_max; ++n) {
    for (auto& pc : parallel_cases(n)) cases.push_back(std::move(pc));
  }
  std::vector<Report> parts(cases.size());
  std::vector<std::string> labels(cases.size());
  parallel_for(cases.size(), opts.threads, [&](std::size_t i) {
    const ParallelCase& pc = cases[i];
    Report r = check_induc_congruences(pc);
    r.append(check_valtilde(pc));
    r.append(check_prepnaka(pc));
    if (pc.n() <= opts.elimination_n_max) r.append(elimination_demo(pc));
    parts[i] = std::move(r);
    labels[i] = pc.label();
  });
  return merge_by_name(parts, labels);
}

Report verify_coefficient_rule(std::size_t n_max, unsigned threads) {
  std::vector<Word> targets;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (const Word& w : enumerate_words(n, [](const Word& u) { return u.at(1) == Letter::minus; })) {
      targets.push_back(w);
    }
  }
  std::vector<Report> parts(targets.size());
  std::vector<std::string> labels(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t i) {
    const Word& w = targets[i];
    const TensorVector exp = first_letter_expansion(w);
    CheckBuilder rule("theorem.coefficient_rule");
    CheckBuilder zero_one("theorem.zero_one");
    CheckBuilder incl("theorem.inclusion");
    for (const auto& [v, c] : exp.terms()) {
      zero_one.expect(c == 1 && weight(v) == weight(w), v.to_string() + " has coefficient " + c.get_str());
    }
    const PathProfile pw = path_profile(w);
    for (const Word& v : enumerate_words_of_weight(w.size(), weight(w))) {
      const Scalar expected = exp.coeff(v);
      const Scalar got = coefficient_rule(v, w);
      rule.expect_lazy(got == expected, [&] {
        return "v=" + v.to_string() + " rule " + got.get_str() + " expansion " + expected.get_str();
      });
      if (v.at(1) != Letter::plus || w.size() < 2) continue;
      const PathProfile pv = path_profile(v);
      bool above = true;
      for (std::size_t j = 1; j < w.size(); ++j) above = above && pv.d[j] > pw.d[j];
      if (!above) continue;
      const bool inc = inclusion_predicate(v, w);
      incl.expect(inc == (expected == 1), "v=" + v.to_string());
    }
    if (incl.finish().cases == 0) incl.skip("no word strictly above");
    parts[i].checks = {rule.finish(), zero_one.finish(), incl.finish()};
    labels[i] = w.to_string();
  });
  return merge_by_name(parts, labels);
}

}  // namespace mvbasis
