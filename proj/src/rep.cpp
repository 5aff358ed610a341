#include "mvbasis/rep.hpp"

#include <map>
#include <sstream>

#include "mvbasis/basis.hpp"
#include "mvbasis/errors.hpp"

namespace mvbasis {

namespace {

TensorVector act_x(LieGenerator g, const TensorVector& v) {
  TensorVector out(v.length(), BasisTag::x);
  for (const auto& [w, c] : v.terms()) {
    if (g == LieGenerator::h) {
      out.add_term(w, c * weight(w));
      continue;
    }
    const Letter from = g == LieGenerator::e ? Letter::minus : Letter::plus;
    for (std::size_t p = 1; p <= w.size(); ++p) {
      if (w.at(p) == from) out.add_term(w.flipped(p), c);
    }
  }
  return out;
}

TensorVector casimir_x(const TensorVector& v) {
  TensorVector out = act_x(LieGenerator::e, act_x(LieGenerator::f, v));
  out += act_x(LieGenerator::f, act_x(LieGenerator::e, v));
  out.add_scaled(act_x(LieGenerator::h, act_x(LieGenerator::h, v)), Scalar(1, 2));
  return out;
}

TensorVector project_x(const TensorVector& v, std::size_t n) {
  TensorVector out = v;
  const Scalar top = casimir_eigenvalue(static_cast<int>(n));
  for (std::size_t p = n % 2; p < n; p += 2) {
    const Scalar cp = casimir_eigenvalue(static_cast<int>(p));
    TensorVector next = casimir_x(out);
    next.add_scaled(out, -cp);
    next *= Scalar(1) / (top - cp);
    out = std::move(next);
  }
  return out;
}

template <class F>
TensorVector in_x_basis(const TensorVector& v, F&& op) {
  if (v.basis() == BasisTag::x) return op(v);
  return expand_in_y(op(expand_in_x(v)));
}

/// x-basis image of the block-wise projection, memoized per block.
class BlockProjector {
 public:
  explicit BlockProjector(const Shape& shape) : shape_(shape) {}

  TensorVector apply(const TensorVector& v) {
    TensorVector out(v.length(), BasisTag::x);
    for (const auto& [w, c] : v.terms()) {
      std::vector<Word> blocks = shape_.blocks(w);
      TensorVector image = project_word(blocks.front());
      for (std::size_t j = 1; j < blocks.size() && !image.is_zero(); ++j) {
        image = tensor(image, project_word(blocks[j]));
      }
      out.add_scaled(image, c);
    }
    return out;
  }

 private:
  const TensorVector& project_word(const Word& block) {
    auto it = cache_.find(block);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(block, project_x(TensorVector::unit(block, BasisTag::x), block.size()))
        .first->second;
  }

  const Shape& shape_;
  std::map<Word, TensorVector> cache_;
};

std::size_t binomial(std::size_t n, long k) {
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, static_cast<unsigned long>(k));
  return b.get_ui();
}

}  // namespace

TensorVector act(LieGenerator g, const TensorVector& v) {
  return in_x_basis(v, [g](const TensorVector& u) { return act_x(g, u); });
}

Scalar casimir_eigenvalue(int p) {
  Scalar c(p * p, 2);
  c.canonicalize();  // mpq_class(num, den) does not reduce
  return c + p;
}

TensorVector casimir(const TensorVector& v) { return in_x_basis(v, casimir_x); }

TensorVector cartan_project(const TensorVector& v, std::size_t n) {
  if (v.length() != n) throw ContractViolation("cartan_project: vector length differs from n");
  return in_x_basis(v, [n](const TensorVector& u) { return project_x(u, n); });
}

std::size_t isotypic_multiplicity(std::size_t n, std::size_t p) {
  if (p > n || (n - p) % 2 != 0) return 0;
  const long k = static_cast<long>((n - p) / 2);
  return binomial(n, k) - binomial(n, k - 1);
}

// ---------------------------------------------------------------------------

std::size_t Shape::total() const {
  std::size_t n = 0;
  for (std::size_t p : parts) n += p;
  return n;
}

Shape Shape::parse(const std::string& text) {
  Shape shape;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("invalid shape \"" + text + "\" (expected comma-separated positive integers)");
    }
    std::size_t part = std::stoul(item);
    if (part == 0) throw ParseError("shape parts must be positive: \"" + text + "\"");
    shape.parts.push_back(part);
  }
  if (shape.parts.empty()) throw ParseError("empty shape");
  return shape;
}

std::vector<Word> Shape::blocks(const Word& w) const {
  if (w.size() != total()) throw ContractViolation("word length does not match the shape");
  std::vector<Word> out;
  std::size_t pos = 1;
  for (std::size_t part : parts) {
    out.push_back(w.subword(pos, part));
    pos += part;
  }
  return out;
}

bool is_block_shaped(const Word& w, const Shape& shape) {
  for (const Word& b : shape.blocks(w)) {
    if (!is_shape_word(b)) return false;
  }
  return true;
}

std::vector<ShapeBasisVector> mv_basis_of_shape(const Shape& shape) {
  if (shape.parts.empty()) throw ContractViolation("mv_basis_of_shape: empty shape");
  BlockProjector projector(shape);
  std::vector<ShapeBasisVector> out;
  for (const Word& w : enumerate_words(shape.total())) {
    TensorVector image = projector.apply(y_in_x(w));
    if (image.is_zero()) continue;
    out.push_back({shape.blocks(w), std::move(image)});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Largest l(v) over the support of a y-basis vector; -1 for zero.
int max_level(const TensorVector& y) {
  int level = -1;
  for (const auto& [v, c] : y.terms()) level = std::max(level, significant_count(v));
  return level;
}

}  // namespace

Report check_crystal_compat(std::size_t n) {
  CheckBuilder e_check("crystal_compat.e");
  CheckBuilder f_check("crystal_compat.f");
  CheckBuilder inv_check("crystal_compat.semistable_exact");
  for (const Word& w : enumerate_words(n)) {
    const CrystalData cr = crystal(w);
    const TensorVector yw = TensorVector::unit(w, BasisTag::y);
    TensorVector e_rem = act(LieGenerator::e, yw);
    if (cr.e_result) e_rem.add_term(*cr.e_result, -cr.eps);
    TensorVector f_rem = act(LieGenerator::f, yw);
    if (cr.f_result) f_rem.add_term(*cr.f_result, -cr.phi);
    e_check.expect_lazy(max_level(e_rem) <= cr.ell - 1,
                        [&] { return w.to_string() + ": remainder " + e_rem.to_string(); });
    f_check.expect_lazy(max_level(f_rem) <= cr.ell - 1,
                        [&] { return w.to_string() + ": remainder " + f_rem.to_string(); });
    if (cr.ell == 0) {
      inv_check.expect(act(LieGenerator::e, yw).is_zero() && act(LieGenerator::f, yw).is_zero(),
                       w.to_string());
    }
  }
  Report report;
  report.checks = {e_check.finish(), f_check.finish(), inv_check.finish()};
  return report;
}

Report check_filtration_stability(std::size_t n) {
  CheckBuilder check("filtration.stability");
  for (const Word& w : enumerate_words(n)) {
    const int level = significant_count(w);
    const TensorVector yw = TensorVector::unit(w, BasisTag::y);
    for (LieGenerator g : {LieGenerator::e, LieGenerator::f, LieGenerator::h}) {
      const TensorVector image = act(g, yw);
      check.expect_lazy(max_level(image) <= level, [&] {
        return std::string(to_string(g)) + " . y[" + w.to_string() + "] = " + image.to_string();
      });
    }
  }
  Report report;
  report.checks = {check.finish()};
  return report;
}

Report check_layer_dimensions(std::size_t n) {
  std::vector<std::size_t> counts(n + 1, 0);
  for (const Word& w : enumerate_words(n)) ++counts[significant_count(w)];
  CheckBuilder check("filtration.layer_dimensions");
  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t expected = (p + 1) * isotypic_multiplicity(n, p);
    check.expect(counts[p] == expected, "n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                            ": " + std::to_string(counts[p]) + " words, expected " +
                                            std::to_string(expected));
  }
  Report report;
  report.checks = {check.finish()};
  return report;
}

Report check_invariants(std::size_t m) {
  CheckBuilder count("invariants.catalan_count");
  CheckBuilder killed("invariants.annihilated");
  const std::vector<Word> semistable = enumerate_semistable(2 * m);
  mpz_class catalan;
  mpz_bin_uiui(catalan.get_mpz_t(), 2 * m, m);
  catalan /= static_cast<unsigned long>(m + 1);
  count.expect(semistable.size() == catalan.get_ui(),
               "m=" + std::to_string(m) + ": " + std::to_string(semistable.size()) +
                   " semistable words, Catalan number " + catalan.get_str());
  for (const Word& w : semistable) {
    const TensorVector yw = y_in_x(w);
    killed.expect(act(LieGenerator::e, yw).is_zero() && act(LieGenerator::f, yw).is_zero(),
                  w.to_string());
  }
  Report report;
  report.checks = {count.finish(), killed.finish()};
  return report;
}

Report check_cartan_projection(std::size_t n) {
  CheckBuilder idem("cartan.idempotent");
  CheckBuilder equiv("cartan.equivariant");
  CheckBuilder top("cartan.highest_weight_fixed");
  CheckBuilder lower("cartan.kills_lower_layers");
  const Word highest = Word::repeat(Letter::plus, n);
  const TensorVector xtop = TensorVector::unit(highest, BasisTag::x);
  top.expect(cartan_project(xtop, n) == xtop, highest.to_string());
  for (const Word& w : enumerate_words(n)) {
    const TensorVector xw = TensorVector::unit(w, BasisTag::x);
    const TensorVector pw = cartan_project(xw, n);
    idem.expect(cartan_project(pw, n) == pw, w.to_string());
    for (LieGenerator g : {LieGenerator::e, LieGenerator::f, LieGenerator::h}) {
      equiv.expect(cartan_project(act(g, xw), n) == act(g, pw),
                   std::string(to_string(g)) + " on " + w.to_string());
    }
    if (static_cast<std::size_t>(significant_count(w)) < n) {
      lower.expect(cartan_project(y_in_x(w), n).is_zero(), w.to_string());
    }
  }
  Report report;
  report.checks = {idem.finish(), equiv.finish(), top.finish(), lower.finish()};
  return report;
}

Report check_shape_basis(const Shape& shape) {
  const std::vector<ShapeBasisVector> basis = mv_basis_of_shape(shape);
  std::ostringstream label;
  for (std::size_t i = 0; i < shape.parts.size(); ++i) label << (i ? "," : "") << shape.parts[i];

  CheckBuilder indexed("shape_basis.indexed_by_block_shaped_words");
  indexed.set_detail("shape " + label.str());
  std::vector<Word> survivors;
  for (const auto& b : basis) {
    Word w;
    for (const Word& block : b.index) w = w + block;
    survivors.push_back(w);
  }
  std::vector<Word> expected = enumerate_words(shape.total(), [&](const Word& w) {
    return is_block_shaped(w, shape);
  });
  indexed.expect(survivors == expected, std::to_string(survivors.size()) + " survivors, " +
                                            std::to_string(expected.size()) + " block-shaped words");

  CheckBuilder independent("shape_basis.independent");
  independent.set_detail("shape " + label.str());
  std::vector<TensorVector> vectors;
  for (const auto& b : basis) vectors.push_back(b.vector);
  std::size_t expected_dim = 1;
  for (std::size_t p : shape.parts) expected_dim *= p + 1;
  independent.expect(rank(vectors) == vectors.size() && vectors.size() == expected_dim,
                     "rank " + std::to_string(rank(vectors)) + " of " +
                         std::to_string(vectors.size()) + " vectors, expected dimension " +
                         std::to_string(expected_dim));
  Report report;
  report.checks = {indexed.finish(), independent.finish()};
  return report;
}

}  // namespace mvbasis
