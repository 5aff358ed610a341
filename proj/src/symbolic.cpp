#include "mvbasis/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mvbasis/errors.hpp"

namespace mvbasis {

// ---------------------------------------------------------------------------
// VarTable

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> names) {
  if (names.size() > max_vars) {
    throw SizeError("variable table of size " + std::to_string(names.size()) +
                    " exceeds the maximum of " + std::to_string(max_vars));
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw ContractViolation("duplicate variable name " + n);
  }
  return std::shared_ptr<const VarTable>(new VarTable(std::move(names)));
}

std::size_t VarTable::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ContractViolation("unknown variable " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

bool VarTable::contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool exp_greater(const Monomial& a, const Monomial& b) { return a.exp > b.exp; }

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out;
  unsigned char wrapped = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(a[i] + b[i]);
    wrapped |= static_cast<unsigned char>(out[i] < a[i]);
  }
  if (wrapped) throw SizeError("monomial exponent overflow");
  return out;
}

bool divides(const Exponents& d, const Exponents& e) {
  unsigned char bad = 0;
  for (std::size_t i = 0; i < d.size(); ++i) bad |= static_cast<unsigned char>(d[i] > e[i]);
  return !bad;
}

Exponents sub_exponents(const Exponents& e, const Exponents& d) {
  Exponents out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(e[i] - d[i]);
  return out;
}

bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

}  // namespace

bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp && a.coeff == b.coeff; }

void Polynomial::check_same_table(const Polynomial& other) const {
  if (!same_table(vars_, other.vars_)) {
    throw VarTableMismatch("polynomials over different variable tables");
  }
}

Polynomial Polynomial::constant(VarTablePtr vars, const Scalar& c) {
  Polynomial p(std::move(vars));
  if (c != 0) p.terms_.push_back({Exponents{}, c});
  return p;
}

Polynomial Polynomial::variable(VarTablePtr vars, std::size_t index) {
  if (index >= vars->size()) throw ContractViolation("variable index out of range");
  Polynomial p(std::move(vars));
  Monomial m{Exponents{}, Scalar(1)};
  m.exp[index] = 1;
  p.terms_.push_back(std::move(m));
  return p;
}

Polynomial Polynomial::variable(VarTablePtr vars, const std::string& name) {
  const std::size_t i = vars->index(name);
  return variable(std::move(vars), i);
}

Polynomial Polynomial::from_terms(VarTablePtr vars, std::vector<Monomial> terms) {
  Polynomial p(std::move(vars));
  bool canonical = true;
  for (std::size_t i = 0; i < terms.size() && canonical; ++i) {
    canonical = terms[i].coeff != 0 && (i == 0 || terms[i - 1].exp > terms[i].exp);
  }
  if (canonical) {
    p.terms_ = std::move(terms);
    return p;
  }
  std::sort(terms.begin(), terms.end(), exp_greater);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().exp == Exponents{});
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().exp == Exponents{}) return terms_.back().coeff;
  return 0;
}

std::size_t Polynomial::degree_in(std::size_t var) const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max<std::size_t>(d, t.exp[var]);
  return d;
}

std::size_t Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::size_t d = 255;
  for (const auto& t : terms_) d = std::min<std::size_t>(d, t.exp[var]);
  return d;
}

Polynomial Polynomial::coefficient_of(std::size_t var, std::size_t k) const {
  Polynomial out(vars_);
  for (const auto& t : terms_) {
    if (t.exp[var] != k) continue;
    Monomial m = t;
    m.exp[var] = 0;
    out.terms_.push_back(std::move(m));
  }
  // Dropping one coordinate can break the ordering.
  std::sort(out.terms_.begin(), out.terms_.end(), exp_greater);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_table(other);
  if (other.terms_.empty()) return *this;
  std::vector<Monomial> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exp > b->exp)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp > a->exp) {
      merged.push_back(*b++);
    } else {
      Scalar c = a->coeff + b->coeff;
      if (c != 0) merged.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_table(other);
  if (other.terms_.empty()) return *this;
  std::vector<Monomial> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exp > b->exp)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp > a->exp) {
      merged.push_back({b->exp, -b->coeff});
      ++b;
    } else {
      Scalar c = a->coeff - b->coeff;
      if (c != 0) merged.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

namespace {

// Integer coefficients below 2^31 in absolute value, copied out as machine integers.
bool small_integers(const std::vector<Monomial>& terms, std::vector<std::int64_t>& out) {
  out.clear();
  out.reserve(terms.size());
  for (const auto& m : terms) {
    if (mpz_cmp_ui(m.coeff.get_den_mpz_t(), 1) != 0) return false;
    const mpz_srcptr num = m.coeff.get_num_mpz_t();
    if (mpz_sizeinbase(num, 2) > 31) return false;
    out.push_back(mpz_get_si(num));
  }
  return true;
}

Scalar int128_to_scalar(__int128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return Scalar(static_cast<long>(v));
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0UL));
  mpz_class r = (hi << 64) + lo;
  if (neg) r = -r;
  return Scalar(r);
}

}  // namespace

namespace {

// Exponent vectors packed into one integer, variable 0 in the top bits, each field
// wide enough for the largest exponent of a product. Lex order and monomial
// multiplication become integer comparison and addition.
struct PackLayout {
  std::array<unsigned, VarTable::max_vars> shift{};
  std::array<unsigned, VarTable::max_vars> bits{};
  std::size_t nvars = 0;
  unsigned total = 0;
};

// One operand pair of a sum of products; s is the side with fewer terms.
struct ProductSpec {
  const std::vector<Monomial>* s;
  const std::vector<Monomial>* t;
  bool negate;
};

PackLayout product_layout(const std::vector<ProductSpec>& specs, std::size_t nvars) {
  PackLayout L;
  L.nvars = nvars;
  std::array<unsigned, VarTable::max_vars> need{};
  for (const auto& spec : specs) {
    std::array<unsigned, VarTable::max_vars> ms{}, mt{};
    for (const auto& m : *spec.s) {
      for (std::size_t v = 0; v < nvars; ++v) ms[v] = std::max<unsigned>(ms[v], m.exp[v]);
    }
    for (const auto& m : *spec.t) {
      for (std::size_t v = 0; v < nvars; ++v) mt[v] = std::max<unsigned>(mt[v], m.exp[v]);
    }
    for (std::size_t v = 0; v < nvars; ++v) need[v] = std::max(need[v], ms[v] + mt[v]);
  }
  for (std::size_t v = nvars; v-- > 0;) {
    L.bits[v] = static_cast<unsigned>(std::bit_width(need[v]));
    L.shift[v] = L.total;
    L.total += L.bits[v];
  }
  return L;
}

template <class Key>
Key pack(const Exponents& e, const PackLayout& L) {
  Key k = 0;
  for (std::size_t v = 0; v < L.nvars; ++v) k |= static_cast<Key>(e[v]) << L.shift[v];
  return k;
}

template <class Key>
Exponents unpack(Key k, const PackLayout& L) {
  Exponents e{};
  for (std::size_t v = 0; v < L.nvars; ++v) {
    if (L.bits[v] == 0) continue;
    e[v] = static_cast<std::uint8_t>((k >> L.shift[v]) & ((Key{1} << L.bits[v]) - 1));
  }
  return e;
}

// Heap of distinct exponents. A small hash table maps each live exponent to its heap
// bucket, so every row whose current product lands on it is chained there and one
// extraction settles all of them.
// Several products are merged at once, one row per term of each s side.
template <class Key>
std::vector<Monomial> packed_products(const std::vector<ProductSpec>& specs, const PackLayout& L) {
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<Key> sk;
  std::vector<std::uint32_t> row_spec, row_i;
  std::vector<std::vector<Key>> tk(specs.size());
  std::vector<std::vector<std::int64_t>> ti(specs.size());
  std::vector<std::int64_t> si;
  bool ints = true;
  for (std::size_t p = 0; p < specs.size(); ++p) {
    const auto& s = *specs[p].s;
    const auto& t = *specs[p].t;
    std::vector<std::int64_t> sp;
    ints = ints && small_integers(s, sp) && small_integers(t, ti[p]);
    for (std::size_t i = 0; i < s.size(); ++i) {
      sk.push_back(pack<Key>(s[i].exp, L));
      row_spec.push_back(static_cast<std::uint32_t>(p));
      row_i.push_back(static_cast<std::uint32_t>(i));
      if (ints) si.push_back(specs[p].negate ? -sp[i] : sp[i]);
    }
    tk[p].resize(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) tk[p][j] = pack<Key>(t[j].exp, L);
  }
  const std::size_t nrows = sk.size();
  auto t_of = [&](std::uint32_t r) -> const std::vector<Monomial>& { return *specs[row_spec[r]].t; };

  // Open-addressing table from live exponent to the chain of rows sitting on it; the
  // heap holds each live exponent once.
  struct Slot {
    Key key;
    std::uint32_t head;
  };
  std::vector<Key> heap;
  heap.reserve(nrows);
  std::vector<std::uint32_t> col(nrows, 0), next(nrows, none);

  std::size_t cap = 16;
  while (cap < 4 * nrows) cap <<= 1;
  const std::size_t mask = cap - 1;
  std::vector<Slot> table(cap, Slot{0, none});
  auto slot_of = [&](Key key) {
    std::uint64_t h = static_cast<std::uint64_t>(key);
    if constexpr (sizeof(Key) > 8) h ^= static_cast<std::uint64_t>(key >> 64) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>((h * 0x9E3779B97F4A7C15ULL) >> 20) & mask;
  };
  auto table_erase = [&](std::size_t i) {
    // Backward-shift deletion keeps probe sequences intact.
    std::size_t j = i;
    while (true) {
      table[i].head = none;
      while (true) {
        j = (j + 1) & mask;
        if (table[j].head == none) return;
        const std::size_t home = slot_of(table[j].key);
        const bool between = i <= j ? (i < home && home <= j) : (i < home || home <= j);
        if (!between) break;
      }
      table[i] = table[j];
      i = j;
    }
  };
  auto insert = [&](std::uint32_t row) {
    const Key key = sk[row] + tk[row_spec[row]][col[row]];
    std::size_t slot = slot_of(key);
    while (table[slot].head != none) {
      if (table[slot].key == key) {
        next[row] = table[slot].head;
        table[slot].head = row;
        return;
      }
      slot = (slot + 1) & mask;
    }
    next[row] = none;
    table[slot] = {key, row};
    std::size_t hole = heap.size();
    heap.push_back(key);
    while (hole > 0) {
      const std::size_t parent = (hole - 1) / 2;
      if (!(heap[parent] < key)) break;
      heap[hole] = heap[parent];
      hole = parent;
    }
    heap[hole] = key;
  };
  // Removes the largest live exponent; returns it with its chain.
  auto pop = [&](Key& key) {
    key = heap.front();
    const Key last = heap.back();
    heap.pop_back();
    if (!heap.empty()) {
      std::size_t hole = 0;
      const std::size_t n = heap.size();
      while (true) {
        std::size_t child = 2 * hole + 1;
        if (child >= n) break;
        if (child + 1 < n && heap[child] < heap[child + 1]) ++child;
        if (!(last < heap[child])) break;
        heap[hole] = heap[child];
        hole = child;
      }
      heap[hole] = last;
    }
    std::size_t slot = slot_of(key);
    while (table[slot].key != key || table[slot].head == none) slot = (slot + 1) & mask;
    const std::uint32_t head = table[slot].head;
    table_erase(slot);
    return head;
  };

  for (std::uint32_t r = 0; r < nrows; ++r) insert(r);
  std::vector<Monomial> out;
  __int128 iacc = 0;
  Scalar acc, prod;
  std::vector<std::uint32_t> rows;
  while (!heap.empty()) {
    Key key;
    const std::uint32_t head = pop(key);
    rows.clear();
    for (std::uint32_t r = head; r != none; r = next[r]) rows.push_back(r);
    iacc = 0;
    acc = 0;
    for (const std::uint32_t r : rows) {
      if (ints) {
        iacc += static_cast<__int128>(si[r]) * ti[row_spec[r]][col[r]];
      } else {
        const ProductSpec& sp = specs[row_spec[r]];
        mpq_mul(prod.get_mpq_t(), (*sp.s)[row_i[r]].coeff.get_mpq_t(), t_of(r)[col[r]].coeff.get_mpq_t());
        if (sp.negate) acc -= prod;
        else acc += prod;
      }
    }
    if (ints ? iacc != 0 : acc != 0) out.push_back({unpack(key, L), ints ? int128_to_scalar(iacc) : acc});
    for (const std::uint32_t r : rows) {
      if (++col[r] < t_of(r).size()) insert(r);
    }
  }
  return out;
}

}  // namespace

namespace {

// False when the exponents do not fit a 128-bit key.
bool packed_sum_of_products(const std::vector<ProductSpec>& specs, std::size_t nvars, std::vector<Monomial>& out) {
  const PackLayout layout = product_layout(specs, nvars);
  if (layout.total <= 64) {
    out = packed_products<std::uint64_t>(specs, layout);
    return true;
  }
  if (layout.total <= 128) {
    out = packed_products<unsigned __int128>(specs, layout);
    return true;
  }
  return false;
}

ProductSpec make_spec(const Polynomial& a, const Polynomial& b, bool negate) {
  const bool a_small = a.terms().size() <= b.terms().size();
  return {a_small ? &a.terms() : &b.terms(), a_small ? &b.terms() : &a.terms(), negate};
}

}  // namespace

Polynomial mul_add(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& d, bool subtract) {
  if (!same_table(a.vars(), b.vars()) || !same_table(a.vars(), c.vars()) || !same_table(a.vars(), d.vars())) {
    throw VarTableMismatch("mul_add over different tables");
  }
  std::vector<ProductSpec> specs;
  if (!a.is_zero() && !b.is_zero()) specs.push_back(make_spec(a, b, false));
  if (!c.is_zero() && !d.is_zero()) specs.push_back(make_spec(c, d, subtract));
  Polynomial out(a.vars());
  if (specs.empty()) return out;
  std::vector<Monomial> terms;
  if (packed_sum_of_products(specs, a.vars()->size(), terms)) return Polynomial::from_terms(a.vars(), std::move(terms));
  out = a * b;
  if (subtract) out -= c * d;
  else out += c * d;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_table(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.vars_);
  if (b.terms_.size() == 1 && b.terms_.front().exp == Exponents{}) {
    Polynomial out = a;
    return out *= b.terms_.front().coeff;
  }
  if (a.terms_.size() == 1 && a.terms_.front().exp == Exponents{}) {
    Polynomial out = b;
    return out *= a.terms_.front().coeff;
  }
  const auto& s = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
  const auto& t = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;
  Polynomial out(a.vars_);
  if (packed_sum_of_products({{&s, &t, false}}, a.vars_->size(), out.terms_)) return out;
  // Exponents too wide to pack: heap merge of the rows s_i * t on the arrays themselves.
  struct Node {
    Exponents exp;
    std::size_t i, j;
  };
  auto below = [](const Node& x, const Node& y) { return x.exp < y.exp; };
  std::vector<Node> heap;
  heap.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) heap.push_back({add_exponents(s[i].exp, t[0].exp), i, 0});
  std::make_heap(heap.begin(), heap.end(), below);
  auto& terms = out.terms_;
  std::vector<std::int64_t> si, ti;
  if (small_integers(s, si) && small_integers(t, ti)) {
    // Products fit in 62 bits and a 128-bit accumulator cannot overflow.
    __int128 acc = 0;
    bool open = false;
    Exponents cur{};
    auto flush = [&] {
      if (open && acc != 0) terms.push_back({cur, int128_to_scalar(acc)});
    };
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), below);
      const Node nd = heap.back();
      heap.pop_back();
      const __int128 prod = static_cast<__int128>(si[nd.i]) * ti[nd.j];
      if (open && cur == nd.exp) {
        acc += prod;
      } else {
        flush();
        cur = nd.exp;
        acc = prod;
        open = true;
      }
      if (nd.j + 1 < t.size()) {
        heap.push_back({add_exponents(s[nd.i].exp, t[nd.j + 1].exp), nd.i, nd.j + 1});
        std::push_heap(heap.begin(), heap.end(), below);
      }
    }
    flush();
    return out;
  }
  Scalar prod;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), below);
    const Node nd = heap.back();
    heap.pop_back();
    mpq_mul(prod.get_mpq_t(), s[nd.i].coeff.get_mpq_t(), t[nd.j].coeff.get_mpq_t());
    if (!terms.empty() && terms.back().exp == nd.exp) {
      terms.back().coeff += prod;
    } else {
      if (!terms.empty() && terms.back().coeff == 0) terms.pop_back();
      terms.push_back({nd.exp, prod});
    }
    if (nd.j + 1 < t.size()) {
      heap.push_back({add_exponents(s[nd.i].exp, t[nd.j + 1].exp), nd.i, nd.j + 1});
      std::push_heap(heap.begin(), heap.end(), below);
    }
  }
  if (!terms.empty() && terms.back().coeff == 0) terms.pop_back();
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  a.check_same_table(b);
  return a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.coeff < 0;
    const Scalar mag = abs(t.coeff);
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      if (t.exp[i] == 0) continue;
      std::string f = vars_->name(i);
      if (t.exp[i] > 1) f += "^" + std::to_string(t.exp[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "*" : "") << factors[i];
    }
    first = false;
  }
  return out.str();
}

Polynomial poly_arith(PolyOp op, const Polynomial& a, const Polynomial& b) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw ContractViolation("unknown polynomial operation");
}

namespace {

// Division with a heap of pending products q_i * b_j (j >= 1): each quotient term
// contributes one heap entry at a time, so the remainder is never materialized.
struct DivNode {
  Exponents exp;
  std::size_t i, j;
};

bool div_below(const DivNode& x, const DivNode& y) { return x.exp < y.exp; }

enum class DivOutcome { exact, inexact, overflow };

// Walks the dividend and the heap in decreasing order. `take(k)` adds dividend term k,
// `sub(i, j)` subtracts q_i * b_j, `emit(exp)` turns the accumulated coefficient into a
// quotient term (returns false when it is nonzero but the exponent is not divisible).
template <class Take, class Sub, class Emit>
DivOutcome heap_division(const Polynomial& a, const Polynomial& b, std::vector<Monomial>& q, Take take, Sub sub,
                         Emit emit) {
  const auto& at = a.terms();
  const auto& bt = b.terms();
  std::vector<DivNode> heap;
  std::size_t k = 0;
  while (k < at.size() || !heap.empty()) {
    Exponents cur;
    if (heap.empty() || (k < at.size() && heap.front().exp < at[k].exp)) {
      cur = at[k].exp;
    } else {
      cur = heap.front().exp;
    }
    bool fresh = true;
    if (k < at.size() && at[k].exp == cur) {
      take(k, fresh);
      fresh = false;
      ++k;
    }
    while (!heap.empty() && heap.front().exp == cur) {
      std::pop_heap(heap.begin(), heap.end(), div_below);
      const DivNode nd = heap.back();
      heap.pop_back();
      if (!sub(nd.i, nd.j, fresh)) return DivOutcome::overflow;
      fresh = false;
      if (nd.j + 1 < bt.size()) {
        heap.push_back({add_exponents(q[nd.i].exp, bt[nd.j + 1].exp), nd.i, nd.j + 1});
        std::push_heap(heap.begin(), heap.end(), div_below);
      }
    }
    const std::size_t before = q.size();
    const DivOutcome st = emit(cur);
    if (st != DivOutcome::exact) return st;
    if (q.size() > before && bt.size() > 1) {
      heap.push_back({add_exponents(q.back().exp, bt[1].exp), q.size() - 1, 1});
      std::push_heap(heap.begin(), heap.end(), div_below);
    }
  }
  return DivOutcome::exact;
}

bool heap_divide(const Polynomial& a, const Polynomial& b, const Scalar& inv, std::vector<Monomial>& q) {
  const auto& bt = b.terms();
  const Exponents& lead = bt.front().exp;
  Scalar acc, prod;
  auto take = [&](std::size_t k, bool fresh) {
    if (fresh) acc = a.terms()[k].coeff;
    else acc += a.terms()[k].coeff;
  };
  auto sub = [&](std::size_t i, std::size_t j, bool fresh) {
    mpq_mul(prod.get_mpq_t(), q[i].coeff.get_mpq_t(), bt[j].coeff.get_mpq_t());
    if (fresh) acc = -prod;
    else acc -= prod;
    return true;
  };
  auto emit = [&](const Exponents& cur) {
    if (acc == 0) return DivOutcome::exact;
    if (!divides(lead, cur)) return DivOutcome::inexact;
    q.push_back({sub_exponents(cur, lead), acc * inv});
    return DivOutcome::exact;
  };
  return heap_division(a, b, q, take, sub, emit) == DivOutcome::exact;
}

// Integer version for a divisor with leading coefficient +-1; reports overflow instead
// of silently wrapping.
DivOutcome heap_divide_int(const Polynomial& a, const Polynomial& b, const std::vector<std::int64_t>& ai,
                           const std::vector<std::int64_t>& bi, std::vector<Monomial>& q) {
  const Exponents& lead = b.terms().front().exp;
  const std::int64_t sign = bi.front();
  std::vector<std::int64_t> qi;
  __int128 acc = 0;
  auto take = [&](std::size_t k, bool fresh) { acc = fresh ? ai[k] : acc + ai[k]; };
  auto sub = [&](std::size_t i, std::size_t j, bool fresh) {
    __int128 prod;
    if (__builtin_mul_overflow(static_cast<__int128>(qi[i]), static_cast<__int128>(bi[j]), &prod)) return false;
    if (fresh) {
      acc = -prod;
      return true;
    }
    return !__builtin_sub_overflow(acc, prod, &acc);
  };
  auto emit = [&](const Exponents& cur) {
    if (acc == 0) return DivOutcome::exact;
    if (!divides(lead, cur)) return DivOutcome::inexact;
    const __int128 c = acc * sign;
    if (c > INT64_MAX || c < -INT64_MAX) return DivOutcome::overflow;
    qi.push_back(static_cast<std::int64_t>(c));
    q.push_back({sub_exponents(cur, lead), Scalar(static_cast<long>(c))});
    return DivOutcome::exact;
  };
  return heap_division(a, b, q, take, sub, emit);
}

}  // namespace

bool try_exact_div(const Polynomial& a, const Polynomial& b, Polynomial& quotient) {
  if (!same_table(a.vars(), b.vars())) throw VarTableMismatch("exact_div over different tables");
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) {
    quotient = Polynomial(a.vars());
    return true;
  }
  const Monomial& lead = b.leading();
  // Cheap necessary conditions: extreme terms and per-variable degree ranges.
  if (!divides(lead.exp, a.leading().exp)) return false;
  if (!divides(b.terms().back().exp, a.terms().back().exp)) return false;
  for (std::size_t v = 0; v < a.vars()->size(); ++v) {
    if (b.degree_in(v) > a.degree_in(v) || b.min_degree_in(v) > a.min_degree_in(v)) return false;
  }
  const Scalar inv = Scalar(1) / lead.coeff;
  std::vector<Monomial> q;
  if (b.terms().size() == 1) {
    q.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
      if (!divides(lead.exp, t.exp)) return false;
      q.push_back({sub_exponents(t.exp, lead.exp), t.coeff * inv});
    }
    quotient = Polynomial::from_terms(a.vars(), std::move(q));
    return true;
  }
  std::vector<std::int64_t> ai, bi;
  if (std::abs(lead.coeff.get_num().get_si()) == 1 && small_integers(a.terms(), ai) && small_integers(b.terms(), bi)) {
    switch (heap_divide_int(a, b, ai, bi, q)) {
      case DivOutcome::exact:
        quotient = Polynomial::from_terms(a.vars(), std::move(q));
        return true;
      case DivOutcome::inexact:
        return false;
      case DivOutcome::overflow:
        q.clear();
        break;
    }
  }
  if (!heap_divide(a, b, inv, q)) return false;
  quotient = Polynomial::from_terms(a.vars(), std::move(q));
  return true;
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  Polynomial q(a.vars());
  if (!try_exact_div(a, b, q)) {
    throw InexactDivision("(" + a.to_string() + ") is not divisible by (" + b.to_string() + ")");
  }
  return q;
}

namespace {

/// Coefficients c_k with p = sum_k c_k var^k.
std::map<std::size_t, Polynomial> split_by_power(const Polynomial& p, std::size_t var) {
  std::map<std::size_t, std::vector<Monomial>> buckets;
  for (const auto& t : p.terms()) {
    Monomial m = t;
    m.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(m));
  }
  std::map<std::size_t, Polynomial> out;
  for (auto& [k, terms] : buckets) out.emplace(k, Polynomial::from_terms(p.vars(), std::move(terms)));
  return out;
}

template <class T>
T horner(const std::map<std::size_t, Polynomial>& coeffs, const T& value, const T& zero) {
  T result = zero;
  std::size_t prev = 0;
  bool started = false;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (started) {
      for (std::size_t k = it->first; k < prev; ++k) result = result * value;
    }
    result = result + T(it->second);
    prev = it->first;
    started = true;
  }
  for (std::size_t k = 0; k < prev; ++k) result = result * value;
  return result;
}

}  // namespace

Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value) {
  if (!same_table(p.vars(), value.vars())) throw VarTableMismatch("substitute over different tables");
  if (!p.depends_on(var)) return p;
  return horner(split_by_power(p, var), value, Polynomial(p.vars()));
}

RationalFunction eval_at(const Polynomial& p, std::size_t var, const RationalFunction& value) {
  if (!same_table(p.vars(), value.vars())) throw VarTableMismatch("eval_at over different tables");
  if (!p.depends_on(var)) return RationalFunction(p);
  if (value.is_polynomial()) return RationalFunction(substitute(p, var, value.as_polynomial()));
  return horner(split_by_power(p, var), value, RationalFunction(p.vars()));
}

int GradedIdealSpec::degree_of(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * e[i];
  return d;
}

Polynomial truncate_graded(const Polynomial& p, const GradedIdealSpec& spec) {
  if (spec.weights.size() != p.vars()->size()) {
    throw ContractViolation("graded ideal weights do not match the variable table");
  }
  std::vector<Monomial> kept;
  for (const auto& t : p.terms()) {
    if (spec.degree_of(t.exp) < spec.threshold) kept.push_back(t);
  }
  return Polynomial::from_terms(p.vars(), std::move(kept));
}

Polynomial reduce_mod_variables(const Polynomial& p, const std::set<std::size_t>& gens, int power) {
  if (power != 1 && power != 2) throw ContractViolation("reduce_mod_variables: power must be 1 or 2");
  std::vector<Monomial> kept;
  for (const auto& t : p.terms()) {
    int deg = 0;
    for (std::size_t g : gens) deg += t.exp[g];
    if (deg < power) kept.push_back(t);
  }
  return Polynomial::from_terms(p.vars(), std::move(kept));
}

Polynomial rebase(const Polynomial& p, const VarTablePtr& target) {
  std::vector<std::size_t> map(p.vars()->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = target->index(p.vars()->name(i));
  std::vector<Monomial> terms;
  for (const auto& t : p.terms()) {
    Monomial m{Exponents{}, t.coeff};
    for (std::size_t i = 0; i < map.size(); ++i) m.exp[map[i]] = t.exp[i];
    terms.push_back(std::move(m));
  }
  return Polynomial::from_terms(target, std::move(terms));
}

// ---------------------------------------------------------------------------
// RationalFunction

Polynomial RationalFunction::denominator() const {
  Polynomial d = Polynomial::constant(vars(), 1);
  for (const auto& f : den_) d = d * f.poly.pow(static_cast<unsigned>(f.power));
  return d;
}

const Polynomial& RationalFunction::as_polynomial() const {
  if (!den_.empty()) throw ContractViolation("rational function " + to_string() + " is not a polynomial");
  return num_;
}

void RationalFunction::add_denominator_factor(Polynomial p, int power) {
  if (p.is_zero()) throw std::domain_error("division by zero rational function");
  const std::size_t nv = vars()->size();
  // Monomial content becomes one factor per variable.
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t k = p.min_degree_in(v);
    if (k == 0) continue;
    Polynomial var = Polynomial::variable(vars(), v);
    p = exact_div(p, var.pow(static_cast<unsigned>(k)));
    insert_factor(std::move(var), power * static_cast<int>(k));
  }
  const Scalar lead = p.leading().coeff;
  if (lead != 1) {
    Scalar scale = 1;
    for (int i = 0; i < power; ++i) scale *= lead;
    num_ *= Scalar(1) / scale;
    p *= Scalar(1) / lead;
  }
  if (!p.is_constant()) insert_factor(std::move(p), power);
}

void RationalFunction::insert_factor(Polynomial p, int power) {
  for (auto& f : den_) {
    if (f.poly == p) {
      f.power += power;
      return;
    }
  }
  // Peel off known factors before adding a new one.
  for (auto& f : den_) {
    Polynomial q(vars());
    while (!p.is_constant() && try_exact_div(p, f.poly, q)) {
      p = std::move(q);
      f.power += power;
    }
  }
  if (!p.is_constant()) den_.push_back({std::move(p), power});
}

void RationalFunction::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& f : den_) {
    Polynomial q(vars());
    while (f.power > 0 && try_exact_div(num_, f.poly, q)) {
      num_ = std::move(q);
      --f.power;
    }
  }
  std::erase_if(den_, [](const Factor& f) { return f.power == 0; });
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  add_signed(other, false);
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) {
  add_signed(other, true);
  return *this;
}

void RationalFunction::add_signed(const RationalFunction& other, bool negate) {
  auto combine = [&](const Polynomial& b) {
    if (negate) num_ -= b;
    else num_ += b;
  };
  if (den_.empty() && other.den_.empty()) {
    combine(other.num_);
    return;
  }
  // Common denominator: max power of every factor on either side.
  std::vector<Factor> common = den_;
  std::vector<int> other_pow(common.size(), 0);
  for (const auto& g : other.den_) {
    bool found = false;
    for (std::size_t i = 0; i < common.size(); ++i) {
      if (common[i].poly == g.poly) {
        other_pow[i] = g.power;
        common[i].power = std::max(common[i].power, g.power);
        found = true;
        break;
      }
    }
    if (!found) {
      common.push_back(g);
      other_pow.push_back(g.power);
    }
  }
  std::optional<Polynomial> b;
  for (std::size_t i = 0; i < common.size(); ++i) {
    const int mine = i < den_.size() ? den_[i].power : 0;
    if (common[i].power > mine) num_ = num_ * common[i].poly.pow(static_cast<unsigned>(common[i].power - mine));
    if (common[i].power > other_pow[i]) {
      const Polynomial scale = common[i].poly.pow(static_cast<unsigned>(common[i].power - other_pow[i]));
      b = b ? *b * scale : other.num_ * scale;
    }
  }
  combine(b ? *b : other.num_);
  den_ = std::move(common);
  cancel();
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  // Same factored denominator: compare numerators directly.
  if (a.den_.size() == b.den_.size()) {
    bool same = true;
    for (const auto& f : a.den_) {
      const auto it = std::find_if(b.den_.begin(), b.den_.end(), [&](const RationalFunction::Factor& g) {
        return g.power == f.power && g.poly == f.poly;
      });
      if (it == b.den_.end()) {
        same = false;
        break;
      }
    }
    if (same) return a.num_ == b.num_;
  }
  return (a - b).is_zero();
}

RationalFunction operator-(RationalFunction a) {
  a.num_ *= Scalar(-1);
  return a;
}

namespace {

// Divides num by the factors of den as often as possible, lowering their powers.
void strip_common(Polynomial& num, std::vector<RationalFunction::Factor>& den) {
  Polynomial q(num.vars());
  for (auto& f : den) {
    while (f.power > 0 && try_exact_div(num, f.poly, q)) {
      num = std::move(q);
      --f.power;
    }
  }
}

}  // namespace

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (num_.is_zero() || other.num_.is_zero()) {
    num_ = Polynomial(vars());
    den_.clear();
    return *this;
  }
  if (other.den_.empty() && other.num_.is_constant()) {
    num_ *= other.num_.constant_term();
    return *this;
  }
  if (den_.empty() && num_.is_constant()) {
    const Scalar c = num_.constant_term();
    *this = other;
    num_ *= c;
    return *this;
  }
  // Both sides are already reduced, so only a numerator and the other side's
  // denominator can share a factor. Cancel those before forming the product.
  Polynomial theirs = other.num_;
  std::vector<Factor> their_den = other.den_;
  if (!their_den.empty()) strip_common(num_, their_den);
  if (!den_.empty()) strip_common(theirs, den_);
  num_ = num_ * theirs;
  for (const auto& g : their_den) {
    if (g.power == 0) continue;
    bool found = false;
    for (auto& f : den_) {
      if (f.poly == g.poly) {
        f.power += g.power;
        found = true;
        break;
      }
    }
    if (!found) den_.push_back(g);
  }
  std::erase_if(den_, [](const Factor& f) { return f.power == 0; });
  return *this;
}

namespace {

void add_factors(std::vector<RationalFunction::Factor>& into, const std::vector<RationalFunction::Factor>& from) {
  for (const auto& g : from) {
    if (g.power == 0) continue;
    auto it = std::find_if(into.begin(), into.end(), [&](const auto& f) { return f.poly == g.poly; });
    if (it == into.end()) into.push_back(g);
    else it->power += g.power;
  }
  std::erase_if(into, [](const auto& f) { return f.power == 0; });
}

}  // namespace

RationalFunction mul_add(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                         const RationalFunction& d, bool subtract, bool reduce) {
  using Factor = RationalFunction::Factor;
  if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero()) {
    RationalFunction left = a * b, right = c * d;
    return subtract ? left - right : left + right;
  }
  // Each product cross-cancelled as in operator*=, then both over one denominator.
  struct Side {
    Polynomial x, y;
    std::vector<Factor> den;
  };
  auto side = [](const RationalFunction& u, const RationalFunction& v) {
    Side out{u.num_, v.num_, {}};
    std::vector<Factor> du = u.den_, dv = v.den_;
    if (!dv.empty()) strip_common(out.x, dv);
    if (!du.empty()) strip_common(out.y, du);
    add_factors(du, dv);
    out.den = std::move(du);
    return out;
  };
  Side l = side(a, b), r = side(c, d);
  std::vector<Factor> common = l.den;
  for (const auto& g : r.den) {
    auto it = std::find_if(common.begin(), common.end(), [&](const Factor& f) { return f.poly == g.poly; });
    if (it == common.end()) common.push_back(g);
    else it->power = std::max(it->power, g.power);
  }
  auto lift = [&](Side& sd) {
    for (const auto& f : common) {
      auto it = std::find_if(sd.den.begin(), sd.den.end(), [&](const Factor& g) { return g.poly == f.poly; });
      const int have = it == sd.den.end() ? 0 : it->power;
      if (f.power > have) {
        Polynomial& smaller = sd.x.terms().size() <= sd.y.terms().size() ? sd.x : sd.y;
        smaller = smaller * f.poly.pow(static_cast<unsigned>(f.power - have));
      }
    }
  };
  lift(l);
  lift(r);
  RationalFunction out(mul_add(l.x, l.y, r.x, r.y, subtract));
  out.den_ = std::move(common);
  if (reduce) out.cancel();
  return out;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  if (other.is_zero()) throw std::domain_error("division by zero rational function");
  for (const auto& g : other.den_) num_ = num_ * g.poly.pow(static_cast<unsigned>(g.power));
  Polynomial q(vars());
  if (try_exact_div(num_, other.num_, q)) {
    num_ = std::move(q);
  } else {
    add_denominator_factor(other.num_, 1);
  }
  cancel();
  return *this;
}

RationalFunction RationalFunction::eval(std::size_t var, const RationalFunction& value) const {
  RationalFunction result = eval_at(num_, var, value);
  RationalFunction kept(Polynomial::constant(vars(), 1));
  for (const auto& f : den_) {
    if (!f.poly.depends_on(var)) {
      kept.den_.push_back(f);
      continue;
    }
    RationalFunction fe = eval_at(f.poly, var, value);
    if (fe.is_zero()) throw std::domain_error("denominator factor vanishes under substitution");
    for (int i = 0; i < f.power; ++i) result /= fe;
  }
  result *= kept;
  return result;
}

RationalFunction RationalFunction::divide_numerator(const Polynomial& divisor) const {
  RationalFunction out = *this;
  out.num_ = exact_div(num_, divisor);
  out.cancel();
  return out;
}

std::string RationalFunction::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream out;
  out << "(" << num_.to_string() << ")/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) out << "*";
    const bool wrap = den_[i].poly.terms().size() > 1;
    out << (wrap ? "(" : "") << den_[i].poly.to_string() << (wrap ? ")" : "");
    if (den_[i].power > 1) out << "^" << den_[i].power;
  }
  out << ")";
  return out.str();
}

PolyMatrix2 operator*(const PolyMatrix2& a, const PolyMatrix2& b) {
  return {mul_add(a.p, b.p, a.q, b.r), mul_add(a.p, b.q, a.q, b.s), mul_add(a.r, b.p, a.s, b.r),
          mul_add(a.r, b.q, a.s, b.s)};
}

}  // namespace mvbasis
