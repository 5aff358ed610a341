#include "mvbasis/word.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "mvbasis/errors.hpp"

namespace mvbasis {

namespace {

constexpr std::uint64_t bit_for(std::size_t pos) { return std::uint64_t{1} << (64 - pos); }

void check_length(std::size_t n) {
  if (n > Word::max_length) {
    throw SizeError("word length " + std::to_string(n) + " exceeds the supported maximum of " +
                    std::to_string(Word::max_length));
  }
}

}  // namespace

Word::Word(std::span<const Letter> letters) {
  check_length(letters.size());
  size_ = static_cast<std::uint8_t>(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == Letter::plus) bits_ |= bit_for(i + 1);
  }
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c == '+') {
      letters.push_back(Letter::plus);
    } else if (c == '-') {
      letters.push_back(Letter::minus);
    } else {
      throw ParseError("invalid character '" + std::string(1, c) + "' in word \"" +
                       std::string(text) + "\" (expected only '+' and '-')");
    }
  }
  return Word(letters);
}

Word Word::repeat(Letter l, std::size_t n) {
  std::vector<Letter> letters(n, l);
  return Word(letters);
}

Letter Word::at(std::size_t pos) const {
  if (pos < 1 || pos > size_) {
    throw ContractViolation("word position " + std::to_string(pos) + " out of range 1.." +
                            std::to_string(size_));
  }
  return (bits_ & bit_for(pos)) ? Letter::plus : Letter::minus;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  out.reserve(size_);
  for (std::size_t p = 1; p <= size_; ++p) out.push_back(at(p));
  return out;
}

Word Word::with_letter(std::size_t pos, Letter l) const {
  (void)at(pos);
  Word out = *this;
  if (l == Letter::plus) {
    out.bits_ |= bit_for(pos);
  } else {
    out.bits_ &= ~bit_for(pos);
  }
  return out;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (len == 0) return Word{};
  if (pos < 1 || pos + len - 1 > size_) {
    throw ContractViolation("subword [" + std::to_string(pos) + ", " + std::to_string(pos + len - 1) +
                            "] out of range for word of length " + std::to_string(size_));
  }
  Word out;
  out.size_ = static_cast<std::uint8_t>(len);
  std::uint64_t shifted = bits_ << (pos - 1);
  std::uint64_t mask = len == 64 ? ~std::uint64_t{0} : ~(~std::uint64_t{0} >> len);
  out.bits_ = shifted & mask;
  return out;
}

Word Word::reversed() const {
  Word out;
  out.size_ = size_;
  for (std::size_t p = 1; p <= size_; ++p) {
    if (at(p) == Letter::plus) out.bits_ |= bit_for(size_ + 1 - p);
  }
  return out;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(size_);
  for (std::size_t p = 1; p <= size_; ++p) s.push_back(to_char(at(p)));
  return s;
}

Word operator+(const Word& a, const Word& b) {
  check_length(a.size() + b.size());
  Word out;
  out.size_ = static_cast<std::uint8_t>(a.size_ + b.size_);
  out.bits_ = a.bits_ | (a.size_ == 64 ? 0 : (b.bits_ >> a.size_));
  return out;
}

// ---------------------------------------------------------------------------

int weight(const Word& w) {
  int plus = std::popcount(w.packed());
  return plus - (static_cast<int>(w.size()) - plus);
}

bool is_semistable(const Word& w) {
  int h = 0;
  for (std::size_t p = 1; p <= w.size(); ++p) {
    h += letter_weight(w.at(p));
    if (h > 0) return false;
  }
  return h == 0;
}

PathProfile path_profile(const Word& w) {
  PathProfile prof;
  prof.d.assign(w.size() + 1, 0);
  prof.D.assign(w.size() + 1, 0);
  for (std::size_t l = 1; l <= w.size(); ++l) {
    prof.d[l] = prof.d[l - 1] + letter_weight(w.at(l));
    prof.D[l] = std::max(prof.D[l - 1], prof.d[l]);
  }
  return prof;
}

std::vector<bool> significant_mask(const Word& w) {
  const std::size_t n = w.size();
  std::vector<bool> sig(n + 1, false);
  if (n == 0) return sig;
  PathProfile prof = path_profile(w);
  // A '-' is significant when the path never climbs back above the height it
  // lands on; suffix_max[l] = max(d[l..n]).
  std::vector<int> suffix_max(n + 2, 0);
  suffix_max[n] = prof.d[n];
  for (std::size_t l = n; l-- > 1;) suffix_max[l] = std::max(prof.d[l], suffix_max[l + 1]);
  for (std::size_t l = 1; l <= n; ++l) {
    if (w.at(l) == Letter::plus) {
      sig[l] = prof.significant_plus(l);
    } else {
      sig[l] = prof.d[l] >= suffix_max[l];
    }
  }
  return sig;
}

Factorization factorize(const Word& w) {
  Factorization f;
  std::vector<bool> sig = significant_mask(w);
  std::size_t block_start = 1;
  for (std::size_t l = 1; l <= w.size(); ++l) {
    if (!sig[l]) continue;
    f.sig_positions.push_back(l);
    f.blocks.push_back(w.subword(block_start, l - block_start));
    block_start = l + 1;
    if (w.at(l) == Letter::plus) {
      ++f.r;
    } else {
      ++f.s;
    }
  }
  f.blocks.push_back(w.subword(block_start, w.size() + 1 - block_start));
  return f;
}

Word Factorization::reassemble(const Word& original) const {
  Word out = blocks.empty() ? Word{} : blocks.front();
  for (std::size_t i = 0; i < sig_positions.size(); ++i) {
    out = out + original.at(sig_positions[i]) + blocks.at(i + 1);
  }
  return out;
}

std::vector<Word> flip_set(const Word& w) {
  std::vector<Word> out;
  std::vector<bool> sig = significant_mask(w);
  for (std::size_t l = 1; l <= w.size(); ++l) {
    if (sig[l] && w.at(l) == Letter::plus) out.push_back(w.with_letter(l, Letter::minus));
  }
  return out;
}

CrystalData crystal(const Word& w) {
  CrystalData c;
  std::vector<bool> sig = significant_mask(w);
  std::size_t leftmost_minus = 0;
  std::size_t rightmost_plus = 0;
  for (std::size_t l = 1; l <= w.size(); ++l) {
    if (!sig[l]) continue;
    if (w.at(l) == Letter::plus) {
      ++c.phi;
      rightmost_plus = l;
    } else {
      ++c.eps;
      if (leftmost_minus == 0) leftmost_minus = l;
    }
  }
  c.ell = c.eps + c.phi;
  if (c.eps > 0) c.e_result = w.with_letter(leftmost_minus, Letter::plus);
  if (c.phi > 0) c.f_result = w.with_letter(rightmost_plus, Letter::minus);
  return c;
}

std::vector<Word> enumerate_words(std::size_t n, const WordFilter& filter, std::size_t bound) {
  if (n > bound) {
    throw SizeError("enumeration of words of length " + std::to_string(n) +
                    " exceeds the configured bound " + std::to_string(bound));
  }
  check_length(n);
  std::vector<Word> out;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Letter> letters(n);
  for (std::uint64_t k = 0; k < count; ++k) {
    // k read as a binary numeral, most significant digit first, gives lex order.
    for (std::size_t i = 0; i < n; ++i) {
      letters[i] = ((k >> (n - 1 - i)) & 1U) ? Letter::plus : Letter::minus;
    }
    Word w(letters);
    if (!filter || filter(w)) out.push_back(w);
  }
  return out;
}

std::vector<Word> enumerate_words_of_weight(std::size_t n, int wt, std::size_t bound) {
  return enumerate_words(n, [wt](const Word& w) { return weight(w) == wt; }, bound);
}

Report check_word_invariants(std::size_t n) {
  CheckBuilder reassemble("words.factorization_reassembles");
  CheckBuilder blocks("words.blocks_semistable");
  CheckBuilder balance("words.weight_balance");
  CheckBuilder path("words.significance_from_path");
  CheckBuilder flips("words.flip_set_size");
  CheckBuilder level("words.level_zero_iff_semistable");
  CheckBuilder axioms("words.crystal_axioms");
  for (const Word& w : enumerate_words(n)) {
    const std::string tag = w.empty() ? std::string("(empty)") : w.to_string();
    const Factorization f = factorize(w);
    reassemble.expect(f.reassemble(w) == w, tag);
    bool ok = f.blocks.size() == static_cast<std::size_t>(f.r + f.s + 1);
    for (const Word& b : f.blocks) ok = ok && is_semistable(b);
    blocks.expect(ok, tag);

    const CrystalData c = crystal(w);
    balance.expect(f.r - f.s == weight(w) && c.phi - c.eps == weight(w) && c.phi == f.r && c.eps == f.s, tag);

    const PathProfile p = path_profile(w);
    const std::vector<bool> mask = significant_mask(w);
    bool agree = true;
    for (std::size_t l = 1; l <= w.size(); ++l) {
      const bool sig_plus = mask[l] && w.at(l) == Letter::plus;
      agree = agree && sig_plus == p.significant_plus(l);
    }
    path.expect(agree, tag);

    flips.expect(flip_set(w).size() == static_cast<std::size_t>(c.phi), tag);
    level.expect((c.ell == 0) == is_semistable(w), tag);

    bool crystal_ok = true;
    if (c.e_result) {
      const CrystalData back = crystal(*c.e_result);
      crystal_ok = crystal_ok && back.f_result == w && weight(*c.e_result) == weight(w) + 2 &&
                   back.eps == c.eps - 1 && back.phi == c.phi + 1;
    }
    if (c.f_result) {
      const CrystalData back = crystal(*c.f_result);
      crystal_ok = crystal_ok && back.e_result == w && weight(*c.f_result) == weight(w) - 2 &&
                   back.eps == c.eps + 1 && back.phi == c.phi - 1;
    }
    axioms.expect(crystal_ok, tag);
  }
  Report r;
  for (const CheckBuilder* b : {&reassemble, &blocks, &balance, &path, &flips, &level, &axioms}) {
    CheckResult res = b->finish();
    res.detail = "length " + std::to_string(n);
    r.checks.push_back(std::move(res));
  }
  return r;
}

}  // namespace mvbasis
