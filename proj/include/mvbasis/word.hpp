#pragma once

// Words over the alphabet {+,-}: the index set for the tensor-power bases,
// their path combinatorics and the sl2 crystal structure.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvbasis/report.hpp"

namespace mvbasis {

enum class Letter : std::uint8_t { minus = 0, plus = 1 };

constexpr int letter_weight(Letter l) { return l == Letter::plus ? 1 : -1; }
constexpr Letter flip(Letter l) { return l == Letter::plus ? Letter::minus : Letter::plus; }
constexpr char to_char(Letter l) { return l == Letter::plus ? '+' : '-'; }

/// A finite word in {+,-}. Positions are 1-based, matching w(1)...w(n).
///
/// Stored packed: position 1 is the most significant bit of a 64-bit mask and
/// unused low bits are zero. With minus = 0 this makes the lexicographic order
/// (minus < plus, proper prefix first) coincide with comparing (bits, size).
class Word {
 public:
  static constexpr std::size_t max_length = 64;

  Word() = default;
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  /// Parses a whitespace-free string over {'+','-'}; anything else throws ParseError.
  static Word parse(std::string_view text);
  /// n copies of one letter.
  static Word repeat(Letter l, std::size_t n);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// Letter at 1-based position `pos`.
  Letter at(std::size_t pos) const;
  std::vector<Letter> letters() const;

  Word with_letter(std::size_t pos, Letter l) const;
  Word flipped(std::size_t pos) const { return with_letter(pos, flip(at(pos))); }

  /// Letters pos..pos+len-1 (1-based).
  Word subword(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return subword(1, len); }
  /// Everything after the first `count` letters.
  Word drop(std::size_t count) const { return subword(count + 1, size_ - count); }
  Word reversed() const;

  std::string to_string() const;

  friend Word operator+(const Word& a, const Word& b);
  friend Word operator+(Letter a, const Word& b) { return Word{a} + b; }
  friend Word operator+(const Word& a, Letter b) { return a + Word{b}; }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.size_ <=> b.size_;
  }

  std::uint64_t packed() const { return bits_; }

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Path combinatorics

/// (#plus) - (#minus).
int weight(const Word& w);

/// Weight zero with every prefix of nonpositive weight.
bool is_semistable(const Word& w);

/// Prefix weights d[l] and running maxima D[l], indexed 1..n (index 0 holds 0).
///
/// D includes the starting height 0, i.e. D[l] = max(0, d[1], ..., d[l]). When
/// the word starts with '+' this is the same as max(d[1..l]).
struct PathProfile {
  std::vector<int> d;
  std::vector<int> D;

  std::size_t size() const { return d.empty() ? 0 : d.size() - 1; }
  /// Position l (1-based) carries a significant '+'.
  bool significant_plus(std::size_t l) const { return d[l] > D[l - 1]; }
};

PathProfile path_profile(const Word& w);

/// The factorization w = w_{-r} + ... + w_{-1} + w_0 - w_1 - ... - w_s with
/// semistable blocks.
struct Factorization {
  int r = 0;
  int s = 0;
  /// The r + s + 1 semistable blocks, left to right.
  std::vector<Word> blocks;
  /// 1-based positions of the significant letters, increasing.
  std::vector<std::size_t> sig_positions;

  /// Blocks and significant letters glued back together.
  Word reassemble(const Word& original) const;
};

Factorization factorize(const Word& w);

/// Per-position significance flags, index 1..n (index 0 unused).
std::vector<bool> significant_mask(const Word& w);

/// The set P(w): one word for each significant '+' of w, flipped to '-'.
/// Ordered by flipped position.
std::vector<Word> flip_set(const Word& w);

struct CrystalData {
  int eps = 0;
  int phi = 0;
  int ell = 0;
  std::optional<Word> e_result;
  std::optional<Word> f_result;
};

/// Crystal maps: e flips the leftmost significant '-', f the rightmost significant '+'.
CrystalData crystal(const Word& w);

inline int significant_count(const Word& w) { return crystal(w).ell; }

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::size_t default_enumeration_bound = 20;

using WordFilter = std::function<bool(const Word&)>;

/// All 2^n words of length n in lexicographic order, optionally filtered.
/// Throws SizeError when n exceeds `bound`.
std::vector<Word> enumerate_words(std::size_t n, const WordFilter& filter = {},
                                  std::size_t bound = default_enumeration_bound);

/// Words of length n and a fixed weight.
std::vector<Word> enumerate_words_of_weight(std::size_t n, int wt,
                                            std::size_t bound = default_enumeration_bound);

/// Words of length n whose path stays weakly below its baseline and returns to it.
inline std::vector<Word> enumerate_semistable(std::size_t n,
                                              std::size_t bound = default_enumeration_bound) {
  return enumerate_words(n, [](const Word& w) { return is_semistable(w); }, bound);
}

// ---------------------------------------------------------------------------
// Verification

/// Structural identities for all words of length n: factorization round trip and
/// semistable blocks, r - s = weight, significance read off the path, |P(w)| = phi,
/// l(w) = 0 exactly on semistable words, and the crystal axioms.
Report check_word_invariants(std::size_t n);

}  // namespace mvbasis

template <>
struct std::hash<mvbasis::Word> {
  std::size_t operator()(const mvbasis::Word& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.packed() ^ (static_cast<std::uint64_t>(w.size()) * 0x9e3779b97f4a7c15ULL));
  }
};
