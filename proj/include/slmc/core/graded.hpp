#pragma once

#include <climits>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slmc/core/caps.hpp"
#include "slmc/core/rational.hpp"

namespace slmc {

struct BasisVector {
  std::string symbol;
  int degree = 0;
  int weight = 1;

  friend bool operator==(const BasisVector&, const BasisVector&) = default;
};

/// Ordered finite basis. Declaration order is the canonical order used by
/// symmetric words.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisVector> basis);

  int dim() const { return static_cast<int>(basis_.size()); }
  const BasisVector& operator[](int i) const { return basis_[static_cast<std::size_t>(i)]; }
  const std::vector<BasisVector>& basis() const { return basis_; }

  int degree(int i) const { return (*this)[i].degree; }
  int weight(int i) const { return (*this)[i].weight; }
  bool odd(int i) const { return (degree(i) & 1) != 0; }

  std::optional<int> find(std::string_view symbol) const;
  /// Throws InputError for unknown symbols.
  int index_of(std::string_view symbol) const;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) { return a.basis_ == b.basis_; }

 private:
  std::vector<BasisVector> basis_;
  std::unordered_map<std::string, int> index_;
};

inline constexpr int kInfiniteWeight = INT_MAX;

/// Finite linear combination of basis vectors, keyed by basis index. Zero
/// coefficients are never stored.
class Element {
 public:
  Element() = default;
  static Element basis(int index, const Rational& coefficient = 1);

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int index) const;

  void add_term(int index, const Rational& coefficient);
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& scalar);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend bool operator==(const Element&, const Element&) = default;

  /// Common degree of all terms; nullopt for zero or inhomogeneous elements.
  std::optional<int> degree(const GradedSpace& space) const;
  /// True when every term has the given degree (vacuously for zero).
  bool has_degree(const GradedSpace& space, int degree) const;
  /// Minimum basis weight over the terms; kInfiniteWeight for zero.
  int weight(const GradedSpace& space) const;
  /// Drops terms whose basis weight is >= bound.
  Element below_weight(const GradedSpace& space, int bound) const;
  /// Keeps only terms whose basis weight equals w.
  Element of_weight(const GradedSpace& space, int w) const;

 private:
  std::map<int, Rational> terms_;
};

/// "1 x + -1/2 y"; "0" for the zero element.
std::string render(const GradedSpace& space, const Element& e);

bool valid_symbol(std::string_view symbol);

// --- permutations and signs -------------------------------------------------

/// Permutations are stored as 0-based image vectors: sigma[i] = sigma(i).
using Permutation = std::vector<int>;

/// Product over inversions (i < j, sigma(i) > sigma(j)) of
/// (-1)^{degrees[i] * degrees[j]}. Element i is carried to position sigma(i).
/// Throws InputError on length mismatch or a non-bijective sigma.
int koszul_sign(std::span<const int> sigma, std::span<const int> degrees);

/// All (p_1, ..., p_k)-shuffles in lexicographic order of their image
/// vectors. Throws ResourceError when the total exceeds caps.max_word_length.
std::vector<Permutation> shuffles(std::span<const int> blocks, const Caps& caps = {});

/// Shuffles whose block-leading images increase:
/// sigma(1) < sigma(k_1 + 1) < sigma(k_1 + k_2 + 1) < ...
std::vector<Permutation> stairway_shuffles(std::span<const int> blocks, const Caps& caps = {});

Permutation inverse(std::span<const int> sigma);

// --- symmetric words -------------------------------------------------------

/// A monomial of S(L): basis indices in nondecreasing (canonical) order.
/// The empty word is the unit 1 of S(L).
struct SymWord {
  std::vector<int> factors;

  std::size_t length() const { return factors.size(); }
  bool empty() const { return factors.empty(); }
  auto operator<=>(const SymWord&) const = default;
  bool operator==(const SymWord&) const = default;
};

int word_degree(const GradedSpace& space, const SymWord& w);
int word_weight(const GradedSpace& space, const SymWord& w);

/// Result of sorting a raw factor sequence. sign is 0 when an odd-degree
/// factor repeats (such a word vanishes in S(L)).
struct CanonicalWord {
  SymWord word;
  int sign = 1;
};

CanonicalWord canonicalize(const GradedSpace& space, std::span<const int> factors);
/// Symbol-level variant; throws InputError on unknown symbols.
CanonicalWord canonicalize(const GradedSpace& space, std::span<const std::string> symbols);

/// Dot-separated symbols, e.g. "x.y.z"; "1" for the empty word.
std::string render_word(const GradedSpace& space, const SymWord& w);

/// Every canonical nonvanishing basis word with 1 <= length <= max_length
/// and weight < weight_bound, ordered by length, then lexicographically.
std::vector<SymWord> enumerate_words(const GradedSpace& space, int max_length, int weight_bound,
                                     const Caps& caps = {});

/// Formal linear combination of symmetric words: an element of the
/// (truncated, completed) symmetric algebra S(L).
class WordSum {
 public:
  WordSum() = default;
  static WordSum unit();
  static WordSum word(const SymWord& w, const Rational& c = 1);
  static WordSum from_element(const Element& e);

  const std::map<SymWord, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const SymWord& w, const Rational& c);
  WordSum& operator+=(const WordSum& other);
  WordSum& operator-=(const WordSum& other);
  WordSum& operator*=(const Rational& s);
  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
  friend WordSum operator-(WordSum a, const WordSum& b) { return a -= b; }
  friend WordSum operator*(const Rational& s, WordSum a) { return a *= s; }
  friend bool operator==(const WordSum&, const WordSum&) = default;

  /// Drops words of weight >= bound.
  WordSum truncated(const GradedSpace& space, int weight_bound) const;
  /// Length-1 part as an Element (the projection p_L).
  Element linear_part() const;
  Rational constant_term() const;
  WordSum without_constant() const;

 private:
  std::map<SymWord, Rational> terms_;
};

/// Product of two words in S(L); sign 0 when the product vanishes.
CanonicalWord multiply_words(const GradedSpace& space, const SymWord& a, const SymWord& b);

/// Graded-commutative product in S(L), dropping words of weight >= bound.
WordSum multiply(const GradedSpace& space, const WordSum& a, const WordSum& b,
                 int weight_bound = kInfiniteWeight);

/// exp(a) = sum_k a^k / k! truncated at weight_bound. `a` must have
/// degree 0 and weight >= 1, so the series terminates.
WordSum exp_word(const GradedSpace& space, const Element& a, int weight_bound);

std::string render(const GradedSpace& space, const WordSum& s);

}  // namespace slmc
