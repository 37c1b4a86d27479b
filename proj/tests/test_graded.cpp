#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "slmc/core/errors.hpp"
#include "slmc/core/graded.hpp"

using namespace slmc;

namespace {

// e and h are odd, e listed first.
GradedSpace mixed_space() {
  return GradedSpace({{"x", 0, 1}, {"e", 1, 1}, {"h", -1, 1}, {"y", 2, 2}, {"c", 1, 2}});
}

Permutation random_permutation(std::mt19937_64& rng, int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Image vector of an arbitrary permutation of {0..n-1} written as
// "element i goes to position p[i]", composed as (a o b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

bool is_shuffle(const Permutation& p, const std::vector<int>& blocks) {
  std::size_t start = 0;
  for (int b : blocks) {
    for (std::size_t i = start + 1; i < start + static_cast<std::size_t>(b); ++i)
      if (p[i - 1] > p[i]) return false;
    start += static_cast<std::size_t>(b);
  }
  return true;
}

std::vector<Permutation> all_permutations(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("rationals parse and render") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("+2/3") == Rational(2, 3));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("x"));
  CHECK_FALSE(parse_rational("1/"));
  CHECK(to_string(*parse_rational("-6/4")) == "-3/2");
  CHECK(factorial(5) == 120);
}

TEST_CASE("koszul sign on small permutations") {
  const std::vector<int> id{0, 1, 2};
  CHECK(koszul_sign(id, std::vector<int>{1, 1, 1}) == 1);
  CHECK(koszul_sign(Permutation{1, 0}, std::vector<int>{1, 1}) == -1);
  CHECK(koszul_sign(Permutation{1, 0}, std::vector<int>{1, 2}) == 1);
  // 1->3, 2->1, 3->2 with degrees (1,1,0): inversions are (1,2) odd-odd
  // and (1,3) odd-even, so the sign is -1.
  CHECK(koszul_sign(Permutation{2, 0, 1}, std::vector<int>{1, 1, 0}) == -1);
  CHECK_THROWS_AS(koszul_sign(Permutation{0, 0}, std::vector<int>{1, 1}), InputError);
  CHECK_THROWS_AS(koszul_sign(Permutation{0, 1}, std::vector<int>{1}), InputError);
}

TEST_CASE("koszul sign is a cocycle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (auto& d : deg) d = static_cast<int>(rng() % 5) - 2;
    const Permutation tau = random_permutation(rng, n);
    const Permutation sigma = random_permutation(rng, n);
    // after tau, position p holds element tau^{-1}(p)
    std::vector<int> moved(deg.size());
    for (std::size_t i = 0; i < deg.size(); ++i) moved[static_cast<std::size_t>(tau[i])] = deg[i];
    CHECK(koszul_sign(compose(sigma, tau), deg) == koszul_sign(tau, deg) * koszul_sign(sigma, moved));
  }
}

TEST_CASE("shuffle counts and contents") {
  CHECK(shuffles(std::vector<int>{1, 1}) == std::vector<Permutation>{{0, 1}, {1, 0}});
  CHECK(shuffles(std::vector<int>{2, 1}).size() == 3);
  const auto s22 = shuffles(std::vector<int>{2, 2});
  std::vector<Permutation> brute;
  for (const auto& p : all_permutations(4))
    if (is_shuffle(p, {2, 2})) brute.push_back(p);
  CHECK(s22.size() == 6);
  CHECK(s22 == brute);

  for (const std::vector<int>& blocks : {std::vector<int>{1, 2, 1}, {3, 2}, {1, 1, 1, 1}, {2, 0, 2}}) {
    const int n = std::accumulate(blocks.begin(), blocks.end(), 0);
    std::vector<Permutation> expected;
    for (const auto& p : all_permutations(n))
      if (is_shuffle(p, blocks)) expected.push_back(p);
    CHECK(shuffles(blocks) == expected);
  }
  Caps tight;
  tight.max_word_length = 3;
  CHECK_THROWS_AS(shuffles(std::vector<int>{2, 2}, tight), ResourceError);
}

TEST_CASE("stairway shuffles") {
  CHECK(stairway_shuffles(std::vector<int>{1, 1}) == std::vector<Permutation>{{0, 1}});
  CHECK(stairway_shuffles(std::vector<int>{3}) == std::vector<Permutation>{{0, 1, 2}});
  std::vector<Permutation> expected;
  for (const auto& p : shuffles(std::vector<int>{2, 1}))
    if (p[0] < p[2]) expected.push_back(p);
  CHECK(stairway_shuffles(std::vector<int>{2, 1}) == expected);

  const std::vector<int> blocks{1, 2, 2};
  std::vector<Permutation> chain;
  for (const auto& p : shuffles(blocks))
    if (p[0] < p[1] && p[1] < p[3]) chain.push_back(p);
  CHECK(stairway_shuffles(blocks) == chain);
}

TEST_CASE("canonical words") {
  const GradedSpace s = mixed_space();
  const auto xe = canonicalize(s, std::vector<std::string>{"x", "e"});
  CHECK(xe.word.factors == std::vector<int>{0, 1});
  CHECK(xe.sign == 1);
  const auto he = canonicalize(s, std::vector<std::string>{"h", "e"});
  CHECK(render_word(s, he.word) == "e.h");
  CHECK(he.sign == -1);
  CHECK(canonicalize(s, std::vector<std::string>{"e", "x", "e"}).sign == 0);
  CHECK(canonicalize(s, std::vector<std::string>{"x", "x"}).sign == 1);
  CHECK_THROWS_AS(canonicalize(s, std::vector<std::string>{"q"}), InputError);
}

TEST_CASE("canonical sign agrees with the koszul sign of the sorting permutation") {
  const GradedSpace s = mixed_space();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<int> f(static_cast<std::size_t>(n));
    for (auto& v : f) v = static_cast<int>(rng() % static_cast<std::uint64_t>(s.dim()));
    std::vector<int> order(f.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)]; });
    Permutation sigma(f.size());
    for (std::size_t p = 0; p < order.size(); ++p) sigma[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
    std::vector<int> deg;
    for (int v : f) deg.push_back(s.degree(v));
    bool odd_repeat = false;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) odd_repeat |= f[i] == f[j] && s.odd(f[i]);
    const auto c = canonicalize(s, f);
    CHECK(c.sign == (odd_repeat ? 0 : koszul_sign(sigma, deg)));
    CHECK(std::is_sorted(c.word.factors.begin(), c.word.factors.end()));
  }
}

TEST_CASE("word enumeration matches brute force") {
  const GradedSpace s = mixed_space();
  const auto words = enumerate_words(s, 3, 4);
  std::vector<SymWord> brute;
  for (int len = 1; len <= 3; ++len) {
    std::vector<int> idx(static_cast<std::size_t>(len), 0);
    std::vector<SymWord> level;
    for (;;) {
      SymWord w{idx};
      if (std::is_sorted(idx.begin(), idx.end()) && word_weight(s, w) < 4 && canonicalize(s, idx).sign != 0)
        level.push_back(w);
      int k = len - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == s.dim()) idx[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    std::sort(level.begin(), level.end());
    brute.insert(brute.end(), level.begin(), level.end());
  }
  CHECK(words == brute);
}

TEST_CASE("symmetric algebra products") {
  const GradedSpace s = mixed_space();
  std::mt19937_64 rng(5);
  auto random_sum = [&](int max_len) {
    WordSum out;
    for (int k = 0; k < 3; ++k) {
      std::vector<int> f;
      const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
      for (int i = 0; i < len; ++i) f.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(s.dim())));
      const auto c = canonicalize(s, f);
      Rational coeff(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
      coeff.canonicalize();
      if (c.sign != 0) out.add(c.word, coeff * c.sign);
    }
    return out;
  };
  auto word_sign_swap = [&](const SymWord& a, const SymWord& b) {
    return (word_degree(s, a) * word_degree(s, b)) % 2 == 0 ? 1 : -1;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const WordSum a = random_sum(2), b = random_sum(2), c = random_sum(2);
    CHECK(multiply(s, multiply(s, a, b), c) == multiply(s, a, multiply(s, b, c)));
    CHECK(multiply(s, a, WordSum::unit()) == a);
    for (const auto& [wa, ca] : a.terms())
      for (const auto& [wb, cb] : b.terms())
        CHECK(multiply(s, WordSum::word(wa), WordSum::word(wb)) ==
              Rational(word_sign_swap(wa, wb)) * multiply(s, WordSum::word(wb), WordSum::word(wa)));
  }
  // e.e vanishes; x.x does not
  const SymWord e{{1}}, x{{0}};
  CHECK(multiply(s, WordSum::word(e), WordSum::word(e)).is_zero());
  CHECK(multiply(s, WordSum::word(x), WordSum::word(x)) == WordSum::word(SymWord{{0, 0}}));
}

TEST_CASE("exponential of degree-0 elements") {
  const GradedSpace s({{"x", 0, 1}, {"u", 0, 1}, {"w", 0, 2}});
  const Element a = Element::basis(0, Rational(2)) + Element::basis(2, Rational(-1, 3));
  const Element b = Element::basis(1, Rational(3, 2)) + Element::basis(0, Rational(1));
  for (int bound = 1; bound <= 6; ++bound) {
    CHECK(multiply(s, exp_word(s, a, bound), exp_word(s, b, bound), bound) == exp_word(s, a + b, bound));
  }
  // exp(2x) below weight 3 = 1 + 2x + 2 x.x
  WordSum expected = WordSum::unit();
  expected.add(SymWord{{0}}, 2);
  expected.add(SymWord{{0, 0}}, 2);
  CHECK(exp_word(s, Element::basis(0, Rational(2)), 3) == expected);
  CHECK_THROWS_AS(exp_word(mixed_space(), Element::basis(1), 3), InputError);
}

TEST_CASE("element arithmetic and weights") {
  const GradedSpace s = mixed_space();
  Element a = Element::basis(0, 2) + Element::basis(3, Rational(1, 2));
  CHECK(a.weight(s) == 1);
  CHECK_FALSE(a.degree(s));
  CHECK(a.of_weight(s, 2) == Element::basis(3, Rational(1, 2)));
  CHECK(a.below_weight(s, 2) == Element::basis(0, 2));
  CHECK((a - a).is_zero());
  CHECK(render(s, a) == "2 x + 1/2 y");
  CHECK(render(s, Element{}) == "0");
  CHECK(Element{}.weight(s) == kInfiniteWeight);
}
