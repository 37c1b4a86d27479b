#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "slmc/core/groupoid.hpp"

namespace slmc {

/// One check outcome. `key` identifies the instance (fixture, trial, word),
/// `witness` holds the rendered nonzero residual of a failing check.
struct CheckLine {
  std::string suite;
  std::string key;
  bool pass = true;
  std::string witness;
  std::string text() const;
};

struct PropertyReport {
  std::vector<CheckLine> lines;

  void add(std::string suite, std::string key, bool pass, std::string witness = {});
  void append(const PropertyReport& other);
  bool ok() const;
  int passed() const;
  int failed() const;
  /// Number of lines whose suite name equals `suite`.
  int count(const std::string& suite) const;
  bool suite_ok(const std::string& suite) const;
  /// Lines sorted, one per row.
  std::string render() const;
};

/// Deterministic draws from mt19937_64. Coefficients are p/q with p in
/// -3..3 and q in {1,2,3}.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return below(2) == 1; }
  Rational coefficient();
  Rational nonzero_coefficient();
  /// Random combination of the basis vectors of the given degree.
  Element element(const GradedSpace& space, int degree);
  Element homogeneous_element(const GradedSpace& space);
  PolyForm form(int dim, int max_poly_degree, int form_degree);

 private:
  std::mt19937_64 engine_;
};

struct PropertyOptions {
  std::uint64_t seed = 7;
  int trials = 50;
  Caps caps;
};

/// Random enhanced endomorphism of fixtures::a2_plus_kernel(), validated
/// with check_morphism.
EnhancedMorphism random_x_endomorphism(Random& rng, const std::string& name);

/// MC element of `alg` (degree 0) found by lifting a random weight-1 seed.
std::optional<Element> random_mc_point(const SLAlgebra& alg, Random& rng, const Caps& caps = {});
/// MC element of alg (x) Omega_dim of polynomial degree <= poly_degree.
std::optional<TensorElement> random_mc_simplex(const SLAlgebra& alg, int dim, int poly_degree, Random& rng,
                                               const Caps& caps = {}, int attempts = 8);

/// The four curvature identities on every valid fixture.
PropertyReport curvature_suite(const PropertyOptions& opt);
/// Coalgebra-level identities on words of length <= 3.
PropertyReport coalgebra_suite(const PropertyOptions& opt);
/// Morphism-level properties: composition, functoriality of pushforward and twisting.
PropertyReport morphism_suite(const PropertyOptions& opt);
/// Associativity and unit of compose_enhanced plus the two-route composition check.
PropertyReport enhanced_suite(const PropertyOptions& opt);
PropertyReport derham_suite(const PropertyOptions& opt);
/// Shift diagram, functoriality, simplicial naturality and monoidality.
PropertyReport integration_suite(const PropertyOptions& opt);
PropertyReport horn_suite(const PropertyOptions& opt);
/// Relation soundness of valid fixtures and of their twists.
PropertyReport relation_suite(const PropertyOptions& opt);

/// Every suite above.
PropertyReport run_properties(const PropertyOptions& opt);

}  // namespace slmc
