#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slmc/core/groupoid.hpp"

namespace slmc {

struct NamedElement {
  std::string name;
  SLAlgebra algebra;
  Element value;
};

struct NamedSimplex {
  std::string name;
  SLAlgebra algebra;
  TensorElement value;
};

using ModelEntry = std::variant<SLAlgebra, InftyMorphism, EnhancedMorphism, NamedElement, NamedSimplex>;

/// A parsed model file: blocks in declaration order. Later blocks may refer
/// to algebras declared earlier by name.
struct ModelFile {
  std::vector<ModelEntry> entries;

  const SLAlgebra* find_algebra(std::string_view name) const;
  /// The first algebra / morphism / ... in the file, or nullptr.
  const SLAlgebra* first_algebra() const;
  const InftyMorphism* first_morphism() const;
  const EnhancedMorphism* first_enhanced() const;
  const NamedElement* first_element() const;
  const NamedSimplex* first_simplex() const;
};

/// Throws InputError("line N: ...") on malformed input, undeclared symbols,
/// or invalid degrees/weights.
ModelFile parse_model(std::string_view text);
/// Algebras of `context` may be referenced without being declared; a block
/// redeclaring one of them must match it exactly and is then dropped.
ModelFile parse_model(std::string_view text, const ModelFile& context);
/// Reads and parses a file; InputError mentions the path.
ModelFile load_model(const std::string& path);
ModelFile load_model(const std::string& path, const ModelFile& context);
std::string render_model(const ModelFile& file);

std::string render_block(const SLAlgebra& alg);
std::string render_block(const InftyMorphism& f);
std::string render_block(const EnhancedMorphism& e);
std::string render_block(const NamedElement& e);
std::string render_block(const NamedSimplex& s);

/// Blocks for the algebras a morphism mentions, then the morphism itself.
std::string render_with_dependencies(const InftyMorphism& f);
std::string render_with_dependencies(const EnhancedMorphism& e);

/// "RAT SYM {+ RAT SYM}" or "0".
Element parse_element(const GradedSpace& space, std::string_view text);
/// "RAT factor* {+ RAT factor*}" with factors t<i>[^k] and dt<i>, or "0".
PolyForm parse_form(int dim, std::string_view text);
/// "(FORM) SYM {+ (FORM) SYM}" or "0".
TensorElement parse_tensor(const GradedSpace& space, int dim, std::string_view text);

std::string render_tensor_line(const GradedSpace& space, const TensorElement& x);

}  // namespace slmc
