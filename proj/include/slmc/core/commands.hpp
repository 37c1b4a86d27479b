#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slmc/core/model_io.hpp"

namespace slmc {

/// Outcome of one CLI command: status 0 when every check passes, 1 on a
/// mathematical failure (the text then carries the witness). Input and
/// resource problems are thrown as InputError / ResourceError instead.
struct CommandResult {
  int status = 0;
  std::string text;
};

/// Relations of every algebra in the file on all words of length <= max_arity.
CommandResult check_algebra_command(const ModelFile& file, std::optional<int> max_arity, const Caps& caps = {});
/// Morphism equation of every morphism and enhanced morphism in the file.
CommandResult check_morphism_command(const ModelFile& file, const Caps& caps = {});
/// Curvature of an element of the file's first algebra.
CommandResult curvature_command(const ModelFile& file, std::string_view element);
/// The first algebra twisted by an MC element, rendered as a model file.
CommandResult twist_command(const ModelFile& file, std::string_view mc);
/// G o F with F taken from `f` and G from `g`, rendered with its algebras.
CommandResult compose_command(const ModelFile& f, const ModelFile& g, bool enhanced, const Caps& caps = {});
/// F_*(a) for the first morphism, or alpha + F_*(a) for the first enhanced morphism.
CommandResult push_command(const ModelFile& file, std::string_view element, const Caps& caps = {});
CommandResult mc_system_command(const ModelFile& file, int dim, int poly_degree, const Caps& caps = {});
/// Curvature of every simplex in `simplices`.
CommandResult mc_check_command(const ModelFile& file, const ModelFile& simplices, const Caps& caps = {});
/// faces[k] holds the k-th given face, in increasing face index order.
CommandResult fill_horn_command(const ModelFile& file, int dim, int index, const std::vector<ModelFile>& faces,
                                int poly_degree, const Caps& caps = {});
/// Points are the element blocks (and 0-simplices) of `points`, in order.
CommandResult pi0_command(const ModelFile& file, const std::vector<ModelFile>& points, int poly_degree,
                          const Caps& caps = {});
CommandResult properties_command(std::uint64_t seed, int trials, const Caps& caps = {});

}  // namespace slmc
