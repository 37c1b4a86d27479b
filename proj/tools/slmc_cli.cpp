#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "slmc/slmc.h"

namespace {

struct ModelDeleter {
  void operator()(slmc_model* m) const { slmc_model_free(m); }
};
using Model = std::unique_ptr<slmc_model, ModelDeleter>;

struct Failure {
  slmc_status status;
};

[[noreturn]] void fail(slmc_status status) {
  std::cerr << "error: " << slmc_last_error() << "\n";
  throw Failure{status};
}

Model load(const std::string& path, const slmc_model* context = nullptr) {
  slmc_model* m = nullptr;
  const slmc_status s = context ? slmc_model_load_with_context(path.c_str(), context, &m)
                                : slmc_model_load(path.c_str(), &m);
  if (s != SLMC_OK) fail(s);
  return Model(m);
}

std::vector<Model> load_all(const std::vector<std::string>& paths, const slmc_model* context) {
  std::vector<Model> out;
  for (const auto& p : paths) out.push_back(load(p, context));
  return out;
}

std::vector<const slmc_model*> raw(const std::vector<Model>& models) {
  std::vector<const slmc_model*> out;
  for (const auto& m : models) out.push_back(m.get());
  return out;
}

// Prints the report (or the error) and turns the status into an exit code.
int finish(slmc_status s, slmc_report* const* slot, const std::string& out_path = {}) {
  slmc_report* report = *slot;
  if (!report) {
    std::cerr << "error: " << slmc_last_error() << "\n";
    return static_cast<int>(s);
  }
  const std::string text = slmc_report_text(report);
  slmc_report_free(report);
  if (!out_path.empty() && s == SLMC_OK) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return SLMC_INPUT_ERROR;
    }
    f << text;
    std::cout << "# written to " << out_path << "\n";
  } else {
    std::cout << text;
  }
  return static_cast<int>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slmc: filtered shifted L-infinity algebras and their MC groupoids"};
  app.require_subcommand(1);

  std::string file, second, simplex_file, out_path, element, mc;
  std::vector<std::string> faces, points;
  int max_arity = 0, dim = 0, index = 0, poly_degree = 3, trials = 50;
  std::uint64_t seed = 7;
  bool enhanced = false;

  auto* check_algebra = app.add_subcommand("check-algebra", "verify the L-infinity relations");
  check_algebra->add_option("FILE", file)->required();
  check_algebra->add_option("--max-arity", max_arity, "longest word checked")->check(CLI::PositiveNumber);

  auto* check_morphism = app.add_subcommand("check-morphism", "verify the morphism equation");
  check_morphism->add_option("FILE", file)->required();

  auto* curv = app.add_subcommand("curv", "curvature of an element");
  curv->add_option("FILE", file)->required();
  curv->add_option("--element", element)->required();

  auto* twist = app.add_subcommand("twist", "twist by an MC element");
  twist->add_option("FILE", file)->required();
  twist->add_option("--mc", mc)->required();
  twist->add_option("--out", out_path);

  auto* compose = app.add_subcommand("compose", "composite G o F");
  compose->add_option("F", file)->required();
  compose->add_option("G", second)->required();
  compose->add_flag("--enhanced", enhanced);

  auto* push = app.add_subcommand("push", "pushforward of an element");
  push->add_option("FILE", file)->required();
  push->add_option("--element", element)->required();

  auto* mc_system = app.add_subcommand("mc-system", "polynomial MC equations on a simplex");
  mc_system->add_option("FILE", file)->required();
  mc_system->add_option("--dim", dim)->required()->check(CLI::Range(0, 3));
  mc_system->add_option("--poly-degree", poly_degree)->required()->check(CLI::NonNegativeNumber);

  auto* mc_check = app.add_subcommand("mc-check", "check that simplices are MC");
  mc_check->add_option("FILE", file)->required();
  mc_check->add_option("--simplex", simplex_file)->required();

  auto* fill_horn = app.add_subcommand("fill-horn", "fill a horn from its faces");
  fill_horn->add_option("FILE", file)->required();
  fill_horn->add_option("--dim", dim)->required()->check(CLI::Range(1, 3));
  fill_horn->add_option("--index", index)->required()->check(CLI::NonNegativeNumber);
  fill_horn->add_option("--faces", faces, "face files in increasing face index order")->required();
  fill_horn->add_option("--poly-degree", poly_degree, "degree of the filler")->capture_default_str();

  auto* pi0 = app.add_subcommand("pi0", "connected components of MC points");
  pi0->add_option("FILE", file)->required();
  pi0->add_option("--points", points)->required();
  pi0->add_option("--poly-degree", poly_degree)->required()->check(CLI::NonNegativeNumber);

  auto* properties = app.add_subcommand("properties", "run every property suite");
  properties->add_option("--seed", seed)->capture_default_str();
  properties->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SLMC_INPUT_ERROR;
  }

  try {
    slmc_caps caps;
    if (const slmc_status s = slmc_caps_from_env(&caps); s != SLMC_OK) fail(s);
    slmc_report* report = nullptr;

    if (*check_algebra) {
      const Model m = load(file);
      return finish(slmc_check_algebra(m.get(), max_arity, &caps, &report), &report);
    }
    if (*check_morphism) {
      const Model m = load(file);
      return finish(slmc_check_morphism(m.get(), &caps, &report), &report);
    }
    if (*curv) {
      const Model m = load(file);
      return finish(slmc_curvature(m.get(), element.c_str(), &report), &report);
    }
    if (*twist) {
      const Model m = load(file);
      return finish(slmc_twist(m.get(), mc.c_str(), &report), &report, out_path);
    }
    if (*compose) {
      const Model f = load(file);
      const Model g = load(second);
      return finish(slmc_compose(f.get(), g.get(), enhanced ? 1 : 0, &caps, &report), &report);
    }
    if (*push) {
      const Model m = load(file);
      return finish(slmc_push(m.get(), element.c_str(), &caps, &report), &report);
    }
    if (*mc_system) {
      const Model m = load(file);
      return finish(slmc_mc_system(m.get(), dim, poly_degree, &caps, &report), &report);
    }
    if (*mc_check) {
      const Model m = load(file);
      const Model s = load(simplex_file, m.get());
      return finish(slmc_mc_check(m.get(), s.get(), &caps, &report), &report);
    }
    if (*fill_horn) {
      const Model m = load(file);
      const auto fs = load_all(faces, m.get());
      const auto ptrs = raw(fs);
      return finish(slmc_fill_horn(m.get(), dim, index, ptrs.data(), ptrs.size(), poly_degree, &caps, &report),
                    &report);
    }
    if (*pi0) {
      const Model m = load(file);
      const auto ps = load_all(points, m.get());
      const auto ptrs = raw(ps);
      return finish(slmc_pi0(m.get(), ptrs.data(), ptrs.size(), poly_degree, &caps, &report), &report);
    }
    if (*properties) return finish(slmc_properties(seed, trials, &caps, &report), &report);
  } catch (const Failure& f) {
    return static_cast<int>(f.status);
  }
  return SLMC_INTERNAL_ERROR;
}
