#include "slmc/slmc.h"

#include <exception>
#include <new>
#include <string>

#include "slmc/core/commands.hpp"

struct slmc_model {
  slmc::ModelFile file;
};

struct slmc_report {
  std::string text;
};

namespace {

thread_local std::string last_error;

slmc::Caps to_caps(const slmc_caps* c) {
  if (!c) return slmc::Caps::from_env();
  slmc::Caps caps;
  caps.max_word_length = c->max_word_length;
  caps.max_arity = c->max_arity;
  caps.max_poly_degree = c->max_poly_degree;
  return caps;
}

template <class F>
slmc_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const slmc::InputError& e) {
    last_error = e.what();
    return SLMC_INPUT_ERROR;
  } catch (const slmc::ResourceError& e) {
    last_error = e.what();
    return SLMC_RESOURCE_ERROR;
  } catch (const slmc::PreconditionError& e) {
    last_error = e.what();
    return SLMC_CHECK_FAILED;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SLMC_RESOURCE_ERROR;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return SLMC_INTERNAL_ERROR;
  } catch (...) {
    last_error = "internal error";
    return SLMC_INTERNAL_ERROR;
  }
}

slmc_status emit(const slmc::CommandResult& r, slmc_report** out) {
  *out = new slmc_report{r.text};
  return r.status == 0 ? SLMC_OK : SLMC_CHECK_FAILED;
}

slmc_status missing(const char* what) {
  last_error = std::string(what) + " is NULL";
  return SLMC_INPUT_ERROR;
}

}  // namespace

extern "C" {

const char* slmc_last_error(void) { return last_error.c_str(); }

slmc_caps slmc_default_caps(void) {
  const slmc::Caps c;
  return {c.max_word_length, c.max_arity, c.max_poly_degree};
}

slmc_status slmc_caps_from_env(slmc_caps* out) {
  if (!out) return missing("out");
  return guarded([&] {
    const slmc::Caps c = slmc::Caps::from_env();
    *out = {c.max_word_length, c.max_arity, c.max_poly_degree};
    return SLMC_OK;
  });
}

slmc_status slmc_model_parse(const char* text, slmc_model** out) {
  if (!text || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new slmc_model{slmc::parse_model(text)};
    return SLMC_OK;
  });
}

slmc_status slmc_model_load(const char* path, slmc_model** out) {
  if (!path || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new slmc_model{slmc::load_model(path)};
    return SLMC_OK;
  });
}

slmc_status slmc_model_load_with_context(const char* path, const slmc_model* context, slmc_model** out) {
  if (!path || !context || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new slmc_model{slmc::load_model(path, context->file)};
    return SLMC_OK;
  });
}

slmc_status slmc_model_render(const slmc_model* model, slmc_report** out) {
  if (!model || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new slmc_report{slmc::render_model(model->file)};
    return SLMC_OK;
  });
}

size_t slmc_model_block_count(const slmc_model* model) { return model ? model->file.entries.size() : 0; }

void slmc_model_free(slmc_model* model) { delete model; }

const char* slmc_report_text(const slmc_report* report) { return report ? report->text.c_str() : ""; }

void slmc_report_free(slmc_report* report) { delete report; }

slmc_status slmc_check_algebra(const slmc_model* model, int max_arity, const slmc_caps* caps, slmc_report** out) {
  if (!model || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<int> arity;
    if (max_arity > 0) arity = max_arity;
    return emit(slmc::check_algebra_command(model->file, arity, to_caps(caps)), out);
  });
}

slmc_status slmc_check_morphism(const slmc_model* model, const slmc_caps* caps, slmc_report** out) {
  if (!model || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::check_morphism_command(model->file, to_caps(caps)), out); });
}

slmc_status slmc_curvature(const slmc_model* model, const char* element, slmc_report** out) {
  if (!model || !element || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::curvature_command(model->file, element), out); });
}

slmc_status slmc_twist(const slmc_model* model, const char* mc, slmc_report** out) {
  if (!model || !mc || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::twist_command(model->file, mc), out); });
}

slmc_status slmc_compose(const slmc_model* f, const slmc_model* g, int enhanced, const slmc_caps* caps,
                         slmc_report** out) {
  if (!f || !g || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::compose_command(f->file, g->file, enhanced != 0, to_caps(caps)), out); });
}

slmc_status slmc_push(const slmc_model* model, const char* element, const slmc_caps* caps, slmc_report** out) {
  if (!model || !element || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::push_command(model->file, element, to_caps(caps)), out); });
}

slmc_status slmc_mc_system(const slmc_model* model, int dim, int poly_degree, const slmc_caps* caps,
                           slmc_report** out) {
  if (!model || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::mc_system_command(model->file, dim, poly_degree, to_caps(caps)), out); });
}

slmc_status slmc_mc_check(const slmc_model* model, const slmc_model* simplices, const slmc_caps* caps,
                          slmc_report** out) {
  if (!model || !simplices || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::mc_check_command(model->file, simplices->file, to_caps(caps)), out); });
}

slmc_status slmc_fill_horn(const slmc_model* model, int dim, int index, const slmc_model* const* faces,
                           size_t face_count, int poly_degree, const slmc_caps* caps, slmc_report** out) {
  if (!model || (!faces && face_count > 0) || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<slmc::ModelFile> files;
    for (size_t k = 0; k < face_count; ++k) {
      if (!faces[k]) throw slmc::InputError("face " + std::to_string(k) + " is NULL");
      files.push_back(faces[k]->file);
    }
    return emit(slmc::fill_horn_command(model->file, dim, index, files, poly_degree, to_caps(caps)), out);
  });
}

slmc_status slmc_pi0(const slmc_model* model, const slmc_model* const* points, size_t point_count, int poly_degree,
                     const slmc_caps* caps, slmc_report** out) {
  if (!model || (!points && point_count > 0) || !out) return missing("argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<slmc::ModelFile> files;
    for (size_t k = 0; k < point_count; ++k) {
      if (!points[k]) throw slmc::InputError("point file " + std::to_string(k) + " is NULL");
      files.push_back(points[k]->file);
    }
    return emit(slmc::pi0_command(model->file, files, poly_degree, to_caps(caps)), out);
  });
}

slmc_status slmc_properties(uint64_t seed, int trials, const slmc_caps* caps, slmc_report** out) {
  if (!out) return missing("argument");
  *out = nullptr;
  return guarded([&] { return emit(slmc::properties_command(seed, trials, to_caps(caps)), out); });
}

}  // extern "C"
