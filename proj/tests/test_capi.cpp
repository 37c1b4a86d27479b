#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include "slmc/slmc.h"

namespace {

const char* kA2 =
    "algebra A2\n"
    "basis x deg 0 wt 1\n"
    "basis y deg 0 wt 1\n"
    "basis z deg 1 wt 2\n"
    "nilpotency 3\n"
    "bracket 2 [x y] -> 1 z\n";

std::string fixture(const char* name) { return std::string(SLMC_FIXTURE_DIR) + "/" + name; }

// Owns a model and a report for the duration of a test.
struct Held {
  slmc_model* model = nullptr;
  slmc_report* report = nullptr;
  ~Held() {
    slmc_model_free(model);
    slmc_report_free(report);
  }
  std::string text() const { return report ? slmc_report_text(report) : ""; }
};

}  // namespace

TEST_CASE("parse, render and block count") {
  Held h;
  REQUIRE(slmc_model_parse(kA2, &h.model) == SLMC_OK);
  CHECK(slmc_model_block_count(h.model) == 1);
  REQUIRE(slmc_model_render(h.model, &h.report) == SLMC_OK);
  CHECK(h.text() == kA2);
}

TEST_CASE("check-algebra statuses") {
  Held ok;
  REQUIRE(slmc_model_parse(kA2, &ok.model) == SLMC_OK);
  CHECK(slmc_check_algebra(ok.model, 0, nullptr, &ok.report) == SLMC_OK);
  CHECK(ok.text().find("PASS eq:relations algebra=A2 arity=2 word=x.y") != std::string::npos);

  Held bad;
  REQUIRE(slmc_model_load(fixture("mutant.slmc").c_str(), &bad.model) == SLMC_OK);
  CHECK(slmc_check_algebra(bad.model, 5, nullptr, &bad.report) == SLMC_CHECK_FAILED);
  CHECK(bad.text().find("FAIL eq:relations algebra=mutant arity=3 word=x.x.y witness=2 w") != std::string::npos);

  slmc_caps caps = slmc_default_caps();
  caps.max_arity = 2;
  Held capped;
  REQUIRE(slmc_model_parse(kA2, &capped.model) == SLMC_OK);
  CHECK(slmc_check_algebra(capped.model, 5, &caps, &capped.report) == SLMC_RESOURCE_ERROR);
  CHECK(capped.report == nullptr);
  CHECK(std::string(slmc_last_error()).size() > 0);
}

TEST_CASE("curvature and twist") {
  Held h;
  REQUIRE(slmc_model_parse(kA2, &h.model) == SLMC_OK);
  REQUIRE(slmc_curvature(h.model, "1 x + 1 y", &h.report) == SLMC_OK);
  CHECK(h.text().find("1 z\n") != std::string::npos);

  Held t;
  REQUIRE(slmc_model_parse(kA2, &t.model) == SLMC_OK);
  CHECK(slmc_twist(t.model, "1 x + 1 y", &t.report) == SLMC_CHECK_FAILED);
  CHECK(t.text().find("witness=1 z") != std::string::npos);
}

TEST_CASE("input errors") {
  slmc_model* m = nullptr;
  CHECK(slmc_model_parse("frobnicate\n", &m) == SLMC_INPUT_ERROR);
  CHECK(m == nullptr);
  CHECK(std::string(slmc_last_error()).find("line 1") != std::string::npos);
  CHECK(slmc_model_load("/nonexistent/model.slmc", &m) == SLMC_INPUT_ERROR);
  CHECK(slmc_model_parse(nullptr, &m) == SLMC_INPUT_ERROR);
  CHECK(slmc_model_parse(kA2, nullptr) == SLMC_INPUT_ERROR);

  Held h;
  REQUIRE(slmc_model_parse(kA2, &h.model) == SLMC_OK);
  CHECK(slmc_curvature(h.model, "1 q", &h.report) == SLMC_INPUT_ERROR);
  CHECK(slmc_curvature(nullptr, "1 x", &h.report) == SLMC_INPUT_ERROR);
  // freeing NULL is a no-op
  slmc_model_free(nullptr);
  slmc_report_free(nullptr);
}

TEST_CASE("context loading and pi0") {
  Held alg;
  REQUIRE(slmc_model_load(fixture("contractible.slmc").c_str(), &alg.model) == SLMC_OK);
  Held pts;
  REQUIRE(slmc_model_load_with_context(fixture("contractible_points.slmc").c_str(), alg.model, &pts.model) == SLMC_OK);
  const slmc_model* points[] = {pts.model};
  REQUIRE(slmc_pi0(alg.model, points, 1, 1, nullptr, &alg.report) == SLMC_OK);
  CHECK(alg.text().find("classes 1") != std::string::npos);
}

TEST_CASE("caps from the environment") {
  setenv("SLMC_CAPS", "word=5,arity=4,poly=3", 1);
  slmc_caps caps{};
  REQUIRE(slmc_caps_from_env(&caps) == SLMC_OK);
  CHECK(caps.max_word_length == 5);
  CHECK(caps.max_arity == 4);
  CHECK(caps.max_poly_degree == 3);
  setenv("SLMC_CAPS", "arity=banana", 1);
  CHECK(slmc_caps_from_env(&caps) == SLMC_INPUT_ERROR);
  unsetenv("SLMC_CAPS");
  CHECK(slmc_default_caps().max_arity == 8);
}

TEST_CASE("properties through the C API") {
  slmc_report* a = nullptr;
  slmc_report* b = nullptr;
  REQUIRE(slmc_properties(3, 2, nullptr, &a) == SLMC_OK);
  REQUIRE(slmc_properties(3, 2, nullptr, &b) == SLMC_OK);
  CHECK(std::string(slmc_report_text(a)) == slmc_report_text(b));
  slmc_report_free(a);
  slmc_report_free(b);
}
