#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "screwmob/screwmob_c.h"

#include "json.hpp"

using nlohmann::json;

namespace {
const std::string kFixtures = SCREWMOB_FIXTURE_DIR;

struct Str {
  char* s = nullptr;
  ~Str() { sm_string_free(s); }
  json parse() const {
    REQUIRE(s != nullptr);
    return json::parse(s);
  }
};

struct Handle {
  sm_linkage* lk = nullptr;
  ~Handle() { sm_linkage_free(lk); }
};

Handle load(const std::string& name) {
  Str err;
  Handle h;
  h.lk = sm_linkage_load((kFixtures + "/" + name).c_str(), &err.s);
  REQUIRE(h.lk != nullptr);
  return h;
}
}  // namespace

TEST_CASE("load failure reports an error message and returns null") {
  Str err;
  sm_linkage* lk = sm_linkage_load((kFixtures + "/missing.json").c_str(), &err.s);
  CHECK(lk == nullptr);
  CHECK(err.s != nullptr);
}

TEST_CASE("handle accessors") {
  Handle h = load("double_watt.json");
  CHECK(sm_linkage_num_joints(h.lk) == 10);
  CHECK(sm_linkage_num_cycles(h.lk) == 3);
}

TEST_CASE("options validation returns SM_ERR_VALIDATION") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  o.order = 0;
  Str out;
  CHECK(sm_rank(h.lk, &o, &out.s) == SM_ERR_VALIDATION);
  CHECK(out.parse().contains("error"));

  sm_options_init(&o);
  o.section_ordinate = 99;
  Str out2;
  CHECK(sm_section(h.lk, &o, &out2.s, nullptr) == SM_ERR_VALIDATION);
}

TEST_CASE("sm_rank on the four-bar") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  Str out;
  REQUIRE(sm_rank(h.lk, &o, &out.s) == SM_OK);
  json j = out.parse();
  CHECK(j["rank"] == 2);
  CHECK(j["kernel_dim"] == 2);
  CHECK(j["kernel_basis"].size() == 2);
}

TEST_CASE("sm_cone finds the two four-bar branches") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  o.order = 4;
  Str out;
  REQUIRE(sm_cone(h.lk, &o, &out.s) == SM_OK);
  json j = out.parse();
  CHECK(j["mode"] == "exact");
  CHECK(j["cone"]["is_zero"] == false);
  CHECK(j["cone"]["branch_directions"].size() == 2);
}

TEST_CASE("sm_cone_stratum defaults k to rank+1") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  o.order = 2;
  Str out;
  REQUIRE(sm_cone_stratum(h.lk, &o, &out.s) == SM_OK);
  json j = out.parse();
  CHECK(j["k"] == 3);
  CHECK(j["cone"]["is_zero"] == true);
}

TEST_CASE("sm_cspace returns the system text and local dimension") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  o.order = 2;
  Str out, sys;
  REQUIRE(sm_cspace(h.lk, &o, &out.s, &sys.s) == SM_OK);
  json j = out.parse();
  CHECK(j["local_dimension"]["dim"] == 1);
  CHECK(j["local_dimension"]["conclusive"] == true);
  REQUIRE(sys.s != nullptr);
  CHECK(std::string(sys.s).find("x1") != std::string::npos);
}

TEST_CASE("sm_classify four-bar and determinism of JSON output") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  Str j1, t1, j2, t2;
  REQUIRE(sm_classify(h.lk, &o, &j1.s, &t1.s) == SM_OK);
  REQUIRE(sm_classify(h.lk, &o, &j2.s, &t2.s) == SM_OK);
  CHECK(std::string(j1.s) == std::string(j2.s));
  json j = j1.parse();
  CHECK(j["rank"] == 2);
  CHECK(j["flags"]["cusp"] == false);
  CHECK(j["flags"]["cspace_singularity"] == true);
  CHECK(t1.s != nullptr);
}

TEST_CASE("sm_section writes CSV with the documented header") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  o.range_steps = 60;
  Str out, csv;
  REQUIRE(sm_section(h.lk, &o, &out.s, &csv.s) == SM_OK);
  json j = out.parse();
  CHECK(j["points"].get<int>() > 20);
  CHECK(j["branches"].get<int>() >= 2);
  REQUIRE(csv.s != nullptr);
  std::string text(csv.s);
  CHECK(text.rfind("branch,residual,x1,x2,x3,x4", 0) == 0);
}

TEST_CASE("null output pointers are accepted") {
  Handle h = load("fourbar.json");
  sm_options o;
  sm_options_init(&o);
  o.order = 2;
  CHECK(sm_cspace(h.lk, &o, nullptr, nullptr) == SM_OK);
}
