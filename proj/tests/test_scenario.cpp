#include <fstream>
#include <random>

#include "doctest.h"
#include "wsan/engine.hpp"
#include "wsan/error.hpp"
#include "wsan/scenario.hpp"

using namespace wsan;
using nlohmann::json;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(WSAN_SOURCE_DIR) / "scenarios";

json minimal() {
  return json::parse(R"({
    "grid": {"n": 4, "r": 50},
    "topology": {"kind": "semi_automatic"},
    "fire_events": [{"x": 100, "y": 50, "speed": 1}],
    "horizon": 300
  })");
}

ValidationReport report_of(const json& doc) {
  auto parsed = parse_scenario(doc);
  REQUIRE(std::holds_alternative<ValidationReport>(parsed));
  return std::get<ValidationReport>(parsed);
}

bool mentions(const ValidationReport& r, std::string_view path) {
  for (const auto& i : r.issues)
    if (i.path.find(path) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("bundled scenarios load and validate") {
  for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
    CAPTURE(entry.path().string());
    const auto loaded = load_and_validate(entry.path());
    REQUIRE(std::holds_alternative<Scenario>(loaded));
    CHECK(validate(std::get<Scenario>(loaded)).ok());
  }
}

TEST_CASE("defaults fill omitted sections") {
  const auto parsed = parse_scenario(minimal());
  REQUIRE(std::holds_alternative<Scenario>(parsed));
  const auto& s = std::get<Scenario>(parsed);
  CHECK(s.grid.n == 4);
  CHECK(s.sensing.period == 1.0);
  CHECK(s.network.wsan_latency_s == 0.005);
  CHECK(s.network.drop_probability == 0.0);
  CHECK(s.fire_events.at(0).t0 == 0.0);
  CHECK(s.integration.filter == "in_area");
  CHECK_FALSE(s.actors.extinguish_radius.has_value());
}

TEST_CASE("odd n is reported with its field path") {
  json doc = minimal();
  doc["grid"]["n"] = 3;
  const auto r = report_of(doc);
  CHECK(mentions(r, "grid.n"));
  CHECK_FALSE(r.to_string().empty());
}

TEST_CASE("ignition outside the area is reported") {
  json doc = minimal();
  doc["fire_events"][0]["x"] = 400;
  CHECK(mentions(report_of(doc), "fire_events[0]"));
  doc["fire_events"][0]["x"] = -0.5;
  CHECK(mentions(report_of(doc), "fire_events[0]"));
}

TEST_CASE("semantic violations are collected together") {
  json doc = minimal();
  doc["grid"]["r"] = 0;
  doc["fire_events"][0]["speed"] = -1;
  doc["network"] = {{"drop_probability", 1.0}};
  doc["horizon"] = 0;
  const auto r = report_of(doc);
  CHECK(r.issues.size() >= 4);
  CHECK(mentions(r, "grid.r"));
  CHECK(mentions(r, "speed"));
  CHECK(mentions(r, "drop_probability"));
  CHECK(mentions(r, "horizon"));
}

TEST_CASE("option combinations restricted to one topology") {
  json doc = minimal();
  doc["topology"] = {{"kind", "automatic_in_cloud"}, {"cloud_gated", true}};
  CHECK(mentions(report_of(doc), "cloud_gated"));
  doc["topology"] = {{"kind", "semi_automatic"}, {"direct_actor_variation", true}};
  CHECK(mentions(report_of(doc), "direct_actor_variation"));
  doc["topology"] = {{"kind", "manual"}};
  CHECK(mentions(report_of(doc), "topology.kind"));
}

TEST_CASE("unknown fields and wrong types are errors") {
  json doc = minimal();
  doc["grid"]["m"] = 4;
  CHECK(mentions(report_of(doc), "grid.m"));
  doc = minimal();
  doc["wind"] = 3;
  CHECK(mentions(report_of(doc), "wind"));
  doc = minimal();
  doc["grid"]["n"] = "four";
  CHECK(mentions(report_of(doc), "grid.n"));
  doc = minimal();
  doc["subscriptions"] = json::array({{{"subscriber", "x"}, {"topic_filter", "a/#/b"}, {"period", 5}}});
  CHECK(mentions(report_of(doc), "subscriptions[0]"));
}

TEST_CASE("unreadable and malformed files") {
  const auto missing = load_and_validate("/nonexistent/scenario.json");
  REQUIRE(std::holds_alternative<ValidationReport>(missing));
  const auto path = std::filesystem::temp_directory_path() / "wsan_malformed.json";
  std::ofstream(path) << "{\"grid\": {\"n\": 4,";
  const auto bad = load_and_validate(path);
  REQUIRE(std::holds_alternative<ValidationReport>(bad));
  CHECK(std::get<ValidationReport>(bad).to_string().find("parse error") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("canonical form round-trips") {
  for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
    const auto s = std::get<Scenario>(load_and_validate(entry.path()));
    const auto canonical = to_json(s);
    const auto again = parse_scenario(json::parse(canonical.dump()));
    REQUIRE(std::holds_alternative<Scenario>(again));
    CHECK(to_json(std::get<Scenario>(again)) == canonical);
    CHECK(engine::scenario_hash(std::get<Scenario>(again)) == engine::scenario_hash(s));
  }
}

TEST_CASE("metadata is carried but does not change the run") {
  auto s = std::get<Scenario>(parse_scenario(minimal()));
  const auto plain = engine::run(s);
  s.metadata = {{"owner", "ops"}, {"tags", {1, 2, 3}}};
  const auto tagged = engine::run(s);
  CHECK(plain.trace.body() == tagged.trace.body());
  CHECK(to_json(s)["metadata"]["owner"] == "ops");
}

TEST_CASE("fuzzed valid scenarios run to completion") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0, 1);
  const char* kinds[] = {"semi_automatic", "automatic_in_cloud", "automatic_with_cloud"};
  const char* filters[] = {"accept_all", "reject_all", "in_area"};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 5));
    const double r = 1 + 60 * unit(rng);
    const double extent = n * 2 * r;
    json doc;
    doc["name"] = "fuzz" + std::to_string(trial);
    doc["grid"] = {{"n", n}, {"r", r}};
    const int kind = static_cast<int>(rng() % 3);
    doc["topology"] = {{"kind", kinds[kind]}};
    if (kind == 0) doc["topology"]["cloud_gated"] = rng() % 2 == 0;
    if (kind == 2) doc["topology"]["direct_actor_variation"] = rng() % 2 == 0;
    doc["integration"] = {{"filter", filters[rng() % 3]}, {"processing_site", rng() % 2 ? "interface" : "actor"}};
    json fires = json::array();
    const int nf = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < nf; ++k) {
      fires.push_back({{"x", extent * unit(rng) * 0.999}, {"y", extent * unit(rng) * 0.999},
                       {"speed", 2 * unit(rng)}, {"t0", 30 * unit(rng)}});
    }
    doc["fire_events"] = fires;
    doc["network"] = {{"drop_probability", 0.3 * unit(rng)}, {"seed", rng() % 1000}};
    doc["actors"] = {{"speed", 0.5 + 5 * unit(rng)}, {"service_time", 20 * unit(rng)}};
    doc["sensing"] = {{"period", 0.5 + 3 * unit(rng)}};
    if (rng() % 2) doc["subscriptions"] = json::array({{{"subscriber", "ops"}, {"topic_filter", "#"}, {"period", 5 + 20 * unit(rng)}}});
    doc["horizon"] = 50 + 300 * unit(rng);
    CAPTURE(doc.dump());
    const auto parsed = parse_scenario(doc);
    REQUIRE(std::holds_alternative<Scenario>(parsed));
    const auto& s = std::get<Scenario>(parsed);
    engine::RunResult res;
    CHECK_NOTHROW(res = engine::run(s));
    for (const auto* c : {&res.metrics.wsan_local, &res.metrics.wsan_cloud}) CHECK(c->sent == c->delivered + c->dropped);
    CHECK(res.metrics.end_time <= s.horizon);
  }
}
