#include "doctest.h"
#include "wsan/error.hpp"
#include "wsan/topology.hpp"

using namespace wsan;
using namespace wsan::topology;

namespace {

std::size_t count_links(const Wiring& w, NodeClass src, NodeClass dst, std::string_view port) {
  std::size_t n = 0;
  for (const auto& l : w.links()) n += (l.src.cls == src && l.dst.cls == dst && l.port == port) ? 1 : 0;
  return n;
}

std::size_t count_role(const Wiring& w, CloudRole role) {
  std::size_t n = 0;
  for (const auto& [node, r] : w.role_map()) n += r == role ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("semi-automatic wiring for n=2") {
  const auto d = geometry::plan_deployment(geometry::GridSpec::make(2, 50));
  const Wiring w = build_topology(TopologyKind::kSemiAutomatic, d);
  CHECK(count_role(w, CloudRole::kProvider) == 4);
  CHECK(count_role(w, CloudRole::kUser) == 4);
  CHECK(count_role(w, CloudRole::kSinkController) == 4);
  CHECK(count_role(w, CloudRole::kMonitor) == 1);
  CHECK(count_links(w, NodeClass::kSensor, NodeClass::kClusterHead, ports::kBeacon) == 4);
  CHECK(count_links(w, NodeClass::kClusterHead, NodeClass::kActor, ports::kClusterHead) == 4);
  CHECK(count_links(w, NodeClass::kClusterHead, NodeClass::kBroker, ports::kPublish) == 4);
  CHECK(count_links(w, NodeClass::kBroker, NodeClass::kMonitor, ports::kNotify) == 1);
  // The monitor only talks to the broker.
  for (const auto& l : w.links()) {
    if (l.src.cls == NodeClass::kMonitor || l.dst.cls == NodeClass::kMonitor) {
      CHECK((l.src == kBroker || l.dst == kBroker));
    }
  }
  CHECK(role_is_bijection(w, NodeClass::kSensor, CloudRole::kProvider));
  CHECK(role_is_bijection(w, NodeClass::kActor, CloudRole::kUser));
  CHECK(check_port_compatibility(w).empty());
  REQUIRE(w.find(sensor(3), cluster_head(3), ports::kBeacon) != nullptr);
  CHECK(w.find(sensor(3), cluster_head(3), ports::kBeacon)->latency == LatencyClass::kWsanLocal);
  CHECK(w.find(sensor(3), cluster_head(0), ports::kBeacon) == nullptr);
}

TEST_CASE("semi-automatic bijection holds on larger grids") {
  for (int n : {4, 8, 12}) {
    const auto d = geometry::plan_deployment(geometry::GridSpec::make(n, 10));
    const Wiring w = build_topology(TopologyKind::kSemiAutomatic, d);
    CHECK(role_is_bijection(w, NodeClass::kSensor, CloudRole::kProvider));
    CHECK(role_is_bijection(w, NodeClass::kActor, CloudRole::kUser));
    CHECK(count_links(w, NodeClass::kSensor, NodeClass::kClusterHead, ports::kBeacon) == d.sensors.size());
    // Each sensor reports to the cluster head of its own quadrant.
    for (const auto& s : d.sensors) CHECK(w.find(sensor(s.id), cluster_head(s.chno), ports::kBeacon) != nullptr);
  }
}

TEST_CASE("automatic wiring has no cluster heads") {
  const auto d = geometry::plan_deployment(geometry::GridSpec::make(6, 20));
  for (auto kind : {TopologyKind::kAutomaticInCloud, TopologyKind::kAutomaticWithCloud}) {
    const Wiring w = build_topology(kind, d);
    for (const auto& l : w.links()) {
      CHECK(l.src.cls != NodeClass::kClusterHead);
      CHECK(l.dst.cls != NodeClass::kClusterHead);
    }
    CHECK(w.count_port(ports::kClusterHead) == 0);
    CHECK(count_links(w, NodeClass::kSensor, NodeClass::kInterface, ports::kBeacon) == d.sensors.size());
    CHECK(count_links(w, NodeClass::kInterface, NodeClass::kActor, ports::kActorCommand) == d.actors.size());
    CHECK(check_port_compatibility(w).empty());
  }
  const Wiring in = build_topology(TopologyKind::kAutomaticInCloud, d);
  const Wiring with = build_topology(TopologyKind::kAutomaticWithCloud, d);
  CHECK(in.find(sensor(0), kInterface, ports::kBeacon)->latency == LatencyClass::kWsanCloud);
  CHECK(with.find(sensor(0), kInterface, ports::kBeacon)->latency == LatencyClass::kWsanLocal);
  CHECK(in.find(kMonitor, kInterface, ports::kConfigure) != nullptr);
}

TEST_CASE("direct cloud-to-actor variation adds one link per actor") {
  const auto d = geometry::plan_deployment(geometry::GridSpec::make(4, 50));
  const Wiring plain = build_topology(TopologyKind::kAutomaticWithCloud, d);
  const Wiring varied = build_topology(TopologyKind::kAutomaticWithCloud, d, {true});
  CHECK(varied.links().size() - plain.links().size() == d.actors.size());
  CHECK(plain.count_port(ports::kCloudCommand) == 0);
  CHECK(count_links(varied, NodeClass::kBroker, NodeClass::kActor, ports::kCloudCommand) == d.actors.size());
  for (const auto& a : d.actors) CHECK(varied.find(kBroker, actor(a.aa), ports::kCloudCommand) != nullptr);
}

TEST_CASE("wiring errors") {
  auto d = geometry::plan_deployment(geometry::GridSpec::make(2, 50));
  CHECK_THROWS_AS(build_topology(TopologyKind::kSemiAutomatic, d, {true}), Error);
  CHECK_THROWS_AS(build_topology(TopologyKind::kAutomaticInCloud, d, {true}), Error);
  d.actors.clear();
  try {
    build_topology(TopologyKind::kSemiAutomatic, d);
    FAIL("expected a wiring error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kWiring);
  }
}

TEST_CASE("node names and kind parsing") {
  CHECK(sensor(12).str() == "sensor/12");
  CHECK(cluster_head(1).str() == "ch/1");
  CHECK(kBroker.str() == "broker");
  CHECK(parse_topology_kind("automatic_with_cloud") == TopologyKind::kAutomaticWithCloud);
  CHECK_FALSE(parse_topology_kind("manual").has_value());
}
