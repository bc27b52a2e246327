#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wsan/geometry.hpp"

namespace wsan::topology {

enum class TopologyKind { kSemiAutomatic, kAutomaticInCloud, kAutomaticWithCloud };

const char* to_string(TopologyKind kind);
std::optional<TopologyKind> parse_topology_kind(std::string_view name);

enum class NodeClass { kSensor, kClusterHead, kActor, kInterface, kBroker, kMonitor };

struct NodeId {
  NodeClass cls;
  std::uint32_t index = 0;

  std::string str() const;  // "sensor/3", "ch/0", "actor/1", "interface", "broker", "monitor"

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline NodeId sensor(std::uint32_t i) { return {NodeClass::kSensor, i}; }
inline NodeId cluster_head(std::uint32_t i) { return {NodeClass::kClusterHead, i}; }
inline NodeId actor(std::uint32_t i) { return {NodeClass::kActor, i}; }
inline constexpr NodeId kInterface{NodeClass::kInterface, 0};
inline constexpr NodeId kBroker{NodeClass::kBroker, 0};
inline constexpr NodeId kMonitor{NodeClass::kMonitor, 0};

enum class CloudRole { kNone, kProvider, kUser, kSinkController, kMonitor };
const char* to_string(CloudRole role);

enum class LatencyClass { kWsanLocal, kWsanCloud };
const char* to_string(LatencyClass lc);

enum class PortDirection { kIn, kOut, kInOut };
const char* to_string(PortDirection d);

namespace ports {
inline constexpr std::string_view kBeacon = "beaconodepacket";
inline constexpr std::string_view kClusterHead = "clusterheadnodepacket";
inline constexpr std::string_view kActorCommand = "actorcommand";
inline constexpr std::string_view kCloudCommand = "cloudcommand";
inline constexpr std::string_view kPublish = "publish";
inline constexpr std::string_view kAuthorize = "authorize";
inline constexpr std::string_view kStatus = "status";
inline constexpr std::string_view kNotify = "notify";
inline constexpr std::string_view kSubscribe = "subscribe";
inline constexpr std::string_view kConfigure = "configure";
}  // namespace ports

// Directed link from an out-port to the same-named port on the destination.
struct Link {
  NodeId src;
  NodeId dst;
  std::string port;
  LatencyClass latency;
  PortDirection src_dir = PortDirection::kOut;
  PortDirection dst_dir = PortDirection::kIn;
};

struct TopologyOptions {
  bool direct_actor_variation = false;  // AutomaticWithCloud only
};

class Wiring {
 public:
  TopologyKind kind() const { return kind_; }
  const std::vector<Link>& links() const { return links_; }
  const std::map<NodeId, CloudRole>& role_map() const { return roles_; }
  bool direct_actor_variation() const { return direct_actor_variation_; }

  const Link* find(const NodeId& src, const NodeId& dst, std::string_view port) const;
  CloudRole role(const NodeId& n) const;
  std::size_t count_port(std::string_view port) const;

 private:
  friend Wiring build_topology(TopologyKind, const geometry::Deployment&, TopologyOptions);

  TopologyKind kind_ = TopologyKind::kSemiAutomatic;
  bool direct_actor_variation_ = false;
  std::vector<Link> links_;
  std::map<std::tuple<NodeId, NodeId, std::string>, std::size_t> index_;
  std::map<NodeId, CloudRole> roles_;
};

// Throws Error(kWiring) when the deployment cannot support the kind (no
// actors, cluster heads missing for semi-automatic, a variation flag on the
// wrong kind).
Wiring build_topology(TopologyKind kind, const geometry::Deployment& d, TopologyOptions options = {});

// Empty when every link joins an out (or inout) port to an in (or inout)
// port of the same name; otherwise one message per offending link.
std::vector<std::string> check_port_compatibility(const Wiring& w);

// True when `role` restricted to nodes of `cls` is a bijection onto the
// endpoints of that role (every node of the class has it, no other node does).
bool role_is_bijection(const Wiring& w, NodeClass cls, CloudRole role);

}  // namespace wsan::topology
