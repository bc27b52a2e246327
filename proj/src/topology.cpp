#include "wsan/topology.hpp"

#include "wsan/error.hpp"

namespace wsan::topology {

const char* to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kSemiAutomatic: return "semi_automatic";
    case TopologyKind::kAutomaticInCloud: return "automatic_in_cloud";
    case TopologyKind::kAutomaticWithCloud: return "automatic_with_cloud";
  }
  return "?";
}

std::optional<TopologyKind> parse_topology_kind(std::string_view name) {
  for (auto k : {TopologyKind::kSemiAutomatic, TopologyKind::kAutomaticInCloud, TopologyKind::kAutomaticWithCloud}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string NodeId::str() const {
  switch (cls) {
    case NodeClass::kSensor: return "sensor/" + std::to_string(index);
    case NodeClass::kClusterHead: return "ch/" + std::to_string(index);
    case NodeClass::kActor: return "actor/" + std::to_string(index);
    case NodeClass::kInterface: return "interface";
    case NodeClass::kBroker: return "broker";
    case NodeClass::kMonitor: return "monitor";
  }
  return "?";
}

const char* to_string(CloudRole role) {
  switch (role) {
    case CloudRole::kNone: return "none";
    case CloudRole::kProvider: return "provider";
    case CloudRole::kUser: return "user";
    case CloudRole::kSinkController: return "sink_controller";
    case CloudRole::kMonitor: return "monitor";
  }
  return "?";
}

const char* to_string(LatencyClass lc) { return lc == LatencyClass::kWsanLocal ? "wsan_local" : "wsan_cloud"; }

const char* to_string(PortDirection d) {
  switch (d) {
    case PortDirection::kIn: return "in";
    case PortDirection::kOut: return "out";
    case PortDirection::kInOut: return "inout";
  }
  return "?";
}

const Link* Wiring::find(const NodeId& src, const NodeId& dst, std::string_view port) const {
  const auto it = index_.find({src, dst, std::string(port)});
  return it == index_.end() ? nullptr : &links_[it->second];
}

CloudRole Wiring::role(const NodeId& n) const {
  const auto it = roles_.find(n);
  return it == roles_.end() ? CloudRole::kNone : it->second;
}

std::size_t Wiring::count_port(std::string_view port) const {
  std::size_t count = 0;
  for (const auto& l : links_) count += l.port == port ? 1 : 0;
  return count;
}

Wiring build_topology(TopologyKind kind, const geometry::Deployment& d, TopologyOptions options) {
  if (d.actors.empty()) throw Error(ErrorKind::kWiring, "deployment has no actors");
  if (d.sensors.empty()) throw Error(ErrorKind::kWiring, "deployment has no sensors");
  if (options.direct_actor_variation && kind != TopologyKind::kAutomaticWithCloud) {
    throw Error(ErrorKind::kWiring, "the direct cloud-to-actor variation applies only to automatic_with_cloud");
  }

  Wiring w;
  w.kind_ = kind;
  w.direct_actor_variation_ = options.direct_actor_variation;
  auto add = [&w](NodeId src, NodeId dst, std::string_view port, LatencyClass lc,
                  PortDirection dst_dir = PortDirection::kIn) {
    w.index_.emplace(std::make_tuple(src, dst, std::string(port)), w.links_.size());
    w.links_.push_back({src, dst, std::string(port), lc, PortDirection::kOut, dst_dir});
  };
  const auto local = LatencyClass::kWsanLocal;
  const auto cloud = LatencyClass::kWsanCloud;

  for (const auto& s : d.sensors) w.roles_[sensor(s.id)] = CloudRole::kProvider;
  for (const auto& a : d.actors) w.roles_[actor(a.aa)] = CloudRole::kUser;
  w.roles_[kBroker] = CloudRole::kNone;
  w.roles_[kMonitor] = CloudRole::kMonitor;

  if (kind == TopologyKind::kSemiAutomatic) {
    if (d.cluster_heads.size() != d.actors.size()) {
      throw Error(ErrorKind::kWiring, "semi-automatic wiring needs one cluster head per actor");
    }
    for (const auto& ch : d.cluster_heads) w.roles_[cluster_head(ch.chno)] = CloudRole::kSinkController;
    for (const auto& s : d.sensors) add(sensor(s.id), cluster_head(s.chno), ports::kBeacon, local);
    for (const auto& ch : d.cluster_heads) {
      add(cluster_head(ch.chno), actor(ch.chno), ports::kClusterHead, local, PortDirection::kInOut);
      add(cluster_head(ch.chno), kBroker, ports::kPublish, cloud);
      add(kBroker, cluster_head(ch.chno), ports::kAuthorize, cloud);
    }
  } else {
    const bool in_cloud = kind == TopologyKind::kAutomaticInCloud;
    const LatencyClass edge = in_cloud ? cloud : local;
    w.roles_[kInterface] = CloudRole::kNone;
    for (const auto& s : d.sensors) add(sensor(s.id), kInterface, ports::kBeacon, edge);
    for (const auto& a : d.actors) add(kInterface, actor(a.aa), ports::kActorCommand, edge, PortDirection::kInOut);
    add(kInterface, kBroker, ports::kPublish, cloud);
    if (in_cloud) add(kMonitor, kInterface, ports::kConfigure, cloud);
    if (options.direct_actor_variation) {
      for (const auto& a : d.actors) add(kBroker, actor(a.aa), ports::kCloudCommand, cloud, PortDirection::kInOut);
    }
  }

  for (const auto& a : d.actors) add(actor(a.aa), kBroker, ports::kStatus, cloud);
  add(kBroker, kMonitor, ports::kNotify, cloud);
  add(kMonitor, kBroker, ports::kSubscribe, cloud);
  return w;
}

std::vector<std::string> check_port_compatibility(const Wiring& w) {
  std::vector<std::string> problems;
  for (const auto& l : w.links()) {
    const bool src_ok = l.src_dir == PortDirection::kOut || l.src_dir == PortDirection::kInOut;
    const bool dst_ok = l.dst_dir == PortDirection::kIn || l.dst_dir == PortDirection::kInOut;
    if (!src_ok || !dst_ok || l.port.empty() || l.src == l.dst) {
      problems.push_back(l.src.str() + " -> " + l.dst.str() + " on port '" + l.port + "'");
    }
  }
  return problems;
}

bool role_is_bijection(const Wiring& w, NodeClass cls, CloudRole role) {
  std::size_t of_class = 0;
  std::size_t with_role = 0;
  for (const auto& [node, r] : w.role_map()) {
    if (r == role) ++with_role;
    if (node.cls != cls) continue;
    ++of_class;
    if (r != role) return false;
  }
  return of_class > 0 && of_class == with_role;
}

}  // namespace wsan::topology
