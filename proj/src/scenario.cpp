#include "wsan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wsan/geometry.hpp"

namespace wsan {

namespace {

using json = nlohmann::json;

constexpr int kMaxGridN = 1024;
constexpr double kMaxTicksPerSensor = 1e7;

class Reader {
 public:
  explicit Reader(ValidationReport& report) : report_(report) {}

  void issue(const std::string& path, const std::string& message) { report_.issues.push_back({path, message}); }

  // Reports every key of `obj` not in `allowed`.
  void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
      if (!known.contains(key)) issue(join(path, key), "unknown field");
    }
  }

  const json* object(const json& parent, const std::string& path, const char* key, bool required) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) issue(join(path, key), "is required");
      return nullptr;
    }
    if (!it->is_object()) {
      issue(join(path, key), "must be an object");
      return nullptr;
    }
    return &*it;
  }

  const json* array(const json& parent, const std::string& path, const char* key) {
    const auto it = parent.find(key);
    if (it == parent.end()) return nullptr;
    if (!it->is_array()) {
      issue(join(path, key), "must be an array");
      return nullptr;
    }
    return &*it;
  }

  void number(const json& parent, const std::string& path, const char* key, double& out, bool required) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) issue(join(path, key), "is required");
      return;
    }
    if (!it->is_number()) {
      issue(join(path, key), "must be a number");
      return;
    }
    out = it->get<double>();
  }

  void optional_number(const json& parent, const std::string& path, const char* key, std::optional<double>& out) {
    if (!parent.contains(key)) return;
    double v = 0.0;
    number(parent, path, key, v, true);
    out = v;
  }

  template <typename Int>
  void integer(const json& parent, const std::string& path, const char* key, Int& out, bool required) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) issue(join(path, key), "is required");
      return;
    }
    if (it->is_number_unsigned()) {
      const auto v = it->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
        issue(join(path, key), "is out of range");
        return;
      }
      out = static_cast<Int>(v);
    } else if (it->is_number_integer()) {
      const auto v = it->get<std::int64_t>();
      if constexpr (std::is_unsigned_v<Int>) {
        issue(join(path, key), "must be a non-negative integer");
      } else {
        if (v < std::numeric_limits<Int>::min() || v > std::numeric_limits<Int>::max()) {
          issue(join(path, key), "is out of range");
          return;
        }
        out = static_cast<Int>(v);
      }
    } else {
      issue(join(path, key), "must be an integer");
    }
  }

  void boolean(const json& parent, const std::string& path, const char* key, bool& out) {
    const auto it = parent.find(key);
    if (it == parent.end()) return;
    if (!it->is_boolean()) {
      issue(join(path, key), "must be a boolean");
      return;
    }
    out = it->get<bool>();
  }

  bool string(const json& parent, const std::string& path, const char* key, std::string& out, bool required) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) issue(join(path, key), "is required");
      return false;
    }
    if (!it->is_string()) {
      issue(join(path, key), "must be a string");
      return false;
    }
    out = it->get<std::string>();
    return true;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  ValidationReport& report_;
};

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

bool valid_filter(const std::string& filter) {
  if (filter.empty()) return false;
  std::size_t start = 0;
  while (true) {
    const std::size_t slash = filter.find('/', start);
    const std::string level = filter.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
    if (level.find('#') != std::string::npos && (level != "#" || slash != std::string::npos)) return false;
    if (level.find('+') != std::string::npos && level != "+") return false;
    if (slash == std::string::npos) return true;
    start = slash + 1;
  }
}

const char* policy_name(pubsub::DispatchPolicy p) {
  return p == pubsub::DispatchPolicy::kAlways ? "always" : "subscription_required";
}

const char* site_name(nodes::ProcessingSite s) { return s == nodes::ProcessingSite::kInterface ? "interface" : "actor"; }

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }
bool non_negative_finite(double v) { return v >= 0.0 && std::isfinite(v); }

}  // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& i : issues) out << i.path << ": " << i.message << "\n";
  return out.str();
}

ValidationReport validate(const Scenario& s) {
  ValidationReport report;
  auto issue = [&report](std::string path, std::string message) {
    report.issues.push_back({std::move(path), std::move(message)});
  };

  if (!valid_name(s.name)) issue("name", "must be non-empty and use only letters, digits, '_', '-' or '.'");

  bool grid_ok = true;
  if (s.grid.n < 2 || s.grid.n > kMaxGridN) {
    issue("grid.n", "must be between 2 and " + std::to_string(kMaxGridN));
    grid_ok = false;
  } else if (s.grid.n % 2 != 0) {
    issue("grid.n", "must be even so the area splits into four equal quadrants");
    grid_ok = false;
  }
  if (!positive_finite(s.grid.r)) {
    issue("grid.r", "sensing range must be positive");
    grid_ok = false;
  }

  const bool semi = s.topology.kind == topology::TopologyKind::kSemiAutomatic;
  if (s.topology.cloud_gated && !semi) {
    issue("topology.cloud_gated", "applies only to semi_automatic (cluster heads are absent otherwise)");
  }
  if (s.topology.direct_actor_variation && s.topology.kind != topology::TopologyKind::kAutomaticWithCloud) {
    issue("topology.direct_actor_variation", "applies only to automatic_with_cloud");
  }
  if (s.integration.filter != "accept_all" && s.integration.filter != "reject_all" &&
      s.integration.filter != "in_area") {
    issue("integration.filter", "must be one of accept_all, reject_all, in_area");
  }

  if (s.fire_events.size() > std::numeric_limits<std::uint16_t>::max()) {
    issue("fire_events", "too many fire events");
  }
  for (std::size_t i = 0; i < s.fire_events.size(); ++i) {
    const auto& f = s.fire_events[i];
    const std::string path = "fire_events[" + std::to_string(i) + "]";
    if (!std::isfinite(f.x) || !std::isfinite(f.y)) {
      issue(path, "ignition coordinates must be finite");
    } else if (grid_ok && !geometry::GridSpec::make(s.grid.n, s.grid.r).in_area({f.x, f.y})) {
      issue(path, "ignition lies outside the area [0, n*2r) x [0, n*2r)");
    }
    if (!non_negative_finite(f.speed)) issue(path + ".speed", "must be non-negative");
    if (!non_negative_finite(f.t0)) issue(path + ".t0", "must be non-negative");
  }

  if (!non_negative_finite(s.network.wsan_latency_s)) issue("network.wsan_latency_s", "must be non-negative");
  if (!non_negative_finite(s.network.cloud_latency_s)) issue("network.cloud_latency_s", "must be non-negative");
  if (!(s.network.drop_probability >= 0.0 && s.network.drop_probability < 1.0)) {
    issue("network.drop_probability", "must lie in [0, 1)");
  }

  if (!positive_finite(s.actors.speed)) issue("actors.speed", "must be positive");
  if (!non_negative_finite(s.actors.service_time)) issue("actors.service_time", "must be non-negative");
  if (s.actors.extinguish_radius && !positive_finite(*s.actors.extinguish_radius)) {
    issue("actors.extinguish_radius", "must be positive");
  }
  if (!positive_finite(s.sensing.period)) issue("sensing.period", "must be positive");
  if (s.cluster_head.dedup_window_s && !non_negative_finite(*s.cluster_head.dedup_window_s)) {
    issue("cluster_head.dedup_window_s", "must be non-negative");
  }

  for (std::size_t i = 0; i < s.subscriptions.size(); ++i) {
    const auto& sub = s.subscriptions[i];
    const std::string path = "subscriptions[" + std::to_string(i) + "]";
    if (sub.subscriber.empty()) issue(path + ".subscriber", "must not be empty");
    if (!valid_filter(sub.topic_filter)) {
      issue(path + ".topic_filter", "must be a non-empty topic filter ('+' whole level, '#' last level only)");
    }
    if (!positive_finite(sub.period)) issue(path + ".period", "must be positive");
  }

  if (!positive_finite(s.horizon)) {
    issue("horizon", "must be positive");
  } else if (positive_finite(s.sensing.period) && s.horizon / s.sensing.period > kMaxTicksPerSensor) {
    issue("horizon", "horizon / sensing.period exceeds " + std::to_string(static_cast<long>(kMaxTicksPerSensor)));
  }
  return report;
}

std::variant<Scenario, ValidationReport> parse_scenario(const json& doc) {
  ValidationReport report;
  Reader rd(report);
  Scenario s;

  if (!doc.is_object()) {
    rd.issue("$", "scenario must be a JSON object");
    return report;
  }
  rd.reject_unknown(doc, "", {"name", "grid", "topology", "integration", "fire_events", "network", "actors",
                              "sensing", "cluster_head", "subscriptions", "horizon", "metadata"});
  rd.string(doc, "", "name", s.name, false);

  if (const json* grid = rd.object(doc, "", "grid", true)) {
    rd.reject_unknown(*grid, "grid", {"n", "r"});
    rd.integer(*grid, "grid", "n", s.grid.n, true);
    rd.number(*grid, "grid", "r", s.grid.r, true);
  }

  if (const json* topo = rd.object(doc, "", "topology", true)) {
    rd.reject_unknown(*topo, "topology", {"kind", "cloud_gated", "direct_actor_variation", "dispatch_policy"});
    std::string kind;
    if (rd.string(*topo, "topology", "kind", kind, true)) {
      if (auto k = topology::parse_topology_kind(kind)) {
        s.topology.kind = *k;
      } else {
        rd.issue("topology.kind", "must be one of semi_automatic, automatic_in_cloud, automatic_with_cloud");
      }
    }
    rd.boolean(*topo, "topology", "cloud_gated", s.topology.cloud_gated);
    rd.boolean(*topo, "topology", "direct_actor_variation", s.topology.direct_actor_variation);
    std::string policy;
    if (rd.string(*topo, "topology", "dispatch_policy", policy, false)) {
      if (policy == "always") {
        s.topology.dispatch_policy = pubsub::DispatchPolicy::kAlways;
      } else if (policy == "subscription_required") {
        s.topology.dispatch_policy = pubsub::DispatchPolicy::kSubscriptionRequired;
      } else {
        rd.issue("topology.dispatch_policy", "must be always or subscription_required");
      }
    }
  }

  if (const json* integ = rd.object(doc, "", "integration", false)) {
    rd.reject_unknown(*integ, "integration", {"filter", "processing_site"});
    rd.string(*integ, "integration", "filter", s.integration.filter, false);
    std::string site;
    if (rd.string(*integ, "integration", "processing_site", site, false)) {
      if (site == "interface") {
        s.integration.processing_site = nodes::ProcessingSite::kInterface;
      } else if (site == "actor") {
        s.integration.processing_site = nodes::ProcessingSite::kActor;
      } else {
        rd.issue("integration.processing_site", "must be interface or actor");
      }
    }
  }

  if (const json* fires = rd.array(doc, "", "fire_events")) {
    for (std::size_t i = 0; i < fires->size(); ++i) {
      const std::string path = "fire_events[" + std::to_string(i) + "]";
      const json& f = (*fires)[i];
      if (!f.is_object()) {
        rd.issue(path, "must be an object");
        continue;
      }
      rd.reject_unknown(f, path, {"x", "y", "speed", "t0"});
      Scenario::Fire fire;
      rd.number(f, path, "x", fire.x, true);
      rd.number(f, path, "y", fire.y, true);
      rd.number(f, path, "speed", fire.speed, true);
      rd.number(f, path, "t0", fire.t0, false);
      s.fire_events.push_back(fire);
    }
  }

  if (const json* net = rd.object(doc, "", "network", false)) {
    rd.reject_unknown(*net, "network", {"wsan_latency_s", "cloud_latency_s", "drop_probability", "seed"});
    rd.number(*net, "network", "wsan_latency_s", s.network.wsan_latency_s, false);
    rd.number(*net, "network", "cloud_latency_s", s.network.cloud_latency_s, false);
    rd.number(*net, "network", "drop_probability", s.network.drop_probability, false);
    rd.integer(*net, "network", "seed", s.network.seed, false);
  }

  if (const json* act = rd.object(doc, "", "actors", false)) {
    rd.reject_unknown(*act, "actors", {"speed", "service_time", "extinguish_radius"});
    rd.number(*act, "actors", "speed", s.actors.speed, false);
    rd.number(*act, "actors", "service_time", s.actors.service_time, false);
    rd.optional_number(*act, "actors", "extinguish_radius", s.actors.extinguish_radius);
  }

  if (const json* sensing = rd.object(doc, "", "sensing", false)) {
    rd.reject_unknown(*sensing, "sensing", {"period"});
    rd.number(*sensing, "sensing", "period", s.sensing.period, false);
  }

  if (const json* ch = rd.object(doc, "", "cluster_head", false)) {
    rd.reject_unknown(*ch, "cluster_head", {"dedup_window_s"});
    rd.optional_number(*ch, "cluster_head", "dedup_window_s", s.cluster_head.dedup_window_s);
  }

  if (const json* subs = rd.array(doc, "", "subscriptions")) {
    for (std::size_t i = 0; i < subs->size(); ++i) {
      const std::string path = "subscriptions[" + std::to_string(i) + "]";
      const json& j = (*subs)[i];
      if (!j.is_object()) {
        rd.issue(path, "must be an object");
        continue;
      }
      rd.reject_unknown(j, path, {"subscriber", "topic_filter", "period"});
      Scenario::SubscriptionSpec sub;
      rd.string(j, path, "subscriber", sub.subscriber, true);
      rd.string(j, path, "topic_filter", sub.topic_filter, true);
      rd.number(j, path, "period", sub.period, true);
      s.subscriptions.push_back(sub);
    }
  }

  rd.number(doc, "", "horizon", s.horizon, true);

  if (const auto it = doc.find("metadata"); it != doc.end()) {
    if (it->is_object()) {
      s.metadata = nlohmann::ordered_json::parse(it->dump());
    } else {
      rd.issue("metadata", "must be an object");
    }
  }

  if (!report.ok()) return report;
  ValidationReport semantic = validate(s);
  if (!semantic.ok()) return semantic;
  return s;
}

std::variant<Scenario, ValidationReport> load_and_validate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ValidationReport report;
    report.issues.push_back({"$", "cannot open " + path.string()});
    return report;
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    ValidationReport report;
    report.issues.push_back({"$", std::string("parse error: ") + e.what()});
    return report;
  }
  return parse_scenario(doc);
}

nlohmann::ordered_json to_json(const Scenario& s) {
  using oj = nlohmann::ordered_json;
  oj doc;
  doc["name"] = s.name;
  doc["grid"] = {{"n", s.grid.n}, {"r", s.grid.r}};
  doc["topology"] = {{"kind", topology::to_string(s.topology.kind)},
                     {"cloud_gated", s.topology.cloud_gated},
                     {"direct_actor_variation", s.topology.direct_actor_variation},
                     {"dispatch_policy", policy_name(s.topology.dispatch_policy)}};
  doc["integration"] = {{"filter", s.integration.filter},
                        {"processing_site", site_name(s.integration.processing_site)}};
  oj fires = oj::array();
  for (const auto& f : s.fire_events) fires.push_back({{"x", f.x}, {"y", f.y}, {"speed", f.speed}, {"t0", f.t0}});
  doc["fire_events"] = fires;
  doc["network"] = {{"wsan_latency_s", s.network.wsan_latency_s},
                    {"cloud_latency_s", s.network.cloud_latency_s},
                    {"drop_probability", s.network.drop_probability},
                    {"seed", s.network.seed}};
  oj actors = {{"speed", s.actors.speed}, {"service_time", s.actors.service_time}};
  if (s.actors.extinguish_radius) actors["extinguish_radius"] = *s.actors.extinguish_radius;
  doc["actors"] = actors;
  doc["sensing"] = {{"period", s.sensing.period}};
  oj ch = oj::object();
  if (s.cluster_head.dedup_window_s) ch["dedup_window_s"] = *s.cluster_head.dedup_window_s;
  doc["cluster_head"] = ch;
  oj subs = oj::array();
  for (const auto& sub : s.subscriptions) {
    subs.push_back({{"subscriber", sub.subscriber}, {"topic_filter", sub.topic_filter}, {"period", sub.period}});
  }
  doc["subscriptions"] = subs;
  doc["horizon"] = s.horizon;
  doc["metadata"] = s.metadata;
  return doc;
}

}  // namespace wsan
