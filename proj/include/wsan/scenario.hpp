#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "wsan/nodes.hpp"
#include "wsan/pubsub.hpp"
#include "wsan/topology.hpp"

namespace wsan {

// All quantities are SI: meters, seconds, meters per second.
struct Scenario {
  struct Grid {
    int n = 0;
    double r = 0.0;
  };
  struct Topology {
    topology::TopologyKind kind = topology::TopologyKind::kSemiAutomatic;
    bool cloud_gated = false;
    bool direct_actor_variation = false;
    pubsub::DispatchPolicy dispatch_policy = pubsub::DispatchPolicy::kAlways;
  };
  struct Integration {
    std::string filter = "in_area";
    nodes::ProcessingSite processing_site = nodes::ProcessingSite::kInterface;
  };
  struct Fire {
    double x = 0.0;
    double y = 0.0;
    double speed = 0.0;
    double t0 = 0.0;
  };
  struct Network {
    double wsan_latency_s = 0.005;
    double cloud_latency_s = 0.05;
    double drop_probability = 0.0;
    std::uint64_t seed = 1;
  };
  struct Actors {
    double speed = 1.0;
    double service_time = 0.0;
    std::optional<double> extinguish_radius;  // defaults to the sensing range
  };
  struct Sensing {
    double period = 1.0;
  };
  struct ClusterHead {
    std::optional<double> dedup_window_s;  // unset: never re-dispatch an incident
  };
  struct SubscriptionSpec {
    std::string subscriber;
    std::string topic_filter;
    double period = 0.0;
  };

  std::string name = "scenario";
  Grid grid;
  Topology topology;
  Integration integration;
  std::vector<Fire> fire_events;
  Network network;
  Actors actors;
  Sensing sensing;
  ClusterHead cluster_head;
  std::vector<SubscriptionSpec> subscriptions;
  double horizon = 0.0;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();  // carried, never interpreted
};

struct ValidationIssue {
  std::string path;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// Semantic checks of an in-memory scenario (every module precondition).
ValidationReport validate(const Scenario& s);

// Parses the JSON schema strictly (unknown fields are errors) and validates.
std::variant<Scenario, ValidationReport> parse_scenario(const nlohmann::json& doc);
std::variant<Scenario, ValidationReport> load_and_validate(const std::filesystem::path& path);

// Canonical, fully-defaulted JSON form; parse_scenario(to_json(s)) == s.
nlohmann::ordered_json to_json(const Scenario& s);

}  // namespace wsan
