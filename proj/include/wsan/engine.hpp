#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wsan/fire.hpp"
#include "wsan/protocol.hpp"
#include "wsan/pubsub.hpp"
#include "wsan/scenario.hpp"
#include "wsan/topology.hpp"

namespace wsan::engine {

inline constexpr const char* kToolVersion = "0.1.0";

using topology::LatencyClass;
using topology::NodeId;

// --- messages ---------------------------------------------------------------

struct FramePayload {
  protocol::WireFrame frame;
};

enum class PublishRequest {
  kNone,
  kAuthorizeBack,   // cloud-gated cluster head waiting for a grant
  kForwardToActor,  // direct cloud-to-actor variation
};

struct PublishPayload {
  pubsub::Update update;
  PublishRequest request = PublishRequest::kNone;
  std::uint16_t aa = 0;  // target actor for kForwardToActor
};

struct GrantPayload {
  protocol::WireFrame command;
};

using MessageBody = std::variant<FramePayload, PublishPayload, GrantPayload>;

struct Message {
  NodeId src;
  NodeId dst;
  std::string port;
  MessageBody body;
  std::optional<fire::FireId> fire_id;  // trace metadata only, never on the wire
};

std::vector<std::uint8_t> payload_bytes(const MessageBody& body);

// --- events -----------------------------------------------------------------

enum class EventKind {
  kSensingTick,
  kMessageDelivery,
  kActorArrival,
  kExtinguishComplete,
  kPubsubDelivery,
  kFireIgnition,
};

struct SensingTick {
  std::uint32_t sensor;
  std::uint64_t k;  // tick index; fires at k * sensing period
};
struct MessageDelivery {
  Message msg;
};
struct ActorArrival {
  std::uint16_t aa;
};
struct ExtinguishComplete {
  std::uint16_t aa;
};
struct PubsubDelivery {};
struct FireIgnition {
  fire::FireId fire;
};

// Alternative order matches EventKind.
using EventPayload =
    std::variant<SensingTick, MessageDelivery, ActorArrival, ExtinguishComplete, PubsubDelivery, FireIgnition>;

struct SimEvent {
  double t = 0.0;
  std::uint64_t seq = 0;
  EventPayload payload;

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }
};

// Min-queue on (t, seq). seq is assigned at scheduling time.
class EventQueue {
 public:
  // Throws Error(kScheduling) when t is before the current clock.
  void schedule(double t, EventPayload payload);

  // Removes the next event and advances the clock to its time.
  SimEvent pop();

  const SimEvent& top() const { return heap_.top(); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  double now() const { return now_; }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      return a.t != b.t ? a.t > b.t : a.seq > b.seq;
    }
  };

  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
};

// --- network ----------------------------------------------------------------

struct NetworkModel {
  double wsan_latency_s = 0.005;
  double cloud_latency_s = 0.05;
  double drop_probability = 0.0;
  std::uint64_t seed = 1;

  double latency(LatencyClass lc) const {
    return lc == LatencyClass::kWsanLocal ? wsan_latency_s : cloud_latency_s;
  }
};

// `delivered` counts messages handed to the queue for delivery.
struct LinkCounters {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
};

struct SendOutcome {
  bool delivered = false;
  double deliver_at = 0.0;
  LatencyClass latency_class = LatencyClass::kWsanLocal;
};

class Network {
 public:
  Network(NetworkModel model, const topology::Wiring& wiring);

  // Looks up the link (Error(kWiring) if absent), then either schedules a
  // MessageDelivery at t + latency or records a drop. The generator is only
  // consumed when drop_probability > 0.
  SendOutcome send(EventQueue& queue, Message msg, double t);

  const LinkCounters& counters(LatencyClass lc) const { return counters_[static_cast<std::size_t>(lc)]; }
  const NetworkModel& model() const { return model_; }

 private:
  bool draw_drop();

  NetworkModel model_;
  const topology::Wiring* wiring_;
  std::mt19937_64 rng_;
  std::array<LinkCounters, 2> counters_{};
};

// --- trace and metrics --------------------------------------------------------

struct TraceRecord {
  double t = 0.0;
  std::string kind;
  std::string src;
  std::string dst;
  std::string port;
  std::string payload_hex;
  std::optional<fire::FireId> fire_id;
  std::string note;
};

// JSON Lines: one header object, then one object per record.
class Trace {
 public:
  nlohmann::ordered_json header;
  std::vector<TraceRecord> records;

  std::string header_line() const;
  static std::string record_line(const TraceRecord& r);
  std::string body() const;  // every record line, no header
  void write(std::ostream& out) const;
  std::string str() const;
};

struct FireMetrics {
  fire::FireId fire_id = 0;
  geometry::Point ignition;
  double t0 = 0.0;
  // All latencies are measured from ignition.
  std::optional<double> detection_latency;
  std::optional<double> dispatch_latency;
  std::optional<double> response_latency;
  std::optional<double> containment_time;
  double burned_area_m2 = 0.0;  // at containment, or at the horizon if uncontained
};

struct Metrics {
  std::vector<FireMetrics> fires;
  LinkCounters wsan_local;
  LinkCounters wsan_cloud;
  std::uint64_t pubsub_deliveries = 0;
  std::uint64_t beacon_packets = 0;
  std::uint64_t cluster_head_packets = 0;
  std::uint64_t interface_commands = 0;
  double end_time = 0.0;

  bool all_contained() const;
};

// Fixed column set, one row per fire plus a final "total" row.
inline constexpr const char* kMetricsColumns =
    "fire_id,ignition_x,ignition_y,t0,detection_latency_s,dispatch_latency_s,response_latency_s,"
    "containment_time_s,burned_area_m2,contained,wsan_local_sent,wsan_local_delivered,wsan_local_dropped,"
    "wsan_cloud_sent,wsan_cloud_delivered,wsan_cloud_dropped,pubsub_deliveries";

std::string metrics_csv(const Metrics& m);

struct RunResult {
  Trace trace;
  Metrics metrics;
};

// FNV-1a 64 of the canonical scenario JSON, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

nlohmann::ordered_json wiring_json(const topology::Wiring& w);

// Validates, then executes until the horizon or until nothing is pending.
// Throws Error(kValidation) before any event runs when the scenario is invalid.
RunResult run(const Scenario& scenario);

}  // namespace wsan::engine
