#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wsan/fire.hpp"
#include "wsan/geometry.hpp"
#include "wsan/protocol.hpp"
#include "wsan/pubsub.hpp"

namespace wsan::nodes {

using geometry::Point;
using geometry::QuadrantNo;
using protocol::BeaconNodePacket;
using protocol::ClusterHeadNodePacket;

inline constexpr double kNoDedupExpiry = std::numeric_limits<double>::infinity();

// Maps a detection to the quadrant's actor: qno from the location, aa from
// the deployment. Throws Error(kOutOfBounds) for out-of-area coordinates and
// Error(kConfiguration) when no actor serves the quadrant.
ClusterHeadNodePacket route_detection(const BeaconNodePacket& p, const geometry::GridSpec& spec,
                                      std::span<const geometry::ActorSite> actors);
inline ClusterHeadNodePacket route_detection(const BeaconNodePacket& p, const geometry::Deployment& d) {
  return route_detection(p, d.spec, d.actors);
}

class BeaconNode {
 public:
  BeaconNode(geometry::SensorSite site, double range) : site_(site), range_(range) {}

  // Emits one packet per fire, the first time the front is within range.
  std::optional<BeaconNodePacket> on_sample(const fire::FireState& f, double t);

  // False once `f` can no longer trigger this node: already reported, or its
  // front is frozen (contained or static) outside the sensing disk.
  bool may_detect_later(const fire::FireState& f, double t) const;

  const geometry::SensorSite& site() const { return site_; }
  bool has_reported(fire::FireId id) const { return reported_.contains(id); }

 private:
  bool in_range(const fire::FireState& f, double t) const;

  geometry::SensorSite site_;
  double range_;
  std::set<fire::FireId> reported_;
};

// Groups detections of the same quadrant into incidents. A detection joins an
// incident when it lies within `link_distance` of any detection already in it.
class DetectionCorrelator {
 public:
  explicit DetectionCorrelator(double link_distance) : link_distance_(link_distance) {}

  std::uint32_t incident_for(QuadrantNo qno, Point p);
  std::size_t incident_count() const { return incidents_.size(); }

 private:
  struct Incident {
    QuadrantNo qno;
    std::vector<Point> members;
  };

  double link_distance_;
  std::vector<Incident> incidents_;
};

// Suppresses repeat dispatches of one incident inside a time window.
class DispatchDeduplicator {
 public:
  explicit DispatchDeduplicator(double window) : window_(window) {}

  // True (and records t) when (qno, incident) has no dispatch within the window.
  bool admit(QuadrantNo qno, std::uint32_t incident, double t);

 private:
  double window_;
  std::map<std::pair<QuadrantNo, std::uint32_t>, double> recent_;
};

enum class ClusterHeadMode { kDirect, kCloudGated };

struct ChDropped {
  std::string reason;
};
struct ChSuppressed {
  QuadrantNo qno;
  std::uint32_t incident;
};
// Direct mode: send `packet` now and publish `monitoring`.
struct ChDispatch {
  ClusterHeadNodePacket packet;
  pubsub::Update monitoring;
  std::uint32_t incident;
};
// Cloud-gated mode: publish `detection`; send `packet` only once authorized.
struct ChAwaitAuthorization {
  ClusterHeadNodePacket packet;
  pubsub::Update detection;
  std::uint32_t incident;
};
using ChOutcome = std::variant<ChDropped, ChSuppressed, ChDispatch, ChAwaitAuthorization>;

class ClusterHead {
 public:
  ClusterHead(geometry::ClusterHeadSite site, const geometry::Deployment& deployment, std::string scenario,
              ClusterHeadMode mode, double dedup_window = kNoDedupExpiry);

  ChOutcome on_beacon(const BeaconNodePacket& p, double t);

  const geometry::ClusterHeadSite& site() const { return site_; }
  ClusterHeadMode mode() const { return mode_; }

 private:
  geometry::ClusterHeadSite site_;
  geometry::GridSpec spec_;
  std::vector<geometry::ActorSite> actors_;
  std::string scenario_;
  ClusterHeadMode mode_;
  DetectionCorrelator correlator_;
  DispatchDeduplicator dedup_;
};

struct MotionPlan {
  Point start;
  Point target;
  double distance = 0.0;
  std::optional<double> heading;  // empty for a zero-length move
  double depart = 0.0;
  double eta = 0.0;
  std::uint64_t tag = 0;  // caller metadata carried through the queue

  friend bool operator==(const MotionPlan&, const MotionPlan&) = default;
};

struct Idle {};
struct Moving {
  MotionPlan plan;
};
struct Extinguishing {
  double until;
};
using ActorPhase = std::variant<Idle, Moving, Extinguishing>;

const char* phase_name(const ActorPhase& phase);

class Actor {
 public:
  Actor(geometry::ActorSite site, double speed, double service_time, double extinguish_radius);

  // Starts a mission when idle and returns its plan; otherwise queues the
  // command (FIFO) and returns nothing. Throws Error(kRouting) for a packet
  // addressed to another actor or carrying an invalid quadrant.
  std::optional<MotionPlan> on_command(const ClusterHeadNodePacket& p, double t, std::uint64_t tag = 0);

  // Actor-side processing: derive the command from raw detection data.
  std::optional<MotionPlan> on_raw_data(const BeaconNodePacket& data, const geometry::Deployment& d, double t,
                                        std::uint64_t tag = 0);

  // Moving -> Extinguishing at the plan's eta. Returns the completion time.
  double on_arrival(double t);

  // Extinguishing -> Idle. Freezes every uncontained, ignited fire whose front
  // is within the extinguish radius of the actor; returns the ids contained.
  std::vector<fire::FireId> on_extinguish_complete(std::vector<fire::FireState>& fires, double t);

  // Starts the next queued command, if idle and one is waiting.
  std::optional<MotionPlan> start_next(double t);

  Point position_at(double t) const;

  const geometry::ActorSite& site() const { return site_; }
  const ActorPhase& phase() const { return phase_; }
  Point current() const { return current_; }
  std::size_t queued() const { return queue_.size(); }
  double service_time() const { return service_time_; }

 private:
  struct Pending {
    ClusterHeadNodePacket packet;
    std::uint64_t tag;
  };

  MotionPlan begin(const Pending& cmd, double t);

  geometry::ActorSite site_;
  Point current_;
  double speed_;
  double service_time_;
  double extinguish_radius_;
  ActorPhase phase_ = Idle{};
  std::deque<Pending> queue_;
};

pubsub::Update actor_status_update(std::string_view scenario, const Actor& a, double t);

enum class ProcessingSite { kInterface, kActor };

using FilterRule = std::function<bool(const BeaconNodePacket&)>;

// Named filters: "accept_all", "reject_all", "in_area". Throws
// Error(kConfiguration) for other names.
FilterRule make_filter(std::string_view name, const geometry::GridSpec& spec);

struct StoredRecord {
  double t;
  BeaconNodePacket data;
  bool accepted;
};

struct ForwardCommand {
  std::uint16_t aa;
  ClusterHeadNodePacket packet;
};
struct ForwardRaw {
  std::uint16_t aa;
  BeaconNodePacket data;
};
using InterfaceOutput = std::variant<ForwardCommand, ForwardRaw>;

struct InterfaceResult {
  bool accepted = false;
  std::optional<InterfaceOutput> forwarded;
  std::string warning;  // non-empty when accepted data could not be routed
};

// Cloud-side gateway of the automatic topologies: filter, store, forward.
class IntegrationInterface {
 public:
  IntegrationInterface(const geometry::Deployment& deployment, FilterRule filter, ProcessingSite site,
                       double dedup_window = kNoDedupExpiry);

  InterfaceResult on_data(const BeaconNodePacket& data, double t);

  const std::vector<StoredRecord>& store() const { return store_; }
  std::size_t accepted_count() const { return accepted_; }
  std::size_t rejected_count() const { return rejected_; }
  std::size_t forwarded_count() const { return forwarded_; }
  ProcessingSite processing_site() const { return site_; }

 private:
  geometry::GridSpec spec_;
  std::vector<geometry::ActorSite> actors_;
  FilterRule filter_;
  ProcessingSite site_;
  DetectionCorrelator correlator_;
  DispatchDeduplicator dedup_;
  std::vector<StoredRecord> store_;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
  std::size_t forwarded_ = 0;
};

// Link distance used to correlate detections of one fire: the diagonal of a
// cell, so any of the eight neighbouring sensors joins the same incident.
double correlation_distance(const geometry::GridSpec& spec);

}  // namespace wsan::nodes
