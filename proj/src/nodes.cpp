#include "wsan/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wsan/error.hpp"

namespace wsan::nodes {

ClusterHeadNodePacket route_detection(const BeaconNodePacket& p, const geometry::GridSpec& spec,
                                      std::span<const geometry::ActorSite> actors) {
  const QuadrantNo qno = geometry::quadrant_of({p.xc, p.yc}, spec);
  // Actors are planned one per quadrant with AA = QNO.
  for (const auto& actor : actors) {
    if (actor.aa == qno) return {p.xc, p.yc, qno, actor.aa};
  }
  throw Error(ErrorKind::kConfiguration, "no actor deployed for quadrant " + std::to_string(qno));
}

double correlation_distance(const geometry::GridSpec& spec) {
  return spec.cell_side() * std::sqrt(2.0) * (1.0 + 1e-9);
}

// ---------------------------------------------------------------------------

bool BeaconNode::in_range(const fire::FireState& f, double t) const {
  if (!f.ignited(t)) return false;
  return geometry::distance(site_.position, f.event.ignition) - fire::fire_radius(f, t) <= range_;
}

std::optional<BeaconNodePacket> BeaconNode::on_sample(const fire::FireState& f, double t) {
  if (reported_.contains(f.event.fire_id) || !in_range(f, t)) return std::nullopt;
  reported_.insert(f.event.fire_id);
  return BeaconNodePacket{site_.position.x, site_.position.y, site_.chno};
}

bool BeaconNode::may_detect_later(const fire::FireState& f, double t) const {
  if (reported_.contains(f.event.fire_id)) return false;
  if (!f.ignited(t)) return true;
  if (in_range(f, t)) return true;
  return !f.contained() && f.event.speed > 0.0;
}

// ---------------------------------------------------------------------------

std::uint32_t DetectionCorrelator::incident_for(QuadrantNo qno, Point p) {
  for (std::size_t i = 0; i < incidents_.size(); ++i) {
    Incident& inc = incidents_[i];
    if (inc.qno != qno) continue;
    for (const Point& m : inc.members) {
      if (geometry::distance(m, p) <= link_distance_) {
        if (std::find(inc.members.begin(), inc.members.end(), p) == inc.members.end()) {
          inc.members.push_back(p);
        }
        return static_cast<std::uint32_t>(i);
      }
    }
  }
  incidents_.push_back({qno, {p}});
  return static_cast<std::uint32_t>(incidents_.size() - 1);
}

bool DispatchDeduplicator::admit(QuadrantNo qno, std::uint32_t incident, double t) {
  const auto key = std::make_pair(qno, incident);
  const auto it = recent_.find(key);
  if (it != recent_.end() && t - it->second <= window_) return false;
  recent_[key] = t;
  return true;
}

// ---------------------------------------------------------------------------

ClusterHead::ClusterHead(geometry::ClusterHeadSite site, const geometry::Deployment& deployment,
                         std::string scenario, ClusterHeadMode mode, double dedup_window)
    : site_(site),
      spec_(deployment.spec),
      actors_(deployment.actors),
      scenario_(std::move(scenario)),
      mode_(mode),
      correlator_(correlation_distance(deployment.spec)),
      dedup_(dedup_window) {}

ChOutcome ClusterHead::on_beacon(const BeaconNodePacket& p, double t) {
  if (!spec_.in_area({p.xc, p.yc})) {
    std::ostringstream why;
    why << "beacon coordinates (" << p.xc << ", " << p.yc << ") outside the area";
    return ChDropped{why.str()};
  }
  const ClusterHeadNodePacket cmd = route_detection(p, spec_, actors_);
  const std::uint32_t incident = correlator_.incident_for(cmd.qno, {p.xc, p.yc});
  if (!dedup_.admit(cmd.qno, incident, t)) return ChSuppressed{cmd.qno, incident};

  pubsub::Update update{pubsub::fire_topic(scenario_, cmd.qno), protocol::encode_cluster_head(cmd).bytes, t};
  if (mode_ == ClusterHeadMode::kDirect) return ChDispatch{cmd, std::move(update), incident};
  return ChAwaitAuthorization{cmd, std::move(update), incident};
}

// ---------------------------------------------------------------------------

const char* phase_name(const ActorPhase& phase) {
  switch (phase.index()) {
    case 0: return "idle";
    case 1: return "moving";
    default: return "extinguishing";
  }
}

Actor::Actor(geometry::ActorSite site, double speed, double service_time, double extinguish_radius)
    : site_(site),
      current_(site.home),
      speed_(speed),
      service_time_(service_time),
      extinguish_radius_(extinguish_radius) {
  if (!(speed > 0.0)) throw Error(ErrorKind::kInvalidSpec, "actor speed must be positive");
  if (service_time < 0.0) throw Error(ErrorKind::kInvalidSpec, "service time must be non-negative");
}

std::optional<MotionPlan> Actor::on_command(const ClusterHeadNodePacket& p, double t, std::uint64_t tag) {
  if (p.aa != site_.aa) {
    throw Error(ErrorKind::kRouting,
                "command for actor " + std::to_string(p.aa) + " delivered to actor " + std::to_string(site_.aa));
  }
  if (p.qno >= geometry::kQuadrantCount) {
    throw Error(ErrorKind::kRouting, "quadrant " + std::to_string(p.qno) + " does not exist");
  }
  Pending cmd{p, tag};
  if (!std::holds_alternative<Idle>(phase_)) {
    queue_.push_back(cmd);
    return std::nullopt;
  }
  return begin(cmd, t);
}

std::optional<MotionPlan> Actor::on_raw_data(const BeaconNodePacket& data, const geometry::Deployment& d, double t,
                                             std::uint64_t tag) {
  return on_command(route_detection(data, d), t, tag);
}

MotionPlan Actor::begin(const Pending& cmd, double t) {
  MotionPlan plan;
  plan.start = current_;
  plan.target = {cmd.packet.xc, cmd.packet.yc};
  const double dx = plan.target.x - plan.start.x;
  const double dy = plan.target.y - plan.start.y;
  plan.distance = geometry::actor_travel_distance(dx, dy);
  if (plan.distance > 0.0) plan.heading = geometry::actor_heading(dx, dy);
  plan.depart = t;
  plan.eta = t + plan.distance / speed_;
  plan.tag = cmd.tag;
  if (plan.distance == 0.0) {
    phase_ = Extinguishing{t + service_time_};
  } else {
    phase_ = Moving{plan};
  }
  return plan;
}

double Actor::on_arrival(double t) {
  const auto* moving = std::get_if<Moving>(&phase_);
  if (moving == nullptr) throw Error(ErrorKind::kScheduling, "arrival for an actor that is not moving");
  current_ = moving->plan.target;
  const double until = t + service_time_;
  phase_ = Extinguishing{until};
  return until;
}

std::vector<fire::FireId> Actor::on_extinguish_complete(std::vector<fire::FireState>& fires, double t) {
  if (!std::holds_alternative<Extinguishing>(phase_)) {
    throw Error(ErrorKind::kScheduling, "extinguish completion for an actor that is not extinguishing");
  }
  std::vector<fire::FireId> contained;
  for (auto& f : fires) {
    if (f.contained() || !f.ignited(t)) continue;
    if (geometry::distance(current_, f.event.ignition) - fire::fire_radius(f, t) <= extinguish_radius_) {
      f.contained_at = t;
      contained.push_back(f.event.fire_id);
    }
  }
  phase_ = Idle{};
  return contained;
}

std::optional<MotionPlan> Actor::start_next(double t) {
  if (!std::holds_alternative<Idle>(phase_) || queue_.empty()) return std::nullopt;
  const Pending cmd = queue_.front();
  queue_.pop_front();
  return begin(cmd, t);
}

Point Actor::position_at(double t) const {
  const auto* moving = std::get_if<Moving>(&phase_);
  if (moving == nullptr) return current_;
  const MotionPlan& plan = moving->plan;
  if (t <= plan.depart) return plan.start;
  if (t >= plan.eta) return plan.target;
  const double frac = (t - plan.depart) / (plan.eta - plan.depart);
  return {plan.start.x + frac * (plan.target.x - plan.start.x), plan.start.y + frac * (plan.target.y - plan.start.y)};
}

pubsub::Update actor_status_update(std::string_view scenario, const Actor& a, double t) {
  const Point p = a.position_at(t);
  std::ostringstream body;
  body.precision(17);
  body << "phase=" << phase_name(a.phase()) << " x=" << p.x << " y=" << p.y << " queued=" << a.queued();
  const std::string text = body.str();
  return {pubsub::actor_status_topic(scenario, a.site().aa), {text.begin(), text.end()}, t};
}

// ---------------------------------------------------------------------------

FilterRule make_filter(std::string_view name, const geometry::GridSpec& spec) {
  if (name == "accept_all") return [](const BeaconNodePacket&) { return true; };
  if (name == "reject_all") return [](const BeaconNodePacket&) { return false; };
  if (name == "in_area") {
    return [spec](const BeaconNodePacket& p) { return spec.in_area({p.xc, p.yc}); };
  }
  throw Error(ErrorKind::kConfiguration, "unknown filter '" + std::string(name) + "'");
}

IntegrationInterface::IntegrationInterface(const geometry::Deployment& deployment, FilterRule filter,
                                           ProcessingSite site, double dedup_window)
    : spec_(deployment.spec),
      actors_(deployment.actors),
      filter_(std::move(filter)),
      site_(site),
      correlator_(correlation_distance(deployment.spec)),
      dedup_(dedup_window) {}

InterfaceResult IntegrationInterface::on_data(const BeaconNodePacket& data, double t) {
  InterfaceResult result;
  result.accepted = filter_(data);
  store_.push_back({t, data, result.accepted});
  if (!result.accepted) {
    ++rejected_;
    return result;
  }
  ++accepted_;
  if (!spec_.in_area({data.xc, data.yc})) {
    result.warning = "accepted data lies outside the area; not forwarded";
    return result;
  }
  const ClusterHeadNodePacket cmd = route_detection(data, spec_, actors_);
  const std::uint32_t incident = correlator_.incident_for(cmd.qno, {data.xc, data.yc});
  if (!dedup_.admit(cmd.qno, incident, t)) return result;

  ++forwarded_;
  if (site_ == ProcessingSite::kInterface) {
    result.forwarded = ForwardCommand{cmd.aa, cmd};
  } else {
    result.forwarded = ForwardRaw{cmd.aa, data};
  }
  return result;
}

}  // namespace wsan::nodes
