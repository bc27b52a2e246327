#include "wsan/engine.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "wsan/error.hpp"
#include "wsan/geometry.hpp"
#include "wsan/nodes.hpp"

namespace wsan::engine {

std::vector<std::uint8_t> payload_bytes(const MessageBody& body) {
  return std::visit(
      [](const auto& p) -> std::vector<std::uint8_t> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, FramePayload>) {
          return p.frame.bytes;
        } else if constexpr (std::is_same_v<T, PublishPayload>) {
          return p.update.payload;
        } else {
          return p.command.bytes;
        }
      },
      body);
}

// --- EventQueue ----------------------------------------------------------------

void EventQueue::schedule(double t, EventPayload payload) {
  if (!(t >= now_)) {
    throw Error(ErrorKind::kScheduling,
                "event at t=" + std::to_string(t) + " is before the clock (" + std::to_string(now_) + ")");
  }
  heap_.push(SimEvent{t, next_seq_++, std::move(payload)});
}

SimEvent EventQueue::pop() {
  if (heap_.empty()) throw Error(ErrorKind::kScheduling, "pop from an empty event queue");
  SimEvent e = heap_.top();
  heap_.pop();
  now_ = e.t;
  return e;
}

// --- Network -------------------------------------------------------------------

Network::Network(NetworkModel model, const topology::Wiring& wiring)
    : model_(model), wiring_(&wiring), rng_(model.seed) {}

bool Network::draw_drop() {
  if (model_.drop_probability <= 0.0) return false;
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return u < model_.drop_probability;
}

SendOutcome Network::send(EventQueue& queue, Message msg, double t) {
  const topology::Link* link = wiring_->find(msg.src, msg.dst, msg.port);
  if (link == nullptr) {
    throw Error(ErrorKind::kWiring, "no link " + msg.src.str() + " -> " + msg.dst.str() + " on '" + msg.port + "'");
  }
  LinkCounters& c = counters_[static_cast<std::size_t>(link->latency)];
  ++c.sent;
  SendOutcome out;
  out.latency_class = link->latency;
  if (draw_drop()) {
    ++c.dropped;
    return out;
  }
  ++c.delivered;
  out.delivered = true;
  out.deliver_at = t + model_.latency(link->latency);
  queue.schedule(out.deliver_at, MessageDelivery{std::move(msg)});
  return out;
}

// --- Trace -----------------------------------------------------------------------

std::string Trace::header_line() const { return header.dump(); }

std::string Trace::record_line(const TraceRecord& r) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["kind"] = r.kind;
  j["src"] = r.src;
  j["dst"] = r.dst;
  j["port"] = r.port;
  j["payload"] = r.payload_hex;
  if (r.fire_id) j["fire_id"] = *r.fire_id;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

std::string Trace::body() const {
  std::string out;
  for (const auto& r : records) {
    out += record_line(r);
    out += '\n';
  }
  return out;
}

void Trace::write(std::ostream& out) const { out << header_line() << '\n' << body(); }

std::string Trace::str() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

// --- Metrics ---------------------------------------------------------------------

bool Metrics::all_contained() const {
  for (const auto& f : fires) {
    if (!f.containment_time) return false;
  }
  return true;
}

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_num(*v) : std::string(); }

}  // namespace

std::string metrics_csv(const Metrics& m) {
  std::ostringstream out;
  out << kMetricsColumns << '\n';
  double total_area = 0.0;
  std::size_t contained = 0;
  for (const auto& f : m.fires) {
    total_area += f.burned_area_m2;
    contained += f.containment_time ? 1 : 0;
    out << f.fire_id << ',' << fmt_num(f.ignition.x) << ',' << fmt_num(f.ignition.y) << ',' << fmt_num(f.t0) << ','
        << fmt_opt(f.detection_latency) << ',' << fmt_opt(f.dispatch_latency) << ',' << fmt_opt(f.response_latency)
        << ',' << fmt_opt(f.containment_time) << ',' << fmt_num(f.burned_area_m2) << ','
        << (f.containment_time ? "true" : "false") << ",,,,,,,\n";
  }
  out << "total,,,,,,,," << fmt_num(total_area) << ',' << contained << '/' << m.fires.size() << ','
      << m.wsan_local.sent << ',' << m.wsan_local.delivered << ',' << m.wsan_local.dropped << ','
      << m.wsan_cloud.sent << ',' << m.wsan_cloud.delivered << ',' << m.wsan_cloud.dropped << ','
      << m.pubsub_deliveries << '\n';
  return out.str();
}

std::string scenario_hash(const Scenario& s) {
  const std::string text = to_json(s).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json wiring_json(const topology::Wiring& w) {
  using oj = nlohmann::ordered_json;
  oj links = oj::array();
  for (const auto& l : w.links()) {
    links.push_back({{"src", l.src.str()},
                     {"dst", l.dst.str()},
                     {"port", l.port},
                     {"latency", topology::to_string(l.latency)},
                     {"src_dir", topology::to_string(l.src_dir)},
                     {"dst_dir", topology::to_string(l.dst_dir)}});
  }
  oj roles = oj::object();
  for (const auto& [node, role] : w.role_map()) roles[node.str()] = topology::to_string(role);
  return {{"kind", topology::to_string(w.kind())},
          {"direct_actor_variation", w.direct_actor_variation()},
          {"links", links},
          {"roles", roles}};
}

// --- Simulator -------------------------------------------------------------------

namespace {

using geometry::Point;
using nodes::Actor;
using nodes::BeaconNode;
using nodes::ClusterHead;
using nodes::IntegrationInterface;
namespace ports = topology::ports;

std::uint64_t tag_of(std::optional<fire::FireId> id) { return id ? static_cast<std::uint64_t>(*id) + 1 : 0; }

std::optional<fire::FireId> fire_of(std::uint64_t tag) {
  if (tag == 0) return std::nullopt;
  return static_cast<fire::FireId>(tag - 1);
}

std::string to_text(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

class Simulator {
 public:
  explicit Simulator(const Scenario& s);

  RunResult run();

 private:
  void handle(const SimEvent& e);
  void on_tick(const SensingTick& tick, double t);
  void on_message(Message& msg, double t);
  void on_cluster_head_beacon(const Message& msg, double t);
  void on_broker(const Message& msg, double t);
  void on_interface(const Message& msg, double t);
  void on_actor_command(const Message& msg, double t);
  void on_arrival(std::uint16_t aa, double t);
  void on_extinguish_complete(std::uint16_t aa, double t);
  void on_pubsub(double t);

  void start_mission(std::uint16_t aa, const nodes::MotionPlan& plan, double t);
  void publish_status(std::uint16_t aa, double t);
  void send(Message msg, double t);
  void note_dispatch(std::optional<fire::FireId> id, double t);
  void note_response(std::optional<fire::FireId> id, double t);

  void trace(double t, std::string kind, const NodeId* src = nullptr, const NodeId* dst = nullptr,
             std::string port = {}, std::string payload_hex = {}, std::optional<fire::FireId> id = {},
             std::string note = {});

  const Scenario& sc_;
  geometry::GridSpec spec_;
  geometry::Deployment deployment_;
  topology::Wiring wiring_;
  EventQueue queue_;
  Network network_;
  pubsub::Broker broker_;
  std::vector<fire::FireState> fires_;
  std::vector<BeaconNode> beacons_;
  std::vector<ClusterHead> cluster_heads_;
  std::vector<Actor> actors_;
  std::optional<IntegrationInterface> interface_;
  Trace trace_;
  Metrics metrics_;
};

geometry::GridSpec checked_spec(const Scenario& s) {
  if (const ValidationReport report = validate(s); !report.ok()) {
    throw Error(ErrorKind::kValidation, report.to_string());
  }
  return geometry::GridSpec::make(s.grid.n, s.grid.r);
}

Simulator::Simulator(const Scenario& s)
    : sc_(s),
      spec_(checked_spec(s)),
      deployment_(geometry::plan_deployment(spec_)),
      wiring_(topology::build_topology(s.topology.kind, deployment_, {s.topology.direct_actor_variation})),
      network_({s.network.wsan_latency_s, s.network.cloud_latency_s, s.network.drop_probability, s.network.seed},
               wiring_),
      broker_(s.topology.dispatch_policy) {
  for (std::size_t i = 0; i < s.fire_events.size(); ++i) {
    const auto& f = s.fire_events[i];
    fires_.push_back({{static_cast<fire::FireId>(i), {f.x, f.y}, f.speed, f.t0}, std::nullopt});
    metrics_.fires.push_back({static_cast<fire::FireId>(i), {f.x, f.y}, f.t0, {}, {}, {}, {}, 0.0});
  }
  for (const auto& site : deployment_.sensors) beacons_.emplace_back(site, spec_.sensing_range());

  const double dedup = s.cluster_head.dedup_window_s.value_or(nodes::kNoDedupExpiry);
  if (s.topology.kind == topology::TopologyKind::kSemiAutomatic) {
    const auto mode = s.topology.cloud_gated ? nodes::ClusterHeadMode::kCloudGated : nodes::ClusterHeadMode::kDirect;
    for (const auto& site : deployment_.cluster_heads) cluster_heads_.emplace_back(site, deployment_, s.name, mode, dedup);
  } else {
    interface_.emplace(deployment_, nodes::make_filter(s.integration.filter, spec_), s.integration.processing_site,
                       dedup);
  }
  const double extinguish_radius = s.actors.extinguish_radius.value_or(spec_.sensing_range());
  for (const auto& site : deployment_.actors) {
    actors_.emplace_back(site, s.actors.speed, s.actors.service_time, extinguish_radius);
  }

  trace_.header = {{"type", "header"},
                   {"format", "wsan-trace/1"},
                   {"tool_version", kToolVersion},
                   {"scenario", s.name},
                   {"scenario_hash", scenario_hash(s)},
                   {"seed", s.network.seed},
                   {"horizon", s.horizon},
                   {"wiring", wiring_json(wiring_)}};
}

RunResult Simulator::run() {
  const NodeId monitor = topology::kMonitor;
  const NodeId broker = topology::kBroker;
  for (std::size_t i = 0; i < sc_.subscriptions.size(); ++i) {
    const auto& spec = sc_.subscriptions[i];
    pubsub::Subscription sub{"sub-" + std::to_string(i), spec.subscriber, spec.topic_filter, spec.period, 0.0};
    const auto ack = broker_.subscribe(sub);
    trace(0.0, ack.accepted ? "subscribe" : "subscribe_rejected", &monitor, &broker, std::string(ports::kSubscribe),
          {}, {}, "sub=" + sub.sub_id + " subscriber=" + sub.subscriber + " filter=" + sub.topic_filter +
                  (ack.accepted ? " first=" + to_text(ack.first_delivery) : " reason=" + ack.reason));
  }

  for (const auto& f : fires_) {
    if (f.event.t0 <= sc_.horizon) queue_.schedule(f.event.t0, FireIgnition{f.event.fire_id});
  }
  for (std::uint32_t i = 0; i < beacons_.size(); ++i) queue_.schedule(0.0, SensingTick{i, 0});
  if (auto next = broker_.next_delivery_time(); next && *next <= sc_.horizon) queue_.schedule(*next, PubsubDelivery{});

  while (!queue_.empty() && queue_.top().t <= sc_.horizon) {
    const SimEvent e = queue_.pop();
    handle(e);
  }

  metrics_.end_time = sc_.horizon;
  for (std::size_t i = 0; i < fires_.size(); ++i) {
    const auto& f = fires_[i];
    auto& m = metrics_.fires[i];
    if (f.contained_at) m.containment_time = *f.contained_at - f.event.t0;
    m.burned_area_m2 = fire::burned_area(f, f.contained_at.value_or(sc_.horizon), spec_);
  }
  metrics_.wsan_local = network_.counters(LatencyClass::kWsanLocal);
  metrics_.wsan_cloud = network_.counters(LatencyClass::kWsanCloud);
  return {std::move(trace_), std::move(metrics_)};
}

void Simulator::handle(const SimEvent& e) {
  const double t = e.t;
  std::visit(
      [this, t](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SensingTick>) {
          on_tick(p, t);
        } else if constexpr (std::is_same_v<T, MessageDelivery>) {
          Message msg = p.msg;
          on_message(msg, t);
        } else if constexpr (std::is_same_v<T, ActorArrival>) {
          on_arrival(p.aa, t);
        } else if constexpr (std::is_same_v<T, ExtinguishComplete>) {
          on_extinguish_complete(p.aa, t);
        } else if constexpr (std::is_same_v<T, PubsubDelivery>) {
          on_pubsub(t);
        } else {
          const auto& f = fires_[p.fire].event;
          trace(t, "fire_ignition", nullptr, nullptr, {}, {}, f.fire_id,
                "x=" + to_text(f.ignition.x) + " y=" + to_text(f.ignition.y) + " speed=" + to_text(f.speed));
        }
      },
      e.payload);
}

void Simulator::trace(double t, std::string kind, const NodeId* src, const NodeId* dst, std::string port,
                      std::string payload_hex, std::optional<fire::FireId> id, std::string note) {
  trace_.records.push_back({t, std::move(kind), src ? src->str() : std::string(), dst ? dst->str() : std::string(),
                            std::move(port), std::move(payload_hex), id, std::move(note)});
}

void Simulator::send(Message msg, double t) {
  const std::string hex = protocol::to_hex(payload_bytes(msg.body));
  const NodeId src = msg.src;
  const NodeId dst = msg.dst;
  const std::string port = msg.port;
  const auto id = msg.fire_id;
  const SendOutcome out = network_.send(queue_, std::move(msg), t);
  trace(t, out.delivered ? "send" : "drop", &src, &dst, port, hex, id,
        std::string("class=") + topology::to_string(out.latency_class));
}

void Simulator::note_dispatch(std::optional<fire::FireId> id, double t) {
  if (!id) return;
  auto& m = metrics_.fires[*id];
  if (!m.dispatch_latency) m.dispatch_latency = t - m.t0;
}

void Simulator::note_response(std::optional<fire::FireId> id, double t) {
  if (!id) return;
  auto& m = metrics_.fires[*id];
  if (!m.response_latency) m.response_latency = t - m.t0;
}

void Simulator::on_tick(const SensingTick& tick, double t) {
  BeaconNode& node = beacons_[tick.sensor];
  const NodeId src = topology::sensor(node.site().id);
  const NodeId dst = interface_ ? topology::kInterface : topology::cluster_head(node.site().chno);
  bool keep_sampling = false;
  for (const auto& f : fires_) {
    if (auto packet = node.on_sample(f, t)) {
      auto& m = metrics_.fires[f.event.fire_id];
      if (!m.detection_latency) m.detection_latency = t - m.t0;
      ++metrics_.beacon_packets;
      send({src, dst, std::string(ports::kBeacon), FramePayload{protocol::encode_beacon(*packet)}, f.event.fire_id},
           t);
    }
    keep_sampling = keep_sampling || node.may_detect_later(f, t);
  }
  if (!keep_sampling) return;
  const double next = static_cast<double>(tick.k + 1) * sc_.sensing.period;
  if (next <= sc_.horizon) queue_.schedule(next, SensingTick{tick.sensor, tick.k + 1});
}

void Simulator::on_message(Message& msg, double t) {
  trace(t, "deliver", &msg.src, &msg.dst, msg.port, protocol::to_hex(payload_bytes(msg.body)), msg.fire_id);
  switch (msg.dst.cls) {
    case topology::NodeClass::kClusterHead:
      if (msg.port == ports::kBeacon) {
        on_cluster_head_beacon(msg, t);
      } else if (const auto* grant = std::get_if<GrantPayload>(&msg.body)) {
        const auto cmd = protocol::decode_cluster_head(grant->command);
        const NodeId ch = msg.dst;
        ++metrics_.cluster_head_packets;
        note_dispatch(msg.fire_id, t);
        send({ch, topology::actor(cmd.aa), std::string(ports::kClusterHead), FramePayload{grant->command},
              msg.fire_id},
             t);
      }
      break;
    case topology::NodeClass::kBroker:
      on_broker(msg, t);
      break;
    case topology::NodeClass::kInterface:
      on_interface(msg, t);
      break;
    case topology::NodeClass::kActor:
      on_actor_command(msg, t);
      break;
    default:
      break;
  }
}

void Simulator::on_cluster_head_beacon(const Message& msg, double t) {
  const NodeId ch_id = msg.dst;
  const auto& frame = std::get<FramePayload>(msg.body).frame;
  protocol::BeaconNodePacket packet;
  try {
    packet = protocol::decode_beacon(frame);
  } catch (const Error& e) {
    trace(t, "warning", &msg.src, &ch_id, msg.port, protocol::to_hex(frame.bytes), msg.fire_id, e.what());
    return;
  }
  ClusterHead& ch = cluster_heads_[ch_id.index];
  const nodes::ChOutcome outcome = ch.on_beacon(packet, t);
  const NodeId broker = topology::kBroker;

  if (const auto* dropped = std::get_if<nodes::ChDropped>(&outcome)) {
    trace(t, "warning", &msg.src, &ch_id, msg.port, protocol::to_hex(frame.bytes), msg.fire_id, dropped->reason);
  } else if (const auto* sup = std::get_if<nodes::ChSuppressed>(&outcome)) {
    trace(t, "dedup_suppressed", &msg.src, &ch_id, msg.port, protocol::to_hex(frame.bytes), msg.fire_id,
          "qno=" + std::to_string(sup->qno) + " incident=" + std::to_string(sup->incident));
  } else if (const auto* dispatch = std::get_if<nodes::ChDispatch>(&outcome)) {
    ++metrics_.cluster_head_packets;
    note_dispatch(msg.fire_id, t);
    send({ch_id, topology::actor(dispatch->packet.aa), std::string(ports::kClusterHead),
          FramePayload{protocol::encode_cluster_head(dispatch->packet)}, msg.fire_id},
         t);
    send({ch_id, broker, std::string(ports::kPublish), PublishPayload{dispatch->monitoring}, msg.fire_id}, t);
  } else if (const auto* wait = std::get_if<nodes::ChAwaitAuthorization>(&outcome)) {
    send({ch_id, broker, std::string(ports::kPublish),
          PublishPayload{wait->detection, PublishRequest::kAuthorizeBack, wait->packet.aa}, msg.fire_id},
         t);
  }
}

void Simulator::on_broker(const Message& msg, double t) {
  const auto* pub = std::get_if<PublishPayload>(&msg.body);
  if (pub == nullptr) return;
  const NodeId broker = topology::kBroker;
  broker_.publish(pub->update);
  trace(t, "publish", &msg.src, &broker, msg.port, protocol::to_hex(pub->update.payload), msg.fire_id,
        "topic=" + pub->update.topic);
  if (pub->request == PublishRequest::kNone) return;

  if (!broker_.authorize_dispatch(pub->update)) {
    trace(t, "dispatch_denied", &broker, &msg.src, {}, protocol::to_hex(pub->update.payload), msg.fire_id,
          "topic=" + pub->update.topic);
    return;
  }
  trace(t, "authorize", &broker, &msg.src, {}, protocol::to_hex(pub->update.payload), msg.fire_id,
        "topic=" + pub->update.topic);
  protocol::WireFrame command{pub->update.payload};
  if (pub->request == PublishRequest::kAuthorizeBack) {
    send({broker, msg.src, std::string(ports::kAuthorize), GrantPayload{std::move(command)}, msg.fire_id}, t);
  } else {
    note_dispatch(msg.fire_id, t);
    send({broker, topology::actor(pub->aa), std::string(ports::kCloudCommand), FramePayload{std::move(command)},
          msg.fire_id},
         t);
  }
}

void Simulator::on_interface(const Message& msg, double t) {
  const NodeId iface = topology::kInterface;
  const auto* payload = std::get_if<FramePayload>(&msg.body);
  if (payload == nullptr) return;
  protocol::BeaconNodePacket data;
  try {
    data = protocol::decode_beacon(payload->frame);
  } catch (const Error& e) {
    trace(t, "warning", &msg.src, &iface, msg.port, protocol::to_hex(payload->frame.bytes), msg.fire_id, e.what());
    return;
  }
  const nodes::InterfaceResult result = interface_->on_data(data, t);
  trace(t, result.accepted ? "interface_store" : "interface_reject", &msg.src, &iface, msg.port,
        protocol::to_hex(payload->frame.bytes), msg.fire_id);
  if (!result.warning.empty()) {
    trace(t, "warning", &msg.src, &iface, msg.port, protocol::to_hex(payload->frame.bytes), msg.fire_id,
          result.warning);
  }
  if (!result.forwarded) return;

  std::uint16_t aa = 0;
  protocol::WireFrame frame;
  std::uint16_t qno = 0;
  if (const auto* cmd = std::get_if<nodes::ForwardCommand>(&*result.forwarded)) {
    aa = cmd->aa;
    qno = cmd->packet.qno;
    frame = protocol::encode_cluster_head(cmd->packet);
  } else {
    const auto& raw = std::get<nodes::ForwardRaw>(*result.forwarded);
    aa = raw.aa;
    qno = geometry::quadrant_of({raw.data.xc, raw.data.yc}, spec_);
    frame = protocol::encode_beacon(raw.data);
  }
  ++metrics_.interface_commands;
  pubsub::Update update{pubsub::fire_topic(sc_.name, qno), frame.bytes, t};
  const NodeId broker = topology::kBroker;
  if (wiring_.direct_actor_variation()) {
    send({iface, broker, std::string(ports::kPublish), PublishPayload{update, PublishRequest::kForwardToActor, aa},
          msg.fire_id},
         t);
    return;
  }
  note_dispatch(msg.fire_id, t);
  send({iface, topology::actor(aa), std::string(ports::kActorCommand), FramePayload{std::move(frame)}, msg.fire_id},
       t);
  send({iface, broker, std::string(ports::kPublish), PublishPayload{std::move(update)}, msg.fire_id}, t);
}

void Simulator::on_actor_command(const Message& msg, double t) {
  const auto* payload = std::get_if<FramePayload>(&msg.body);
  if (payload == nullptr) return;
  const std::uint16_t aa = static_cast<std::uint16_t>(msg.dst.index);
  Actor& actor = actors_.at(aa);
  const std::uint64_t tag = tag_of(msg.fire_id);
  std::optional<nodes::MotionPlan> plan;
  if (protocol::peek_kind(payload->frame.bytes) == protocol::FrameKind::kBeacon) {
    plan = actor.on_raw_data(protocol::decode_beacon(payload->frame), deployment_, t, tag);
  } else {
    plan = actor.on_command(protocol::decode_cluster_head(payload->frame), t, tag);
  }
  if (plan) {
    start_mission(aa, *plan, t);
  } else {
    const NodeId self = msg.dst;
    trace(t, "actor_queued", &msg.src, &self, msg.port, protocol::to_hex(payload->frame.bytes), msg.fire_id,
          "queued=" + std::to_string(actor.queued()));
  }
}

void Simulator::start_mission(std::uint16_t aa, const nodes::MotionPlan& plan, double t) {
  const NodeId self = topology::actor(aa);
  const auto id = fire_of(plan.tag);
  trace(t, "actor_move", &self, nullptr, {}, {}, id,
        "from=" + to_text(plan.start.x) + "," + to_text(plan.start.y) + " to=" + to_text(plan.target.x) + "," +
            to_text(plan.target.y) + " distance=" + to_text(plan.distance) +
            " heading=" + (plan.heading ? to_text(*plan.heading) : std::string("none")) + " eta=" + to_text(plan.eta));
  Actor& actor = actors_[aa];
  if (const auto* ext = std::get_if<nodes::Extinguishing>(&actor.phase())) {
    // Zero-length move: already on site.
    note_response(id, t);
    trace(t, "actor_arrival", &self, nullptr, {}, {}, id, "until=" + to_text(ext->until));
    queue_.schedule(ext->until, ExtinguishComplete{aa});
  } else {
    queue_.schedule(plan.eta, ActorArrival{aa});
  }
  publish_status(aa, t);
}

void Simulator::on_arrival(std::uint16_t aa, double t) {
  Actor& actor = actors_[aa];
  const auto* moving = std::get_if<nodes::Moving>(&actor.phase());
  const auto id = moving ? fire_of(moving->plan.tag) : std::nullopt;
  const double until = actor.on_arrival(t);
  note_response(id, t);
  const NodeId self = topology::actor(aa);
  trace(t, "actor_arrival", &self, nullptr, {}, {}, id, "until=" + to_text(until));
  queue_.schedule(until, ExtinguishComplete{aa});
  publish_status(aa, t);
}

void Simulator::on_extinguish_complete(std::uint16_t aa, double t) {
  Actor& actor = actors_[aa];
  const NodeId self = topology::actor(aa);
  const auto contained = actor.on_extinguish_complete(fires_, t);
  for (fire::FireId id : contained) {
    trace(t, "contained", &self, nullptr, {}, {}, id,
          "radius=" + to_text(fire::fire_radius(fires_[id], t)));
  }
  if (contained.empty()) trace(t, "contain_noop", &self, nullptr, {}, {}, {}, "no uncontained fire within reach");
  publish_status(aa, t);
  if (auto next = actor.start_next(t)) start_mission(aa, *next, t);
}

void Simulator::publish_status(std::uint16_t aa, double t) {
  send({topology::actor(aa), topology::kBroker, std::string(ports::kStatus),
        PublishPayload{nodes::actor_status_update(sc_.name, actors_[aa], t)}, std::nullopt},
       t);
}

void Simulator::on_pubsub(double t) {
  const NodeId broker = topology::kBroker;
  const NodeId monitor = topology::kMonitor;
  for (const auto& d : broker_.due_deliveries(t)) {
    ++metrics_.pubsub_deliveries;
    trace(t, "pubsub_delivery", &broker, &monitor, std::string(ports::kNotify), protocol::to_hex(d.update.payload),
          {}, "sub=" + d.sub_id + " subscriber=" + d.subscriber + " topic=" + d.update.topic);
  }
  if (auto next = broker_.next_delivery_time(); next && *next <= sc_.horizon) queue_.schedule(*next, PubsubDelivery{});
}

}  // namespace

RunResult run(const Scenario& scenario) {
  Simulator sim(scenario);
  return sim.run();
}

}  // namespace wsan::engine
