#include "wsan/pubsub.hpp"

#include <cmath>

namespace wsan::pubsub {

namespace {

std::vector<std::string_view> split_levels(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t slash = s.find('/', start);
    if (slash == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, slash - start));
    start = slash + 1;
  }
}

}  // namespace

bool topic_matches(std::string_view filter, std::string_view topic) {
  const auto f = split_levels(filter);
  const auto t = split_levels(topic);
  std::size_t i = 0;
  for (; i < f.size(); ++i) {
    if (f[i] == "#") return i + 1 == f.size();
    if (i >= t.size()) return false;
    if (f[i] != "+" && f[i] != t[i]) return false;
  }
  return i == t.size();
}

std::string fire_topic(std::string_view scenario, std::uint16_t qno) {
  return "wsan/" + std::string(scenario) + "/quadrant/" + std::to_string(qno) + "/fire";
}

std::string actor_status_topic(std::string_view scenario, std::uint16_t aa) {
  return "wsan/" + std::string(scenario) + "/actor/" + std::to_string(aa) + "/status";
}

SubscribeResult Broker::subscribe(Subscription req) {
  if (!(req.period > 0.0) || !std::isfinite(req.period)) {
    return {false, "period must be positive", 0.0};
  }
  if (subs_.contains(req.sub_id)) {
    return {false, "duplicate sub_id '" + req.sub_id + "'", 0.0};
  }
  const double first = req.created_at + req.period;
  std::string id = req.sub_id;
  subs_.emplace(std::move(id), Entry{std::move(req), 1});
  return {true, {}, first};
}

void Broker::publish(Update u) {
  std::string topic = u.topic;
  retained_.insert_or_assign(std::move(topic), std::move(u));
}

std::vector<Delivery> Broker::due_deliveries(double t) {
  std::vector<Delivery> out;
  for (auto& [id, entry] : subs_) {
    while (entry.instant() < t) ++entry.next_k;
    if (entry.instant() != t) continue;
    for (const auto& [topic, update] : retained_) {
      if (topic_matches(entry.sub.topic_filter, topic)) {
        out.push_back({id, entry.sub.subscriber, update});
      }
    }
    ++entry.next_k;
  }
  return out;
}

std::optional<double> Broker::next_delivery_time() const {
  std::optional<double> best;
  for (const auto& [id, entry] : subs_) {
    const double at = entry.instant();
    if (!best || at < *best) best = at;
  }
  return best;
}

bool Broker::authorize_dispatch(const Update& detection) const {
  if (policy_ == DispatchPolicy::kAlways) return true;
  for (const auto& [id, entry] : subs_) {
    if (topic_matches(entry.sub.topic_filter, detection.topic)) return true;
  }
  return false;
}

}  // namespace wsan::pubsub
