#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wsan::pubsub {

// Topic filters use '/'-separated levels; '+' matches exactly one level and a
// trailing '#' matches any remaining levels (including none).
bool topic_matches(std::string_view filter, std::string_view topic);

std::string fire_topic(std::string_view scenario, std::uint16_t qno);
std::string actor_status_topic(std::string_view scenario, std::uint16_t aa);

struct Subscription {
  std::string sub_id;
  std::string subscriber;
  std::string topic_filter;
  double period = 0.0;
  double created_at = 0.0;
};

struct Update {
  std::string topic;
  std::vector<std::uint8_t> payload;
  double published_at = 0.0;

  friend bool operator==(const Update&, const Update&) = default;
};

struct Delivery {
  std::string sub_id;
  std::string subscriber;
  Update update;
};

enum class DispatchPolicy {
  kAlways,
  kSubscriptionRequired,
};

struct SubscribeResult {
  bool accepted = false;
  std::string reason;        // set on rejection
  double first_delivery = 0.0;  // created_at + period on acceptance
};

// Latest-value broker with period-driven delivery. Deliveries for a
// subscription happen only at created_at + k * period, k >= 1.
class Broker {
 public:
  explicit Broker(DispatchPolicy policy = DispatchPolicy::kAlways) : policy_(policy) {}

  SubscribeResult subscribe(Subscription req);

  // Retains u as the latest value of its topic. Never delivers by itself.
  void publish(Update u);

  // Emits the deliveries due at exactly t, one per matching retained topic,
  // and advances every subscription past t. Instants skipped by an earlier
  // call are dropped, not replayed.
  std::vector<Delivery> due_deliveries(double t);

  // Earliest pending delivery instant over all subscriptions.
  std::optional<double> next_delivery_time() const;

  bool authorize_dispatch(const Update& detection) const;

  DispatchPolicy policy() const { return policy_; }
  std::size_t subscription_count() const { return subs_.size(); }
  const std::map<std::string, Update>& retained() const { return retained_; }

 private:
  struct Entry {
    Subscription sub;
    std::uint64_t next_k = 1;

    double instant() const { return sub.created_at + static_cast<double>(next_k) * sub.period; }
  };

  DispatchPolicy policy_;
  std::map<std::string, Entry> subs_;  // keyed by sub_id
  std::map<std::string, Update> retained_;
};

}  // namespace wsan::pubsub
