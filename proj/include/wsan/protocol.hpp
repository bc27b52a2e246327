#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wsan::protocol {

// Sensor -> cluster head.
struct BeaconNodePacket {
  double xc = 0.0;
  double yc = 0.0;
  std::uint16_t chno = 0;

  friend bool operator==(const BeaconNodePacket&, const BeaconNodePacket&) = default;
};

// Cluster head -> actor.
struct ClusterHeadNodePacket {
  double xc = 0.0;
  double yc = 0.0;
  std::uint16_t qno = 0;
  std::uint16_t aa = 0;

  friend bool operator==(const ClusterHeadNodePacket&, const ClusterHeadNodePacket&) = default;
};

enum class FrameKind : std::uint8_t {
  kBeacon = 0x01,
  kClusterHead = 0x02,
};

inline constexpr std::size_t kBeaconFrameSize = 19;
inline constexpr std::size_t kClusterHeadFrameSize = 21;

// Wire layout, all multi-octet fields little-endian:
//   beacon:       [0x01][xc f64][yc f64][chno u16]          19 octets
//   cluster head: [0x02][xc f64][yc f64][qno u16][aa u16]   21 octets
struct WireFrame {
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const WireFrame&, const WireFrame&) = default;
};

WireFrame encode_beacon(const BeaconNodePacket& p);
BeaconNodePacket decode_beacon(std::span<const std::uint8_t> frame);
inline BeaconNodePacket decode_beacon(const WireFrame& f) { return decode_beacon(std::span(f.bytes)); }

WireFrame encode_cluster_head(const ClusterHeadNodePacket& p);
ClusterHeadNodePacket decode_cluster_head(std::span<const std::uint8_t> frame);
inline ClusterHeadNodePacket decode_cluster_head(const WireFrame& f) {
  return decode_cluster_head(std::span(f.bytes));
}

// Kind tag of a non-empty frame; throws Error(kTruncation) when empty and
// Error(kKindMismatch) for an unknown tag.
FrameKind peek_kind(std::span<const std::uint8_t> frame);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace wsan::protocol
