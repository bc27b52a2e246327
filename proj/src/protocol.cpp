#include "wsan/protocol.hpp"

#include <bit>
#include <cmath>

#include "wsan/error.hpp"

namespace wsan::protocol {

namespace {

void put_f64(std::vector<std::uint8_t>& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t value) {
  out.push_back(static_cast<std::uint8_t>(value & 0xFF));
  out.push_back(static_cast<std::uint8_t>(value >> 8));
}

double get_f64(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::uint16_t>(in[at] | (in[at + 1] << 8));
}

void require_finite(double xc, double yc) {
  if (!std::isfinite(xc) || !std::isfinite(yc)) {
    throw Error(ErrorKind::kEncoding, "packet coordinates must be finite");
  }
}

void check_frame(std::span<const std::uint8_t> frame, FrameKind expected, std::size_t size) {
  if (frame.empty()) throw Error(ErrorKind::kTruncation, "empty frame");
  if (frame[0] != static_cast<std::uint8_t>(expected)) {
    throw Error(ErrorKind::kKindMismatch, "unexpected frame tag " + std::to_string(frame[0]));
  }
  if (frame.size() != size) {
    throw Error(ErrorKind::kTruncation, "frame is " + std::to_string(frame.size()) + " octets, expected " +
                                            std::to_string(size));
  }
}

void check_decoded(double xc, double yc) {
  if (!std::isfinite(xc) || !std::isfinite(yc)) {
    throw Error(ErrorKind::kCorruption, "decoded coordinate is not finite");
  }
}

}  // namespace

WireFrame encode_beacon(const BeaconNodePacket& p) {
  require_finite(p.xc, p.yc);
  WireFrame f;
  f.bytes.reserve(kBeaconFrameSize);
  f.bytes.push_back(static_cast<std::uint8_t>(FrameKind::kBeacon));
  put_f64(f.bytes, p.xc);
  put_f64(f.bytes, p.yc);
  put_u16(f.bytes, p.chno);
  return f;
}

BeaconNodePacket decode_beacon(std::span<const std::uint8_t> frame) {
  check_frame(frame, FrameKind::kBeacon, kBeaconFrameSize);
  BeaconNodePacket p{get_f64(frame, 1), get_f64(frame, 9), get_u16(frame, 17)};
  check_decoded(p.xc, p.yc);
  return p;
}

WireFrame encode_cluster_head(const ClusterHeadNodePacket& p) {
  require_finite(p.xc, p.yc);
  WireFrame f;
  f.bytes.reserve(kClusterHeadFrameSize);
  f.bytes.push_back(static_cast<std::uint8_t>(FrameKind::kClusterHead));
  put_f64(f.bytes, p.xc);
  put_f64(f.bytes, p.yc);
  put_u16(f.bytes, p.qno);
  put_u16(f.bytes, p.aa);
  return f;
}

ClusterHeadNodePacket decode_cluster_head(std::span<const std::uint8_t> frame) {
  check_frame(frame, FrameKind::kClusterHead, kClusterHeadFrameSize);
  ClusterHeadNodePacket p{get_f64(frame, 1), get_f64(frame, 9), get_u16(frame, 17), get_u16(frame, 19)};
  check_decoded(p.xc, p.yc);
  return p;
}

FrameKind peek_kind(std::span<const std::uint8_t> frame) {
  if (frame.empty()) throw Error(ErrorKind::kTruncation, "empty frame");
  switch (frame[0]) {
    case static_cast<std::uint8_t>(FrameKind::kBeacon): return FrameKind::kBeacon;
    case static_cast<std::uint8_t>(FrameKind::kClusterHead): return FrameKind::kClusterHead;
    default: throw Error(ErrorKind::kKindMismatch, "unknown frame tag " + std::to_string(frame[0]));
  }
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorKind::kCorruption, std::string("bad hex digit '") + c + "'");
  };
  if (hex.size() % 2 != 0) throw Error(ErrorKind::kTruncation, "odd-length hex string");
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  }
  return out;
}

}  // namespace wsan::protocol
