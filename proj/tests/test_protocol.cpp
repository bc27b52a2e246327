#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "wsan/error.hpp"
#include "wsan/protocol.hpp"

using namespace wsan;
using namespace wsan::protocol;

namespace {

template <typename F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected wsan::Error");
  return ErrorKind::kValidation;
}

double random_finite(std::mt19937_64& rng) {
  while (true) {
    const double v = std::bit_cast<double>(rng());
    if (std::isfinite(v)) return v;
  }
}

}  // namespace

TEST_CASE("beacon frame layout") {
  CHECK(to_hex(encode_beacon({0, 0, 0}).bytes) == "01" + std::string(36, '0'));
  // 1.0 is 0x3FF0000000000000 in IEEE-754 binary64.
  CHECK(to_hex(encode_beacon({1.0, 0, 2}).bytes) == "01000000000000f03f00000000000000000200");
  CHECK(encode_beacon({123.25, -7.5, 65535}).bytes.size() == kBeaconFrameSize);
}

TEST_CASE("cluster head frame layout") {
  CHECK(to_hex(encode_cluster_head({0, 0, 0, 0}).bytes) == "02" + std::string(40, '0'));
  const ClusterHeadNodePacket p{350, 120, 1, 1};
  const WireFrame f = encode_cluster_head(p);
  CHECK(f.bytes.size() == kClusterHeadFrameSize);
  CHECK(decode_cluster_head(f) == p);
  CHECK(encode_cluster_head(decode_cluster_head(f)) == f);
  // The codec is layout-only: an impossible quadrant still round-trips.
  CHECK(decode_cluster_head(encode_cluster_head({1, 2, 7, 9})).qno == 7);
}

TEST_CASE("decode rejects malformed frames") {
  const WireFrame beacon = encode_beacon({10, 20, 3});
  const WireFrame ch = encode_cluster_head({10, 20, 3, 3});

  CHECK(error_kind_of([&] { decode_beacon(ch); }) == ErrorKind::kKindMismatch);
  CHECK(error_kind_of([&] { decode_cluster_head(beacon); }) == ErrorKind::kKindMismatch);
  CHECK(error_kind_of([&] { decode_beacon(std::span(beacon.bytes).first(18)); }) == ErrorKind::kTruncation);
  CHECK(error_kind_of([&] { decode_beacon(std::span<const std::uint8_t>{}); }) == ErrorKind::kTruncation);

  auto longer = beacon.bytes;
  longer.push_back(0);
  CHECK(error_kind_of([&] { decode_beacon(longer); }) == ErrorKind::kTruncation);

  auto nan = beacon.bytes;
  const auto bits = std::bit_cast<std::uint64_t>(std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < 8; ++i) nan[1 + i] = static_cast<std::uint8_t>(bits >> (8 * i));
  CHECK(error_kind_of([&] { decode_beacon(nan); }) == ErrorKind::kCorruption);

  CHECK(error_kind_of([] { encode_beacon({std::numeric_limits<double>::infinity(), 0, 0}); }) ==
        ErrorKind::kEncoding);
  CHECK(error_kind_of([] { encode_cluster_head({0, std::nan(""), 0, 0}); }) == ErrorKind::kEncoding);

  // Every other length for either tag is an error, never a packet.
  for (std::size_t len = 0; len <= 40; ++len) {
    std::vector<std::uint8_t> b(len, 0), c(len, 0);
    if (len > 0) {
      b[0] = 0x01;
      c[0] = 0x02;
    }
    if (len != kBeaconFrameSize) CHECK_THROWS_AS(decode_beacon(b), Error);
    if (len != kClusterHeadFrameSize) CHECK_THROWS_AS(decode_cluster_head(c), Error);
  }
}

TEST_CASE("frame kind peek") {
  CHECK(peek_kind(encode_beacon({}).bytes) == FrameKind::kBeacon);
  CHECK(peek_kind(encode_cluster_head({}).bytes) == FrameKind::kClusterHead);
  const std::vector<std::uint8_t> unknown{0x07};
  CHECK(error_kind_of([&] { peek_kind(unknown); }) == ErrorKind::kKindMismatch);
}

TEST_CASE("round trip over random packets") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100000; ++i) {
    const BeaconNodePacket b{random_finite(rng), random_finite(rng), static_cast<std::uint16_t>(rng())};
    const WireFrame fb = encode_beacon(b);
    const BeaconNodePacket b2 = decode_beacon(fb);
    REQUIRE(std::bit_cast<std::uint64_t>(b2.xc) == std::bit_cast<std::uint64_t>(b.xc));
    REQUIRE(std::bit_cast<std::uint64_t>(b2.yc) == std::bit_cast<std::uint64_t>(b.yc));
    REQUIRE(b2.chno == b.chno);
    REQUIRE(encode_beacon(b2) == fb);

    const ClusterHeadNodePacket c{random_finite(rng), random_finite(rng), static_cast<std::uint16_t>(rng()),
                                  static_cast<std::uint16_t>(rng())};
    const WireFrame fc = encode_cluster_head(c);
    REQUIRE(encode_cluster_head(decode_cluster_head(fc)) == fc);
    REQUIRE(encode_cluster_head(c) == fc);
  }
}

TEST_CASE("hex helpers") {
  const std::vector<std::uint8_t> bytes{0x00, 0x7f, 0x80, 0xff};
  CHECK(to_hex(bytes) == "007f80ff");
  CHECK(from_hex("007F80ff") == bytes);
  CHECK_THROWS_AS(from_hex("abc"), Error);
  CHECK_THROWS_AS(from_hex("zz"), Error);
}
