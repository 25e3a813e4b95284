#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <stackmec/channel.hpp>
#include <stackmec/rng.hpp>
#include <stackmec/scenario.hpp>

#include "oracles.hpp"

using namespace stackmec;

TEST_CASE("distance covers the vertical and the 3-4-5 cases") {
  UeProfile ue = oracle::make_ue(0, 0.0, 0.0, 10, 0.1, 0.1, 0.3, 40);
  UavProfile uav = oracle::make_uav(0, 0.0, 0.0, 100.0, 1e9, 0.1, 100, 0.8, 5e5, 200);
  CHECK(distance_m(ue, uav) == doctest::Approx(100.0).epsilon(1e-15));

  ue.position = {3.0, 4.0, 0.0};
  uav.position = {0.0, 0.0, 0.0};  // height collapsed for the planar check
  CHECK(distance_m(ue, uav) == doctest::Approx(5.0).epsilon(1e-15));

  ue.position = {30.0, 40.0, 0.0};
  uav.position = {0.0, 0.0, 120.0};
  CHECK(distance_m(ue, uav) == doctest::Approx(130.0).epsilon(1e-15));
}

TEST_CASE("gain is the inverse power law") {
  CHECK(channel_gain(10.0, 2.0) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(channel_gain(2.0, 3.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(channel_gain(1.0, 2.0) == 1.0);
}

TEST_CASE("a unit geometry gives rate B*log2(4)") {
  // SNR q*d^-rho/sigma^2 = 3 exactly: log2(1+3) = 2.
  UeProfile ue = oracle::make_ue(0, 0, 0, 10, 3.0, 0.1, 0.3, 40);
  UavProfile uav = oracle::make_uav(0, 0, 0, 1.0, 1e9, 0.1, 100, 0.8, 5e5, 200);
  ChannelConstants c;
  c.bandwidth_hz = 1e6;
  c.noise_power_w = 1.0;
  CHECK(uplink_rate_bps(ue, uav, c) == doctest::Approx(2e6).epsilon(1e-12));
}

TEST_CASE("zero transmit power silences the link") {
  UeProfile ue = oracle::make_ue(0, 0, 0, 10, 0.0, 0.1, 0.3, 40);
  UavProfile uav = oracle::make_uav(0, 0, 0, 100.0, 1e9, 0.1, 100, 0.8, 5e5, 200);
  CHECK(uplink_rate_bps(ue, uav, ChannelConstants{}) == 0.0);
}

TEST_CASE("default-constants rate matches the high-precision oracle") {
  const ChannelConstants c;
  UeProfile ue = oracle::make_ue(0, 0, 0, 10, 0.1, 0.1, 0.3, 40);
  UavProfile uav = oracle::make_uav(0, 0, 0, 100.0, 1e9, 0.1, 100, 0.8, 5e5, 200);

  std::mt19937_64 gen(2024);
  for (int k = 0; k < 500; ++k) {
    ue.position = {uniform_in(gen, 0, 1000), uniform_in(gen, 0, 1000), 0.0};
    uav.position = {uniform_in(gen, 0, 1000), uniform_in(gen, 0, 1000), 100.0};
    const double d = distance_m(ue, uav);
    const double expected = static_cast<double>(oracle::rate_bps(
        ue.transmit_power_w, d, c.path_loss_exponent, c.bandwidth_hz,
        c.noise_power_w));
    CHECK(uplink_rate_bps(ue, uav, c) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("rate decreases with distance") {
  const ChannelConstants c;
  UeProfile ue = oracle::make_ue(0, 0, 0, 10, 0.1, 0.1, 0.3, 40);
  std::mt19937_64 gen(7);
  for (int k = 0; k < 200; ++k) {
    double d1 = uniform_in(gen, 1.0, 2000.0);
    double d2 = uniform_in(gen, 1.0, 2000.0);
    if (d1 > d2) std::swap(d1, d2);
    if (d1 == d2) continue;
    UavProfile near = oracle::make_uav(0, 0, 0, d1, 1e9, 0.1, 100, 0.8, 5e5, 200);
    UavProfile far = oracle::make_uav(1, 0, 0, d2, 1e9, 0.1, 100, 0.8, 5e5, 200);
    CHECK(uplink_rate_bps(ue, near, c) > uplink_rate_bps(ue, far, c));
  }
}

TEST_CASE("rate scales as expected with bandwidth and noise") {
  UeProfile ue = oracle::make_ue(0, 0, 0, 10, 0.1, 0.1, 0.3, 40);
  UavProfile uav = oracle::make_uav(0, 0, 0, 150.0, 1e9, 0.1, 100, 0.8, 5e5, 200);
  ChannelConstants c;
  const double base = uplink_rate_bps(ue, uav, c);

  ChannelConstants wide = c;
  wide.bandwidth_hz *= 2.0;
  CHECK(uplink_rate_bps(ue, uav, wide) == doctest::Approx(2.0 * base).epsilon(1e-15));

  ChannelConstants noisy = c;
  noisy.noise_power_w *= 2.0;
  CHECK(uplink_rate_bps(ue, uav, noisy) < base);
}

TEST_CASE("link_rate mirrors its scalar pieces") {
  const ChannelConstants c;
  const UeProfile ue = oracle::make_ue(3, 10, 20, 10, 0.1, 0.1, 0.3, 40);
  const UavProfile uav = oracle::make_uav(1, 400, 250, 100, 1e9, 0.1, 100, 0.8, 5e5, 200);
  const LinkRate lr = link_rate(ue, uav, c);
  CHECK(lr.ue_id == 3);
  CHECK(lr.uav_id == 1);
  CHECK(lr.distance_m == distance_m(ue, uav));
  CHECK(lr.gain == channel_gain(lr.distance_m, c.path_loss_exponent));
  CHECK(lr.rate_bps == uplink_rate_bps(ue, uav, c));
}

TEST_CASE("rate against a raw position matches the profile overload") {
  const ChannelConstants c;
  const UeProfile ue = oracle::make_ue(0, 10, 20, 10, 0.1, 0.1, 0.3, 40);
  const UavProfile uav = oracle::make_uav(0, 400, 250, 100, 1e9, 0.1, 100, 0.8, 5e5, 200);
  CHECK(uplink_rate_bps(ue, uav.position, c) == uplink_rate_bps(ue, uav, c));
}
