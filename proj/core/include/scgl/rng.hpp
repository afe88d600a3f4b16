#pragma once

#include <cstdint>

namespace scgl {

// Standard-normal quantile (Wichura's PPND16 rational approximation),
// accurate to ~1e-15 over (0, 1).
double normal_quantile(double p);

// Counter-based splittable generator. Output i of a stream is
//
//   mix64(key + i * 0x9E3779B97F4A7C15),  key = mix64(mix64(seed + gamma) ^
//                                               (stream_id * 0xBF58476D1CE4E5B9 + C)),
//
// with mix64 the SplitMix64 finalizer, so samples depend only on
// (seed, stream_id, counter): identical across platforms and thread schedules,
// and streams can be handed out by value. Gaussians come from the inverse CDF,
// two raw draws per complex sample.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0);

  std::uint64_t next_u64();
  double next_uniform();  // open interval (0, 1)
  double next_normal();   // N(0, 1)

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
  std::uint64_t key_;
};

}  // namespace scgl
