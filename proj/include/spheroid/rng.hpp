#pragma once

/// @file rng.hpp
/// @brief Philox4x32-10 counter-based generator and per-particle streams.
///
/// A draw is a pure function of (seed, particle index, step, purpose), so a
/// particle's trajectory does not depend on which worker simulates it or in
/// what order.

#include <array>
#include <cstdint>

namespace spheroid::rng {

struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

enum class Purpose : std::uint32_t { Displacement = 0, Absorption = 1 };

class ParticleStream {
 public:
  ParticleStream(std::uint64_t seed, std::uint64_t particle);

  [[nodiscard]] std::uint64_t id() const { return particle_; }
  /// Four uniforms in (0, 1).
  [[nodiscard]] std::array<double, 4> uniforms(std::uint32_t step, Purpose purpose) const;
  /// Three independent standard normals (ziggurat).
  [[nodiscard]] std::array<double, 3> normals(std::uint32_t step) const;
  [[nodiscard]] double uniform(std::uint32_t step, Purpose purpose) const;

 private:
  Philox4x32::Key key_;
  std::uint64_t particle_;
};

}  // namespace spheroid::rng
