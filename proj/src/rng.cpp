#include "spheroid/rng.hpp"

#include <cmath>
#include <cstdlib>

namespace spheroid::rng {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline double to_unit(std::uint32_t x) {
  // (x + 1/2) * 2^-32, strictly inside (0, 1)
  return (static_cast<double>(x) + 0.5) * 2.3283064365386962890625e-10;
}

// Ziggurat tables for the standard normal, 128 layers.
struct Ziggurat {
  static constexpr double kR = 3.442619855899;
  std::array<std::uint32_t, 128> k{};
  std::array<double, 128> w{};
  std::array<double, 128> f{};

  Ziggurat() {
    constexpr double m1 = 2147483648.0;
    constexpr double vn = 9.91256303526217e-3;
    double dn = kR;
    double tn = dn;
    const double q = vn / std::exp(-0.5 * dn * dn);
    k[0] = static_cast<std::uint32_t>((dn / q) * m1);
    k[1] = 0;
    w[0] = q / m1;
    w[127] = dn / m1;
    f[0] = 1.0;
    f[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
      k[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
      tn = dn;
      f[i] = std::exp(-0.5 * dn * dn);
      w[i] = dn / m1;
    }
  }
};

const Ziggurat& ziggurat() {
  static const Ziggurat z;
  return z;
}

// Extra 32-bit words for the rare ziggurat rejections, drawn from counter
// blocks that the fast path never touches.
class Spill {
 public:
  Spill(const Philox4x32::Key& key, std::uint32_t step, std::uint64_t particle)
      : key_(key), step_(step), particle_(particle) {}

  std::uint32_t next() {
    if (used_ == 4) {
      block_ = Philox4x32::generate({step_, 0x100u + n_blocks_++,
                                     static_cast<std::uint32_t>(particle_),
                                     static_cast<std::uint32_t>(particle_ >> 32)},
                                    key_);
      used_ = 0;
    }
    return block_[used_++];
  }
  double uniform() { return to_unit(next()); }

 private:
  Philox4x32::Key key_;
  std::uint32_t step_;
  std::uint64_t particle_;
  Philox4x32::Counter block_{};
  std::uint32_t used_ = 4;
  std::uint32_t n_blocks_ = 0;
};

double normal_slow(std::int32_t hz, std::uint32_t iz, Spill& spill) {
  const Ziggurat& z = ziggurat();
  for (;;) {
    const double x = hz * z.w[iz];
    if (iz == 0) {
      double xt = 0.0;
      double y = 0.0;
      do {
        xt = -std::log(spill.uniform()) / Ziggurat::kR;
        y = -std::log(spill.uniform());
      } while (y + y < xt * xt);
      return hz > 0 ? Ziggurat::kR + xt : -Ziggurat::kR - xt;
    }
    if (z.f[iz] + spill.uniform() * (z.f[iz - 1] - z.f[iz]) < std::exp(-0.5 * x * x)) return x;
    hz = static_cast<std::int32_t>(spill.next());
    iz = spill.next() & 127u;
    if (static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(hz))) < z.k[iz])
      return hz * z.w[iz];
  }
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter c, Key k) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

ParticleStream::ParticleStream(std::uint64_t seed, std::uint64_t particle)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      particle_(particle) {}

std::array<double, 4> ParticleStream::uniforms(std::uint32_t step, Purpose purpose) const {
  const auto out = Philox4x32::generate(
      {step, static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(particle_),
       static_cast<std::uint32_t>(particle_ >> 32)},
      key_);
  return {to_unit(out[0]), to_unit(out[1]), to_unit(out[2]), to_unit(out[3])};
}

std::array<double, 3> ParticleStream::normals(std::uint32_t step) const {
  // Words 0..2 carry the signed values, word 3 the three 7-bit layer indices.
  const auto b = Philox4x32::generate(
      {step, static_cast<std::uint32_t>(Purpose::Displacement),
       static_cast<std::uint32_t>(particle_), static_cast<std::uint32_t>(particle_ >> 32)},
      key_);
  const Ziggurat& z = ziggurat();
  std::array<double, 3> out{};
  bool spilled = false;
  for (int i = 0; i < 3; ++i) {
    const auto hz = static_cast<std::int32_t>(b[i]);
    const std::uint32_t iz = (b[3] >> (7 * i)) & 127u;
    if (static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(hz))) < z.k[iz]) {
      out[i] = hz * z.w[iz];
    } else {
      spilled = true;
      out[i] = 0.0;
    }
  }
  if (spilled) {
    Spill spill(key_, step, particle_);
    for (int i = 0; i < 3; ++i) {
      const auto hz = static_cast<std::int32_t>(b[i]);
      const std::uint32_t iz = (b[3] >> (7 * i)) & 127u;
      if (!(static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(hz))) < z.k[iz]))
        out[i] = normal_slow(hz, iz, spill);
    }
  }
  return out;
}

double ParticleStream::uniform(std::uint32_t step, Purpose purpose) const {
  return uniforms(step, purpose)[0];
}

}  // namespace spheroid::rng
