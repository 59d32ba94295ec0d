#ifndef SYSID_RNG_HPP
#define SYSID_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace sysid {

/// Counter-based Philox4x32-10 generator. A stream is addressed by
/// (seed, stream_id), so independent noise channels can be drawn from one
/// seed without any ordering coupling between them. Output is identical
/// across platforms and worker counts.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream_id)),
        stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

  std::array<std::uint32_t, 4> block(std::uint64_t counter) const {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(counter),
        static_cast<std::uint32_t>(counter >> 32), stream_lo_, stream_hi_};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ULL * ctr[0];
      const std::uint64_t p1 = 0xCD9E8D57ULL * ctr[2];
      const std::array<std::uint32_t, 4> next = {
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
          static_cast<std::uint32_t>(p0)};
      ctr = next;
      key[0] += 0x9E3779B9U;
      key[1] += 0xBB67AE85U;
    }
    return ctr;
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_, stream_hi_;
};

/// Sequential standard-normal stream over a Philox counter (Box-Muller).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(seed, stream_id) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const auto words = engine_.block(counter_++);
    // uniforms in (0, 1]: 53-bit mantissa, shifted away from zero
    const std::uint64_t a =
        (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    const std::uint64_t b =
        (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
    const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Eigen::VectorXd vector(Eigen::Index dim) {
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = next();
    return v;
  }

 private:
  Philox engine_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// FNV-1a over a list of 64-bit words; used to derive per-cell seeds so that
/// extending a sweep never perturbs existing cells.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t w : words) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace sysid

#endif  // SYSID_RNG_HPP
