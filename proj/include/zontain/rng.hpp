#ifndef ZONTAIN_RNG_HPP_
#define ZONTAIN_RNG_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace zontain {

// All randomness in the library flows from a single 64-bit seed through the
// counter-based derivation below: derive(seed, instance, trial) yields an
// independent stream per (instance, trial) pair, so serial and parallel runs
// of the same grid produce identical output. The core mixer is SplitMix64;
// no std:: distributions are used anywhere (their output is not pinned by the
// standard), so streams are bit-identical across platforms.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child seed from (seed, a, b). Used as the counter-based stream
// split: a is typically an instance index, b a trial index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s = h ^ (a * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL);
    h = splitmix64(s);
    s = h ^ (b * 0xa24baed4963ee407ULL + 0x9fb21c651e98df25ULL);
    return splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Standard normal via Box-Muller (deterministic, no cached spare).
    double normal() {
        double u1 = u01();
        while (u1 <= 0.0) u1 = u01();
        double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    Eigen::VectorXd gaussian_vector(Eigen::Index d) {
        Eigen::VectorXd v(d);
        for (Eigen::Index i = 0; i < d; ++i) v(i) = normal();
        return v;
    }

    // Uniform direction on the unit sphere S^{d-1}.
    Eigen::VectorXd sphere_direction(Eigen::Index d) {
        Eigen::VectorXd v = gaussian_vector(d);
        double n = v.norm();
        while (n < 1e-300) {
            v = gaussian_vector(d);
            n = v.norm();
        }
        return v / n;
    }

    // Uniform sign vector in {-1, +1}^n.
    Eigen::VectorXd sign_vector(Eigen::Index n) {
        Eigen::VectorXd y(n);
        std::uint64_t bits = 0;
        int avail = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (avail == 0) {
                bits = next_u64();
                avail = 64;
            }
            y(i) = (bits & 1ULL) ? 1.0 : -1.0;
            bits >>= 1;
            --avail;
        }
        return y;
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection to avoid modulo bias.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

  private:
    std::uint64_t state_;
};

}  // namespace zontain

#endif  // ZONTAIN_RNG_HPP_
