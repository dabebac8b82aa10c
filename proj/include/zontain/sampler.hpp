#ifndef ZONTAIN_SAMPLER_HPP_
#define ZONTAIN_SAMPLER_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "zontain/body.hpp"

namespace zontain {

struct WalkConfig {
    int burn_in = -1;        // -1: auto 1000 + 50 d
    int thin = -1;           // -1: auto 2 d
    std::uint64_t seed = 0;
    double chord_tol = -1.0; // -1: auto 1e-9 * R

    WalkConfig resolved(Eigen::Index d, double R) const;
};

/// Uniform sampling from the oracle-described body by hit-and-run: uniform
/// random direction, chord endpoints located by bisection on the membership
/// oracle, uniform point on the chord. Fully determined by the seed.
std::vector<Eigen::VectorXd> hit_and_run(const MembershipOracle& body,
                                         const Eigen::VectorXd& start, int count,
                                         const WalkConfig& cfg);

/// Convenience overload starting at the origin.
std::vector<Eigen::VectorXd> hit_and_run(const MembershipOracle& body, int count,
                                         const WalkConfig& cfg);

struct UniformityReport {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
    std::vector<double> orthant_fractions;  // 2^d entries for d <= 4, else empty
    double membership_pass_fraction = 0.0;
    std::size_t num_points = 0;
};

UniformityReport uniformity_diagnostics(const std::vector<Eigen::VectorXd>& points,
                                        const MembershipOracle& body);

}  // namespace zontain

#endif  // ZONTAIN_SAMPLER_HPP_
