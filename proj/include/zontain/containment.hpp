#ifndef ZONTAIN_CONTAINMENT_HPP_
#define ZONTAIN_CONTAINMENT_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zontain/body.hpp"
#include "zontain/sampler.hpp"
#include "zontain/sparsify.hpp"
#include "zontain/zonotope.hpp"

namespace zontain {

/// Trial budget multiplier for the Naszodi sampler. A repo default, not a
/// theorem constant.
inline constexpr double kNaszodiSampleConstant = 8.0;

struct GapConfig {
    std::int64_t trials = 0;  // 0 = auto: min(10^4, 16 n'^2)
    std::uint64_t seed = 0;
    double sparsify_epsilon = 1.0 / 3.0;  // so Z' inside Z inside 2 Z' after rescale
    std::optional<double> scale_override; // replaces the 2 sqrt(n'/ln n') factor
    double exponent_c = 3.0;              // diagnostic constant C of the witness-rate lemma
    bool delta_modular = false;           // route through the BSS pipeline
    std::optional<double> delta;          // Delta when asserted by the caller
};

/// Contained is a probabilistic assertion; Witness carries a certificate:
/// the point fails membership in Q and lies in gauge_bound * Z.
struct ContainmentVerdict {
    bool contained = true;
    std::int64_t trials_run = 0;
    std::uint64_t queries = 0;
    double gauge_bound = 0.0;
    Eigen::Index n_sparsified = 0;
    Eigen::VectorXd witness_point;     // empty unless a witness was found
    std::int64_t trial_index = -1;

    std::string to_json() const;
};

struct OptBracket {
    double alpha_low = 0.0;   // all tested points of alpha_low * Z were inside Q
    double alpha_high = 0.0;  // certified: witness shows alpha_high * Z not inside Q
    double ratio = 0.0;
    double gauge_bound = 0.0;         // factor of the probe that set alpha_high
    Eigen::VectorXd witness_point;
    bool no_witness_found = false;    // degenerate bracket (alpha_high = +inf)

    std::string to_json() const;
};

struct SplitStressResult {
    double empirical = 0.0;
    double hoeffding_bound = 0.0;
    std::int64_t samples = 0;
};

struct RecommendedT {
    std::int64_t value = 0;
    bool overflow = false;  // value exceeded 2^62; reduce d or raise s
};

struct PolarCheckReport {
    double out_rad = 0.0;
    double r = 0.0;
    bool containment_holds = false;  // OutRad <= r, equivalently K inside r^2 Q
    int num_dirs = 0;
    int num_violations = 0;          // sampled extreme points with h_P(x) > r^2
    double max_gauge = 0.0;          // max over sampled x of h_P(x)
    std::vector<bool> direction_pass;
    Eigen::VectorXd norm_witness;    // vector in P with norm > r when violated
    bool passes = false;             // both directions of the equivalence agree

    std::string to_json() const;
};

/// Algorithm: sparsify Z to Z' (rescaled so Z' lies inside Z), then for each
/// trial draw y in {-1,+1}^{n'} and test x = 2 sqrt(n'/ln n') W'y against the
/// oracle. A failing x certifies gauge_bound * Z not inside Q.
ContainmentVerdict hypercube_gap(const Zonotope& z, const MembershipOracle& q,
                                 const GapConfig& cfg);

enum class AnticoncentrationMode { Exhaustive, Sampled };

/// Fraction of y in {-1,+1}^n with a'y >= ||a||_1 sqrt(ln n / n).
double anticoncentration_fraction(const Eigen::VectorXd& a, AnticoncentrationMode mode,
                                  std::int64_t samples = 0, std::uint64_t seed = 0);

/// The split-generator stress test: W = (d/n)(e_1 ... e_1, ..., e_d ... e_d)
/// generates the unit box; estimates P[<W y, 1> >= d/s] and returns it with
/// the Hoeffding bound exp(-n / (2 s^2)).
SplitStressResult split_generator_stress(int d, int n, double s, std::int64_t samples,
                                         std::uint64_t seed);

/// Draws T uniform samples from K; any s*x outside Q certifies s K not inside
/// Q. All inside: K inside Q asserted with high probability at the
/// recommended T.
ContainmentVerdict naszodi_gap(const MembershipOracle& k, const MembershipOracle& q,
                               double s, std::int64_t trials, const WalkConfig& cfg);

/// ceil(C_N d (1 - 1/s)^{-d} max(1, ln(1/(1 - 1/s)))).
RecommendedT recommended_T(int d, double s);

/// Binary search over scaled hypercube_gap probes bracketing the optimal
/// containment scale of Eq.-style max{alpha : alpha Z inside Q}.
OptBracket opt_containment_search(const Zonotope& z, const MembershipOracle& q,
                                  const GapConfig& cfg, double rel_tol);

/// Numerical check of the circumradius-to-containment reduction
/// OutRad_2(P) <= r  iff  P inside r^2 polar(P), for the exactly computable
/// body variants (Lp ball, axis box, ellipsoid).
PolarCheckReport polar_reduction_check(const BodySpec& p, double r, int dirs,
                                       std::uint64_t seed);

}  // namespace zontain

#endif  // ZONTAIN_CONTAINMENT_HPP_
