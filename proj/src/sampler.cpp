#include "zontain/sampler.hpp"

#include <cmath>

#include "zontain/errors.hpp"
#include "zontain/rng.hpp"

namespace zontain {

namespace {

// Distance from x to the boundary along u: exponential growth up to 2R, then
// 60 bisection rounds. Returns the inside endpoint; verifies the oracle is
// monotone along the ray at chord_tol resolution.
double chord_extent(const MembershipOracle& body, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& u, double R, double chord_tol) {
    double lo = 0.0;
    double t = R / 8.0;
    const double cap = 2.0 * R;
    bool found_outside = false;
    double hi = cap;
    while (t <= cap) {
        if (body.membership(x + t * u)) {
            lo = t;
            t *= 2.0;
        } else {
            hi = t;
            found_outside = true;
            break;
        }
    }
    if (!found_outside) {
        hi = cap * (1.0 + 1e-6) + chord_tol;
        if (body.membership(x + hi * u))
            throw OracleInconsistent(
                "hit_and_run: membership persists beyond the certified radius 2R");
    }
    for (int round = 0; round < 60; ++round) {
        double mid = 0.5 * (lo + hi);
        if (body.membership(x + mid * u))
            lo = mid;
        else
            hi = mid;
    }
    if (body.membership(x + (lo + chord_tol) * u))
        throw OracleInconsistent("hit_and_run: membership non-monotone along a chord");
    return lo;
}

}  // namespace

WalkConfig WalkConfig::resolved(Eigen::Index d, double R) const {
    WalkConfig c = *this;
    if (c.burn_in == -1) c.burn_in = 1000 + 50 * static_cast<int>(d);
    if (c.thin == -1) c.thin = 2 * static_cast<int>(d);
    if (c.chord_tol == -1.0) c.chord_tol = 1e-9 * R;
    if (c.burn_in < 0 || c.thin < 1 || !(c.chord_tol > 0.0))
        throw ConfigError("WalkConfig: burn_in >= 0, thin >= 1, chord_tol > 0 required");
    return c;
}

std::vector<Eigen::VectorXd> hit_and_run(const MembershipOracle& body,
                                         const Eigen::VectorXd& start, int count,
                                         const WalkConfig& cfg_in) {
    const Eigen::Index d = body.dim();
    if (start.size() != d) throw DimensionMismatch("hit_and_run: start dimension");
    if (count < 0) throw ConfigError("hit_and_run: count must be nonnegative");

    Roundness rd = body.roundness();
    WalkConfig cfg = cfg_in.resolved(d, rd.R);

    // Strictly interior start: the point itself and a slightly scaled copy
    // must both pass membership (catches boundary starts along the ray).
    if (!body.membership(start) || !body.membership(start * (1.0 + 1e-6)))
        throw StartNotInterior("hit_and_run: start is not strictly interior");

    Rng rng(derive_seed(cfg.seed, 0x8a3));
    Eigen::VectorXd x = start;
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);

    const long total = static_cast<long>(cfg.burn_in) + static_cast<long>(count) * cfg.thin;
    for (long step = 0; step < total; ++step) {
        Eigen::VectorXd u = rng.sphere_direction(d);
        double t_pos = chord_extent(body, x, u, rd.R, cfg.chord_tol);
        double t_neg = chord_extent(body, x, -u, rd.R, cfg.chord_tol);
        x += rng.uniform(-t_neg, t_pos) * u;
        if (step >= cfg.burn_in && (step - cfg.burn_in + 1) % cfg.thin == 0)
            out.push_back(x);
    }
    return out;
}

std::vector<Eigen::VectorXd> hit_and_run(const MembershipOracle& body, int count,
                                         const WalkConfig& cfg) {
    return hit_and_run(body, Eigen::VectorXd::Zero(body.dim()), count, cfg);
}

UniformityReport uniformity_diagnostics(const std::vector<Eigen::VectorXd>& points,
                                        const MembershipOracle& body) {
    if (points.empty()) throw ConfigError("uniformity_diagnostics: no points");
    const Eigen::Index d = body.dim();

    UniformityReport rep;
    rep.num_points = points.size();
    rep.mean = Eigen::VectorXd::Zero(d);
    rep.variance = Eigen::VectorXd::Zero(d);

    std::size_t pass = 0;
    std::vector<std::size_t> orthant_counts(d <= 4 ? (1u << d) : 0, 0);
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionMismatch("uniformity_diagnostics: point dimension");
        rep.mean += p;
        if (body.membership(p)) ++pass;
        if (d <= 4) {
            unsigned idx = 0;
            for (Eigen::Index k = 0; k < d; ++k)
                if (p(k) > 0.0) idx |= 1u << k;
            ++orthant_counts[idx];
        }
    }
    rep.mean /= static_cast<double>(points.size());
    for (const auto& p : points)
        rep.variance += (p - rep.mean).cwiseAbs2();
    rep.variance /= static_cast<double>(points.size());
    rep.membership_pass_fraction = static_cast<double>(pass) / points.size();
    for (auto c : orthant_counts)
        rep.orthant_fractions.push_back(static_cast<double>(c) / points.size());
    return rep;
}

}  // namespace zontain
