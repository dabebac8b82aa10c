#include "zontain/containment.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "zontain/errors.hpp"
#include "zontain/geometry.hpp"
#include "zontain/rng.hpp"

namespace zontain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

// Algorithm factor 2 sqrt(n' / ln n'); the log is clamped below at 1 so the
// n' = 2 case does not inflate the factor.
double gap_factor(Eigen::Index n_sparsified) {
    double ln_n = std::max(std::log(static_cast<double>(n_sparsified)), 1.0);
    return 2.0 * std::sqrt(static_cast<double>(n_sparsified) / ln_n);
}

struct SparsifiedInstance {
    Eigen::MatrixXd w;          // rescaled so Z(w) is claimed inside Z
    Eigen::Index n = 0;
};

SparsifiedInstance sparsify_for_gap(const Zonotope& z, const GapConfig& cfg) {
    const double eps = cfg.sparsify_epsilon;
    if (!(eps > 0.0 && eps <= 0.5))
        throw EpsilonOutOfRange("hypercube_gap: sparsify_epsilon must lie in (0, 1/2]");

    SparsificationResult result;
    double shrink;
    if (cfg.delta_modular) {
        double delta;
        if (cfg.delta.has_value()) {
            delta = *cfg.delta;
        } else {
            if (binomial(z.count(), z.dim()) > 200000)
                throw ConfigError(
                    "hypercube_gap: supply delta explicitly, brute-force scan too large");
            delta = delta_of(z.generators(), 200000).max_abs_det;
        }
        result = sparsify_delta_modular(z.generators(), eps, delta);
        shrink = 1.0 / (delta * delta * (1.0 + eps) * (1.0 + eps));
    } else {
        result = sparsify_lewis(z.generators(), eps, cfg.seed);
        shrink = 1.0 / (1.0 + eps);
    }
    SparsifiedInstance inst;
    inst.w = shrink * result.apply(z.generators());
    inst.n = inst.w.cols();
    return inst;
}

}  // namespace

std::string ContainmentVerdict::to_json() const {
    nlohmann::json j;
    j["verdict"] = contained ? "contained" : "witness";
    j["trials_run"] = trials_run;
    j["membership_queries"] = queries;
    j["gauge_bound"] = gauge_bound;
    j["n_sparsified"] = n_sparsified;
    if (!contained) {
        j["witness_point"] = vector_to_json(witness_point);
        j["trial_index"] = trial_index;
    }
    return j.dump(2);
}

std::string OptBracket::to_json() const {
    nlohmann::json j;
    j["alpha_low"] = alpha_low;
    j["alpha_high"] = no_witness_found ? nlohmann::json() : nlohmann::json(alpha_high);
    j["ratio"] = no_witness_found ? nlohmann::json() : nlohmann::json(ratio);
    j["gauge_bound"] = gauge_bound;
    j["no_witness_found"] = no_witness_found;
    if (witness_point.size() > 0) j["witness_point"] = vector_to_json(witness_point);
    return j.dump(2);
}

std::string PolarCheckReport::to_json() const {
    nlohmann::json j;
    j["out_rad"] = out_rad;
    j["r"] = r;
    j["containment_holds"] = containment_holds;
    j["num_dirs"] = num_dirs;
    j["num_violations"] = num_violations;
    j["max_gauge"] = max_gauge;
    j["passes"] = passes;
    if (norm_witness.size() > 0) j["norm_witness"] = vector_to_json(norm_witness);
    return j.dump(2);
}

ContainmentVerdict hypercube_gap(const Zonotope& z, const MembershipOracle& q,
                                 const GapConfig& cfg) {
    if (!z.full_rank()) throw RankDeficient("hypercube_gap: generators do not span R^d");
    if (z.dim() != q.dim()) throw DimensionMismatch("hypercube_gap: Z and Q dimensions");

    SparsifiedInstance inst = sparsify_for_gap(z, cfg);
    if (inst.n < 2) throw DegenerateLog("hypercube_gap: sparsified to fewer than 2 generators");

    const double factor = cfg.scale_override.value_or(gap_factor(inst.n));
    const std::int64_t trials =
        cfg.trials > 0 ? cfg.trials
                       : std::min<std::int64_t>(10000, 16 * inst.n * inst.n);

    const std::uint64_t queries_before = q.queries();
    ContainmentVerdict verdict;
    verdict.gauge_bound = factor;
    verdict.n_sparsified = inst.n;

    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        Eigen::VectorXd y = rng.sign_vector(inst.n);
        Eigen::VectorXd x = factor * (inst.w * y);
        if (!q.membership(x)) {
            verdict.contained = false;
            verdict.witness_point = x;
            verdict.trial_index = t;
            verdict.trials_run = t + 1;
            verdict.queries = q.queries() - queries_before;
            return verdict;
        }
    }
    verdict.contained = true;
    verdict.trials_run = trials;
    verdict.queries = q.queries() - queries_before;
    return verdict;
}

double anticoncentration_fraction(const Eigen::VectorXd& a, AnticoncentrationMode mode,
                                  std::int64_t samples, std::uint64_t seed) {
    const Eigen::Index n = a.size();
    if (n < 2) throw BadShape("anticoncentration_fraction: need n >= 2");
    const double threshold =
        a.lpNorm<1>() * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n));

    if (mode == AnticoncentrationMode::Exhaustive) {
        if (n > 24)
            throw TooManyVertices("anticoncentration_fraction: exhaustive mode needs n <= 24");
        // Gray-code walk: one sign flip per step keeps the dot product update O(1).
        Eigen::VectorXd y = Eigen::VectorXd::Ones(n);
        double s = a.sum();
        std::uint64_t total = 1ULL << n;
        std::uint64_t hits = (s >= threshold) ? 1 : 0;
        for (std::uint64_t i = 1; i < total; ++i) {
            int k = __builtin_ctzll(i);
            s -= 2.0 * a(k) * y(k);
            y(k) = -y(k);
            if (s >= threshold) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(total);
    }

    if (samples < 1) throw ConfigError("anticoncentration_fraction: samples must be >= 1");
    Rng rng(derive_seed(seed, 0xac));
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        if (a.dot(rng.sign_vector(n)) >= threshold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

SplitStressResult split_generator_stress(int d, int n, double s, std::int64_t samples,
                                         std::uint64_t seed) {
    if (d < 1 || n < d || n % d != 0)
        throw BadShape("split_generator_stress: n must be a positive multiple of d");
    if (!(s > 0.0)) throw BadShape("split_generator_stress: s must be positive");
    if (samples < 1) throw ConfigError("split_generator_stress: samples must be >= 1");

    // W = (d/n) (e_1, ..., e_1, ......, e_d, ..., e_d), so Z(W) = [-1,1]^d.
    Eigen::MatrixXd w(d, n);
    const int copies = n / d;
    for (int j = 0; j < n; ++j) {
        w.col(j).setZero();
        w(j / copies, j) = static_cast<double>(d) / n;
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
    const double threshold = static_cast<double>(d) / s;

    Rng rng(derive_seed(seed, 0x57e55));
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        Eigen::VectorXd y = rng.sign_vector(n);
        if (ones.dot(w * y) >= threshold) ++hits;
    }
    SplitStressResult res;
    res.empirical = static_cast<double>(hits) / static_cast<double>(samples);
    res.hoeffding_bound = std::exp(-static_cast<double>(n) / (2.0 * s * s));
    res.samples = samples;
    return res;
}

ContainmentVerdict naszodi_gap(const MembershipOracle& k, const MembershipOracle& q,
                               double s, std::int64_t trials, const WalkConfig& cfg) {
    if (!(s > 1.0)) throw ConfigError("naszodi_gap: scale s must exceed 1");
    if (trials < 1) throw ConfigError("naszodi_gap: need at least one trial");
    if (k.dim() != q.dim()) throw DimensionMismatch("naszodi_gap: K and Q dimensions");

    const std::uint64_t queries_before = q.queries();
    auto samples = hit_and_run(k, static_cast<int>(trials), cfg);

    ContainmentVerdict verdict;
    verdict.gauge_bound = s;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        Eigen::VectorXd x = s * samples[i];
        if (!q.membership(x)) {
            verdict.contained = false;
            verdict.witness_point = x;
            verdict.trial_index = static_cast<std::int64_t>(i);
            verdict.trials_run = static_cast<std::int64_t>(i) + 1;
            verdict.queries = q.queries() - queries_before;
            return verdict;
        }
    }
    verdict.contained = true;
    verdict.trials_run = trials;
    verdict.queries = q.queries() - queries_before;
    return verdict;
}

RecommendedT recommended_T(int d, double s) {
    if (!(s > 1.0)) throw ConfigError("recommended_T: s must exceed 1");
    if (d < 1) throw ConfigError("recommended_T: d must be >= 1");
    const double base = 1.0 - 1.0 / s;
    const double value = kNaszodiSampleConstant * d * std::pow(base, -d) *
                         std::max(1.0, std::log(1.0 / base));
    RecommendedT out;
    if (!std::isfinite(value) || value > std::ldexp(1.0, 62)) {
        out.value = static_cast<std::int64_t>(1) << 62;
        out.overflow = true;
        return out;
    }
    out.value = static_cast<std::int64_t>(std::ceil(value));
    return out;
}

OptBracket opt_containment_search(const Zonotope& z, const MembershipOracle& q,
                                  const GapConfig& cfg, double rel_tol) {
    if (!z.full_rank()) throw RankDeficient("opt_containment_search: rank(W) < d");
    if (!(rel_tol >= 0.0)) throw ConfigError("opt_containment_search: rel_tol must be >= 0");
    Roundness rd = q.roundness();

    // Certified containment scale: h_{alpha Z}(u) <= alpha * sum ||w_i|| <= r.
    const double r_zono_upper = z.column_norms().sum();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(z.generators());
    const double r_zono_lower = svd.singularValues()(z.dim() - 1);  // h_Z(u) >= sigma_min

    OptBracket bracket;
    bracket.alpha_low = rd.r / r_zono_upper;
    bracket.alpha_high = kInf;

    auto probe = [&](double alpha, std::uint64_t probe_index) {
        GapConfig pc = cfg;
        pc.seed = derive_seed(cfg.seed, probe_index, 0x0b7);
        return hypercube_gap(z.scaled(alpha), q, pc);
    };

    // Walk upward until a witness certifies an upper bound.
    std::uint64_t probe_index = 0;
    double alpha = std::max(4.0 * bracket.alpha_low, rd.R / r_zono_lower);
    const double alpha_cap = (rd.R / r_zono_lower) * 256.0;
    while (true) {
        auto verdict = probe(alpha, probe_index++);
        if (!verdict.contained) {
            bracket.alpha_high = alpha * verdict.gauge_bound;
            bracket.gauge_bound = verdict.gauge_bound;
            bracket.witness_point = verdict.witness_point;
            break;
        }
        bracket.alpha_low = std::max(bracket.alpha_low, alpha);
        alpha *= 4.0;
        if (alpha > alpha_cap) {
            bracket.no_witness_found = true;
            bracket.ratio = kInf;
            return bracket;
        }
    }

    // Geometric bisection until the bracket is within the certificate factor.
    for (int iter = 0; iter < 200; ++iter) {
        if (bracket.alpha_high <= bracket.alpha_low * bracket.gauge_bound * (1.0 + rel_tol))
            break;
        double mid = std::sqrt(bracket.alpha_low * bracket.alpha_high);
        auto verdict = probe(mid, probe_index++);
        if (!verdict.contained) {
            double hi = mid * verdict.gauge_bound;
            if (hi < bracket.alpha_high) {
                bracket.alpha_high = hi;
                bracket.gauge_bound = verdict.gauge_bound;
                bracket.witness_point = verdict.witness_point;
            } else {
                // No progress possible from this probe; tighten by lowering
                // the probe point next round.
                bracket.alpha_high = std::min(bracket.alpha_high, hi);
                break;
            }
        } else {
            bracket.alpha_low = mid;
        }
    }
    bracket.ratio = bracket.alpha_high / bracket.alpha_low;
    return bracket;
}

namespace {

struct PolarBodyOps {
    double out_rad = 0.0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> extreme;  // argmax of u'x over P
    std::function<double(const Eigen::VectorXd&)> support;           // h_P = gauge of polar(P)
    Eigen::VectorXd farthest;                                        // extreme point of norm out_rad
};

PolarBodyOps polar_ops(const BodySpec& p) {
    const Eigen::Index d = p.dim();
    return std::visit(
        [d](const auto& body) -> PolarBodyOps {
            using T = std::decay_t<decltype(body)>;
            PolarBodyOps ops;
            if constexpr (std::is_same_v<T, BodySpec::LpBall>) {
                const double pp = body.p;
                const double rad = body.radius;
                const double dd = static_cast<double>(d);
                ops.out_rad = rad * std::max(1.0, std::pow(dd, 0.5 - 1.0 / pp));
                double q = std::isinf(pp) ? 1.0 : pp / (pp - 1.0);  // dual exponent
                ops.support = [rad, q](const Eigen::VectorXd& y) {
                    if (std::isinf(q)) return rad * y.lpNorm<Eigen::Infinity>();
                    if (q == 1.0) return rad * y.lpNorm<1>();
                    if (q == 2.0) return rad * y.norm();
                    return rad * std::pow(y.array().abs().pow(q).sum(), 1.0 / q);
                };
                ops.extreme = [rad, pp, q](const Eigen::VectorXd& u) -> Eigen::VectorXd {
                    if (pp == 1.0) {
                        Eigen::Index k;
                        u.cwiseAbs().maxCoeff(&k);
                        Eigen::VectorXd x = Eigen::VectorXd::Zero(u.size());
                        x(k) = rad * (u(k) >= 0 ? 1.0 : -1.0);
                        return x;
                    }
                    if (std::isinf(pp))
                        return rad * u.array().sign().matrix();
                    double norm_q = std::pow(u.array().abs().pow(q).sum(), 1.0 / q);
                    Eigen::ArrayXd mag = (u.array().abs() / norm_q).pow(q / pp);
                    return rad * (mag * u.array().sign()).matrix();
                };
                // Farthest point: along e_1 for p <= 2, along the diagonal above.
                Eigen::VectorXd dir = Eigen::VectorXd::Ones(d);
                if (pp <= 2.0) dir = Eigen::VectorXd::Unit(d, 0);
                ops.farthest = ops.extreme(dir);
                return ops;
            } else if constexpr (std::is_same_v<T, BodySpec::Ellipsoid>) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(body.shape);
                Eigen::VectorXd lam = eig.eigenvalues();
                Eigen::MatrixXd vecs = eig.eigenvectors();
                ops.out_rad = 1.0 / std::sqrt(lam(0));
                Eigen::MatrixXd minv =
                    vecs * lam.cwiseInverse().asDiagonal() * vecs.transpose();
                ops.support = [minv](const Eigen::VectorXd& y) {
                    return std::sqrt(std::max(0.0, y.dot(minv * y)));
                };
                ops.extreme = [minv](const Eigen::VectorXd& u) -> Eigen::VectorXd {
                    Eigen::VectorXd mu = minv * u;
                    return mu / std::sqrt(std::max(1e-300, u.dot(mu)));
                };
                ops.farthest = ops.out_rad * vecs.col(0);
                return ops;
            } else if constexpr (std::is_same_v<T, HPolytope>) {
                // Axis-aligned box only: every row must touch exactly one axis.
                Eigen::VectorXd bound = Eigen::VectorXd::Constant(d, kInf);
                for (Eigen::Index i = 0; i < body.rows(); ++i) {
                    Eigen::Index nz = -1;
                    for (Eigen::Index j = 0; j < d; ++j) {
                        if (body.normals(i, j) != 0.0) {
                            if (nz >= 0) throw UnsupportedBody(
                                "polar_reduction_check: H-polytope must be an axis box");
                            nz = j;
                        }
                    }
                    bound(nz) = std::min(bound(nz),
                                         body.offsets(i) / std::abs(body.normals(i, nz)));
                }
                if (!bound.allFinite())
                    throw UnsupportedBody("polar_reduction_check: box is unbounded on an axis");
                ops.out_rad = bound.norm();
                ops.support = [bound](const Eigen::VectorXd& y) {
                    return bound.dot(y.cwiseAbs());
                };
                ops.extreme = [bound](const Eigen::VectorXd& u) -> Eigen::VectorXd {
                    Eigen::VectorXd x(u.size());
                    for (Eigen::Index j = 0; j < u.size(); ++j)
                        x(j) = bound(j) * (u(j) >= 0.0 ? 1.0 : -1.0);
                    return x;
                };
                ops.farthest = bound;  // the all-positive vertex
                return ops;
            } else {
                throw UnsupportedBody(
                    "polar_reduction_check: supported bodies are Lp balls, axis boxes, "
                    "ellipsoids");
            }
        },
        p.value());
}

}  // namespace

PolarCheckReport polar_reduction_check(const BodySpec& p, double r, int dirs,
                                       std::uint64_t seed) {
    if (!(r > 0.0)) throw ConfigError("polar_reduction_check: r must be positive");
    if (dirs < 1) throw ConfigError("polar_reduction_check: need at least one direction");

    PolarBodyOps ops = polar_ops(p);
    const Eigen::Index d = p.dim();
    const double r_sq = r * r;
    const double tol = 1e-9 * (1.0 + r_sq);

    PolarCheckReport rep;
    rep.out_rad = ops.out_rad;
    rep.r = r;
    rep.containment_holds = ops.out_rad <= r;
    rep.num_dirs = dirs;

    Rng rng(derive_seed(seed, 0x704a5));
    for (int i = 0; i < dirs; ++i) {
        Eigen::VectorXd u = rng.sphere_direction(d);
        Eigen::VectorXd x = ops.extreme(u);
        double g = ops.support(x);  // gauge of x in the polar body
        rep.max_gauge = std::max(rep.max_gauge, g);
        bool violates = g > r_sq + tol;
        if (violates) ++rep.num_violations;
        rep.direction_pass.push_back(rep.containment_holds ? !violates : true);
    }
    // Include the exact farthest point; its polar gauge equals out_rad^2.
    {
        double g = ops.support(ops.farthest);
        rep.max_gauge = std::max(rep.max_gauge, g);
        if (g > r_sq + tol) ++rep.num_violations;
    }

    if (rep.containment_holds) {
        // Direction (a): every extreme point must satisfy x in r^2 polar(P).
        rep.passes = rep.num_violations == 0;
    } else {
        // Direction (b): a violation must exist, and a vector of norm > r in
        // P is exhibited.
        rep.passes = rep.num_violations > 0 && ops.farthest.norm() > r;
        rep.norm_witness = ops.farthest;
    }
    return rep;
}

}  // namespace zontain
