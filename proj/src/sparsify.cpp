#include "zontain/sparsify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "zontain/errors.hpp"
#include "zontain/rng.hpp"

namespace zontain {

namespace {

void check_full_row_rank(const Eigen::MatrixXd& w, const char* where) {
    const Eigen::Index d = w.rows();
    if (w.cols() < d) throw RankDeficient(std::string(where) + ": fewer columns than rows");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
    const auto& sv = svd.singularValues();
    if (sv(d - 1) <= sv(0) * 1e-12 * std::max(w.rows(), w.cols()))
        throw RankDeficient(std::string(where) + ": matrix does not have full row rank");
}

}  // namespace

std::string to_string(SparsifyMethod m) {
    switch (m) {
        case SparsifyMethod::Lewis:
            return "lewis";
        case SparsifyMethod::Bss:
            return "bss";
        default:
            return "delta_modular";
    }
}

SparsifyMethod sparsify_method_from_string(const std::string& s) {
    if (s == "lewis") return SparsifyMethod::Lewis;
    if (s == "bss") return SparsifyMethod::Bss;
    if (s == "delta_modular" || s == "delta") return SparsifyMethod::DeltaModular;
    throw ConfigError("unknown sparsification method '" + s + "'");
}

Eigen::MatrixXd SparsificationResult::apply(const Eigen::MatrixXd& w) const {
    Eigen::MatrixXd out(w.rows(), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 0 || indices[k] >= w.cols())
            throw BadShape("SparsificationResult::apply: index out of range");
        out.col(static_cast<Eigen::Index>(k)) = weights(static_cast<Eigen::Index>(k)) * w.col(indices[k]);
    }
    return out;
}

std::string SparsificationResult::to_json() const {
    nlohmann::json j;
    j["method"] = zontain::to_string(method);
    j["epsilon"] = epsilon;
    j["indices"] = indices;
    std::vector<double> ws(weights.data(), weights.data() + weights.size());
    j["weights"] = ws;
    j["certified_factors"] = {lower_factor, upper_factor};
    j["rescale"] = rescale;
    return j.dump(2);
}

SparsificationResult SparsificationResult::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SparsificationResult r;
    r.method = sparsify_method_from_string(j.at("method").get<std::string>());
    r.epsilon = j.at("epsilon").get<double>();
    r.indices = j.at("indices").get<std::vector<int>>();
    auto ws = j.at("weights").get<std::vector<double>>();
    r.weights = Eigen::Map<Eigen::VectorXd>(ws.data(), static_cast<Eigen::Index>(ws.size()));
    r.lower_factor = j.at("certified_factors")[0].get<double>();
    r.upper_factor = j.at("certified_factors")[1].get<double>();
    r.rescale = j.value("rescale", 1.0);
    if (r.weights.size() != static_cast<Eigen::Index>(r.indices.size()))
        throw ConfigError("sparsification result: indices/weights length mismatch");
    return r;
}

LewisState lewis_weights(const Eigen::MatrixXd& w, double tol, int max_iter) {
    check_full_row_rank(w, "lewis_weights");
    const Eigen::Index d = w.rows();
    const Eigen::Index n = w.cols();

    Eigen::VectorXd lw = Eigen::VectorXd::Constant(n, static_cast<double>(d) / n);
    LewisState state;
    for (int it = 1; it <= max_iter; ++it) {
        // M = W diag(1/w) W'
        Eigen::MatrixXd m = w * lw.cwiseInverse().asDiagonal() * w.transpose();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
        if (ldlt.info() != Eigen::Success)
            throw RankDeficient("lewis_weights: iteration matrix is singular");
        Eigen::MatrixXd sol = ldlt.solve(w);  // M^{-1} W
        double residual = 0.0;
        Eigen::VectorXd next(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double s = w.col(i).dot(sol.col(i));  // w_i' M^{-1} w_i
            double raw = std::sqrt(std::max(s, 0.0));
            double damped = std::sqrt(lw(i) * raw);  // geometric-mean damping
            residual = std::max(residual, std::abs(damped - lw(i)) / lw(i));
            next(i) = damped;
        }
        lw = next;
        state.iterations = it;
        state.residual = residual;
        if (residual <= tol) {
            state.weights = lw;
            return state;
        }
    }
    throw NoConvergence("lewis_weights: no fixed point after max_iter iterations");
}

SparsificationResult sparsify_lewis(const Eigen::MatrixXd& w, double epsilon,
                                    std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon <= 0.5))
        throw EpsilonOutOfRange("sparsify_lewis: epsilon must lie in (0, 1/2]");
    LewisState lw = lewis_weights(w);
    const Eigen::Index d = w.rows();
    const Eigen::Index n = w.cols();

    const double m_real = kLewisSampleConstant * d *
                          std::log(static_cast<double>(d) / epsilon) / (epsilon * epsilon);
    const std::int64_t m = static_cast<std::int64_t>(std::ceil(m_real));

    // Sampling distribution p_i = w_i / sum(w); cumulative for binary search.
    Eigen::VectorXd p = lw.weights / lw.weights.sum();
    std::vector<double> cum(n);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        acc += p(i);
        cum[i] = acc;
    }
    cum[n - 1] = 1.0;

    Rng rng(derive_seed(seed, 0x1e415));
    std::map<int, std::int64_t> counts;  // ordered: indices come out sorted
    for (std::int64_t k = 0; k < m; ++k) {
        double u = rng.u01();
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        counts[static_cast<int>(it - cum.begin())]++;
    }

    SparsificationResult res;
    res.epsilon = epsilon;
    res.method = SparsifyMethod::Lewis;
    res.lower_factor = 1.0 - epsilon;
    res.upper_factor = 1.0 + epsilon;
    res.weights.resize(static_cast<Eigen::Index>(counts.size()));
    Eigen::Index k = 0;
    for (const auto& [idx, count] : counts) {
        res.indices.push_back(idx);
        res.weights(k++) = static_cast<double>(count) / (static_cast<double>(m) * p(idx));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Deterministic BSS barrier schedule. All schedule constants live here; the
// asserted contract is the eigenvalue sandwich, not the schedule itself.
//
//   eps_hat = eps / 2
//   potentials bounded by eps_U = eps_L = eps_hat
//   wall increments delta_L = 1, delta_U = 1 / (1 - 2 eps_hat)
//   initial walls  u_0 = d / eps_hat, l_0 = -d / eps_hat
//   steps          q = ceil(2 d / eps_hat^2)   (= ceil(8 d / eps^2))
//
// The shift-lemma feasibility condition 1/delta_U + eps_U <= 1/delta_L - eps_L
// holds with equality, and the final wall ratio u_q/l_q stays below
// ((1+eps)/(1-eps))^2 for every eps in (0,1), so rescaling the accumulated
// weights by (1-eps)^2 / l_q lands every eigenvalue in [(1-eps)^2, (1+eps)^2].
// ---------------------------------------------------------------------------
SparsificationResult sparsify_bss(const Eigen::MatrixXd& w, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw EpsilonOutOfRange("sparsify_bss: epsilon must lie in (0, 1)");
    check_full_row_rank(w, "sparsify_bss");
    const Eigen::Index d = w.rows();
    const Eigen::Index n = w.cols();

    // Isotropy transform: v_i = (WW')^{-1/2} w_i, so sum v_i v_i' = I.
    Eigen::MatrixXd f = w * w.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> feig(f);
    Eigen::VectorXd inv_sqrt = feig.eigenvalues().array().rsqrt();
    Eigen::MatrixXd v =
        feig.eigenvectors() * inv_sqrt.asDiagonal() * feig.eigenvectors().transpose() * w;

    const double eps_hat = epsilon / 2.0;
    const double delta_l = 1.0;
    const double delta_u = 1.0 / (1.0 - 2.0 * eps_hat);
    double wall_u = static_cast<double>(d) / eps_hat;
    double wall_l = -static_cast<double>(d) / eps_hat;
    const std::int64_t steps =
        static_cast<std::int64_t>(std::ceil(2.0 * d / (eps_hat * eps_hat)));

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);

    for (std::int64_t step = 0; step < steps; ++step) {
        const double u_new = wall_u + delta_u;
        const double l_new = wall_l + delta_l;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
        const Eigen::VectorXd& lam = eig.eigenvalues();
        const Eigen::MatrixXd& vecs = eig.eigenvectors();

        double phi_u_old = 0.0, phi_u_new = 0.0, phi_l_old = 0.0, phi_l_new = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            phi_u_old += 1.0 / (wall_u - lam(i));
            phi_u_new += 1.0 / (u_new - lam(i));
            phi_l_old += 1.0 / (lam(i) - wall_l);
            phi_l_new += 1.0 / (lam(i) - l_new);
        }
        const double denom_u = phi_u_old - phi_u_new;  // > 0
        const double denom_l = phi_l_new - phi_l_old;  // > 0
        if (!(denom_u > 0.0) || !(denom_l > 0.0))
            throw BarrierStall("sparsify_bss: potential shift denominators vanished");

        // Quadratic forms against (u'I - A)^{-1,-2} and (A - l'I)^{-1,-2}
        // for every candidate, via the shared eigendecomposition.
        Eigen::MatrixXd proj = vecs.transpose() * v;  // d x n
        Eigen::VectorXd iu1(d), iu2(d), il1(d), il2(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double du = u_new - lam(i);
            const double dl = lam(i) - l_new;
            iu1(i) = 1.0 / du;
            iu2(i) = 1.0 / (du * du);
            il1(i) = 1.0 / dl;
            il2(i) = 1.0 / (dl * dl);
        }

        int best = -1;
        double best_slack = 0.0, best_ub = 0.0, best_lb = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::VectorXd t = proj.col(i).array().square();
            const double qu1 = t.dot(iu1);
            const double qu2 = t.dot(iu2);
            const double ql1 = t.dot(il1);
            const double ql2 = t.dot(il2);
            const double ub = qu2 / denom_u + qu1;
            const double lb = ql2 / denom_l - ql1;
            const double slack = lb - ub;
            if (ub > 0.0 && slack > best_slack) {
                best = static_cast<int>(i);
                best_slack = slack;
                best_ub = ub;
                best_lb = lb;
            }
        }
        if (best < 0)
            throw BarrierStall("sparsify_bss: no admissible column at step " +
                               std::to_string(step));

        const double t = 2.0 / (best_ub + best_lb);  // 1/t inside [ub, lb]
        a += t * v.col(best) * v.col(best).transpose();
        s(best) += t;
        wall_u = u_new;
        wall_l = l_new;
    }

    // Rescale so the lower wall maps onto (1-eps)^2.
    const double gamma = (1.0 - epsilon) * (1.0 - epsilon) / wall_l;

    SparsificationResult res;
    res.epsilon = epsilon;
    res.method = SparsifyMethod::Bss;
    res.lower_factor = (1.0 - epsilon) * (1.0 - epsilon);
    res.upper_factor = (1.0 + epsilon) * (1.0 + epsilon);
    std::vector<double> ws;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (s(i) > 0.0) {
            res.indices.push_back(static_cast<int>(i));
            ws.push_back(gamma * s(i));
        }
    }
    res.weights = Eigen::Map<Eigen::VectorXd>(ws.data(), static_cast<Eigen::Index>(ws.size()));
    return res;
}

SparsificationResult sparsify_delta_modular(const Eigen::MatrixXd& w, double epsilon,
                                            double delta) {
    if (!(delta >= 1.0)) throw ConfigError("sparsify_delta_modular: delta must be >= 1");
    SparsificationResult res = sparsify_bss(w, epsilon);
    res.method = SparsifyMethod::DeltaModular;
    res.weights *= delta;
    res.rescale = delta;
    res.lower_factor = (1.0 - epsilon) * (1.0 - epsilon);
    res.upper_factor = delta * delta * (1.0 + epsilon) * (1.0 + epsilon);
    return res;
}

std::pair<double, double> verify_sandwich(const Eigen::MatrixXd& w,
                                          const SparsificationResult& result,
                                          const std::vector<Eigen::VectorXd>& dirs) {
    if (dirs.empty()) throw ZeroDirection("verify_sandwich: no directions");
    Eigen::MatrixXd wp = result.apply(w);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& u : dirs) {
        if (u.size() != w.rows())
            throw DimensionMismatch("verify_sandwich: direction dimension");
        if (u.norm() == 0.0) throw ZeroDirection("verify_sandwich: zero direction");
        double denom = (w.transpose() * u).lpNorm<1>();
        if (denom == 0.0) throw BadShape("verify_sandwich: direction with zero support");
        double ratio = (wp.transpose() * u).lpNorm<1>() / denom;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

Eigen::MatrixXd expand_integer_weights(const Eigen::MatrixXd& w,
                                       const std::vector<int>& counts) {
    if (static_cast<Eigen::Index>(counts.size()) != w.cols())
        throw BadShape("expand_integer_weights: one count per column required");
    std::int64_t total = 0;
    for (int c : counts) {
        if (c < 1) throw BadShape("expand_integer_weights: counts must be positive");
        total += c;
    }
    if (total > 100000) throw TooManyGenerators("expand_integer_weights: > 1e5 columns");
    Eigen::MatrixXd out(w.rows(), total);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < w.cols(); ++j)
        for (int c = 0; c < counts[j]; ++c) out.col(k++) = w.col(j);
    return out;
}

}  // namespace zontain
