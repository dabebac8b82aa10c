#include "zontain/body.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "zontain/errors.hpp"
#include "zontain/io.hpp"
#include "zontain/rng.hpp"
#include "zontain/simplex_lp.hpp"

namespace zontain {

namespace {

constexpr double kMembershipTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_norm(const Eigen::VectorXd& x, double p) {
    if (std::isinf(p)) return x.lpNorm<Eigen::Infinity>();
    if (p == 1.0) return x.lpNorm<1>();
    if (p == 2.0) return x.norm();
    return std::pow(x.array().abs().pow(p).sum(), 1.0 / p);
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw InvalidBody(std::string("body spec: ") + what + " must be a matrix");
    Eigen::MatrixXd m(j.size(), j.front().size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != static_cast<std::size_t>(m.cols()))
            throw InvalidBody(std::string("body spec: ragged rows in ") + what);
        for (std::size_t k = 0; k < j[i].size(); ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw InvalidBody(std::string("body spec: ") + what + " must be an array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

}  // namespace

BodySpec BodySpec::hpoly(Eigen::MatrixXd normals, Eigen::VectorXd offsets) {
    HPolytope h(std::move(normals), std::move(offsets));  // validates b > 0, rows nonzero
    Eigen::Index d = h.dim();
    return BodySpec(std::move(h), d);
}

BodySpec BodySpec::lp_ball(double p, double radius, Eigen::Index dim) {
    if (!(p >= 1.0)) throw InvalidBody("lp_ball: p must be in [1, inf]");
    if (!(radius > 0.0)) throw InvalidBody("lp_ball: radius must be positive");
    if (dim < 1) throw InvalidBody("lp_ball: dimension must be >= 1");
    return BodySpec(LpBall{p, radius}, dim);
}

BodySpec BodySpec::ellipsoid(Eigen::MatrixXd shape) {
    if (shape.rows() != shape.cols()) throw InvalidBody("ellipsoid: shape must be square");
    if ((shape - shape.transpose()).norm() > 1e-10 * (1.0 + shape.norm()))
        throw InvalidBody("ellipsoid: shape must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shape);
    if (eig.eigenvalues()(0) <= 0.0)
        throw InvalidBody("ellipsoid: shape must be positive definite");
    Eigen::Index d = shape.rows();
    return BodySpec(Ellipsoid{std::move(shape)}, d);
}

BodySpec BodySpec::scaled(BodySpec inner, double factor) {
    if (!(factor > 0.0)) throw InvalidBody("scaled: factor must be positive");
    Eigen::Index d = inner.dim();
    return BodySpec(Scaled{factor, std::make_shared<const BodySpec>(std::move(inner))}, d);
}

BodySpec BodySpec::polar_zonotope(const Eigen::MatrixXd& generators) {
    Zonotope z(generators);
    if (!z.full_rank())
        throw InvalidBody("polar_zonotope: rank-deficient primal makes the polar unbounded");
    Eigen::Index d = z.dim();
    return BodySpec(PolarZonotope{std::move(z)}, d);
}

BodySpec BodySpec::box(Eigen::Index dim, double half_width) {
    Eigen::MatrixXd a(2 * dim, dim);
    a.topRows(dim) = Eigen::MatrixXd::Identity(dim, dim);
    a.bottomRows(dim) = -Eigen::MatrixXd::Identity(dim, dim);
    return hpoly(a, Eigen::VectorXd::Constant(2 * dim, half_width));
}

bool BodySpec::contains(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw DimensionMismatch("membership: point has wrong dimension");
    return std::visit(
        [&x](const auto& body) -> bool {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, HPolytope>) {
                return body.contains(x, kMembershipTol);
            } else if constexpr (std::is_same_v<T, LpBall>) {
                return lp_norm(x, body.p) <= body.radius + kMembershipTol;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                return x.dot(body.shape * x) <= 1.0 + kMembershipTol;
            } else if constexpr (std::is_same_v<T, Scaled>) {
                return body.inner->contains(x / body.factor);
            } else {  // PolarZonotope
                return support_function(body.primal, x) <= 1.0 + kMembershipTol;
            }
        },
        v_);
}

std::string BodySpec::to_json() const {
    const Eigen::Index dim = dim_;
    nlohmann::json j = std::visit(
        [dim](const auto& body) -> nlohmann::json {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, HPolytope>) {
                nlohmann::json offsets = nlohmann::json::array();
                for (Eigen::Index i = 0; i < body.offsets.size(); ++i)
                    offsets.push_back(body.offsets(i));
                return {{"type", "hpoly"},
                        {"normals", matrix_to_json(body.normals)},
                        {"offsets", offsets}};
            } else if constexpr (std::is_same_v<T, LpBall>) {
                nlohmann::json p;
                if (std::isinf(body.p))
                    p = "inf";
                else
                    p = body.p;
                return {{"type", "lp_ball"}, {"p", p}, {"radius", body.radius}, {"dim", dim}};
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                return {{"type", "ellipsoid"}, {"shape", matrix_to_json(body.shape)}};
            } else if constexpr (std::is_same_v<T, Scaled>) {
                return {{"type", "scaled"},
                        {"factor", body.factor},
                        {"inner", nlohmann::json::parse(body.inner->to_json())}};
            } else {  // PolarZonotope
                return {{"type", "polar_zonotope"},
                        {"generators", matrix_to_json(body.primal.generators())}};
            }
        },
        v_);
    return j.dump(2);
}

BodySpec BodySpec::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw InvalidBody(std::string("body spec: invalid JSON: ") + e.what());
    }
    if (!j.contains("type")) throw InvalidBody("body spec: missing 'type' discriminator");
    const std::string type = j["type"].get<std::string>();
    if (type == "hpoly") {
        return hpoly(matrix_from_json(j.at("normals"), "normals"),
                     vector_from_json(j.at("offsets"), "offsets"));
    }
    if (type == "lp_ball") {
        double p;
        if (j.at("p").is_string()) {
            if (j["p"].get<std::string>() != "inf")
                throw InvalidBody("lp_ball: p must be a number or \"inf\"");
            p = kInf;
        } else {
            p = j["p"].get<double>();
        }
        Eigen::Index dim = j.at("dim").get<Eigen::Index>();
        return lp_ball(p, j.at("radius").get<double>(), dim);
    }
    if (type == "ellipsoid") return ellipsoid(matrix_from_json(j.at("shape"), "shape"));
    if (type == "scaled") {
        BodySpec inner = from_json(j.at("inner").dump());
        return scaled(std::move(inner), j.at("factor").get<double>());
    }
    if (type == "polar_zonotope")
        return polar_zonotope(matrix_from_json(j.at("generators"), "generators"));
    throw InvalidBody("body spec: unknown type '" + type + "'");
}

BodySpec BodySpec::from_json_file(const std::string& path) {
    return from_json(io::read_text_file(path));
}

MembershipOracle::MembershipOracle(BodySpec spec)
    : spec_(std::move(spec)), last_reset_(std::chrono::system_clock::now()) {}

MembershipOracle::MembershipOracle(const MembershipOracle& other)
    : spec_(other.spec_), queries_(other.queries()), last_reset_(other.last_reset_) {}

MembershipOracle& MembershipOracle::operator=(const MembershipOracle& other) {
    if (this != &other) {
        spec_ = other.spec_;
        queries_.store(other.queries(), std::memory_order_relaxed);
        last_reset_ = other.last_reset_;
    }
    return *this;
}

bool MembershipOracle::membership(const Eigen::VectorXd& x) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    return spec_.contains(x);
}

Roundness MembershipOracle::roundness() const { return zontain::roundness(spec_); }

void MembershipOracle::reset_counter() {
    queries_.store(0, std::memory_order_relaxed);
    last_reset_ = std::chrono::system_clock::now();
}

OracleStats MembershipOracle::stats() const { return {queries(), last_reset_}; }

Roundness roundness(const BodySpec& spec) {
    const Eigen::Index d = spec.dim();
    return std::visit(
        [d](const auto& body) -> Roundness {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, HPolytope>) {
                double r = kInf;
                for (Eigen::Index j = 0; j < body.rows(); ++j)
                    r = std::min(r, body.offsets(j) / body.normals.row(j).norm());
                // Coordinate bounds by 2d LPs; R = sqrt(d) * largest bound.
                double max_bound = 0.0;
                for (Eigen::Index k = 0; k < d; ++k) {
                    for (double sgn : {1.0, -1.0}) {
                        Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
                        w(k) = sgn;
                        auto res = lp::maximize_inequality_form(body.normals, body.offsets, w);
                        if (res.status == lp::Status::Unbounded)
                            throw UnboundedBody("roundness: H-polytope is unbounded");
                        if (res.status != lp::Status::Optimal)
                            throw LpNumerical("roundness: coordinate-bound LP failed");
                        max_bound = std::max(max_bound, res.objective);
                    }
                }
                return {r, std::sqrt(static_cast<double>(d)) * max_bound, false};
            } else if constexpr (std::is_same_v<T, BodySpec::LpBall>) {
                double f = std::isinf(body.p)
                               ? std::sqrt(static_cast<double>(d))
                               : std::pow(static_cast<double>(d), 0.5 - 1.0 / body.p);
                return {body.radius * std::min(1.0, f), body.radius * std::max(1.0, f), false};
            } else if constexpr (std::is_same_v<T, BodySpec::Ellipsoid>) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(body.shape);
                return {1.0 / std::sqrt(eig.eigenvalues().maxCoeff()),
                        1.0 / std::sqrt(eig.eigenvalues().minCoeff()), false};
            } else if constexpr (std::is_same_v<T, BodySpec::Scaled>) {
                Roundness inner = roundness(*body.inner);
                return {body.factor * inner.r, body.factor * inner.R, inner.approximate};
            } else {  // PolarZonotope: gauge of the polar is h of the primal.
                const Zonotope& z = body.primal;
                // R = 1 / (certified inradius lower bound of the primal):
                // h_Z(u) = ||W'u||_1 >= ||W'u||_2 >= sigma_min(W).
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(z.generators());
                double sigma_min = svd.singularValues()(d - 1);
                // r = 1 / (sampled max of h_Z) with a 4x safety margin; the
                // exact circumradius of the primal is itself a hard norm
                // computation, so this radius is flagged approximate.
                Rng rng(derive_seed(0x701a, 0));  // fixed net seed, deterministic radii
                double h_max = 0.0;
                const int net = std::max<int>(1024, 256 * static_cast<int>(d));
                for (int i = 0; i < net; ++i)
                    h_max = std::max(h_max, support_function(z, rng.sphere_direction(d)));
                for (Eigen::Index k = 0; k < d; ++k) {
                    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
                    e(k) = 1.0;
                    h_max = std::max(h_max, support_function(z, e));
                }
                return {1.0 / (4.0 * h_max), 1.0 / sigma_min, true};
            }
        },
        spec.value());
}

bool is_well_rounded(const Roundness& rd, Eigen::Index d) {
    double dd = static_cast<double>(d);
    return rd.R <= 1e4 * dd * dd * rd.r;
}

}  // namespace zontain
