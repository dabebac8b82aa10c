#ifndef ZONTAIN_BODY_HPP_
#define ZONTAIN_BODY_HPP_

#include <Eigen/Dense>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "zontain/geometry.hpp"
#include "zontain/zonotope.hpp"

namespace zontain {

/// Declarative description of a centrally symmetric outer body Q with the
/// origin in its interior. Concrete instances behind the membership oracle.
class BodySpec {
  public:
    struct LpBall {
        double p;       // in [1, inf]; infinity() for the box norm
        double radius;  // > 0
    };
    struct Ellipsoid {
        Eigen::MatrixXd shape;  // symmetric positive definite M, x'Mx <= 1
    };
    struct Scaled {
        double factor;  // > 0
        std::shared_ptr<const BodySpec> inner;
    };
    struct PolarZonotope {
        Zonotope primal;  // Q = {x : h_Z(x) <= 1}
    };

    static BodySpec hpoly(Eigen::MatrixXd normals, Eigen::VectorXd offsets);
    static BodySpec lp_ball(double p, double radius, Eigen::Index dim);
    static BodySpec ellipsoid(Eigen::MatrixXd shape);
    static BodySpec scaled(BodySpec inner, double factor);
    static BodySpec polar_zonotope(const Eigen::MatrixXd& generators);

    /// Axis-aligned box {|x_i| <= half_width} as an H-polytope.
    static BodySpec box(Eigen::Index dim, double half_width);

    static BodySpec from_json(const std::string& json_text);
    static BodySpec from_json_file(const std::string& path);
    std::string to_json() const;

    Eigen::Index dim() const { return dim_; }

    /// Raw membership predicate (no query counting): x in Q within additive
    /// tolerance 1e-9 on the defining functional.
    bool contains(const Eigen::VectorXd& x) const;

    const std::variant<HPolytope, LpBall, Ellipsoid, Scaled, PolarZonotope>& value() const {
        return v_;
    }

  private:
    template <typename T>
    BodySpec(T value, Eigen::Index dim) : v_(std::move(value)), dim_(dim) {}

    std::variant<HPolytope, LpBall, Ellipsoid, Scaled, PolarZonotope> v_;
    Eigen::Index dim_;
};

struct Roundness {
    double r = 0.0;  // r * B2 inside Q
    double R = 0.0;  // Q inside R * B2
    bool approximate = false;  // true when r is a sampled (polar) estimate
};

struct OracleStats {
    std::uint64_t membership_queries = 0;
    std::chrono::system_clock::time_point last_reset;
};

/// Membership oracle over a BodySpec; every public membership call counts as
/// exactly one query. The counter is atomic so concurrent chains can share an
/// oracle without losing updates.
class MembershipOracle {
  public:
    explicit MembershipOracle(BodySpec spec);
    MembershipOracle(const MembershipOracle& other);
    MembershipOracle& operator=(const MembershipOracle& other);

    bool membership(const Eigen::VectorXd& x) const;
    Roundness roundness() const;

    const BodySpec& spec() const { return spec_; }
    Eigen::Index dim() const { return spec_.dim(); }

    std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
    void reset_counter();
    OracleStats stats() const;

  private:
    BodySpec spec_;
    mutable std::atomic<std::uint64_t> queries_{0};
    std::chrono::system_clock::time_point last_reset_;
};

Roundness roundness(const BodySpec& spec);

/// R/r within poly(d): the paper's standing assumption. Violations are
/// reported by the CLI as warnings, not rejected.
bool is_well_rounded(const Roundness& rd, Eigen::Index d);

}  // namespace zontain

#endif  // ZONTAIN_BODY_HPP_
