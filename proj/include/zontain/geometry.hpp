#ifndef ZONTAIN_GEOMETRY_HPP_
#define ZONTAIN_GEOMETRY_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "zontain/zonotope.hpp"

namespace zontain {

/// Outer test bed {x : A x <= b} with the origin interior (b > 0).
struct HPolytope {
    Eigen::MatrixXd normals;  // m x d
    Eigen::VectorXd offsets;  // m, all > 0

    HPolytope(Eigen::MatrixXd a, Eigen::VectorXd b);

    Eigen::Index dim() const { return normals.cols(); }
    Eigen::Index rows() const { return normals.rows(); }

    /// Membership with additive tolerance on each defining inequality,
    /// scaled by the row norm.
    bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const;
};

struct DeltaModularityReport {
    double min_abs_det = 0.0;  // over nonsingular d x d submatrices
    double max_abs_det = 0.0;  // the Delta of the matrix
    std::int64_t num_submatrices = 0;
    std::int64_t num_nonsingular = 0;
    bool is_delta_modular = false;  // min_abs_det >= 1 - tol
};

struct FacetProfile {
    Eigen::VectorXd normal;  // unit vector orthogonal to the chosen subset
    double alpha = 0.0;      // smallest nonzero |u'w_i|
    double beta = 0.0;       // largest |u'w_i|
    std::vector<int> zero_indices;
};

struct NormalizationResult {
    Eigen::MatrixXd transform;  // invertible T with T(Z) = normalized zonotope
    Zonotope normalized;
    std::map<int, std::vector<int>> split_map;  // original column -> new columns
    int iterations = 0;                         // whitening passes
};

struct VertexSet {
    std::vector<Eigen::VectorXd> points;
    bool degenerate = false;  // rank(W) < d
};

struct MeanWidthEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

using SupportFn = std::function<double(const Eigen::VectorXd&)>;

/// h_Z(a) = ||W'a||_1.
double support_function(const Zonotope& z, const Eigen::VectorXd& a);

/// Extreme point v = W s with s_i = sign(w_i'a); dot products with absolute
/// value <= 1e-12 are ties and resolve to +1.
struct ExtremePoint {
    Eigen::VectorXd point;
    Eigen::VectorXd signs;
};
ExtremePoint extreme_point(const Zonotope& z, const Eigen::VectorXd& a);

/// Minkowski gauge ||p||_Z = min{t >= 0 : p = Wx, ||x||_inf <= t}, solved as
/// a bounded-variable LP via the dense simplex.
double gauge(const Zonotope& z, const Eigen::VectorXd& p, double tol = 1e-9);

/// All extreme points of Z by scanning the 2^n sign vectors (n <= limit).
VertexSet enumerate_vertices(const Zonotope& z, int limit = 24);

/// Unit facet normals, one per rank-(d-1) generator subset, sign-canonicalized
/// and deduplicated.
std::vector<Eigen::VectorXd> enumerate_facet_normals(const Zonotope& z,
                                                     std::int64_t limit = 1000000);

/// Exact volume 2^d * sum over d-subsets |det W_S|.
double volume(const Zonotope& z, std::int64_t limit = 1000000);

/// Exact alpha* = min_j b_j / h_K(a_j) for an H-polytope outer body; +inf
/// when no inequality binds (h_K vanishes on every normal).
double exact_opt_containment(const SupportFn& h_k, const HPolytope& q);
double exact_opt_containment(const Zonotope& z, const HPolytope& q);

/// Scans all d x d subdeterminants of W.
DeltaModularityReport delta_of(const Eigen::MatrixXd& w, std::int64_t limit = 1000000);

/// Band profile of |u'w_i| values for u orthogonal to the given independent
/// (d-1)-subset of columns.
FacetProfile facet_profile(const Eigen::MatrixXd& w, const std::vector<int>& subset);

/// Whiten-and-split loop producing a normalized generator matrix
/// (W W' = I, column norms <= 2 sqrt(d/n)) together with the invertible
/// transform T satisfying T(Z) = Z_normalized exactly.
NormalizationResult normalize(const Zonotope& z, int max_iter = 64);

/// Monte Carlo mean width 2 E[h_Z(u)] over seeded uniform sphere directions.
MeanWidthEstimate mean_width_estimate(const Zonotope& z, int num_dirs, std::uint64_t seed);

/// Facet description of Z: rows {u, -u} per facet normal, offsets h_Z(u).
HPolytope zonotope_to_hpoly(const Zonotope& z, std::int64_t limit = 1000000);

/// |det| of a square matrix: cofactor expansion up to 4x4, LU above.
double abs_det(const Eigen::MatrixXd& m);

/// Area of the 2-d convex hull of a point set (monotone chain + shoelace).
double hull_area_2d(const std::vector<Eigen::VectorXd>& points);

/// Monte Carlo volume of conv(points) in any dimension: uniform box samples
/// classified by an exact convex-combination LP.
double hull_volume_monte_carlo(const std::vector<Eigen::VectorXd>& points, int samples,
                               std::uint64_t seed);

std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace zontain

#endif  // ZONTAIN_GEOMETRY_HPP_
