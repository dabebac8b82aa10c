#include "zontain/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "zontain/errors.hpp"
#include "zontain/rng.hpp"
#include "zontain/simplex_lp.hpp"

namespace zontain {

namespace {

constexpr double kTieTol = 1e-12;        // sign ties in extreme_point
constexpr double kZeroDotTol = 1e-9;     // facet-profile zero classification
constexpr double kGaugeTol = 1e-9;       // simplex tolerance for the gauge LP
constexpr int kGaugeIterCap = 100000;

void check_finite(const Eigen::VectorXd& a, const char* what) {
    if (!a.allFinite()) throw BadShape(std::string(what) + ": non-finite entries");
}

void check_dim(const Zonotope& z, const Eigen::VectorXd& a, const char* what) {
    if (a.size() != z.dim())
        throw DimensionMismatch(std::string(what) + ": direction has wrong dimension");
    check_finite(a, what);
}

// Visits all k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& fn) {
    if (k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

double det_cofactor(const Eigen::MatrixXd& m) {
    const int k = static_cast<int>(m.rows());
    switch (k) {
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: {
            double det = 0.0;
            double sign = 1.0;
            Eigen::MatrixXd sub(k - 1, k - 1);
            for (int p = 0; p < k; ++p) {
                int cc = 0;
                for (int j = 0; j < k; ++j) {
                    if (j == p) continue;
                    sub.col(cc++) = m.col(j).tail(k - 1);
                }
                det += sign * m(0, p) * det_cofactor(sub);
                sign = -sign;
            }
            return det;
        }
    }
}

// Unit vector orthogonal to the span of the given columns (expected rank
// d-1); returns a zero vector when the subset is dependent.
Eigen::VectorXd orthogonal_unit(const Eigen::MatrixXd& w, const std::vector<int>& subset) {
    const Eigen::Index d = w.rows();
    if (subset.empty()) {
        if (d != 1) return Eigen::VectorXd::Zero(d);
        Eigen::VectorXd u(1);
        u(0) = 1.0;
        return u;
    }
    Eigen::MatrixXd s(d, static_cast<Eigen::Index>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) s.col(i) = w.col(subset[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    double thresh = sv(0) * 1e-10 * static_cast<double>(d);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= thresh) return Eigen::VectorXd::Zero(d);  // dependent subset
    }
    Eigen::VectorXd u = svd.matrixU().col(d - 1);
    // Canonical sign: first non-negligible component positive.
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(u(i)) > 1e-9) {
            if (u(i) < 0) u = -u;
            break;
        }
    }
    return u;
}

}  // namespace

HPolytope::HPolytope(Eigen::MatrixXd a, Eigen::VectorXd b)
    : normals(std::move(a)), offsets(std::move(b)) {
    if (normals.rows() != offsets.size())
        throw DimensionMismatch("HPolytope: normals/offsets row mismatch");
    if (normals.rows() == 0) throw BadShape("HPolytope: no inequalities");
    for (Eigen::Index i = 0; i < offsets.size(); ++i) {
        if (!(offsets(i) > 0.0)) throw InvalidBody("HPolytope: offsets must be positive");
        if (normals.row(i).norm() == 0.0) throw InvalidBody("HPolytope: zero normal row");
    }
}

bool HPolytope::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != dim()) throw DimensionMismatch("HPolytope::contains: dimension");
    for (Eigen::Index i = 0; i < normals.rows(); ++i) {
        if (normals.row(i).dot(x) > offsets(i) + tol * normals.row(i).norm()) return false;
    }
    return true;
}

double support_function(const Zonotope& z, const Eigen::VectorXd& a) {
    check_dim(z, a, "support_function");
    return (z.generators().transpose() * a).lpNorm<1>();
}

ExtremePoint extreme_point(const Zonotope& z, const Eigen::VectorXd& a) {
    check_dim(z, a, "extreme_point");
    if (a.norm() == 0.0) throw ZeroDirection("extreme_point: zero direction");
    const Eigen::MatrixXd& w = z.generators();
    Eigen::VectorXd signs(z.count());
    for (Eigen::Index i = 0; i < z.count(); ++i) {
        double dot = w.col(i).dot(a);
        signs(i) = (dot < -kTieTol) ? -1.0 : 1.0;  // ties resolve to +1
    }
    return {w * signs, signs};
}

double gauge(const Zonotope& z, const Eigen::VectorXd& p, double tol) {
    check_dim(z, p, "gauge");
    if (p.norm() == 0.0) return 0.0;

    const Eigen::Index d = z.dim();
    const Eigen::Index n = z.count();
    // Variables [u; v; t] >= 0 with x = u - v and u_i + v_i = t, so
    // ||x||_inf <= t; minimize t subject to W(u - v) = p.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d + n, 2 * n + 1);
    a.block(0, 0, d, n) = z.generators();
    a.block(0, n, d, n) = -z.generators();
    a.block(d, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
    a.block(d, n, n, n) = Eigen::MatrixXd::Identity(n, n);
    a.block(d, 2 * n, n, 1) = -Eigen::VectorXd::Ones(n);
    Eigen::VectorXd b(d + n);
    b.head(d) = p;
    b.tail(n).setZero();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n + 1);
    c(2 * n) = 1.0;

    auto res = lp::solve_standard_form(a, b, c, kGaugeIterCap, std::min(tol, kGaugeTol));
    switch (res.status) {
        case lp::Status::Optimal:
            return res.objective;
        case lp::Status::Infeasible:
            throw RankDeficient("gauge: point outside the column span of W");
        default:
            throw LpNumerical("gauge: simplex failed to converge");
    }
}

VertexSet enumerate_vertices(const Zonotope& z, int limit) {
    const Eigen::Index n = z.count();
    const Eigen::Index d = z.dim();
    if (n > limit)
        throw TooManyGenerators("enumerate_vertices: n exceeds the 2^n scan limit");

    const Eigen::MatrixXd& w = z.generators();
    VertexSet out;
    out.degenerate = !z.full_rank();

    const double scale = std::max(1.0, z.column_norms().sum());
    const double quantum = 1e-9 * scale;
    const double strict = 1e-9 * scale;

    struct KeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& k) const {
            std::size_t h = 1469598103934665603ULL;
            for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
            return h;
        }
    };
    std::unordered_map<std::vector<std::int64_t>, bool, KeyHash> seen;

    auto key_of = [&](const Eigen::VectorXd& v) {
        std::vector<std::int64_t> key(d);
        for (Eigen::Index i = 0; i < d; ++i)
            key[i] = static_cast<std::int64_t>(std::llround(v(i) / quantum));
        return key;
    };

    Eigen::VectorXd y(n);
    Eigen::MatrixXd m(n, d);
    const std::uint64_t half = 1ULL << (n - 1);
    for (std::uint64_t bits = 0; bits < half; ++bits) {
        y(0) = 1.0;  // central symmetry: mirror images are added below
        for (Eigen::Index i = 1; i < n; ++i) y(i) = (bits >> (i - 1)) & 1ULL ? 1.0 : -1.0;
        Eigen::VectorXd v = w * y;
        if (v.norm() <= quantum) continue;  // origin is never a vertex

        auto key = key_of(v);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second) continue;  // already confirmed a vertex
        }

        // v is a vertex iff some direction a strictly realizes the signs:
        // y_i (w_i' a) > 0 for all i. Try a = v first, then the exact LP.
        bool is_vertex = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (y(i) * w.col(i).dot(v) <= strict) {
                is_vertex = false;
                break;
            }
        }
        if (!is_vertex) {
            for (Eigen::Index i = 0; i < n; ++i) m.row(i) = y(i) * w.col(i).transpose();
            is_vertex = lp::strictly_feasible(m);
        }
        seen[key] = is_vertex;
        if (is_vertex) {
            out.points.push_back(v);
            out.points.push_back(-v);
        }
    }

    std::sort(out.points.begin(), out.points.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                  for (Eigen::Index i = 0; i < a.size(); ++i) {
                      if (a(i) != b(i)) return a(i) < b(i);
                  }
                  return false;
              });
    return out;
}

std::vector<Eigen::VectorXd> enumerate_facet_normals(const Zonotope& z, std::int64_t limit) {
    if (!z.full_rank())
        throw RankDeficient("enumerate_facet_normals: generators do not span R^d");
    const int d = static_cast<int>(z.dim());
    const int n = static_cast<int>(z.count());
    if (binomial(n, d - 1) > limit)
        throw TooManySubsets("enumerate_facet_normals: too many (d-1)-subsets");

    std::vector<Eigen::VectorXd> normals;
    if (d == 1) {
        Eigen::VectorXd u(1);
        u(0) = 1.0;
        normals.push_back(u);
        return normals;
    }

    const Eigen::MatrixXd& w = z.generators();
    for_each_subset(n, d - 1, [&](const std::vector<int>& subset) {
        Eigen::VectorXd u = orthogonal_unit(w, subset);
        if (u.norm() == 0.0) return;  // dependent subset
        for (const auto& known : normals) {
            if ((known - u).lpNorm<Eigen::Infinity>() < 1e-8) return;
        }
        normals.push_back(u);
    });
    return normals;
}

double abs_det(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw BadShape("abs_det: matrix not square");
    if (m.rows() <= 4) return std::abs(det_cofactor(m));
    return std::abs(Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant());
}

double volume(const Zonotope& z, std::int64_t limit) {
    const int d = static_cast<int>(z.dim());
    const int n = static_cast<int>(z.count());
    if (n < d) return 0.0;
    if (binomial(n, d) > limit) throw TooManySubsets("volume: too many d-subsets");

    double sum = 0.0;
    Eigen::MatrixXd sub(d, d);
    for_each_subset(n, d, [&](const std::vector<int>& subset) {
        for (int i = 0; i < d; ++i) sub.col(i) = z.generators().col(subset[i]);
        sum += abs_det(sub);
    });
    return std::ldexp(sum, d);  // 2^d * sum
}

double exact_opt_containment(const SupportFn& h_k, const HPolytope& q) {
    double alpha = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < q.rows(); ++j) {
        Eigen::VectorXd a = q.normals.row(j).transpose();
        double h = h_k(a);
        if (h < 0) throw BadShape("exact_opt_containment: negative support value");
        if (h > 0) alpha = std::min(alpha, q.offsets(j) / h);
    }
    return alpha;  // +inf flags the unbounded case (no inequality binds)
}

double exact_opt_containment(const Zonotope& z, const HPolytope& q) {
    if (z.dim() != q.dim())
        throw DimensionMismatch("exact_opt_containment: dimension mismatch");
    return exact_opt_containment(
        [&z](const Eigen::VectorXd& a) { return support_function(z, a); }, q);
}

DeltaModularityReport delta_of(const Eigen::MatrixXd& w, std::int64_t limit) {
    const int d = static_cast<int>(w.rows());
    const int n = static_cast<int>(w.cols());
    if (n < d) throw RankDeficient("delta_of: fewer columns than rows");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
    const auto& sv = svd.singularValues();
    if (sv(d - 1) <= sv(0) * 1e-12 * std::max(d, n))
        throw RankDeficient("delta_of: matrix does not have full row rank");
    if (binomial(n, d) > limit) throw TooManySubsets("delta_of: too many d-subsets");

    const double max_col = w.colwise().norm().maxCoeff();
    const double singular_thresh = 1e-9 * std::pow(std::max(max_col, 1e-30), d);

    DeltaModularityReport rep;
    rep.min_abs_det = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd sub(d, d);
    for_each_subset(n, d, [&](const std::vector<int>& subset) {
        for (int i = 0; i < d; ++i) sub.col(i) = w.col(subset[i]);
        ++rep.num_submatrices;
        double det = abs_det(sub);
        if (det > singular_thresh) {
            ++rep.num_nonsingular;
            rep.min_abs_det = std::min(rep.min_abs_det, det);
            rep.max_abs_det = std::max(rep.max_abs_det, det);
        }
    });
    if (rep.num_nonsingular == 0) {
        rep.min_abs_det = 0.0;
        rep.is_delta_modular = false;
    } else {
        rep.is_delta_modular = rep.min_abs_det >= 1.0 - 1e-9;
    }
    return rep;
}

FacetProfile facet_profile(const Eigen::MatrixXd& w, const std::vector<int>& subset) {
    const int d = static_cast<int>(w.rows());
    if (static_cast<int>(subset.size()) != d - 1)
        throw BadShape("facet_profile: subset must have d-1 columns");
    for (int i : subset) {
        if (i < 0 || i >= w.cols()) throw BadShape("facet_profile: index out of range");
    }
    Eigen::VectorXd u = orthogonal_unit(w, subset);
    if (u.norm() == 0.0)
        throw DependentSubset("facet_profile: selected columns are dependent");

    FacetProfile prof;
    prof.normal = u;
    prof.alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < w.cols(); ++i) {
        double v = std::abs(u.dot(w.col(i)));
        if (v <= kZeroDotTol) {
            prof.zero_indices.push_back(i);
        } else {
            prof.alpha = std::min(prof.alpha, v);
            prof.beta = std::max(prof.beta, v);
        }
    }
    if (!std::isfinite(prof.alpha)) prof.alpha = 0.0;  // cannot occur at full rank
    return prof;
}

NormalizationResult normalize(const Zonotope& z, int max_iter) {
    const Eigen::Index d = z.dim();
    if (!z.full_rank()) throw RankDeficient("normalize: generators do not span R^d");

    Eigen::MatrixXd w = z.generators();
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(d, d);
    std::vector<int> origin(w.cols());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = static_cast<int>(i);

    int iterations = 0;
    bool done = false;
    while (iterations < max_iter) {
        // Whiten: W <- (W W')^{-1/2} W, so W W' = I exactly.
        Eigen::MatrixXd f = w * w.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f);
        const Eigen::VectorXd& lam = eig.eigenvalues();
        if (lam(0) <= 1e-12 * lam(d - 1))
            throw RankDeficient("normalize: whitening matrix is numerically singular");
        Eigen::VectorXd inv_sqrt = lam.array().rsqrt();
        Eigen::MatrixXd a =
            eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
        w = a * w;
        t = a * t;
        ++iterations;

        const double threshold = 2.0 * std::sqrt(static_cast<double>(d) / w.cols());
        double frob = (w * w.transpose() - Eigen::MatrixXd::Identity(d, d)).norm();
        if (frob <= 1e-8 && w.colwise().norm().maxCoeff() <= threshold) {
            done = true;
            break;
        }

        // Split every over-long column into two copies of w/2; the point set
        // [-w, w] = 2 [-w/2, w/2] is unchanged.
        std::vector<Eigen::VectorXd> cols;
        std::vector<int> new_origin;
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            if (w.col(j).norm() > threshold) {
                cols.push_back(w.col(j) / 2.0);
                cols.push_back(w.col(j) / 2.0);
                new_origin.push_back(origin[j]);
                new_origin.push_back(origin[j]);
            } else {
                cols.push_back(w.col(j));
                new_origin.push_back(origin[j]);
            }
        }
        if (cols.size() != static_cast<std::size_t>(w.cols())) {
            w.resize(d, static_cast<Eigen::Index>(cols.size()));
            for (std::size_t j = 0; j < cols.size(); ++j)
                w.col(static_cast<Eigen::Index>(j)) = cols[j];
            origin = std::move(new_origin);
        }
        // else: whitening alone was insufficient only because of numerics;
        // loop once more.
    }
    if (!done) throw NoConvergence("normalize: conditions unmet after max_iter passes");

    NormalizationResult res{std::move(t), Zonotope(w), {}, iterations};
    for (std::size_t j = 0; j < origin.size(); ++j)
        res.split_map[origin[j]].push_back(static_cast<int>(j));
    return res;
}

MeanWidthEstimate mean_width_estimate(const Zonotope& z, int num_dirs, std::uint64_t seed) {
    if (num_dirs < 1) throw ConfigError("mean_width_estimate: need at least one direction");
    Rng rng(derive_seed(seed, 0x8ead));
    double sum = 0.0, sum_sq = 0.0;
    for (int k = 0; k < num_dirs; ++k) {
        double v = 2.0 * support_function(z, rng.sphere_direction(z.dim()));
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / num_dirs;
    double var = std::max(0.0, sum_sq / num_dirs - mean * mean);
    double se = std::sqrt(var / num_dirs);
    return {mean, se};
}

HPolytope zonotope_to_hpoly(const Zonotope& z, std::int64_t limit) {
    auto normals = enumerate_facet_normals(z, limit);
    const Eigen::Index d = z.dim();
    Eigen::MatrixXd a(2 * static_cast<Eigen::Index>(normals.size()), d);
    Eigen::VectorXd b(2 * static_cast<Eigen::Index>(normals.size()));
    for (std::size_t i = 0; i < normals.size(); ++i) {
        double h = support_function(z, normals[i]);
        a.row(2 * i) = normals[i].transpose();
        a.row(2 * i + 1) = -normals[i].transpose();
        b(2 * i) = h;
        b(2 * i + 1) = h;
    }
    return HPolytope(a, b);
}

double hull_area_2d(const std::vector<Eigen::VectorXd>& points) {
    if (points.size() < 3) return 0.0;
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != 2) throw BadShape("hull_area_2d: points must be 2-d");
        pts.emplace_back(p(0), p(1));
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                    const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {  // upper chain
        while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& p = hull[i];
        const auto& q = hull[(i + 1) % hull.size()];
        area += p.x() * q.y() - q.x() * p.y();
    }
    return std::abs(area) / 2.0;
}

double hull_volume_monte_carlo(const std::vector<Eigen::VectorXd>& points, int samples,
                               std::uint64_t seed) {
    if (points.empty()) return 0.0;
    const Eigen::Index d = points.front().size();
    if (d == 2) return hull_area_2d(points);

    Eigen::MatrixXd p(d, static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) p.col(static_cast<Eigen::Index>(i)) = points[i];
    Eigen::VectorXd lo = p.rowwise().minCoeff();
    Eigen::VectorXd hi = p.rowwise().maxCoeff();
    double box_vol = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) box_vol *= std::max(0.0, hi(i) - lo(i));
    if (box_vol == 0.0) return 0.0;

    Rng rng(derive_seed(seed, 0x407));
    int hits = 0;
    Eigen::VectorXd x(d);
    for (int s = 0; s < samples; ++s) {
        for (Eigen::Index i = 0; i < d; ++i) x(i) = rng.uniform(lo(i), hi(i));
        if (lp::in_convex_hull(p, x)) ++hits;
    }
    return box_vol * hits / samples;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        if (r > (std::numeric_limits<std::int64_t>::max() / (n - k + i)))
            return std::numeric_limits<std::int64_t>::max();  // saturate
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace zontain
