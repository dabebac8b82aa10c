#ifndef ZONTAIN_SPARSIFY_HPP_
#define ZONTAIN_SPARSIFY_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace zontain {

// Repo-wide sparsification constants. Neither is a theorem constant: both are
// configurable defaults that the tests treat as the asserted caps.
inline constexpr double kLewisSampleConstant = 8.0;  // C_L: m = ceil(C_L d log(d/eps)/eps^2)
inline constexpr double kBssSizeConstant = 16.0;     // C_B: nnz <= ceil(C_B d/eps^2)

enum class SparsifyMethod { Lewis, Bss, DeltaModular };

std::string to_string(SparsifyMethod m);
SparsifyMethod sparsify_method_from_string(const std::string& s);

struct SparsificationResult {
    std::vector<int> indices;   // into the original columns
    Eigen::VectorXd weights;    // positive scaling c_i per kept column
    double epsilon = 0.0;
    SparsifyMethod method = SparsifyMethod::Lewis;
    double lower_factor = 1.0;  // claimed lower * Z(W) inside Z(W')
    double upper_factor = 1.0;  // claimed Z(W') inside upper * Z(W)
    double rescale = 1.0;       // Delta applied on top of the raw BSS weights

    /// Generator matrix of the sparsified zonotope: column k is
    /// weights[k] * W.col(indices[k]).
    Eigen::MatrixXd apply(const Eigen::MatrixXd& w) const;

    std::string to_json() const;
    static SparsificationResult from_json(const std::string& json_text);
};

struct LewisState {
    Eigen::VectorXd weights;  // in (0, 1], sum to d at the fixed point
    int iterations = 0;
    double residual = 0.0;    // max relative change in the last pass
};

/// l1 Lewis weights: the fixed point of w_i = (w_i' M^{-1} w_i)^{1/2} with
/// M = sum_j (1/w_j) w_j w_j'. Damped fixed-point iteration (geometric mean
/// of old and new), uniform d/n start.
LewisState lewis_weights(const Eigen::MatrixXd& w, double tol = 1e-8, int max_iter = 500);

/// Randomized generator reduction: samples m = ceil(C_L d log(d/eps)/eps^2)
/// columns with replacement, probability w_i/d, kept column scaled by
/// count_i/(m p_i); duplicates merge.
SparsificationResult sparsify_lewis(const Eigen::MatrixXd& w, double epsilon,
                                    std::uint64_t seed);

/// Deterministic barrier-potential selection. Contract: every generalized
/// eigenvalue of (W D W', W W') lies in [(1-eps)^2, (1+eps)^2] and
/// nnz <= ceil(C_B d/eps^2). The schedule behind it is pinned in one
/// constant block in the implementation.
SparsificationResult sparsify_bss(const Eigen::MatrixXd& w, double epsilon);

/// Delta-modular pipeline: BSS on W, kept columns rescaled by delta so the
/// facet-normal sandwich
///   (1-eps)^2 ||W'u||_1 <= ||W''u||_1 <= delta^2 (1+eps)^2 ||W'u||_1
/// holds verbatim. The pre-rescale weights are weights/rescale.
SparsificationResult sparsify_delta_modular(const Eigen::MatrixXd& w, double epsilon,
                                            double delta);

/// Min and max of ||W''u||_1 / ||W'u||_1 over the given directions.
std::pair<double, double> verify_sandwich(const Eigen::MatrixXd& w,
                                          const SparsificationResult& result,
                                          const std::vector<Eigen::VectorXd>& dirs);

/// Expands integer-weighted columns (c_i w_i) into c_i unit copies so the
/// Delta-modular pipeline applies; total expanded columns capped at 1e5.
Eigen::MatrixXd expand_integer_weights(const Eigen::MatrixXd& w,
                                       const std::vector<int>& counts);

}  // namespace zontain

#endif  // ZONTAIN_SPARSIFY_HPP_
