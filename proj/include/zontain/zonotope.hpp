#ifndef ZONTAIN_ZONOTOPE_HPP_
#define ZONTAIN_ZONOTOPE_HPP_

#include <Eigen/Dense>

namespace zontain {

/// Zonotope Z(W) = {W x : ||x||_inf <= 1} given by its d x n generator
/// matrix. Centrally symmetric and contains the origin by construction.
/// Zero columns contribute nothing to the set; they are dropped at
/// construction and the drop count is recorded.
class Zonotope {
  public:
    explicit Zonotope(const Eigen::MatrixXd& generators);

    const Eigen::MatrixXd& generators() const { return w_; }
    Eigen::Index dim() const { return w_.rows(); }
    Eigen::Index count() const { return w_.cols(); }

    Eigen::Index rank() const { return rank_; }
    bool full_rank() const { return rank_ == dim(); }
    int dropped_zero_columns() const { return dropped_; }
    const Eigen::VectorXd& column_norms() const { return col_norms_; }

    Eigen::VectorXd column(Eigen::Index i) const { return w_.col(i); }

    /// Z(c W) = c Z(W) for c > 0.
    Zonotope scaled(double factor) const { return Zonotope(factor * w_); }

  private:
    Eigen::MatrixXd w_;
    Eigen::VectorXd col_norms_;
    Eigen::Index rank_ = 0;
    int dropped_ = 0;
};

}  // namespace zontain

#endif  // ZONTAIN_ZONOTOPE_HPP_
