#include "zontain/zonotope.hpp"

#include <Eigen/SVD>

#include "zontain/errors.hpp"

namespace zontain {

Zonotope::Zonotope(const Eigen::MatrixXd& generators) {
    if (generators.rows() < 1) throw BadShape("Zonotope: dimension must be >= 1");

    const Eigen::Index d = generators.rows();
    const Eigen::Index n_in = generators.cols();

    Eigen::MatrixXd kept(d, n_in);
    Eigen::Index n = 0;
    for (Eigen::Index j = 0; j < n_in; ++j) {
        if (generators.col(j).norm() == 0.0) {
            ++dropped_;
        } else {
            kept.col(n++) = generators.col(j);
        }
    }
    if (n == 0) throw BadShape("Zonotope: all generators are zero");
    w_ = kept.leftCols(n);

    col_norms_ = w_.colwise().norm();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w_);
    const auto& sv = svd.singularValues();
    double thresh = sv(0) * 1e-12 * static_cast<double>(std::max(d, n));
    rank_ = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh) ++rank_;
    }
}

}  // namespace zontain
