#ifndef ZONTAIN_SIMPLEX_LP_HPP_
#define ZONTAIN_SIMPLEX_LP_HPP_

#include <Eigen/Dense>

namespace zontain::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
    Status status = Status::IterationLimit;
    Eigen::VectorXd x;       // primal solution (valid when Optimal)
    double objective = 0.0;  // c'x at the solution
};

// Solves  min c'x  s.t.  Ax = b, x >= 0  with a dense two-phase tableau
// simplex using Bland's rule (anti-cycling). Self-contained on purpose:
// desk-scale problems only, no external solver dependency.
Result solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, int max_iter = 100000,
                           double tol = 1e-9);

// Solves  max w'x  s.t.  Ax <= b  (x free). Returns Unbounded when the
// objective is unbounded above.
Result maximize_inequality_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& w, int max_iter = 100000,
                                double tol = 1e-9);

// Feasibility of  {a : M a >= 1 componentwise}  (a free). Used as the strict
// sign-realizability test in vertex enumeration.
bool strictly_feasible(const Eigen::MatrixXd& M, int max_iter = 100000, double tol = 1e-9);

// Whether x lies in conv(columns of P).
bool in_convex_hull(const Eigen::MatrixXd& P, const Eigen::VectorXd& x,
                    int max_iter = 100000, double tol = 1e-9);

}  // namespace zontain::lp

#endif  // ZONTAIN_SIMPLEX_LP_HPP_
