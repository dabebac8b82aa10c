#include "zontain/simplex_lp.hpp"

#include <cmath>
#include <vector>

namespace zontain::lp {

namespace {

// Tableau layout: rows 0..m-1 are constraints, columns 0..n_total-1 are
// variables, the last column holds the right-hand side. basis[r] is the
// variable basic in row r.
struct Tableau {
    Eigen::MatrixXd t;        // m x (n_total + 1)
    std::vector<int> basis;   // size m
    int m = 0;
    int n = 0;                // number of eligible (non-artificial) columns

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r < m; ++r) {
            if (r == row) continue;
            double f = t(r, col);
            if (f != 0.0) t.row(r) -= f * t.row(row);
        }
        basis[row] = col;
    }
};

// One simplex phase on the given reduced-cost row. Bland's rule: entering
// variable is the lowest-index column with negative reduced cost; leaving row
// is the ratio-test winner with the lowest basis index among ties.
Status run_phase(Tableau& tab, Eigen::RowVectorXd& cost, double& offset, int n_eligible,
                 int& iters_left, double tol) {
    while (true) {
        if (iters_left-- <= 0) return Status::IterationLimit;
        int enter = -1;
        for (int j = 0; j < n_eligible; ++j) {
            if (cost(j) < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return Status::Optimal;

        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < tab.m; ++r) {
            double a = tab.t(r, enter);
            if (a > tol) {
                double ratio = tab.t(r, tab.t.cols() - 1) / a;
                if (leave < 0 || ratio < best_ratio - tol ||
                    (ratio < best_ratio + tol && tab.basis[r] < tab.basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return Status::Unbounded;

        // Update the cost row alongside the tableau.
        double f = cost(enter) / tab.t(leave, enter);
        cost -= f * tab.t.row(leave).head(cost.size());
        offset -= f * tab.t(leave, tab.t.cols() - 1);
        cost(enter) = 0.0;
        tab.pivot(leave, enter);
    }
}

}  // namespace

Result solve_standard_form(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                           const Eigen::VectorXd& c, int max_iter, double tol) {
    const int m = static_cast<int>(A_in.rows());
    const int n = static_cast<int>(A_in.cols());

    Eigen::MatrixXd A = A_in;
    Eigen::VectorXd b = b_in;
    for (int r = 0; r < m; ++r) {
        if (b(r) < 0) {
            A.row(r) = -A.row(r);
            b(r) = -b(r);
        }
    }

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.t.resize(m, n + m + 1);
    tab.t.leftCols(n) = A;
    tab.t.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    tab.t.col(n + m) = b;
    tab.basis.resize(m);
    for (int r = 0; r < m; ++r) tab.basis[r] = n + r;

    Result res;
    int iters_left = max_iter;

    // Phase 1: minimize the sum of artificials.
    {
        Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(n + m);
        double offset = 0.0;
        for (int r = 0; r < m; ++r) {
            cost.head(n) -= tab.t.row(r).head(n);
            offset -= tab.t(r, n + m);
        }
        Status st = run_phase(tab, cost, offset, n, iters_left, tol);
        if (st == Status::IterationLimit) {
            res.status = st;
            return res;
        }
        double phase1 = -offset;  // current value of sum of artificials
        if (phase1 > tol * (1.0 + b.lpNorm<Eigen::Infinity>())) {
            res.status = Status::Infeasible;
            return res;
        }
        // Drive any artificial still basic (at zero) out of the basis when a
        // pivot exists; otherwise the row is redundant and stays inert.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] >= n) {
                for (int j = 0; j < n; ++j) {
                    if (std::abs(tab.t(r, j)) > tol) {
                        tab.pivot(r, j);
                        break;
                    }
                }
            }
        }
    }

    // Phase 2 on the original objective, artificials excluded from entering.
    {
        Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(n + m);
        cost.head(n) = c.transpose();
        double offset = 0.0;
        for (int r = 0; r < m; ++r) {
            int bj = tab.basis[r];
            if (bj < n && cost(bj) != 0.0) {
                double f = cost(bj);
                cost -= f * tab.t.row(r).head(n + m);
                offset -= f * tab.t(r, n + m);
                cost(bj) = 0.0;
            }
        }
        Status st = run_phase(tab, cost, offset, n, iters_left, tol);
        if (st != Status::Optimal) {
            res.status = st;
            return res;
        }
        res.status = Status::Optimal;
        res.x = Eigen::VectorXd::Zero(n);
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] < n) res.x(tab.basis[r]) = tab.t(r, n + m);
        }
        res.objective = c.dot(res.x);
    }
    return res;
}

Result maximize_inequality_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& w, int max_iter, double tol) {
    const int m = static_cast<int>(A.rows());
    const int d = static_cast<int>(A.cols());
    // Variables [x+; x-; s]: A(x+ - x-) + s = b, s >= 0.
    Eigen::MatrixXd As(m, 2 * d + m);
    As.leftCols(d) = A;
    As.middleCols(d, d) = -A;
    As.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * d + m);
    c.head(d) = -w;
    c.segment(d, d) = w;

    Result inner = solve_standard_form(As, b, c, max_iter, tol);
    Result res;
    res.status = inner.status;
    if (inner.status == Status::Optimal) {
        res.x = inner.x.head(d) - inner.x.segment(d, d);
        res.objective = w.dot(res.x);
    }
    return res;
}

bool strictly_feasible(const Eigen::MatrixXd& M, int max_iter, double tol) {
    const int m = static_cast<int>(M.rows());
    const int d = static_cast<int>(M.cols());
    // M(a+ - a-) - s = 1, a+, a-, s >= 0; feasibility only.
    Eigen::MatrixXd A(m, 2 * d + m);
    A.leftCols(d) = M;
    A.middleCols(d, d) = -M;
    A.rightCols(m) = -Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * d + m);
    Result r = solve_standard_form(A, b, c, max_iter, tol);
    return r.status == Status::Optimal;
}

bool in_convex_hull(const Eigen::MatrixXd& P, const Eigen::VectorXd& x, int max_iter,
                    double tol) {
    const int d = static_cast<int>(P.rows());
    const int k = static_cast<int>(P.cols());
    Eigen::MatrixXd A(d + 1, k);
    A.topRows(d) = P;
    A.row(d).setOnes();
    Eigen::VectorXd b(d + 1);
    b.head(d) = x;
    b(d) = 1.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
    Result r = solve_standard_form(A, b, c, max_iter, tol);
    return r.status == Status::Optimal;
}

}  // namespace zontain::lp
