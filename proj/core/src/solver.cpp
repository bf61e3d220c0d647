#include "cdg/solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

namespace cdg {

namespace {

using RowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// No-fill incomplete LU on the matrix's own sparsity pattern (CSR storage,
// unit lower / upper split along the diagonal).
class Ilu0 {
public:
    explicit Ilu0(RowMajor a) : a_(std::move(a)) {
        a_.makeCompressed();
        int n = static_cast<int>(a_.rows());
        const int* row_ptr = a_.outerIndexPtr();
        const int* col = a_.innerIndexPtr();
        double* val = a_.valuePtr();

        diag_.assign(n, -1);
        for (int i = 0; i < n; ++i)
            for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
                if (col[p] == i) diag_[i] = p;

        for (int i = 0; i < n; ++i) {
            if (diag_[i] < 0) throw std::runtime_error("ilu0: missing diagonal entry");
            for (int pk = row_ptr[i]; pk < diag_[i]; ++pk) {
                int k = col[pk];
                double piv = val[diag_[k]];
                if (piv == 0.0) throw std::runtime_error("ilu0: zero pivot");
                double lik = val[pk] /= piv;
                // row_i -= lik * upper(row_k) on the shared pattern;
                // columns are sorted, so a merge-join finds the overlap
                int qk = diag_[k] + 1;
                int qi = pk + 1;
                while (qk < row_ptr[k + 1] && qi < row_ptr[i + 1]) {
                    if (col[qk] == col[qi])
                        val[qi++] -= lik * val[qk++];
                    else if (col[qk] < col[qi])
                        ++qk;
                    else
                        ++qi;
                }
            }
            if (val[diag_[i]] == 0.0) throw std::runtime_error("ilu0: zero pivot");
        }
    }

    // Solve (L U) z = r.
    Eigen::VectorXd apply(const Eigen::VectorXd& r) const {
        int n = static_cast<int>(a_.rows());
        const int* row_ptr = a_.outerIndexPtr();
        const int* col = a_.innerIndexPtr();
        const double* val = a_.valuePtr();
        Eigen::VectorXd z = r;
        for (int i = 0; i < n; ++i) {
            double s = z[i];
            for (int p = row_ptr[i]; p < diag_[i]; ++p) s -= val[p] * z[col[p]];
            z[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = z[i];
            for (int p = diag_[i] + 1; p < row_ptr[i + 1]; ++p) s -= val[p] * z[col[p]];
            z[i] = s / val[diag_[i]];
        }
        return z;
    }

private:
    RowMajor a_;
    std::vector<int> diag_;
};

SolveResult solve_lu(const SparseSystem& system) {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(system.matrix);
    lu.factorize(system.matrix);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve: LU factorization failed (singular matrix?)");
    SolveResult res;
    res.x = lu.solve(system.rhs);
    double rhs_norm = system.rhs.norm();
    res.report.residual =
        rhs_norm > 0.0 ? (system.matrix * res.x - system.rhs).norm() / rhs_norm : 0.0;
    res.report.converged = true;
    res.report.method = "lu";
    return res;
}

// Restarted GMRES with right preconditioning, so the reported residual is the
// true one.
SolveResult solve_gmres(const SparseSystem& system, const SolverConfig& cfg) {
    const SparseMatrix& A = system.matrix;
    int n = static_cast<int>(A.rows());
    RowMajor arow = A;

    std::unique_ptr<Ilu0> ilu;
    Eigen::VectorXd dinv;
    if (cfg.precond == Preconditioner::ILU0) ilu = std::make_unique<Ilu0>(arow);
    if (cfg.precond == Preconditioner::Diagonal) {
        dinv = A.diagonal();
        for (int i = 0; i < n; ++i) dinv[i] = dinv[i] != 0.0 ? 1.0 / dinv[i] : 1.0;
    }
    auto precond = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        if (ilu) return ilu->apply(v);
        if (dinv.size() > 0) return dinv.asDiagonal() * v;
        return v;
    };

    double bnorm = system.rhs.norm();
    SolveResult res;
    res.report.method = "gmres";
    if (bnorm == 0.0) {
        res.x = Eigen::VectorXd::Zero(n);
        res.report.converged = true;
        return res;
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    int m = std::max(1, cfg.restart);
    Eigen::MatrixXd V(n, m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    std::vector<double> cs(m), sn(m);
    int total_iters = 0;
    double rel = 1.0;

    while (total_iters < cfg.max_iter) {
        Eigen::VectorXd r = system.rhs - A * x;
        double beta = r.norm();
        rel = beta / bnorm;
        if (rel <= cfg.tol) break;

        V.col(0) = r / beta;
        Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
        g[0] = beta;

        int j = 0;
        for (; j < m && total_iters < cfg.max_iter; ++j, ++total_iters) {
            Eigen::VectorXd w = A * precond(V.col(j));
            for (int i = 0; i <= j; ++i) {
                H(i, j) = w.dot(V.col(i));
                w -= H(i, j) * V.col(i);
            }
            H(j + 1, j) = w.norm();
            if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);

            // Givens rotations keep the least-squares residual explicit
            for (int i = 0; i < j; ++i) {
                double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
                H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
                H(i, j) = t;
            }
            double denom = std::hypot(H(j, j), H(j + 1, j));
            cs[j] = denom > 0.0 ? H(j, j) / denom : 1.0;
            sn[j] = denom > 0.0 ? H(j + 1, j) / denom : 0.0;
            H(j, j) = denom;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] *= cs[j];

            if (std::abs(g[j + 1]) / bnorm <= cfg.tol) {
                ++j;
                break;
            }
        }

        Eigen::VectorXd y =
            H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
        Eigen::VectorXd dx = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < j; ++i) dx += y[i] * V.col(i);
        x += precond(dx);

        rel = (system.rhs - A * x).norm() / bnorm;
        if (rel <= cfg.tol) break;
        if (j == 0) break;  // breakdown
    }

    res.x = x;
    res.report.iterations = total_iters;
    res.report.residual = (system.rhs - A * x).norm() / bnorm;
    res.report.converged = res.report.residual <= cfg.tol;
    return res;
}

}  // namespace

SolveResult solve(const SparseSystem& system, const SolverConfig& config) {
    if (system.matrix.rows() != system.matrix.cols())
        throw std::invalid_argument("solve: matrix must be square");
    if (system.matrix.rows() != system.rhs.size())
        throw std::invalid_argument("solve: rhs dimension mismatch");
    if (!(config.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");

    SolverMethod method = config.method;
    if (method == SolverMethod::Auto)
        method = system.matrix.rows() <= 20000 ? SolverMethod::DirectLU : SolverMethod::GMRES;
    return method == SolverMethod::DirectLU ? solve_lu(system) : solve_gmres(system, config);
}

}  // namespace cdg
