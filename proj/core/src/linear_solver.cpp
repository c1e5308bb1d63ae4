#include "keps/linear_solver.hpp"

#include <cmath>

#include "keps/parallel.hpp"

namespace keps {

namespace {

constexpr int kRestart = 30;

double norm2(const std::vector<double>& x) { return std::sqrt(blocked_dot(x, x)); }

void apply_diag_inv(const std::vector<double>* d, const std::vector<double>& x,
                    std::vector<double>& y) {
    if (d == nullptr) {
        y = x;
        return;
    }
    y.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / (*d)[i];
}

} // namespace

std::pair<std::vector<double>, SolveStats> solve_linear_system(
    const ApplyFn& apply_operator, const std::vector<double>& rhs, const StepConfig& cfg,
    const std::vector<double>* jacobi_diagonal) {
    cfg.validate();
    const std::size_t n = rhs.size();
    SolveStats stats;

    std::vector<double> x(n, 0.0);
    const double bnorm = norm2(rhs);
    if (bnorm == 0.0) {
        stats.converged = true;
        return {std::move(x), stats};
    }
    const double target = cfg.lin_tol * bnorm;

    // Right-preconditioned GMRES(kRestart): solve A M^{-1} y = b, x = M^{-1} y.
    // The Arnoldi residual equals the true unpreconditioned residual.
    std::vector<double> r(n), w(n), tmp(n);
    std::vector<std::vector<double>> V;
    std::vector<double> g_rhs(kRestart + 1), cs(kRestart), sn(kRestart);
    // column-major upper Hessenberg, H[j] holds column j (j+2 entries)
    std::vector<std::vector<double>> H;

    r = rhs; // x = 0 initially each outer cycle continues from current x
    double rnorm = bnorm;

    while (true) {
        // residual for current x
        apply_operator(x, tmp);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - tmp[i];
        rnorm = norm2(r);
        if (rnorm <= target) break;
        if (stats.iterations >= cfg.lin_maxit) {
            stats.converged = false;
            stats.final_relative_residual = rnorm / bnorm;
            throw LinearSolveDiverged(stats);
        }

        V.assign(1, r);
        for (std::size_t i = 0; i < n; ++i) V[0][i] /= rnorm;
        H.clear();
        std::fill(g_rhs.begin(), g_rhs.end(), 0.0);
        g_rhs[0] = rnorm;

        int m = 0;
        for (int j = 0; j < kRestart && stats.iterations < cfg.lin_maxit; ++j) {
            apply_diag_inv(jacobi_diagonal, V[j], tmp);
            apply_operator(tmp, w);
            ++stats.iterations;

            H.emplace_back(j + 2, 0.0);
            for (int i = 0; i <= j; ++i) { // modified Gram-Schmidt
                const double hij = blocked_dot(w, V[i]);
                H[j][i] = hij;
                for (std::size_t q = 0; q < n; ++q) w[q] -= hij * V[i][q];
            }
            const double hnext = norm2(w);
            H[j][j + 1] = hnext;

            // apply accumulated Givens rotations to the new column
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * H[j][i] + sn[i] * H[j][i + 1];
                H[j][i + 1] = -sn[i] * H[j][i] + cs[i] * H[j][i + 1];
                H[j][i] = t;
            }
            const double denom = std::hypot(H[j][j], H[j][j + 1]);
            if (denom == 0.0) { // singular Hessenberg: operator defective on this subspace
                stats.converged = false;
                stats.final_relative_residual = rnorm / bnorm;
                throw LinearSolveDiverged(stats);
            }
            cs[j] = H[j][j] / denom;
            sn[j] = H[j][j + 1] / denom;
            H[j][j] = denom;
            H[j][j + 1] = 0.0;
            g_rhs[j + 1] = -sn[j] * g_rhs[j];
            g_rhs[j] = cs[j] * g_rhs[j];
            m = j + 1;

            const double res_est = std::abs(g_rhs[j + 1]);
            if (hnext == 0.0 || res_est <= target) break;
            std::vector<double> v_next(w);
            for (std::size_t q = 0; q < n; ++q) v_next[q] /= hnext;
            V.push_back(std::move(v_next));
        }

        // back substitution for the small least squares problem
        std::vector<double> y(m, 0.0);
        for (int i = m - 1; i >= 0; --i) {
            double s = g_rhs[i];
            for (int k2 = i + 1; k2 < m; ++k2) s -= H[k2][i] * y[k2];
            y[i] = s / H[i][i];
        }
        // x += M^{-1} (V y)
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (int i = 0; i < m; ++i)
            for (std::size_t q = 0; q < n; ++q) tmp[q] += y[i] * V[i][q];
        apply_diag_inv(jacobi_diagonal, tmp, w);
        for (std::size_t q = 0; q < n; ++q) x[q] += w[q];
    }

    stats.converged = true;
    stats.final_relative_residual = rnorm / bnorm;
    return {std::move(x), stats};
}

} // namespace keps
