#include "tiermarket/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tiermarket::lp {

namespace {

constexpr double kPivotTol = 1e-10;   // minimum acceptable pivot magnitude
constexpr double kEnterTol = 1e-9;    // reduced cost must beat this to enter
constexpr double kFeasTol = 1e-8;     // absolute-plus-relative feasibility
constexpr double kDegenerateTol = 1e-12;

// Dense simplex tableau. Columns: n structural, m slacks, then artificials
// for rows whose right-hand side had to be negated, and the rhs last.
struct Tableau {
    std::size_t m, n, n_art;
    std::size_t width;          // total columns including rhs
    std::vector<double> cells;  // (m + 1) rows; last row is the objective
    std::vector<int> basis;     // basic column per constraint row

    double* row(std::size_t i) { return cells.data() + i * width; }
    const double* row(std::size_t i) const { return cells.data() + i * width; }
    double* obj() { return row(m); }

    std::size_t rhs_col() const { return width - 1; }
    bool is_artificial(std::size_t col) const { return col >= n + m && col < width - 1; }
};

void pivot(Tableau& tab, std::size_t r, std::size_t col) {
    double* pr = tab.row(r);
    double inv = 1.0 / pr[col];
    for (std::size_t j = 0; j < tab.width; ++j) pr[j] *= inv;
    pr[col] = 1.0;
    for (std::size_t i = 0; i <= tab.m; ++i) {
        if (i == r) continue;
        double* ri = tab.row(i);
        double f = ri[col];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < tab.width; ++j) ri[j] -= f * pr[j];
        ri[col] = 0.0;
    }
    tab.basis[r] = static_cast<int>(col);
}

// Prices the objective coefficients `c` (length = width-1) against the
// current basis, writing reduced costs into the objective row.
void price_objective(Tableau& tab, const std::vector<double>& c) {
    double* obj = tab.obj();
    for (std::size_t j = 0; j < tab.width; ++j) obj[j] = (j < c.size()) ? c[j] : 0.0;
    for (std::size_t i = 0; i < tab.m; ++i) {
        double cb = c[static_cast<std::size_t>(tab.basis[i])];
        if (cb == 0.0) continue;
        const double* ri = tab.row(i);
        for (std::size_t j = 0; j < tab.width; ++j) obj[j] -= cb * ri[j];
    }
}

enum class PivotOutcome { optimal, unbounded, iteration_cap };

PivotOutcome run_simplex(Tableau& tab, bool allow_artificial_entering, long degenerate_budget) {
    const std::size_t cols = tab.width - 1;
    long degenerate_pivots = 0;
    bool bland = false;
    long iteration_cap = 20000 + 60L * static_cast<long>(tab.m + cols);

    for (long iter = 0; iter < iteration_cap; ++iter) {
        const double* obj = tab.obj();
        std::size_t enter = cols;
        if (!bland) {
            double best = kEnterTol;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!allow_artificial_entering && tab.is_artificial(j)) continue;
                if (obj[j] > best) {
                    best = obj[j];
                    enter = j;
                }
            }
        } else {
            for (std::size_t j = 0; j < cols; ++j) {
                if (!allow_artificial_entering && tab.is_artificial(j)) continue;
                if (obj[j] > kEnterTol) {
                    enter = j;
                    break;
                }
            }
        }
        if (enter == cols) return PivotOutcome::optimal;

        // Ratio test. Outside Bland mode, among rows within a whisker of the
        // minimum ratio, prefer the largest pivot element for stability.
        std::size_t leave = tab.m;
        double best_ratio = std::numeric_limits<double>::infinity();
        double best_pivot = 0.0;
        for (std::size_t i = 0; i < tab.m; ++i) {
            double a = tab.row(i)[enter];
            if (a <= kPivotTol) continue;
            double ratio = tab.row(i)[tab.rhs_col()] / a;
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                best_pivot = a;
                leave = i;
            } else if (ratio <= best_ratio + 1e-12 && leave != tab.m) {
                if (!bland) {
                    if (a > best_pivot) {
                        best_pivot = a;
                        leave = i;
                    }
                } else if (tab.basis[i] < tab.basis[leave]) {
                    leave = i;
                }
            }
        }
        if (leave == tab.m) return PivotOutcome::unbounded;

        if (best_ratio < kDegenerateTol) {
            if (++degenerate_pivots > degenerate_budget) bland = true;
        }
        pivot(tab, leave, enter);
    }
    return PivotOutcome::iteration_cap;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& prog) {
    const std::size_t m = prog.constraint_matrix.rows();
    const std::size_t n = prog.constraint_matrix.cols();
    if (prog.objective.size() != n || prog.rhs.size() != m)
        throw std::invalid_argument("solve_lp: dimension mismatch");
    for (double v : prog.rhs)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: non-finite rhs");

    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i)
        if (prog.rhs[i] < 0.0) art_rows.push_back(i);
    const std::size_t n_art = art_rows.size();

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.n_art = n_art;
    tab.width = n + m + n_art + 1;
    tab.cells.assign((m + 1) * tab.width, 0.0);
    tab.basis.resize(m);

    std::size_t next_art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        double sign = (prog.rhs[i] < 0.0) ? -1.0 : 1.0;
        double* ri = tab.row(i);
        for (std::size_t j = 0; j < n; ++j) ri[j] = sign * prog.constraint_matrix(i, j);
        ri[n + i] = sign;
        ri[tab.rhs_col()] = sign * prog.rhs[i];
        if (sign < 0.0) {
            ri[next_art] = 1.0;
            tab.basis[i] = static_cast<int>(next_art++);
        } else {
            tab.basis[i] = static_cast<int>(n + i);
        }
    }

    const long degenerate_budget = 3L * static_cast<long>(m + n);
    LpSolution sol;

    double b_scale = 0.0;
    for (double v : prog.rhs) b_scale = std::max(b_scale, std::abs(v));

    if (n_art > 0) {
        std::vector<double> phase1(n + m + n_art, 0.0);
        for (std::size_t j = n + m; j < n + m + n_art; ++j) phase1[j] = -1.0;
        price_objective(tab, phase1);
        PivotOutcome out = run_simplex(tab, true, degenerate_budget);
        if (out == PivotOutcome::iteration_cap)
            throw std::runtime_error("solve_lp: phase 1 iteration cap reached");
        double infeasibility = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.is_artificial(static_cast<std::size_t>(tab.basis[i])))
                infeasibility += tab.row(i)[tab.rhs_col()];
        if (infeasibility > kFeasTol * (1.0 + b_scale)) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Drive remaining artificials out of the basis where possible;
        // all-zero rows are redundant and may keep theirs at level zero.
        for (std::size_t i = 0; i < m; ++i) {
            if (!tab.is_artificial(static_cast<std::size_t>(tab.basis[i]))) continue;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (std::abs(tab.row(i)[j]) > kPivotTol) {
                    pivot(tab, i, j);
                    break;
                }
            }
        }
    }

    std::vector<double> phase2(n + m + n_art, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = prog.objective[j];
    price_objective(tab, phase2);
    PivotOutcome out = run_simplex(tab, false, degenerate_budget);
    if (out == PivotOutcome::iteration_cap)
        throw std::runtime_error("solve_lp: iteration cap reached");
    if (out == PivotOutcome::unbounded) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    sol.status = LpStatus::optimal;
    sol.primal.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t col = static_cast<std::size_t>(tab.basis[i]);
        if (col < n) sol.primal[col] = std::max(0.0, tab.row(i)[tab.rhs_col()]);
    }
    sol.duals.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = std::max(0.0, -tab.obj()[n + i]);
    sol.objective_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective_value += prog.objective[j] * sol.primal[j];
    sol.basis.assign(tab.basis.begin(), tab.basis.end());
    return sol;
}

LpCertificate dual_certificate_check(const LinearProgram& prog, const LpSolution& sol) {
    const std::size_t m = prog.constraint_matrix.rows();
    const std::size_t n = prog.constraint_matrix.cols();
    LpCertificate cert;
    for (std::size_t j = 0; j < n; ++j)
        cert.max_primal_residual = std::max(cert.max_primal_residual, -sol.primal[j]);
    double b_dot_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row_activity = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row_activity += prog.constraint_matrix(i, j) * sol.primal[j];
        cert.max_primal_residual = std::max(cert.max_primal_residual, row_activity - prog.rhs[i]);
        cert.max_dual_infeasibility = std::max(cert.max_dual_infeasibility, -sol.duals[i]);
        b_dot_y += prog.rhs[i] * sol.duals[i];
    }
    double c_dot_x = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double priced = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            priced += sol.duals[i] * prog.constraint_matrix(i, j);
        cert.max_dual_infeasibility =
            std::max(cert.max_dual_infeasibility, prog.objective[j] - priced);
        c_dot_x += prog.objective[j] * sol.primal[j];
    }
    cert.duality_gap = std::abs(c_dot_x - b_dot_y);
    return cert;
}

}  // namespace tiermarket::lp
