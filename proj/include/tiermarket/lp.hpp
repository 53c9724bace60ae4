#ifndef TIERMARKET_LP_HPP
#define TIERMARKET_LP_HPP

#include <string>
#include <vector>

#include "tiermarket/matrix.hpp"

namespace tiermarket::lp {

/// Canonical form shared by every relaxation in this project:
///   maximize c.x  subject to  A x <= b,  x >= 0.
struct LinearProgram {
    std::vector<double> objective;           // c, length n
    Matrix constraint_matrix;                // A, m x n
    std::vector<double> rhs;                 // b, length m
    std::vector<std::string> variable_names;    // optional labels
    std::vector<std::string> constraint_names;  // optional labels
};

enum class LpStatus { optimal, infeasible, unbounded };

/// Basic optimal solution. `primal` is a vertex (at most m nonzeros),
/// `duals` holds one nonnegative multiplier per constraint row, and `basis`
/// lists the basic column indices (structural columns first, then slacks).
struct LpSolution {
    LpStatus status = LpStatus::optimal;
    std::vector<double> primal;
    std::vector<double> duals;
    double objective_value = 0.0;
    std::vector<int> basis;
    int iterations = 0;
};

struct LpCertificate {
    double max_primal_residual = 0.0;
    double max_dual_infeasibility = 0.0;
    double duality_gap = 0.0;
};

/// Two-phase primal simplex on the slack-augmented standard form with a
/// fixed pivot rule, so identical inputs give bit-identical output. Falls
/// back to Bland's rule after 3*(rows+cols) degenerate pivots.
LpSolution solve_lp(const LinearProgram& prog);

LpCertificate dual_certificate_check(const LinearProgram& prog, const LpSolution& sol);

}  // namespace tiermarket::lp

#endif
