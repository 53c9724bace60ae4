#ifndef TIERMARKET_SCHEDULER_HPP
#define TIERMARKET_SCHEDULER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "tiermarket/instance.hpp"
#include "tiermarket/lp.hpp"

namespace tiermarket::sched {

/// Relaxed welfare optimum with its shadow prices: lambda per user (job
/// rows), mu per tier (capacity rows).
struct SysLpResult {
    Allocation allocation;       // N x T
    std::vector<double> user_duals;  // lambda, N
    std::vector<double> tier_prices; // mu, T
    double value = 0.0;          // V_R
};

struct KktReport {
    double stationarity = 0.0;           // max |F - mu - lambda| on support, max shortfall off it
    double capacity_complementarity = 0.0;  // capacity slack where mu > 0
    double job_complementarity = 0.0;       // job slack where lambda > 0
    double max_residual() const;
};

/// Cumulative completion fractions y_relaxed, their integral rounding
/// y_integral, and the rounded value V_hat.
struct RoundedResult {
    Matrix y_relaxed;   // N x T in [0,1]
    Matrix y_integral;  // N x T binary
    double value = 0.0; // V_hat
};

struct ExactResult {
    Allocation allocation;
    double value = 0.0;                  // V_star
    std::vector<std::size_t> ordering;   // greedy witness permutation of users
};

struct GapBound {
    double standard = 0.0;               // 1 - T*max_j J / min_t M
    std::optional<double> tight;         // 1 - max_j J / min_t M, when applicable
};

/// Number of fractional-pivot entries, i.e. entries strictly inside
/// (tol, J_i - tol) with tol = 1e-9 * J_i.
std::size_t count_partial(const Allocation& x, const std::vector<double>& job_sizes);

lp::LinearProgram build_sys_lp(const ProblemInstance& inst);
SysLpResult solve_sys_lp(const ProblemInstance& inst);
KktReport kkt_check(const ProblemInstance& inst, const SysLpResult& result);

/// Non-preemptive fill: serve users in `ordering`, exhausting each tier's
/// remaining capacity before advancing. At most one partially served user
/// per tier boundary, so the result is (N+T)-sparse.
Allocation greedy_allocation(const ProblemInstance& inst, const std::vector<std::size_t>& ordering);

/// Exact optimum by enumerating greedy fills over all N! user orderings.
/// Guarded at N <= 9.
ExactResult solve_sys_exact_bruteforce(const ProblemInstance& inst);

/// Exact optimum by depth-first branch and bound on the completion
/// indicators, with LP relaxation bounds. Guarded at N*T <= 60.
ExactResult solve_sys_ilp_bnb(const ProblemInstance& inst);

RoundedResult round_lp_solution(const ProblemInstance& inst, const Allocation& x_relaxed);

GapBound gap_bound(const ProblemInstance& inst);

}  // namespace tiermarket::sched

#endif
