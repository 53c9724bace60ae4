#ifndef TIERMARKET_MARKET_HPP
#define TIERMARKET_MARKET_HPP

#include <cstddef>
#include <vector>

#include "tiermarket/instance.hpp"

namespace tiermarket::market {

/// Posted tier prices and the budget matrix exchanged in the decentralized
/// protocol. Budgets are zero wherever the price is zero.
struct PriceBudgetState {
    std::vector<double> prices;  // q, length T
    Matrix budgets;              // m, N x T
    int iteration = 0;
};

struct TrackingParams {
    double step_size = 1e-4;     // kappa
    int gradient_steps = 40;     // G
    double tolerance = 1e-4;     // eps, relative price change
    double price_floor = 1e-12;  // guards the division inside the gradient
    int max_rounds = 200;

    /// kappa = 1e-6 * mean(F) * N, stable across instance magnitudes.
    static TrackingParams defaults_for(const ProblemInstance& inst);
};

struct TrackingRound {
    int round = 0;
    std::vector<double> prices;      // q at end of round
    Matrix budgets;                  // m submitted this round
    double objective = 0.0;          // welfare of the projected allocation
    double price_delta = 0.0;        // ||q - q_prev|| / max(||q_prev||, eps)
    double budget_delta = 0.0;       // ||m - m_prev||_F
};

struct TrackingResult {
    std::vector<double> prices;  // q*
    Matrix budgets;              // m*
    Allocation allocation;       // x*, after projection
    int rounds = 0;
    bool converged = false;
    std::vector<TrackingRound> trajectory;
};

struct HanResult {
    Matrix projected;
    bool converged = true;
    std::size_t iterations = 0;
};

struct EquilibriumReport {
    double user_objective_residual = 0.0;   // (i) relative optimality gap per user
    double cloud_residual = 0.0;            // (ii) distance from the closed form
    double budget_residual = 0.0;           // (iii) |m - x*q|
    double slack_price_residual = 0.0;      // (iv) price mass on slack tiers
    bool user_optimal = false;
    bool cloud_optimal = false;
    bool budgets_consistent = false;
    bool slack_prices_zero = false;
    bool ok() const {
        return user_optimal && cloud_optimal && budgets_consistent && slack_prices_zero;
    }
};

/// Optimal budget response of one user to posted prices: an LP over the
/// price-positive tiers in the demand variables x = m/q. Tiers priced at
/// zero receive no budget.
std::vector<double> solve_user_problem(const ProblemInstance& inst, std::size_t user,
                                       const std::vector<double>& prices);

/// Capacity-tight stationary point of the budget-weighted log allocation:
/// q_t = sum_i m_it / M_t and x_it = m_it * M_t / sum_j m_jt on tiers with
/// positive budget mass; zero-budget tiers get zero price and allocation.
struct CloudResult {
    Allocation allocation;
    std::vector<double> prices;
};
CloudResult solve_cloud_closed_form(const Matrix& budgets, const std::vector<double>& capacities);

std::vector<double> dual_gradient_step(const std::vector<double>& prices, const Matrix& budgets,
                                       const std::vector<double>& capacities, double step_size,
                                       double price_floor = 1e-12);

TrackingResult price_tracking(const ProblemInstance& inst, const TrackingParams& params);

/// Projection onto {sum_i z_it <= M_t for all t} intersected with {z >= 0}
/// via alternating half-sum corrections with Dykstra-style bookkeeping, so
/// the output is the Euclidean projection onto the intersection.
HanResult han_projection(const Matrix& z, const std::vector<double>& capacities,
                         double eps = 1e-12, std::size_t max_iterations = 100000);

EquilibriumReport equilibrium_check(const ProblemInstance& inst, const Allocation& x,
                                    const Matrix& budgets, const std::vector<double>& prices);

/// Per-round CSV: round,tier,price,budget,objective (tier is 1-based).
void write_trajectory_csv(std::ostream& out, const std::vector<TrackingRound>& trajectory);

}  // namespace tiermarket::market

#endif
