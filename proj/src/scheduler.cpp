#include "tiermarket/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tiermarket::sched {

namespace {
constexpr double kSupportTol = 1e-9;
}

double KktReport::max_residual() const {
    return std::max({stationarity, capacity_complementarity, job_complementarity});
}

std::size_t count_partial(const Allocation& x, const std::vector<double>& job_sizes) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double tol = 1e-9 * job_sizes[i];
        for (std::size_t t = 0; t < x.cols(); ++t)
            if (x(i, t) > tol && x(i, t) < job_sizes[i] - tol) ++count;
    }
    return count;
}

lp::LinearProgram build_sys_lp(const ProblemInstance& inst) {
    const std::size_t n = inst.n_users, t_count = inst.n_tiers;
    DerivedValues derived = derive_values(inst);

    lp::LinearProgram prog;
    prog.objective.resize(n * t_count);
    prog.constraint_matrix = Matrix(n + t_count, n * t_count);
    prog.rhs.resize(n + t_count);
    // Row order fixed for dual extraction: job rows first, then capacities.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < t_count; ++t) {
            std::size_t var = i * t_count + t;
            prog.objective[var] = derived.per_function(i, t);
            prog.constraint_matrix(i, var) = 1.0;
            prog.constraint_matrix(n + t, var) = 1.0;
        }
        prog.rhs[i] = inst.job_sizes[i];
        prog.constraint_names.push_back("job_" + std::to_string(i));
    }
    for (std::size_t t = 0; t < t_count; ++t) {
        prog.rhs[n + t] = inst.capacities[t];
        prog.constraint_names.push_back("capacity_" + std::to_string(t));
    }
    return prog;
}

SysLpResult solve_sys_lp(const ProblemInstance& inst) {
    lp::LinearProgram prog = build_sys_lp(inst);
    lp::LpSolution sol = lp::solve_lp(prog);
    if (sol.status != lp::LpStatus::optimal)
        throw std::runtime_error("solve_sys_lp: solver did not reach an optimum");

    SysLpResult result;
    result.allocation = Allocation(inst.n_users, inst.n_tiers);
    for (std::size_t i = 0; i < inst.n_users; ++i)
        for (std::size_t t = 0; t < inst.n_tiers; ++t)
            result.allocation(i, t) = sol.primal[i * inst.n_tiers + t];
    result.user_duals.assign(sol.duals.begin(), sol.duals.begin() + inst.n_users);
    result.tier_prices.assign(sol.duals.begin() + inst.n_users, sol.duals.end());
    result.value = sol.objective_value;
    return result;
}

KktReport kkt_check(const ProblemInstance& inst, const SysLpResult& result) {
    DerivedValues derived = derive_values(inst);
    KktReport report;
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        for (std::size_t t = 0; t < inst.n_tiers; ++t) {
            double slack = result.tier_prices[t] + result.user_duals[i] - derived.per_function(i, t);
            report.stationarity = std::max(report.stationarity, -slack);
            if (result.allocation(i, t) > kSupportTol)
                report.stationarity = std::max(report.stationarity, std::abs(slack));
        }
    }
    for (std::size_t t = 0; t < inst.n_tiers; ++t) {
        if (result.tier_prices[t] > kSupportTol) {
            double used = result.allocation.col_sum(t);
            report.capacity_complementarity =
                std::max(report.capacity_complementarity,
                         std::abs(used - inst.capacities[t]) / (1.0 + inst.capacities[t]));
        }
    }
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        if (result.user_duals[i] > kSupportTol) {
            double used = result.allocation.row_sum(i);
            report.job_complementarity =
                std::max(report.job_complementarity,
                         std::abs(used - inst.job_sizes[i]) / (1.0 + inst.job_sizes[i]));
        }
    }
    return report;
}

Allocation greedy_allocation(const ProblemInstance& inst, const std::vector<std::size_t>& ordering) {
    if (ordering.size() != inst.n_users)
        throw std::invalid_argument("greedy_allocation: ordering size mismatch");
    std::vector<bool> seen(inst.n_users, false);
    for (std::size_t i : ordering) {
        if (i >= inst.n_users || seen[i])
            throw std::invalid_argument("greedy_allocation: not a permutation");
        seen[i] = true;
    }

    Allocation x(inst.n_users, inst.n_tiers);
    std::size_t tier = 0;
    double remaining = inst.capacities[0];
    for (std::size_t user : ordering) {
        double left = inst.job_sizes[user];
        while (left > 0.0 && tier < inst.n_tiers) {
            double take = std::min(left, remaining);
            x(user, tier) += take;
            left -= take;
            remaining -= take;
            if (remaining <= 0.0 && tier + 1 <= inst.n_tiers) {
                ++tier;
                if (tier < inst.n_tiers) remaining = inst.capacities[tier];
            }
        }
        if (tier >= inst.n_tiers) break;
    }
    return x;
}

ExactResult solve_sys_exact_bruteforce(const ProblemInstance& inst) {
    if (inst.n_users > 9)
        throw std::invalid_argument("exact-solver size guard: brute force requires N <= 9");
    std::vector<std::size_t> perm(inst.n_users);
    std::iota(perm.begin(), perm.end(), 0);

    ExactResult best;
    best.value = -1.0;
    do {
        Allocation x = greedy_allocation(inst, perm);
        double value = realized_welfare(inst, x);
        if (value > best.value) {
            best.value = value;
            best.allocation = std::move(x);
            best.ordering = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

RoundedResult round_lp_solution(const ProblemInstance& inst, const Allocation& x_relaxed) {
    DerivedValues derived = derive_values(inst);
    RoundedResult rounded;
    rounded.y_relaxed = Matrix(inst.n_users, inst.n_tiers);
    rounded.y_integral = Matrix(inst.n_users, inst.n_tiers);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        double prefix = 0.0;
        for (std::size_t t = 0; t < inst.n_tiers; ++t) {
            prefix += x_relaxed(i, t);
            double y = prefix / inst.job_sizes[i];
            rounded.y_relaxed(i, t) = y;
            rounded.y_integral(i, t) = (y >= 1.0 - 1e-6) ? 1.0 : 0.0;
            rounded.value += derived.marginal(i, t) * rounded.y_integral(i, t);
        }
    }
    return rounded;
}

GapBound gap_bound(const ProblemInstance& inst) {
    double max_job = *std::max_element(inst.job_sizes.begin(), inst.job_sizes.end());
    double min_cap = *std::min_element(inst.capacities.begin(), inst.capacities.end());
    GapBound bound;
    bound.standard = 1.0 - static_cast<double>(inst.n_tiers) * max_job / min_cap;

    // The tier-independent variant applies only when the solved relaxation
    // leaves at most one partially served user in every tier.
    SysLpResult lp_result = solve_sys_lp(inst);
    bool one_partial_per_tier = true;
    for (std::size_t t = 0; t < inst.n_tiers && one_partial_per_tier; ++t) {
        std::size_t partial = 0;
        for (std::size_t i = 0; i < inst.n_users; ++i) {
            double tol = 1e-9 * inst.job_sizes[i];
            double v = lp_result.allocation(i, t);
            if (v > tol && v < inst.job_sizes[i] - tol) ++partial;
        }
        if (partial > 1) one_partial_per_tier = false;
    }
    if (one_partial_per_tier) bound.tight = 1.0 - max_job / min_cap;
    return bound;
}

namespace {

// Branch-and-bound node solver: completion indicators y are fixed to 0/1 or
// left free; free ones get [0,1] bounds and their linking row.
struct BnbContext {
    const ProblemInstance& inst;
    const DerivedValues derived;
    double best_value = -1.0;
    Allocation best_allocation;
    long nodes = 0;
};

lp::LpSolution solve_bnb_node(BnbContext& ctx, const std::vector<int>& fixed, double& objective_shift,
                              std::vector<std::size_t>& free_map) {
    const std::size_t n = ctx.inst.n_users, t_count = ctx.inst.n_tiers;
    free_map.clear();
    objective_shift = 0.0;
    std::vector<std::size_t> ones;
    for (std::size_t e = 0; e < n * t_count; ++e) {
        if (fixed[e] < 0)
            free_map.push_back(e);
        else if (fixed[e] == 1) {
            ones.push_back(e);
            objective_shift += ctx.derived.marginal(e / t_count, e % t_count);
        }
    }

    const std::size_t nx = n * t_count;
    const std::size_t ny = free_map.size();
    const std::size_t rows = 2 * ny + ones.size() + t_count;
    lp::LinearProgram prog;
    prog.objective.assign(nx + ny, 0.0);
    prog.constraint_matrix = Matrix(rows, nx + ny);
    prog.rhs.assign(rows, 0.0);

    std::size_t row = 0;
    for (std::size_t f = 0; f < ny; ++f) {
        std::size_t e = free_map[f];
        std::size_t i = e / t_count, t = e % t_count;
        prog.objective[nx + f] = ctx.derived.marginal(i, t);
        // y * J_i - prefix(x) <= 0
        prog.constraint_matrix(row, nx + f) = ctx.inst.job_sizes[i];
        for (std::size_t s = 0; s <= t; ++s) prog.constraint_matrix(row, i * t_count + s) = -1.0;
        prog.rhs[row++] = 0.0;
        // y <= 1
        prog.constraint_matrix(row, nx + f) = 1.0;
        prog.rhs[row++] = 1.0;
    }
    for (std::size_t e : ones) {
        std::size_t i = e / t_count, t = e % t_count;
        for (std::size_t s = 0; s <= t; ++s) prog.constraint_matrix(row, i * t_count + s) = -1.0;
        prog.rhs[row++] = -ctx.inst.job_sizes[i];
    }
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < n; ++i) prog.constraint_matrix(row, i * t_count + t) = 1.0;
        prog.rhs[row++] = ctx.inst.capacities[t];
    }
    return lp::solve_lp(prog);
}

void bnb_recurse(BnbContext& ctx, std::vector<int>& fixed) {
    ++ctx.nodes;
    double shift = 0.0;
    std::vector<std::size_t> free_map;
    lp::LpSolution sol = solve_bnb_node(ctx, fixed, shift, free_map);
    if (sol.status != lp::LpStatus::optimal) return;  // infeasible branch
    double bound = sol.objective_value + shift;
    if (bound <= ctx.best_value + 1e-9) return;

    const std::size_t n = ctx.inst.n_users, t_count = ctx.inst.n_tiers;
    Allocation x(n, t_count);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < t_count; ++t) x(i, t) = sol.primal[i * t_count + t];
    double incumbent = realized_welfare(ctx.inst, x);
    if (incumbent > ctx.best_value) {
        ctx.best_value = incumbent;
        ctx.best_allocation = x;
    }
    if (bound <= ctx.best_value + 1e-9) return;

    // Branch on the fractional completion indicator with the largest
    // marginal utility; depth-first, completed side first.
    std::size_t branch = n * t_count;
    double branch_weight = -1.0;
    for (std::size_t f = 0; f < free_map.size(); ++f) {
        double y = sol.primal[n * t_count + f];
        if (y > 1e-6 && y < 1.0 - 1e-6) {
            std::size_t e = free_map[f];
            double w = ctx.derived.marginal(e / t_count, e % t_count);
            if (w > branch_weight) {
                branch_weight = w;
                branch = e;
            }
        }
    }
    if (branch == n * t_count || branch_weight <= 0.0) return;

    fixed[branch] = 1;
    bnb_recurse(ctx, fixed);
    fixed[branch] = 0;
    bnb_recurse(ctx, fixed);
    fixed[branch] = -1;
}

}  // namespace

ExactResult solve_sys_ilp_bnb(const ProblemInstance& inst) {
    if (inst.n_users * inst.n_tiers > 60)
        throw std::invalid_argument("exact-solver size guard: branch and bound requires N*T <= 60");

    BnbContext ctx{inst, derive_values(inst)};
    ctx.best_allocation = Allocation(inst.n_users, inst.n_tiers);
    std::vector<int> fixed(inst.n_users * inst.n_tiers, -1);
    bnb_recurse(ctx, fixed);

    // Normalize the witness to a greedy fill ordered by completion times;
    // an optimal non-preemptive schedule of this form always exists.
    CompletionProfile profile = completion_times(inst, ctx.best_allocation);
    std::vector<std::size_t> order(inst.n_users);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&profile](std::size_t a, std::size_t b) {
        return profile.completion_tier[a] < profile.completion_tier[b];
    });

    ExactResult result;
    result.ordering = order;
    result.allocation = greedy_allocation(inst, order);
    double greedy_value = realized_welfare(inst, result.allocation);
    if (greedy_value >= ctx.best_value) {
        result.value = greedy_value;
    } else {
        result.allocation = ctx.best_allocation;
        result.value = ctx.best_value;
    }
    return result;
}

}  // namespace tiermarket::sched
