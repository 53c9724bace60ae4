#ifndef TIERMARKET_INSTANCE_HPP
#define TIERMARKET_INSTANCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tiermarket/matrix.hpp"

namespace tiermarket {

/// Fraction of a job size treated as "done" slack when deciding completion;
/// absorbs LP round-off so rounding never misses an exact completion.
inline constexpr double kCompletionSlack = 1e-9;

/// A scheduling problem: N users with delay-sensitive utilities over T
/// service tiers, job sizes in function executions, and per-interval
/// execution capacities. Tier end times are carried for reporting only;
/// all math is indexed by tier.
struct ProblemInstance {
    std::size_t n_users = 0;
    std::size_t n_tiers = 0;
    std::vector<double> tier_end_times;  // strictly increasing, seconds
    Matrix utilities;                    // N x T, row-wise non-increasing
    std::vector<double> job_sizes;       // N, positive integers
    std::vector<double> capacities;      // T, positive

    double utility(std::size_t user, std::size_t tier) const { return utilities(user, tier); }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Marginal utilities u[i][t] = U[i][t] - U[i][t+1] (U[i][T] := 0) and the
/// per-function values F[i][t] = U[i][t] / J_i.
struct DerivedValues {
    Matrix marginal;      // N x T
    Matrix per_function;  // N x T
};

using Allocation = Matrix;  // N x T, executions granted per user per interval

/// Completion tier per user under the min-prefix-sum rule. Tier indices are
/// 0-based; n_tiers means "never completed" and earns zero utility.
struct CompletionProfile {
    std::vector<std::size_t> completion_tier;
    std::vector<double> realized_utility;
};

ValidationReport validate_instance(const ProblemInstance& inst);
DerivedValues derive_values(const ProblemInstance& inst);
CompletionProfile completion_times(const ProblemInstance& inst, const Allocation& x);
double realized_welfare(const ProblemInstance& inst, const Allocation& x);

/// Objective of the relaxed problem: sum over users and tiers of F[i][t]*x[i][t].
double relaxed_welfare(const ProblemInstance& inst, const Allocation& x);

/// relaxed_welfare after truncating each user's allocation to its job size,
/// keeping the earliest executions. Allocations in excess of J_i carry no
/// value to the user; every scheme in the simulator is scored this way.
double realized_relaxed_welfare(const ProblemInstance& inst, const Allocation& x);

/// Row-wise truncation used by realized_relaxed_welfare.
Allocation truncate_to_jobs(const ProblemInstance& inst, const Allocation& x);

}  // namespace tiermarket

#endif
