#include "tiermarket/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace tiermarket {

ValidationReport validate_instance(const ProblemInstance& inst) {
    ValidationReport report;
    auto flag = [&report](const std::string& msg) {
        report.ok = false;
        report.violations.push_back(msg);
    };

    if (inst.n_users == 0) flag("no users");
    if (inst.n_tiers == 0) flag("no tiers");
    if (inst.utilities.rows() != inst.n_users || inst.utilities.cols() != inst.n_tiers)
        flag("utility matrix shape mismatch");
    if (inst.job_sizes.size() != inst.n_users) flag("job size vector length mismatch");
    if (inst.capacities.size() != inst.n_tiers) flag("capacity vector length mismatch");
    if (!inst.tier_end_times.empty() && inst.tier_end_times.size() != inst.n_tiers)
        flag("tier end time vector length mismatch");
    if (!report.ok) return report;

    for (std::size_t t = 0; t < inst.tier_end_times.size(); ++t) {
        if (inst.tier_end_times[t] <= 0.0)
            flag("nonpositive tier end time, tier " + std::to_string(t));
        if (t > 0 && inst.tier_end_times[t] <= inst.tier_end_times[t - 1])
            flag("non-increasing tier end times, tier " + std::to_string(t));
    }
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        double j = inst.job_sizes[i];
        if (!(j >= 1.0) || std::floor(j) != j)
            flag("job size not a positive integer, user " + std::to_string(i));
        for (std::size_t t = 0; t < inst.n_tiers; ++t) {
            if (inst.utilities(i, t) < 0.0) {
                flag("negative utility, user " + std::to_string(i));
                break;
            }
        }
        for (std::size_t t = 0; t + 1 < inst.n_tiers; ++t) {
            if (inst.utilities(i, t) < inst.utilities(i, t + 1)) {
                flag("non-monotone utility, user " + std::to_string(i));
                break;
            }
        }
    }
    for (std::size_t t = 0; t < inst.n_tiers; ++t) {
        if (!(inst.capacities[t] > 0.0))
            flag("nonpositive capacity, tier " + std::to_string(t));
    }
    return report;
}

DerivedValues derive_values(const ProblemInstance& inst) {
    DerivedValues d;
    d.marginal = Matrix(inst.n_users, inst.n_tiers);
    d.per_function = Matrix(inst.n_users, inst.n_tiers);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        for (std::size_t t = 0; t < inst.n_tiers; ++t) {
            double next = (t + 1 < inst.n_tiers) ? inst.utilities(i, t + 1) : 0.0;
            d.marginal(i, t) = inst.utilities(i, t) - next;
            d.per_function(i, t) = inst.utilities(i, t) / inst.job_sizes[i];
        }
    }
    return d;
}

static void check_shape(const ProblemInstance& inst, const Allocation& x) {
    if (x.rows() != inst.n_users || x.cols() != inst.n_tiers)
        throw std::invalid_argument("allocation shape does not match instance");
}

CompletionProfile completion_times(const ProblemInstance& inst, const Allocation& x) {
    check_shape(inst, x);
    CompletionProfile profile;
    profile.completion_tier.resize(inst.n_users, inst.n_tiers);
    profile.realized_utility.resize(inst.n_users, 0.0);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        double need = inst.job_sizes[i] * (1.0 - kCompletionSlack);
        double prefix = 0.0;
        for (std::size_t t = 0; t < inst.n_tiers; ++t) {
            prefix += x(i, t);
            if (prefix >= need) {
                profile.completion_tier[i] = t;
                profile.realized_utility[i] = inst.utilities(i, t);
                break;
            }
        }
    }
    return profile;
}

double realized_welfare(const ProblemInstance& inst, const Allocation& x) {
    CompletionProfile profile = completion_times(inst, x);
    double total = 0.0;
    for (double u : profile.realized_utility) total += u;
    return total;
}

double relaxed_welfare(const ProblemInstance& inst, const Allocation& x) {
    check_shape(inst, x);
    double total = 0.0;
    for (std::size_t i = 0; i < inst.n_users; ++i)
        for (std::size_t t = 0; t < inst.n_tiers; ++t)
            total += inst.utilities(i, t) / inst.job_sizes[i] * x(i, t);
    return total;
}

Allocation truncate_to_jobs(const ProblemInstance& inst, const Allocation& x) {
    check_shape(inst, x);
    Allocation out(inst.n_users, inst.n_tiers);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
        double remaining = inst.job_sizes[i];
        for (std::size_t t = 0; t < inst.n_tiers; ++t) {
            double take = std::max(0.0, std::min(x(i, t), remaining));
            out(i, t) = take;
            remaining -= take;
        }
    }
    return out;
}

double realized_relaxed_welfare(const ProblemInstance& inst, const Allocation& x) {
    return relaxed_welfare(inst, truncate_to_jobs(inst, x));
}

}  // namespace tiermarket
