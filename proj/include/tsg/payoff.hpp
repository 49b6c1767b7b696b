#ifndef TSG_PAYOFF_HPP
#define TSG_PAYOFF_HPP

#include <map>

#include "tsg/model.hpp"

namespace tsg {

// Number of users executing each task; every instance task has an entry
// (zero when no schedule contains it).
using ExecutionCounts = std::map<TaskId, int>;

ExecutionCounts execution_counts(const Instance& inst, const Profile& profile);

// Reward collected by one user: each executed task's reward divided by the
// number of users executing it (equal sharing).
double user_reward(const Instance& inst, const Profile& profile, std::size_t user_index);

// Sum of the user's per-task execution costs; order-invariant.
double execution_cost(const User& user, const Schedule& sched);

// Chained travel distance from the user's start through the schedule in
// order, times the per-meter rate; order-sensitive.
double travel_cost(const Instance& inst, const User& user, const Schedule& sched);

// reward - execution cost - travel cost.
double user_payoff(const Instance& inst, const Profile& profile, std::size_t user_index);

// Potential of a profile: harmonic-weighted reward term minus all costs.
// Its change under any unilateral deviation equals the deviator's payoff change.
double potential(const Instance& inst, const Profile& profile);

// Social welfare: each executed task's reward counted once, minus all costs.
// Equals the sum of all user payoffs.
double social_welfare(const Instance& inst, const Profile& profile);

// Jain fairness index of a value vector, (sum v)^2 / (N * sum v^2).
// Defined as 1 when every value is zero (or the vector is empty).
double jain_index(const std::vector<double>& values);

// Jain index of the profile's payoff vector.
double jain_index(const Instance& inst, const Profile& profile);

}  // namespace tsg

#endif
