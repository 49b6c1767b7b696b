#ifndef TSG_BEST_RESPONSE_HPP
#define TSG_BEST_RESPONSE_HPP

#include <cstddef>
#include <vector>

#include "tsg/payoff.hpp"

namespace tsg {

// Reward share a user would receive from task `task` given opponent
// execution counts. If counts_include_user is false the user is about to
// join, so one more executor is assumed.
double marginal_share(const Task& task, const ExecutionCounts& counts,
                      bool counts_include_user);

struct BestResponse {
    Schedule schedule;
    double payoff = 0.0;  // >= 0: the empty schedule is always available
};

// Exact optimal feasible schedule for one user against the fixed schedules
// of everyone else, by depth-first branch and bound over ordered subsets of
// the user's available tasks. Ties are resolved deterministically: fewer
// tasks first, then the lexicographically smaller task-id sequence.
BestResponse best_response(const Instance& inst, const Profile& profile,
                           std::size_t user_index);

// Every feasible ordered schedule of the user, in lexicographic order
// (a prefix precedes its extensions; task ids ascending at each position).
// Throws CapExceededError when the user has more than `cap` available tasks.
std::vector<Schedule> enumerate_feasible_schedules(const Instance& inst,
                                                   const User& user,
                                                   std::size_t cap = 8);

}  // namespace tsg

#endif
