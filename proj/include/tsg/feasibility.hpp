#ifndef TSG_FEASIBILITY_HPP
#define TSG_FEASIBILITY_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "tsg/model.hpp"

namespace tsg {

// A schedule together with its canonical (earliest) start-time vector.
// start_times[j] is when the j-th task begins; it lies inside that task's
// window and respects travel and execution times between consecutive tasks.
struct TimedSchedule {
    Schedule schedule;
    std::vector<double> start_times;  // seconds, same length as schedule
};

// 1-based position of the first task whose window cannot be met.
struct Infeasible {
    std::size_t position = 0;
};

using EarliestResult = std::variant<TimedSchedule, Infeasible>;

// Greedy earliest start times for the given order. Waiting for a window to
// open is free; starting after it closes is not. The returned vector is
// componentwise minimal among all feasible time vectors for this order.
// Precondition: sched is well formed for user.
EarliestResult earliest_schedule(const Instance& inst, const User& user,
                                 const Schedule& sched);

// True iff the order admits a feasible time vector and the summed execution
// costs stay within the user's budget.
bool is_feasible(const Instance& inst, const User& user, const Schedule& sched);

}  // namespace tsg

#endif
