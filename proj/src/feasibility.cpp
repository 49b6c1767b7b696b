#include "tsg/feasibility.hpp"

#include <algorithm>

namespace tsg {

EarliestResult earliest_schedule(const Instance& inst, const User& user,
                                 const Schedule& sched) {
    TimedSchedule timed;
    timed.schedule = sched;
    timed.start_times.reserve(sched.size());

    Location here = user.start;
    double ready = 0.0;  // time at which the user can leave the current location
    for (std::size_t j = 0; j < sched.size(); ++j) {
        const Task& t = inst.task(sched[j]);
        const double arrival = ready + distance(here, t.location) / user.speed;
        const double start = std::max(t.window_open, arrival);
        if (start > t.window_close + kEps) {
            return Infeasible{j + 1};
        }
        timed.start_times.push_back(start);
        ready = start + user.effort(sched[j]).exec_time;
        here = t.location;
    }
    return timed;
}

bool is_feasible(const Instance& inst, const User& user, const Schedule& sched) {
    if (std::holds_alternative<Infeasible>(earliest_schedule(inst, user, sched))) {
        return false;
    }
    double spent = 0.0;
    for (TaskId k : sched) {
        spent += user.effort(k).exec_cost;
    }
    return spent <= user.budget + kEps;
}

}  // namespace tsg
