#include "tsg/payoff.hpp"

namespace tsg {

ExecutionCounts execution_counts(const Instance& inst, const Profile& profile) {
    ExecutionCounts counts;
    for (const Task& t : inst.tasks) {
        counts[t.id] = 0;
    }
    for (const Schedule& sched : profile) {
        for (TaskId k : sched) {
            ++counts[k];
        }
    }
    return counts;
}

double user_reward(const Instance& inst, const Profile& profile, std::size_t user_index) {
    const ExecutionCounts counts = execution_counts(inst, profile);
    double reward = 0.0;
    for (TaskId k : profile[user_index]) {
        reward += inst.task(k).reward / counts.at(k);
    }
    return reward;
}

double execution_cost(const User& user, const Schedule& sched) {
    double cost = 0.0;
    for (TaskId k : sched) {
        cost += user.effort(k).exec_cost;
    }
    return cost;
}

double travel_cost(const Instance& inst, const User& user, const Schedule& sched) {
    double cost = 0.0;
    Location here = user.start;
    for (TaskId k : sched) {
        const Location& next = inst.task(k).location;
        cost += distance(here, next) * user.travel_cost_rate;
        here = next;
    }
    return cost;
}

double user_payoff(const Instance& inst, const Profile& profile, std::size_t user_index) {
    const User& user = inst.users[user_index];
    return user_reward(inst, profile, user_index) -
           execution_cost(user, profile[user_index]) -
           travel_cost(inst, user, profile[user_index]);
}

double potential(const Instance& inst, const Profile& profile) {
    const ExecutionCounts counts = execution_counts(inst, profile);
    double value = 0.0;
    for (const Task& t : inst.tasks) {
        for (int m = 1; m <= counts.at(t.id); ++m) {
            value += t.reward / m;
        }
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const User& user = inst.users[i];
        value -= execution_cost(user, profile[i]);
        value -= travel_cost(inst, user, profile[i]);
    }
    return value;
}

double social_welfare(const Instance& inst, const Profile& profile) {
    const ExecutionCounts counts = execution_counts(inst, profile);
    double value = 0.0;
    for (const Task& t : inst.tasks) {
        if (counts.at(t.id) >= 1) {
            value += t.reward;
        }
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const User& user = inst.users[i];
        value -= execution_cost(user, profile[i]);
        value -= travel_cost(inst, user, profile[i]);
    }
    return value;
}

double jain_index(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n == 0) return 1.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    if (sum_sq == 0.0) return 1.0;  // every value is exactly zero
    return (sum * sum) / (static_cast<double>(n) * sum_sq);
}

double jain_index(const Instance& inst, const Profile& profile) {
    std::vector<double> payoffs(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) payoffs[i] = user_payoff(inst, profile, i);
    return jain_index(payoffs);
}

}  // namespace tsg
