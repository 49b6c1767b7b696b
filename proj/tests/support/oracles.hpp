#ifndef TSG_TESTS_SUPPORT_ORACLES_HPP
#define TSG_TESTS_SUPPORT_ORACLES_HPP

// Slow reference implementations and instance builders shared by the unit
// and acceptance suites. Everything here favors obviousness over speed and
// deliberately avoids the library's pruning tricks.

#include <algorithm>
#include <cstdlib>
#include <random>
#include <vector>

#include "tsg/best_response.hpp"
#include "tsg/feasibility.hpp"
#include "tsg/instance_gen.hpp"
#include "tsg/payoff.hpp"

namespace tsg::testing {

using TestRng = std::mt19937_64;

// Desk-scale generator config: a small tight region so schedules hit
// window and travel limits often enough to exercise every code path.
inline GenConfig desk_config(std::uint64_t seed, int n_tasks, int n_users,
                             UserType type = UserType::Walking) {
    GenConfig config;
    config.seed = seed;
    config.n_tasks = n_tasks;
    config.n_users = n_users;
    config.region_side = 2000.0;
    config.horizon = 3000.0;
    config.window_length = DistParams::from_mean(900.0);
    config.reward = DistParams::from_mean(10.0);
    config.exec_time = DistParams::from_mean(300.0);
    config.exec_cost = DistParams::from_mean(1.0);
    config.mix = pure_mix(type);
    return config;
}

inline Instance desk_instance(std::uint64_t seed, int n_tasks, int n_users,
                              UserType type = UserType::Walking) {
    return generate(desk_config(seed, n_tasks, n_users, type));
}

// Variant with every third instance budget-constrained and a rotating type.
inline Instance desk_instance_varied(std::uint64_t seed, int n_tasks, int n_users) {
    GenConfig config = desk_config(seed, n_tasks, n_users,
                                   static_cast<UserType>(seed % 3));
    if (seed % 3 == 0) config.budget = 2.0;
    return generate(config);
}

// All ordered subsets of ids (assumed sorted ascending), in depth-first
// prefix order: [], [a], [a,b], ..., [b], [b,a], ...
inline void ordered_subsets_rec(const std::vector<TaskId>& ids, std::vector<TaskId>& prefix,
                                std::vector<bool>& used, std::vector<Schedule>& out) {
    out.push_back(prefix);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        prefix.push_back(ids[i]);
        ordered_subsets_rec(ids, prefix, used, out);
        prefix.pop_back();
        used[i] = false;
    }
}

inline std::vector<Schedule> all_ordered_subsets(std::vector<TaskId> ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<Schedule> out;
    std::vector<TaskId> prefix;
    std::vector<bool> used(ids.size(), false);
    ordered_subsets_rec(ids, prefix, used, out);
    return out;
}

inline std::vector<TaskId> available_ids(const User& user) {
    std::vector<TaskId> ids;
    for (const auto& [id, effort] : user.tasks) ids.push_back(id);
    return ids;
}

// Best response by exhaustive enumeration of all ordered subsets, applying
// the declared tie-break: better beyond kEps wins, then fewer tasks, then
// lexicographically smaller id sequence.
inline BestResponse br_oracle(const Instance& inst, const Profile& profile,
                              std::size_t user_index) {
    const User& user = inst.users[user_index];
    Profile scratch = profile;
    BestResponse best;
    bool have = false;
    for (const Schedule& cand : all_ordered_subsets(available_ids(user))) {
        if (!is_feasible(inst, user, cand)) continue;
        scratch[user_index] = cand;
        double payoff = user_payoff(inst, scratch, user_index);
        if (!have) {
            best = {cand, payoff};
            have = true;
            continue;
        }
        bool better = payoff > best.payoff + kEps;
        bool tie = !better && payoff >= best.payoff - kEps;
        if (better ||
            (tie && (cand.size() < best.schedule.size() ||
                     (cand.size() == best.schedule.size() &&
                      std::lexicographical_compare(cand.begin(), cand.end(),
                                                   best.schedule.begin(), best.schedule.end())))))
            best = {cand, payoff};
    }
    return best;
}

// Potential recomputed by a different route: add users one at a time and
// sum each user's payoff against the already-added ones. Unilateral
// deviations of the last user change this sum by exactly his payoff change,
// which pins the same function as the library's closed form.
inline double potential_oracle(const Instance& inst, const Profile& profile) {
    Profile partial(profile.size());
    double phi = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        partial[i] = profile[i];
        phi += user_payoff(inst, partial, i);
    }
    return phi;
}

// Uniformly random feasible schedule, drawn from the full enumeration.
inline Schedule random_feasible_schedule(const Instance& inst, const User& user, TestRng& rng) {
    auto all = enumerate_feasible_schedules(inst, user);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

inline Profile random_feasible_profile(const Instance& inst, TestRng& rng) {
    Profile profile;
    profile.reserve(inst.users.size());
    for (const User& user : inst.users) profile.push_back(random_feasible_schedule(inst, user, rng));
    return profile;
}

// Integer micro-instances: one user on a line, unit speed, integer
// coordinates, windows and durations, so every start time of interest lies
// on the 1-second grid.
inline Instance micro_instance(TestRng& rng, int max_tasks = 3) {
    auto uniform = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    Instance inst;
    inst.horizon = 400.0;
    int n_tasks = uniform(0, max_tasks);
    for (int k = 0; k < n_tasks; ++k) {
        Task t;
        t.id = k + 1;
        t.location = {static_cast<double>(uniform(0, 30)), 0.0};
        t.reward = uniform(0, 10);
        t.window_open = uniform(0, 150);
        t.window_close = t.window_open + uniform(0, 60);
        inst.tasks.push_back(t);
    }
    User u;
    u.id = 1;
    u.start = {static_cast<double>(uniform(0, 30)), 0.0};
    u.speed = 1.0;
    u.travel_cost_rate = 0.0;
    if (uniform(0, 1) == 1) u.budget = uniform(0, 6);
    for (const Task& t : inst.tasks) {
        TaskEffort effort;
        effort.exec_time = uniform(0, 40);
        effort.exec_cost = uniform(0, 3);
        u.tasks.emplace(t.id, effort);
    }
    inst.users.push_back(u);
    return inst;
}

// Exhaustive search over integer start times: does any grid time vector
// satisfy windows, ordering and travel? Assumes integer instance data.
inline bool grid_feasible_rec(const Instance& inst, const User& user, const Schedule& sched,
                              std::size_t j, int ready, Location here) {
    if (j == sched.size()) return true;
    const Task& t = inst.task(sched[j]);
    int travel = static_cast<int>(distance(here, t.location) / user.speed + 0.5);
    int lo = std::max(static_cast<int>(t.window_open), ready + travel);
    int hi = static_cast<int>(t.window_close);
    int exec = static_cast<int>(user.effort(t.id).exec_time);
    for (int start = lo; start <= hi; ++start)
        if (grid_feasible_rec(inst, user, sched, j + 1, start + exec, t.location)) return true;
    return false;
}

inline bool grid_feasible(const Instance& inst, const User& user, const Schedule& sched) {
    double spent = 0.0;
    for (TaskId id : sched) spent += user.effort(id).exec_cost;
    if (spent > user.budget) return false;
    return grid_feasible_rec(inst, user, sched, 0, 0, user.start);
}

// Visits every feasible integer start-time vector for sched and calls
// visit(times). Used to confirm the greedy times are componentwise minimal.
template <typename Visit>
inline void grid_vectors_rec(const Instance& inst, const User& user, const Schedule& sched,
                             std::size_t j, int ready, Location here, std::vector<int>& times,
                             Visit&& visit) {
    if (j == sched.size()) {
        visit(times);
        return;
    }
    const Task& t = inst.task(sched[j]);
    int travel = static_cast<int>(distance(here, t.location) / user.speed + 0.5);
    int lo = std::max(static_cast<int>(t.window_open), ready + travel);
    int hi = static_cast<int>(t.window_close);
    int exec = static_cast<int>(user.effort(t.id).exec_time);
    for (int start = lo; start <= hi; ++start) {
        times.push_back(start);
        grid_vectors_rec(inst, user, sched, j + 1, start + exec, t.location, times, visit);
        times.pop_back();
    }
}

template <typename Visit>
inline void for_each_grid_vector(const Instance& inst, const User& user, const Schedule& sched,
                                 Visit&& visit) {
    std::vector<int> times;
    grid_vectors_rec(inst, user, sched, 0, 0, user.start, times, visit);
}

// Joint optimum by full product enumeration, candidate profiles visited in
// lexicographic order of per-user enumeration indices, strictly-greater
// updates on the canonical objective. Only for tiny instances.
struct JointOracle {
    Profile profile;
    double value = 0.0;
};

inline JointOracle brute_force_joint(const Instance& inst, bool welfare) {
    std::vector<std::vector<Schedule>> lists;
    for (const User& user : inst.users) lists.push_back(enumerate_feasible_schedules(inst, user));

    JointOracle best;
    bool have = false;
    std::vector<std::size_t> index(lists.size(), 0);
    for (;;) {
        Profile profile;
        profile.reserve(lists.size());
        for (std::size_t j = 0; j < lists.size(); ++j) profile.push_back(lists[j][index[j]]);
        double value =
            welfare ? social_welfare(inst, profile) : potential(inst, profile);
        if (!have || value > best.value) {
            best = {profile, value};
            have = true;
        }
        std::size_t j = lists.size();
        while (j > 0) {
            --j;
            if (++index[j] < lists[j].size()) break;
            index[j] = 0;
            if (j == 0) return best;
        }
        if (lists.empty()) return best;
    }
}

// Worked two-user/one-task instance: reward 10, execution costs 4.8/4.9,
// both users standing on the task, so travel is free.
inline Instance two_user_one_task() {
    Instance inst;
    inst.horizon = 7200.0;
    Task t;
    t.id = 1;
    t.location = {0.0, 0.0};
    t.reward = 10.0;
    t.window_open = 0.0;
    t.window_close = 7200.0;
    inst.tasks.push_back(t);
    for (int i = 1; i <= 2; ++i) {
        User u;
        u.id = i;
        u.start = {0.0, 0.0};
        u.speed = 5000.0 / 3600.0;
        u.travel_cost_rate = 0.0002;
        u.tasks.emplace(1, TaskEffort{600.0, i == 1 ? 4.8 : 4.9});
        inst.users.push_back(u);
    }
    return inst;
}

inline double payoff_sum_gap(const Instance& inst, const Profile& profile) {
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.users.size(); ++i) sum += user_payoff(inst, profile, i);
    return std::abs(sum - social_welfare(inst, profile));
}

}  // namespace tsg::testing

#endif
