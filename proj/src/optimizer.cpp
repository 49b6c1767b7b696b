#include "tsg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "tsg/feasibility.hpp"
#include "tsg/payoff.hpp"

namespace tsg {

namespace {

// One candidate schedule for a user, reduced to what the objectives see:
// the set of executed tasks (dense indices) and the user's total cost.
struct Candidate {
    std::size_t enum_idx = 0;  // position in the full enumeration, for tie-breaks
    Schedule schedule;
    std::vector<int> dense;  // executed tasks as dense instance indices
    double cost = 0.0;       // execution plus travel cost
};

// Both objectives depend on a user's schedule only through its task set
// and cost, so among same-set schedules only a cheapest one (earliest in
// enumeration order on ties) can appear in a lexicographically first
// optimum. Dropping the rest keeps the search result identical.
std::vector<Candidate> reduce_candidates(const Instance& inst, const User& user,
                                         const std::unordered_map<TaskId, int>& dense_of,
                                         std::size_t enumeration_cap) {
    auto all = enumerate_feasible_schedules(inst, user, enumeration_cap);
    std::unordered_map<std::uint64_t, Candidate> best;
    best.reserve(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::uint64_t mask = 0;
        for (TaskId id : all[i]) mask |= std::uint64_t{1} << dense_of.at(id);
        double cost = execution_cost(user, all[i]) + travel_cost(inst, user, all[i]);
        auto it = best.find(mask);
        if (it == best.end() || cost < it->second.cost) {
            Candidate c;
            c.enum_idx = i;
            c.schedule = all[i];
            c.cost = cost;
            for (TaskId id : all[i]) c.dense.push_back(dense_of.at(id));
            best[mask] = std::move(c);
        }
    }
    std::vector<Candidate> out;
    out.reserve(best.size());
    for (auto& [mask, cand] : best) out.push_back(std::move(cand));
    std::sort(out.begin(), out.end(),
              [](const Candidate& a, const Candidate& b) { return a.enum_idx < b.enum_idx; });
    return out;
}

enum class Objective { Potential, Welfare };

// Branch and bound over the reduced per-user candidate lists, visiting
// profiles in lexicographic order of enumeration indices and keeping the
// first one attaining the maximum.
class JointSearch {
   public:
    JointSearch(const Instance& inst, Objective obj, const OptimizerOptions& opts)
        : inst_(inst), obj_(obj) {
        for (std::size_t k = 0; k < inst.tasks.size(); ++k) {
            dense_of_[inst.tasks[k].id] = static_cast<int>(k);
            reward_.push_back(inst.tasks[k].reward);
        }
        counts_.assign(inst.tasks.size(), 0);

        double product = 1.0;
        for (const User& u : inst.users) {
            lists_.push_back(reduce_candidates(inst, u, dense_of_, opts.enumeration_cap));
            product *= static_cast<double>(lists_.back().size());
            if (product > opts.joint_cap)
                throw CapExceededError("joint schedule space exceeds cap " +
                                       std::to_string(opts.joint_cap) +
                                       ", use the heuristic solver instead");
        }

        // Per-user value caps for the admissible bound: no assignment can
        // give user j more than their solo best response, and the sum of
        // per-user payoffs never exceeds either objective's increment.
        Profile empty(inst.users.size());
        solo_.resize(inst.users.size());
        for (std::size_t j = 0; j < inst.users.size(); ++j)
            solo_[j] = std::max(0.0, best_response(inst, empty, j).payoff);
        suffix_solo_.assign(inst.users.size() + 1, 0.0);
        for (std::size_t j = inst.users.size(); j-- > 0;)
            suffix_solo_[j] = suffix_solo_[j + 1] + solo_[j];

        if (obj_ == Objective::Welfare) {
            // max(0, V_k - C_jk) per user and task, summed over still
            // uncovered tasks at bound time.
            gain_.resize(inst.users.size());
            for (std::size_t j = 0; j < inst.users.size(); ++j) {
                gain_[j].assign(inst.tasks.size(), 0.0);
                for (const auto& [id, effort] : inst.users[j].tasks) {
                    int k = dense_of_.at(id);
                    gain_[j][k] = std::max(0.0, reward_[k] - effort.exec_cost);
                }
            }
        }
    }

    JointOptimum run() {
        warm_value_ = warm_start();
        assign_.assign(lists_.size(), 0);
        best_value_ = -std::numeric_limits<double>::infinity();
        value_ = 0.0;
        dfs(0);

        JointOptimum result;
        result.profile.reserve(lists_.size());
        for (std::size_t j = 0; j < lists_.size(); ++j)
            result.profile.push_back(lists_[j][best_assign_[j]].schedule);
        result.value = obj_ == Objective::Potential ? potential(inst_, result.profile)
                                                    : social_welfare(inst_, result.profile);
        return result;
    }

   private:
    // Objective increment of giving candidate c to some user, on top of the
    // current execution counts.
    double delta(const Candidate& c) const {
        double d = -c.cost;
        for (int k : c.dense) {
            if (obj_ == Objective::Potential)
                d += reward_[k] / (counts_[k] + 1);
            else if (counts_[k] == 0)
                d += reward_[k];
        }
        return d;
    }

    void apply(const Candidate& c) {
        for (int k : c.dense) ++counts_[k];
    }

    void undo(const Candidate& c) {
        for (int k : c.dense) --counts_[k];
    }

    // Greedy forward pass; its value primes the pruning floor so early
    // subtrees fall away without affecting which optimum is returned.
    double warm_start() {
        double value = 0.0;
        for (const auto& list : lists_) {
            std::size_t pick = 0;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < list.size(); ++i) {
                double d = delta(list[i]);
                if (d > best) {
                    best = d;
                    pick = i;
                }
            }
            apply(list[pick]);
            value += best;
        }
        std::fill(counts_.begin(), counts_.end(), 0);
        return value;
    }

    double floor() const { return std::max(best_value_, warm_value_ - kEps); }

    // Remaining value users d.. can still add given current coverage.
    double refined_bound(std::size_t d) const {
        double total = 0.0;
        for (std::size_t j = d; j < lists_.size(); ++j) {
            double g = 0.0;
            if (obj_ == Objective::Potential) {
                for (const auto& [id, effort] : inst_.users[j].tasks) {
                    int k = dense_of_.at(id);
                    g += std::max(0.0, reward_[k] / (counts_[k] + 1) - effort.exec_cost);
                }
            } else {
                for (const auto& [id, effort] : inst_.users[j].tasks) {
                    int k = dense_of_.at(id);
                    if (counts_[k] == 0) g += gain_[j][k];
                }
            }
            total += std::min(solo_[j], g);
        }
        return total;
    }

    void dfs(std::size_t d) {
        if (d == lists_.size()) {
            if (value_ > best_value_) {
                best_value_ = value_;
                best_assign_ = assign_;
            }
            return;
        }
        if (value_ + suffix_solo_[d] <= floor()) return;
        if (value_ + refined_bound(d) <= floor()) return;
        for (std::size_t i = 0; i < lists_[d].size(); ++i) {
            const Candidate& c = lists_[d][i];
            double saved = value_;
            value_ += delta(c);
            apply(c);
            assign_[d] = i;
            dfs(d + 1);
            undo(c);
            value_ = saved;
        }
    }

    const Instance& inst_;
    Objective obj_;
    std::unordered_map<TaskId, int> dense_of_;
    std::vector<double> reward_;
    std::vector<std::vector<Candidate>> lists_;
    std::vector<double> solo_;
    std::vector<double> suffix_solo_;
    std::vector<std::vector<double>> gain_;

    std::vector<int> counts_;
    double value_ = 0.0;
    double warm_value_ = 0.0;
    double best_value_ = 0.0;
    std::vector<std::size_t> assign_;
    std::vector<std::size_t> best_assign_;
};

}  // namespace

JointOptimum maximize_potential(const Instance& inst, const OptimizerOptions& opts) {
    return JointSearch(inst, Objective::Potential, opts).run();
}

JointOptimum maximize_welfare(const Instance& inst, const OptimizerOptions& opts) {
    return JointSearch(inst, Objective::Welfare, opts).run();
}

Profile greedy_welfare_heuristic(const Instance& inst) {
    Profile profile(inst.users.size());
    auto counts = execution_counts(inst, profile);

    // Insert one task per round, at the spot with the largest welfare gain.
    // Scan order (user, task, position) breaks exact ties deterministically.
    std::size_t limit = inst.users.size() * inst.tasks.size() + 1;
    for (std::size_t step = 0; step < limit; ++step) {
        bool found = false;
        double best_gain = kEps;
        std::size_t best_user = 0;
        TaskId best_task = 0;
        Schedule best_sched;

        for (std::size_t i = 0; i < inst.users.size(); ++i) {
            const User& user = inst.users[i];
            const Schedule& cur = profile[i];
            double cur_travel = travel_cost(inst, user, cur);
            for (const auto& [id, effort] : user.tasks) {
                if (std::find(cur.begin(), cur.end(), id) != cur.end()) continue;
                double reward = counts.at(id) == 0 ? inst.task(id).reward : 0.0;
                for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
                    Schedule cand = cur;
                    cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(pos), id);
                    if (!is_feasible(inst, user, cand)) continue;
                    double gain = reward - effort.exec_cost -
                                  (travel_cost(inst, user, cand) - cur_travel);
                    if (gain > best_gain) {
                        found = true;
                        best_gain = gain;
                        best_user = i;
                        best_task = id;
                        best_sched = std::move(cand);
                    }
                }
            }
        }

        if (!found) break;
        profile[best_user] = std::move(best_sched);
        ++counts.at(best_task);
    }
    return profile;
}

}  // namespace tsg
