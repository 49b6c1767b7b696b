#include "tsg/best_response.hpp"

#include <algorithm>
#include <string>

#include "tsg/feasibility.hpp"

namespace tsg {

double marginal_share(const Task& task, const ExecutionCounts& counts,
                      bool counts_include_user) {
    auto it = counts.find(task.id);
    const int m = (it == counts.end() ? 0 : it->second) + (counts_include_user ? 0 : 1);
    return task.reward / m;
}

namespace {

// Dense per-candidate data for the search.
struct Candidate {
    TaskId id;
    Location loc;
    double open;
    double close;
    double exec_time;
    double exec_cost;
    double share;  // reward share if the user joins, opponents fixed
    double gain;   // max(0, share - exec_cost): optimistic per-task value
};

// Total order used for incumbent updates: higher payoff wins (beyond the
// shared tolerance); payoff ties prefer fewer tasks, then the
// lexicographically smaller id sequence.
bool prefer(double cand_payoff, const Schedule& cand, double inc_payoff,
            const Schedule& inc) {
    if (cand_payoff > inc_payoff + kEps) return true;
    if (cand_payoff < inc_payoff - kEps) return false;
    if (cand.size() != inc.size()) return cand.size() < inc.size();
    return std::lexicographical_compare(cand.begin(), cand.end(), inc.begin(),
                                        inc.end());
}

class BrSearch {
public:
    BrSearch(const User& user, std::vector<Candidate> cands)
        : user_(user), cands_(std::move(cands)), used_(cands_.size(), false) {
        seq_.reserve(cands_.size());
    }

    BestResponse run() {
        dfs(user_.start, 0.0, 0.0, 0.0, 0.0, 0.0);
        return {best_seq_, best_payoff_};
    }

private:
    // Visits the node described by (here, ready, spent, r, ce, ct), then its
    // children in ascending task-id order; pre-order traversal is therefore
    // lexicographic over sequences. The three cost/reward accumulators are
    // kept separate so a node's payoff, (r - ce) - ct, reproduces
    // user_payoff() bit for bit on the same schedule.
    void dfs(const Location& here, double ready, double spent, double r, double ce,
             double ct) {
        const double payoff = (r - ce) - ct;
        if (prefer(payoff, seq_, best_payoff_, best_seq_)) {
            best_payoff_ = payoff;
            best_seq_ = seq_;
        }

        // Admissible bound: every still-startable task contributes at most
        // its share minus execution cost, travel free. Unreachable tasks stay
        // unreachable in every extension (times only advance, and detours
        // never shorten the direct leg), so skipping them here is safe.
        double bound = payoff;
        for (std::size_t c = 0; c < cands_.size(); ++c) {
            if (used_[c]) continue;
            const Candidate& cand = cands_[c];
            if (cand.gain <= 0.0) continue;
            if (spent + cand.exec_cost > user_.budget + kEps) continue;
            const double arrival = ready + distance(here, cand.loc) / user_.speed;
            if (arrival > cand.close + kEps) continue;
            bound += cand.gain;
        }
        if (bound < best_payoff_ - kEps) return;

        for (std::size_t c = 0; c < cands_.size(); ++c) {
            if (used_[c]) continue;
            const Candidate& cand = cands_[c];
            if (spent + cand.exec_cost > user_.budget + kEps) continue;
            const double leg = distance(here, cand.loc);
            const double start = std::max(cand.open, ready + leg / user_.speed);
            if (start > cand.close + kEps) continue;

            used_[c] = true;
            seq_.push_back(cand.id);
            dfs(cand.loc, start + cand.exec_time, spent + cand.exec_cost,
                r + cand.share, ce + cand.exec_cost,
                ct + leg * user_.travel_cost_rate);
            seq_.pop_back();
            used_[c] = false;
        }
    }

    const User& user_;
    std::vector<Candidate> cands_;
    std::vector<bool> used_;
    Schedule seq_;
    Schedule best_seq_;
    double best_payoff_ = 0.0;  // empty schedule incumbent
};

}  // namespace

BestResponse best_response(const Instance& inst, const Profile& profile,
                           std::size_t user_index) {
    const User& user = inst.users[user_index];

    ExecutionCounts opp_counts;
    for (std::size_t j = 0; j < profile.size(); ++j) {
        if (j == user_index) continue;
        for (TaskId k : profile[j]) {
            ++opp_counts[k];
        }
    }

    std::vector<Candidate> cands;
    cands.reserve(user.tasks.size());
    for (const auto& [k, effort] : user.tasks) {  // ascending task id
        const Task& t = inst.task(k);
        Candidate cand;
        cand.id = k;
        cand.loc = t.location;
        cand.open = t.window_open;
        cand.close = t.window_close;
        cand.exec_time = effort.exec_time;
        cand.exec_cost = effort.exec_cost;
        cand.share = marginal_share(t, opp_counts, false);
        cand.gain = std::max(0.0, cand.share - cand.exec_cost);
        cands.push_back(cand);
    }

    return BrSearch(user, std::move(cands)).run();
}

namespace {

void enumerate_rec(const Instance& inst, const User& user, Schedule& seq,
                   std::vector<bool>& used, const Location& here, double ready,
                   double spent, std::vector<Schedule>& out) {
    out.push_back(seq);
    std::size_t c = 0;
    for (const auto& [k, effort] : user.tasks) {
        const std::size_t idx = c++;
        if (used[idx]) continue;
        if (spent + effort.exec_cost > user.budget + kEps) continue;
        const Task& t = inst.task(k);
        const double arrival = ready + distance(here, t.location) / user.speed;
        const double start = std::max(t.window_open, arrival);
        if (start > t.window_close + kEps) continue;  // prefix closure: prune subtree

        used[idx] = true;
        seq.push_back(k);
        enumerate_rec(inst, user, seq, used, t.location, start + effort.exec_time,
                      spent + effort.exec_cost, out);
        seq.pop_back();
        used[idx] = false;
    }
}

}  // namespace

std::vector<Schedule> enumerate_feasible_schedules(const Instance& inst,
                                                   const User& user,
                                                   std::size_t cap) {
    if (user.tasks.size() > cap) {
        throw CapExceededError("user " + std::to_string(user.id) + " has " +
                               std::to_string(user.tasks.size()) +
                               " available tasks, enumeration cap is " +
                               std::to_string(cap));
    }
    std::vector<Schedule> out;
    Schedule seq;
    std::vector<bool> used(user.tasks.size(), false);
    enumerate_rec(inst, user, seq, used, user.start, 0.0, 0.0, out);
    return out;
}

}  // namespace tsg
