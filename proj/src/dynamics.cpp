#include "tsg/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <random>

#include "tsg/csv.hpp"

namespace tsg {

namespace {

// Activation order for one round: positions sorted by user id, optionally
// shuffled with the round-local RNG.
std::vector<std::size_t> activation_order(const Instance& inst,
                                          const DynamicsOptions& opts,
                                          std::mt19937_64& rng) {
    std::vector<std::size_t> order(inst.users.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inst.users[a].id < inst.users[b].id;
    });
    if (opts.order == ActivationOrder::SeededRandom) {
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

}  // namespace

DynamicsResult best_response_dynamics(const Instance& inst, Profile initial,
                                      const DynamicsOptions& opts) {
    DynamicsResult result;
    result.profile = std::move(initial);
    result.trace.status = DynamicsStatus::RoundCap;

    std::mt19937_64 rng(opts.shuffle_seed);
    for (int round = 1; round <= opts.max_rounds; ++round) {
        result.trace.rounds = round;
        bool improved = false;
        for (std::size_t i : activation_order(inst, opts, rng)) {
            const double current = user_payoff(inst, result.profile, i);
            BestResponse br = best_response(inst, result.profile, i);
            if (br.payoff > current + opts.delta) {
                result.profile[i] = std::move(br.schedule);
                improved = true;
                result.trace.rows.push_back({round, inst.users[i].id, current,
                                             br.payoff,
                                             potential(inst, result.profile)});
            }
        }
        if (!improved) {
            result.trace.status = DynamicsStatus::Converged;
            break;
        }
    }
    return result;
}

NeCheck verify_ne(const Instance& inst, const Profile& profile, double delta) {
    for (std::size_t i = 0; i < inst.users.size(); ++i) {
        const double current = user_payoff(inst, profile, i);
        BestResponse br = best_response(inst, profile, i);
        if (br.payoff > current + delta) {
            return {false, NeWitness{i, std::move(br.schedule), br.payoff - current}};
        }
    }
    return {true, std::nullopt};
}

void write_trace_csv(std::ostream& out, const DynamicsTrace& trace) {
    out << "round,user,old_payoff,new_payoff,potential\n";
    for (const TraceRow& row : trace.rows) {
        out << row.round << ',' << row.user << ',' << csv_number(row.old_payoff)
            << ',' << csv_number(row.new_payoff) << ','
            << csv_number(row.potential_after) << '\n';
    }
}

}  // namespace tsg
