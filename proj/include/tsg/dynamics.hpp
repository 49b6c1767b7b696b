#ifndef TSG_DYNAMICS_HPP
#define TSG_DYNAMICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "tsg/best_response.hpp"

namespace tsg {

struct TraceRow {
    int round = 0;              // 1-based
    UserId user = 0;
    double old_payoff = 0.0;
    double new_payoff = 0.0;
    double potential_after = 0.0;
};

enum class DynamicsStatus { Converged, RoundCap };

struct DynamicsTrace {
    std::vector<TraceRow> rows;  // one row per accepted (improving) move
    DynamicsStatus status = DynamicsStatus::Converged;
    int rounds = 0;  // full rounds executed, including the final quiet one
};

enum class ActivationOrder { RoundRobin, SeededRandom };

struct DynamicsOptions {
    int max_rounds = 100;
    double delta = kEps;  // minimum payoff improvement to accept a move
    ActivationOrder order = ActivationOrder::RoundRobin;
    std::uint64_t shuffle_seed = 0;  // used only with SeededRandom
};

struct DynamicsResult {
    Profile profile;
    DynamicsTrace trace;
};

// Repeatedly replaces each user's schedule by an exact best response whenever
// that improves the payoff by more than delta. Stops after a full round with
// no accepted move (an NE within delta) or after max_rounds. The potential
// strictly increases at every accepted move.
DynamicsResult best_response_dynamics(const Instance& inst, Profile initial,
                                      const DynamicsOptions& opts = {});

struct NeWitness {
    std::size_t user_index = 0;
    Schedule deviation;
    double gain = 0.0;
};

struct NeCheck {
    bool is_ne = false;
    std::optional<NeWitness> witness;  // a profitable deviation when !is_ne
};

// True iff no user has a feasible unilateral deviation improving his payoff
// by more than delta, checked with the exact best response.
NeCheck verify_ne(const Instance& inst, const Profile& profile, double delta = kEps);

// Writes "round,user,old_payoff,new_payoff,potential" rows.
void write_trace_csv(std::ostream& out, const DynamicsTrace& trace);

}  // namespace tsg

#endif
