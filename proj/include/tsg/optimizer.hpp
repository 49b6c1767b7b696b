#ifndef TSG_OPTIMIZER_HPP
#define TSG_OPTIMIZER_HPP

#include "tsg/best_response.hpp"

namespace tsg {

struct OptimizerOptions {
    // Cap on the joint search space (product over users of candidate
    // schedule counts after dominance reduction). Exceeding it raises
    // CapExceededError: fall back to heuristic mode.
    double joint_cap = 1e7;
    // Per-user enumeration guard, see enumerate_feasible_schedules.
    std::size_t enumeration_cap = 8;
};

struct JointOptimum {
    Profile profile;
    double value = 0.0;
};

// Feasible profile maximizing the potential, which is a Nash equilibrium.
// Deterministic tie-break: lexicographically first over per-user schedule
// enumeration indices.
JointOptimum maximize_potential(const Instance& inst, const OptimizerOptions& opts = {});

// Feasible profile maximizing social welfare (the socially efficient
// baseline). Same machinery and tie-break as maximize_potential.
JointOptimum maximize_welfare(const Instance& inst, const OptimizerOptions& opts = {});

// Sequential-insertion welfare heuristic: repeatedly commits the
// (user, task, position) insertion with the largest positive welfare gain.
// Always feasible; a lower bound on the exact socially efficient welfare.
Profile greedy_welfare_heuristic(const Instance& inst);

}  // namespace tsg

#endif
