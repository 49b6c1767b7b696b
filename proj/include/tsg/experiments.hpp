#ifndef TSG_EXPERIMENTS_HPP
#define TSG_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tsg/dynamics.hpp"
#include "tsg/instance_gen.hpp"
#include "tsg/optimizer.hpp"

namespace tsg {

// Exact mode solves the socially efficient profile and the potential
// maximizer by joint search; heuristic mode uses the greedy welfare
// heuristic and skips the potential maximizer. Equilibria come from
// best-response dynamics in both modes.
enum class SolveMode { Exact, Heuristic };

const char* to_string(SolveMode mode);
SolveMode parse_solve_mode(const std::string& name);

struct SolveOptions {
    SolveMode mode = SolveMode::Exact;
    DynamicsOptions dynamics;
    OptimizerOptions optimizer;
};

struct SolveReport {
    SolveMode mode = SolveMode::Exact;

    Profile se_profile;  // welfare maximizer (exact) or greedy profile
    double sw_se = 0.0;
    int sum_mk_se = 0;

    Profile ne_dyn_profile;  // reached by dynamics from the empty profile
    double sw_ne_dyn = 0.0;
    bool ne_dyn_verified = false;
    int sum_mk_ne = 0;
    double jain_ne = 1.0;
    DynamicsTrace trace;

    std::optional<Profile> ne_phi_profile;  // exact mode only
    std::optional<double> sw_ne_phi;
    bool ne_phi_verified = false;

    // sw_ne_dyn / sw_se; 1 for empty instances, missing when the efficient
    // welfare is <= 0 on a nonempty instance.
    std::optional<double> ratio;
};

SolveReport run_single(const Instance& inst, const SolveOptions& opts = {});

nlohmann::json report_to_json(const Instance& inst, const SolveReport& report);

struct SweepSpec {
    std::vector<int> user_counts;
    UserType user_type = UserType::Walking;
    SolveMode mode = SolveMode::Exact;
    int reps = 200;
    std::uint64_t seed_base = 0;
    GenConfig base;  // n_users, mix and seed are overridden per replication
    DynamicsOptions dynamics;
    OptimizerOptions optimizer;
    int threads = 1;
};

struct SweepRow {
    int n_users = 0;
    UserType user_type = UserType::Walking;
    SolveMode mode = SolveMode::Exact;
    int rep = 0;
    double sw_se = 0.0;
    double sw_ne_dyn = 0.0;
    std::optional<double> sw_ne_phi;
    std::optional<double> ratio;
    double jain = 1.0;
    int sum_mk_ne = 0;
    int sum_mk_se = 0;
    int rounds = 0;
};

// Seed for one replication, derived so every (seed_base, n_users, type,
// rep) combination gets an independent stream regardless of scheduling.
std::uint64_t replication_seed(std::uint64_t seed_base, int n_users, UserType type, int rep);

// Runs reps replications per user count. Rows are ordered by (user count,
// rep) and identical for a given spec no matter the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Normative column order:
// n_users,user_type,mode,rep,sw_se,sw_ne_dyn,sw_ne_phi,ratio,jain,sum_mk_ne,sum_mk_se,rounds
// Missing values are empty cells. Output is byte-stable across runs.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct SummaryRow {
    int n_users = 0;
    UserType user_type = UserType::Walking;
    int n = 0;        // replications
    int n_ratio = 0;  // replications with a defined ratio
    double mean_sw_se = 0.0, stderr_sw_se = 0.0;
    double mean_sw_ne_dyn = 0.0, stderr_sw_ne_dyn = 0.0;
    std::optional<double> mean_sw_ne_phi, stderr_sw_ne_phi;
    std::optional<double> mean_ratio, stderr_ratio;
    double mean_jain = 0.0;
    double mean_sum_mk_ne = 0.0;
    double mean_sum_mk_se = 0.0;
    double mean_rounds = 0.0;
};

// Mean and standard error per (user count, type), in first-appearance
// order. Missing values are skipped and counted via n_ratio.
std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);

}  // namespace tsg

#endif
