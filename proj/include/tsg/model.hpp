#ifndef TSG_MODEL_HPP
#define TSG_MODEL_HPP

#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tsg/common.hpp"

namespace tsg {

using TaskId = int;
using UserId = int;

struct Location {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

// Euclidean distance in meters.
double distance(const Location& a, const Location& b);

// A sensing job: one target location, a reward, and the time window within
// which execution must *start* (finishing later is allowed).
struct Task {
    TaskId id = 0;
    Location location;
    double reward = 0.0;        // dollars
    double window_open = 0.0;   // seconds from simulation start
    double window_close = 0.0;  // seconds from simulation start
};

// Per-user effort parameters for one task the user can execute.
struct TaskEffort {
    double exec_time = 0.0;  // seconds
    double exec_cost = 0.0;  // dollars
};

struct User {
    UserId id = 0;
    Location start;
    double speed = 1.0;             // meters/second, > 0
    double travel_cost_rate = 0.0;  // dollars per meter
    double budget = std::numeric_limits<double>::infinity();  // dollars of execution budget
    // Available tasks with their effort parameters, keyed by task id.
    // Iteration order (ascending id) is relied on for deterministic search.
    std::map<TaskId, TaskEffort> tasks;

    bool can_do(TaskId k) const { return tasks.count(k) != 0; }
    const TaskEffort& effort(TaskId k) const { return tasks.at(k); }
};

// One user's strategy: an ordered sequence of distinct available task ids.
using Schedule = std::vector<TaskId>;

// Joint strategy; schedules[i] belongs to Instance::users[i].
using Profile = std::vector<Schedule>;

// Immutable problem instance. Construct, validate once, then share freely.
struct Instance {
    std::vector<Task> tasks;
    std::vector<User> users;
    double horizon = 0.0;  // seconds; every window closes at or before this
    // Generator provenance (full config echo); empty string when absent.
    std::string gen_meta;

    const Task* find_task(TaskId id) const;
    const Task& task(TaskId id) const;  // throws std::out_of_range on unknown id
    std::optional<std::size_t> user_index(UserId id) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Reports every violated model invariant, naming the offending entity.
// Violations are data, not failures: this never throws.
ValidationReport validate_instance(const Instance& inst);

// Schedule invariants for a given owner: distinct ids, all available to the user.
bool schedule_well_formed(const User& user, const Schedule& sched);

// Profile invariants: one schedule per user, each well formed for its owner.
bool profile_well_formed(const Instance& inst, const Profile& profile);

// --- instance file format (JSON) ---------------------------------------
// Top-level keys: "tasks", "users", "horizon_s".
// Task entries:  {id, x_m, y_m, reward_usd, window_open_s, window_close_s}
// User entries:  {id, x_m, y_m, speed_mps, travel_cost_per_m, budget_usd,
//                 tasks:[{id, exec_time_s, exec_cost_usd}]}
// budget_usd may be null, meaning unbounded. An optional "gen_meta" object
// carries generator provenance and is passed through untouched.

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);  // throws FormatError
std::string instance_to_string(const Instance& inst);
Instance load_instance(const std::string& path);       // throws FormatError
void save_instance(const Instance& inst, const std::string& path);

// Profile file format: {"schedules":[{"user":<id>,"tasks":[<task ids>]}]}
nlohmann::json profile_to_json(const Instance& inst, const Profile& profile);
Profile profile_from_json(const Instance& inst, const nlohmann::json& j);  // throws FormatError
Profile load_profile(const Instance& inst, const std::string& path);

}  // namespace tsg

#endif
