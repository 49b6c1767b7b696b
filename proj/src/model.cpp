#include "tsg/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tsg {

using nlohmann::json;

double distance(const Location& a, const Location& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

const Task* Instance::find_task(TaskId id) const {
    for (const Task& t : tasks) {
        if (t.id == id) return &t;
    }
    return nullptr;
}

const Task& Instance::task(TaskId id) const {
    const Task* t = find_task(id);
    if (!t) throw std::out_of_range("unknown task id " + std::to_string(id));
    return *t;
}

std::optional<std::size_t> Instance::user_index(UserId id) const {
    for (std::size_t i = 0; i < users.size(); ++i) {
        if (users[i].id == id) return i;
    }
    return std::nullopt;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_location(const Location& loc, const std::string& who,
                    std::vector<std::string>& out) {
    if (!finite(loc.x) || !finite(loc.y)) {
        out.push_back(who + ": location coordinates must be finite");
    }
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    auto& out = rep.violations;

    if (!finite(inst.horizon) || inst.horizon < 0.0) {
        out.push_back("instance: horizon must be finite and nonnegative");
    }

    std::set<TaskId> task_ids;
    for (const Task& t : inst.tasks) {
        const std::string who = "task " + std::to_string(t.id);
        if (!task_ids.insert(t.id).second) {
            out.push_back(who + ": duplicate task id");
        }
        check_location(t.location, who, out);
        if (!finite(t.reward) || t.reward < 0.0) {
            out.push_back(who + ": reward must be finite and >= 0");
        }
        if (!finite(t.window_open) || !finite(t.window_close)) {
            out.push_back(who + ": time window must be finite");
        } else {
            if (t.window_open > t.window_close + kEps) {
                out.push_back(who + ": window_open exceeds window_close");
            }
            if (finite(inst.horizon) && t.window_close > inst.horizon + kEps) {
                out.push_back(who + ": window_close exceeds the horizon");
            }
        }
    }

    std::set<UserId> user_ids;
    for (const User& u : inst.users) {
        const std::string who = "user " + std::to_string(u.id);
        if (!user_ids.insert(u.id).second) {
            out.push_back(who + ": duplicate user id");
        }
        check_location(u.start, who, out);
        if (!finite(u.speed) || u.speed <= 0.0) {
            out.push_back(who + ": speed must be finite and > 0");
        }
        if (!finite(u.travel_cost_rate) || u.travel_cost_rate < 0.0) {
            out.push_back(who + ": travel_cost_rate must be finite and >= 0");
        }
        if (std::isnan(u.budget) || u.budget < 0.0) {
            out.push_back(who + ": budget must be >= 0 (or unbounded)");
        }
        for (const auto& [k, effort] : u.tasks) {
            const std::string item = who + ", task " + std::to_string(k);
            if (task_ids.count(k) == 0) {
                out.push_back(item + ": available task is not part of the instance");
            }
            if (!finite(effort.exec_time) || effort.exec_time < 0.0) {
                out.push_back(item + ": exec_time must be finite and >= 0");
            }
            if (!finite(effort.exec_cost) || effort.exec_cost < 0.0) {
                out.push_back(item + ": exec_cost must be finite and >= 0");
            }
        }
    }
    return rep;
}

bool schedule_well_formed(const User& user, const Schedule& sched) {
    std::set<TaskId> seen;
    for (TaskId k : sched) {
        if (!user.can_do(k)) return false;
        if (!seen.insert(k).second) return false;
    }
    return true;
}

bool profile_well_formed(const Instance& inst, const Profile& profile) {
    if (profile.size() != inst.users.size()) return false;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (!schedule_well_formed(inst.users[i], profile[i])) return false;
    }
    return true;
}

namespace {

const json& require(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw FormatError(ctx + ": missing key '" + key + "'");
    }
    return *it;
}

double require_number(const json& j, const char* key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number()) {
        throw FormatError(ctx + ": key '" + key + "' must be a number");
    }
    return v.get<double>();
}

int require_int(const json& j, const char* key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number_integer()) {
        throw FormatError(ctx + ": key '" + key + "' must be an integer");
    }
    return v.get<int>();
}

json budget_to_json(double budget) {
    if (std::isinf(budget)) return nullptr;  // unbounded
    return budget;
}

double budget_from_json(const json& v, const std::string& ctx) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (!v.is_number()) {
        throw FormatError(ctx + ": key 'budget_usd' must be a number or null");
    }
    return v.get<double>();
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json tasks = json::array();
    for (const Task& t : inst.tasks) {
        tasks.push_back({{"id", t.id},
                         {"x_m", t.location.x},
                         {"y_m", t.location.y},
                         {"reward_usd", t.reward},
                         {"window_open_s", t.window_open},
                         {"window_close_s", t.window_close}});
    }
    json users = json::array();
    for (const User& u : inst.users) {
        json utasks = json::array();
        for (const auto& [k, effort] : u.tasks) {
            utasks.push_back({{"id", k},
                              {"exec_time_s", effort.exec_time},
                              {"exec_cost_usd", effort.exec_cost}});
        }
        users.push_back({{"id", u.id},
                         {"x_m", u.start.x},
                         {"y_m", u.start.y},
                         {"speed_mps", u.speed},
                         {"travel_cost_per_m", u.travel_cost_rate},
                         {"budget_usd", budget_to_json(u.budget)},
                         {"tasks", utasks}});
    }
    json j = {{"horizon_s", inst.horizon}, {"tasks", tasks}, {"users", users}};
    if (!inst.gen_meta.empty()) {
        j["gen_meta"] = json::parse(inst.gen_meta);
    }
    return j;
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("instance: top level must be an object");
    Instance inst;
    inst.horizon = require_number(j, "horizon_s", "instance");

    const json& jtasks = require(j, "tasks", "instance");
    if (!jtasks.is_array()) throw FormatError("instance: 'tasks' must be an array");
    for (std::size_t n = 0; n < jtasks.size(); ++n) {
        const json& jt = jtasks[n];
        const std::string ctx = "tasks[" + std::to_string(n) + "]";
        Task t;
        t.id = require_int(jt, "id", ctx);
        t.location.x = require_number(jt, "x_m", ctx);
        t.location.y = require_number(jt, "y_m", ctx);
        t.reward = require_number(jt, "reward_usd", ctx);
        t.window_open = require_number(jt, "window_open_s", ctx);
        t.window_close = require_number(jt, "window_close_s", ctx);
        inst.tasks.push_back(t);
    }

    const json& jusers = require(j, "users", "instance");
    if (!jusers.is_array()) throw FormatError("instance: 'users' must be an array");
    for (std::size_t n = 0; n < jusers.size(); ++n) {
        const json& ju = jusers[n];
        const std::string ctx = "users[" + std::to_string(n) + "]";
        User u;
        u.id = require_int(ju, "id", ctx);
        u.start.x = require_number(ju, "x_m", ctx);
        u.start.y = require_number(ju, "y_m", ctx);
        u.speed = require_number(ju, "speed_mps", ctx);
        u.travel_cost_rate = require_number(ju, "travel_cost_per_m", ctx);
        u.budget = budget_from_json(require(ju, "budget_usd", ctx), ctx);
        const json& jt = require(ju, "tasks", ctx);
        if (!jt.is_array()) throw FormatError(ctx + ": 'tasks' must be an array");
        for (std::size_t m = 0; m < jt.size(); ++m) {
            const std::string tctx = ctx + ".tasks[" + std::to_string(m) + "]";
            const json& je = jt[m];
            TaskId k = require_int(je, "id", tctx);
            TaskEffort effort;
            effort.exec_time = require_number(je, "exec_time_s", tctx);
            effort.exec_cost = require_number(je, "exec_cost_usd", tctx);
            if (!u.tasks.emplace(k, effort).second) {
                throw FormatError(tctx + ": duplicate task id in user task list");
            }
        }
        inst.users.push_back(std::move(u));
    }

    if (j.contains("gen_meta")) {
        inst.gen_meta = j.at("gen_meta").dump();
    }
    return inst;
}

std::string instance_to_string(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open instance file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    try {
        return instance_from_json(j);
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write instance file: " + path);
    out << instance_to_string(inst);
}

json profile_to_json(const Instance& inst, const Profile& profile) {
    json rows = json::array();
    for (std::size_t i = 0; i < profile.size() && i < inst.users.size(); ++i) {
        rows.push_back({{"user", inst.users[i].id}, {"tasks", profile[i]}});
    }
    return {{"schedules", rows}};
}

Profile profile_from_json(const Instance& inst, const json& j) {
    const json& rows = require(j, "schedules", "profile");
    if (!rows.is_array()) throw FormatError("profile: 'schedules' must be an array");
    Profile profile(inst.users.size());
    std::vector<bool> seen(inst.users.size(), false);
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const std::string ctx = "schedules[" + std::to_string(n) + "]";
        UserId uid = require_int(rows[n], "user", ctx);
        auto idx = inst.user_index(uid);
        if (!idx) throw FormatError(ctx + ": unknown user id " + std::to_string(uid));
        if (seen[*idx]) throw FormatError(ctx + ": duplicate user id " + std::to_string(uid));
        seen[*idx] = true;
        const json& jt = require(rows[n], "tasks", ctx);
        if (!jt.is_array()) throw FormatError(ctx + ": 'tasks' must be an array");
        for (const json& v : jt) {
            if (!v.is_number_integer()) throw FormatError(ctx + ": task ids must be integers");
            profile[*idx].push_back(v.get<TaskId>());
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw FormatError("profile: no schedule for user " +
                              std::to_string(inst.users[i].id));
        }
    }
    return profile;
}

Profile load_profile(const Instance& inst, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open profile file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    return profile_from_json(inst, j);
}

}  // namespace tsg
