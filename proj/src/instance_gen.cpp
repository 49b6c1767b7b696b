#include "tsg/instance_gen.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <nlohmann/json.hpp>

#include "tsg/common.hpp"

namespace tsg {

UserTypeParams params_for(UserType type) {
    switch (type) {
        case UserType::Walking: return {5000.0 / 3600.0, 0.0002};
        case UserType::Bike: return {15000.0 / 3600.0, 0.0005};
        case UserType::Driving: return {45000.0 / 3600.0, 0.001};
    }
    throw ConfigError("unknown user type");
}

const char* to_string(UserType type) {
    switch (type) {
        case UserType::Walking: return "walking";
        case UserType::Bike: return "bike";
        case UserType::Driving: return "driving";
    }
    throw ConfigError("unknown user type");
}

UserType parse_user_type(const std::string& name) {
    if (name == "walking") return UserType::Walking;
    if (name == "bike") return UserType::Bike;
    if (name == "driving") return UserType::Driving;
    throw ConfigError("unknown user type '" + name + "', expected walking, bike or driving");
}

TypeMix pure_mix(UserType type) {
    switch (type) {
        case UserType::Walking: return {1.0, 0.0, 0.0};
        case UserType::Bike: return {0.0, 1.0, 0.0};
        case UserType::Driving: return {0.0, 0.0, 1.0};
    }
    throw ConfigError("unknown user type");
}

std::array<int, 3> type_counts(const TypeMix& mix, int n_users) {
    std::array<double, 3> frac = {mix.walking, mix.bike, mix.driving};
    std::array<int, 3> counts{};
    std::array<double, 3> remainder{};
    int assigned = 0;
    for (int t = 0; t < 3; ++t) {
        double quota = frac[t] * n_users;
        counts[t] = static_cast<int>(std::floor(quota));
        remainder[t] = quota - counts[t];
        assigned += counts[t];
    }
    for (int left = n_users - assigned; left > 0; --left) {
        int best = 0;
        for (int t = 1; t < 3; ++t)
            if (remainder[t] > remainder[best]) best = t;
        ++counts[best];
        remainder[best] = -1.0;
    }
    return counts;
}

double sample_truncated_normal(double mean, double std, double lo, double hi, RngStream& rng) {
    if (!(std > 0.0)) throw ConfigError("truncated normal needs std > 0");
    if (!(lo < hi)) throw ConfigError("truncated normal needs lo < hi");
    boost::math::normal_distribution<double> dist(mean, std);
    double accept = boost::math::cdf(dist, hi) - boost::math::cdf(dist, lo);
    if (accept < 1e-6)
        throw ConfigError("truncated normal acceptance probability below 1e-6");
    for (;;) {
        double x = boost::math::quantile(dist, rng.unit());
        if (x >= lo && x <= hi) return x;
    }
}

double sample_truncated_normal(const DistParams& p, RngStream& rng) {
    return sample_truncated_normal(p.mean, p.std, p.lo, p.hi, rng);
}

double truncated_normal_mean(double mean, double std, double lo, double hi) {
    boost::math::normal_distribution<double> unit(0.0, 1.0);
    double a = (lo - mean) / std;
    double b = (hi - mean) / std;
    double z = boost::math::cdf(unit, b) - boost::math::cdf(unit, a);
    return mean + std * (boost::math::pdf(unit, a) - boost::math::pdf(unit, b)) / z;
}

namespace {

void check_dist(const char* name, const DistParams& p) {
    if (!(p.mean > 0.0)) throw ConfigError(std::string(name) + ": mean must be > 0");
    if (!(p.std > 0.0)) throw ConfigError(std::string(name) + ": std must be > 0");
    if (!(p.lo < p.hi)) throw ConfigError(std::string(name) + ": lo must be < hi");
    if (p.lo < 0.0) throw ConfigError(std::string(name) + ": lo must be >= 0");
}

nlohmann::json dist_json(const DistParams& p) {
    return {{"mean", p.mean}, {"std", p.std}, {"lo", p.lo}, {"hi", p.hi}};
}

nlohmann::json meta_json(const GenConfig& c) {
    nlohmann::json mix = {
        {"walking", c.mix.walking}, {"bike", c.mix.bike}, {"driving", c.mix.driving}};
    nlohmann::json config = {
        {"n_tasks", c.n_tasks},
        {"n_users", c.n_users},
        {"region_side_m", c.region_side},
        {"horizon_s", c.horizon},
        {"window_length_s", dist_json(c.window_length)},
        {"reward_usd", dist_json(c.reward)},
        {"exec_time_s", dist_json(c.exec_time)},
        {"exec_cost_usd", dist_json(c.exec_cost)},
        {"type_mix", mix},
        {"availability_prob", c.availability_prob},
        {"budget_usd",
         std::isinf(c.budget) ? nlohmann::json() : nlohmann::json(c.budget)},
    };
    return {{"generator_version", 1}, {"seed", c.seed}, {"config", config}};
}

}  // namespace

void validate_config(const GenConfig& c) {
    if (c.n_tasks < 0) throw ConfigError("n_tasks must be >= 0");
    if (c.n_users < 0) throw ConfigError("n_users must be >= 0");
    if (!(c.region_side > 0.0)) throw ConfigError("region_side must be > 0");
    if (!(c.horizon > 0.0)) throw ConfigError("horizon must be > 0");
    check_dist("window_length", c.window_length);
    check_dist("reward", c.reward);
    check_dist("exec_time", c.exec_time);
    check_dist("exec_cost", c.exec_cost);
    double sum = c.mix.walking + c.mix.bike + c.mix.driving;
    if (c.mix.walking < 0.0 || c.mix.bike < 0.0 || c.mix.driving < 0.0 ||
        std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("type mix proportions must be >= 0 and sum to 1");
    if (!(c.availability_prob >= 0.0 && c.availability_prob <= 1.0))
        throw ConfigError("availability_prob must be in [0, 1]");
    if (std::isnan(c.budget) || c.budget < 0.0)
        throw ConfigError("budget must be >= 0 or infinite");
}

Instance generate(const GenConfig& config) {
    validate_config(config);
    RngStream rng(config.seed);

    Instance inst;
    inst.horizon = config.horizon;

    inst.tasks.reserve(static_cast<std::size_t>(config.n_tasks));
    for (int k = 0; k < config.n_tasks; ++k) {
        Task t;
        t.id = k + 1;
        t.location.x = rng.uniform(0.0, config.region_side);
        t.location.y = rng.uniform(0.0, config.region_side);
        t.window_open = rng.uniform(0.0, config.horizon);
        double length = sample_truncated_normal(config.window_length, rng);
        t.window_close = std::min(t.window_open + length, config.horizon);
        t.reward = sample_truncated_normal(config.reward, rng);
        inst.tasks.push_back(t);
    }

    auto counts = type_counts(config.mix, config.n_users);
    inst.users.reserve(static_cast<std::size_t>(config.n_users));
    for (int i = 0; i < config.n_users; ++i) {
        UserType type = i < counts[0]                ? UserType::Walking
                        : i < counts[0] + counts[1] ? UserType::Bike
                                                    : UserType::Driving;
        UserTypeParams tp = params_for(type);
        User u;
        u.id = i + 1;
        u.speed = tp.speed;
        u.travel_cost_rate = tp.travel_cost_rate;
        u.budget = config.budget;
        u.start.x = rng.uniform(0.0, config.region_side);
        u.start.y = rng.uniform(0.0, config.region_side);
        for (const Task& t : inst.tasks) {
            if (config.availability_prob < 1.0 && rng.unit() >= config.availability_prob)
                continue;
            TaskEffort effort;
            effort.exec_time = sample_truncated_normal(config.exec_time, rng);
            effort.exec_cost = sample_truncated_normal(config.exec_cost, rng);
            u.tasks.emplace(t.id, effort);
        }
        inst.users.push_back(std::move(u));
    }

    inst.gen_meta = meta_json(config).dump();
    return inst;
}

}  // namespace tsg
