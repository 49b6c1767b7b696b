#ifndef TSG_INSTANCE_GEN_HPP
#define TSG_INSTANCE_GEN_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "tsg/model.hpp"

namespace tsg {

// Truncated-normal parameters. The defaults derive std and truncation
// bounds from the mean alone: std = mean/3, bounds [mean/10, 3*mean].
struct DistParams {
    double mean = 1.0;
    double std = 1.0 / 3.0;
    double lo = 0.1;
    double hi = 3.0;

    static DistParams from_mean(double mean) {
        return {mean, mean / 3.0, mean / 10.0, 3.0 * mean};
    }
};

enum class UserType { Walking, Bike, Driving };

struct UserTypeParams {
    double speed = 0.0;            // m/s
    double travel_cost_rate = 0.0; // $/m
};

// walking 5 km/h at $0.2/km, bike 15 km/h at $0.5/km, driving 45 km/h at $1/km
UserTypeParams params_for(UserType type);
const char* to_string(UserType type);
UserType parse_user_type(const std::string& name);

// Proportions of each user type in a generated instance.
struct TypeMix {
    double walking = 1.0;
    double bike = 0.0;
    double driving = 0.0;
};

TypeMix pure_mix(UserType type);

// Counts per type for n users, by largest-remainder apportionment so the
// split needs no random draws. Ties go to walking, then bike, then driving.
std::array<int, 3> type_counts(const TypeMix& mix, int n_users);

struct GenConfig {
    std::uint64_t seed = 0;
    int n_tasks = 8;
    int n_users = 2;
    double region_side = 5000.0;  // meters, square region
    double horizon = 7200.0;      // seconds
    DistParams window_length = DistParams::from_mean(1800.0);
    DistParams reward = DistParams::from_mean(10.0);
    DistParams exec_time = DistParams::from_mean(600.0);
    DistParams exec_cost = DistParams::from_mean(1.0);
    TypeMix mix;
    // Probability a task is available to a user. At the default 1.0 no
    // availability draws are consumed, so extending a config keeps the
    // default draw sequence intact.
    double availability_prob = 1.0;
    double budget = std::numeric_limits<double>::infinity();
};

// Uniform deviates from a mt19937_64 stream, mapped to (0,1) from the top
// 53 bits so sequences are identical across platforms.
class RngStream {
   public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double unit() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

   private:
    std::mt19937_64 engine_;
};

// Rejection sampling from normal(mean, std) until the draw lands in
// [lo, hi]; one uniform consumed per attempt. Throws ConfigError when the
// acceptance probability is below 1e-6.
double sample_truncated_normal(double mean, double std, double lo, double hi, RngStream& rng);
double sample_truncated_normal(const DistParams& p, RngStream& rng);

// Mean of the truncated normal in closed form, for moment checks.
double truncated_normal_mean(double mean, double std, double lo, double hi);

// Throws ConfigError describing the first violated constraint.
void validate_config(const GenConfig& config);

// Draw order (normative, single stream seeded from config.seed):
//   per task, ascending id: x, y, window_open, window_length, reward;
//   per user, ascending id: x, y, then per available task ascending id:
//   availability (only if availability_prob < 1), exec_time, exec_cost.
// User types are assigned by type_counts, walking block first.
Instance generate(const GenConfig& config);

}  // namespace tsg

#endif
