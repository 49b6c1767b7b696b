#include <doctest.h>

#include "support/oracles.hpp"

using namespace tsg;
namespace tt = tsg::testing;

namespace {

// Instance + random feasible profile pairs for property checks.
template <typename Fn>
void for_random_profiles(int count, Fn&& fn) {
    tt::TestRng rng(23);
    for (int trial = 0; trial < count; ++trial) {
        Instance inst = tt::desk_instance_varied(static_cast<std::uint64_t>(trial + 1), 5, 3);
        Profile profile = tt::random_feasible_profile(inst, rng);
        fn(inst, profile, rng);
    }
}

}  // namespace

TEST_CASE("execution counts") {
    Instance inst = tt::desk_instance(3, 4, 3);
    SUBCASE("all empty schedules count zero") {
        Profile profile(3);
        for (const auto& [id, m] : execution_counts(inst, profile)) CHECK(m == 0);
    }
    SUBCASE("shared task counted once per user") {
        Profile profile = {{3}, {3}, {}};
        auto counts = execution_counts(inst, profile);
        CHECK(counts.at(3) == 2);
        CHECK(counts.at(1) == 0);
    }
    SUBCASE("random profiles match a naive recount") {
        for_random_profiles(40, [](const Instance& inst, const Profile& profile, tt::TestRng&) {
            auto counts = execution_counts(inst, profile);
            for (const Task& t : inst.tasks) {
                int m = 0;
                for (const Schedule& s : profile)
                    m += static_cast<int>(std::count(s.begin(), s.end(), t.id));
                CHECK(counts.at(t.id) == m);
            }
        });
    }
}

TEST_CASE("user reward splits evenly among executors") {
    Instance inst = tt::two_user_one_task();
    CHECK(user_reward(inst, {{}, {}}, 0) == 0.0);
    CHECK(user_reward(inst, {{1}, {1}}, 0) == 5.0);
    CHECK(user_reward(inst, {{1}, {1}}, 1) == 5.0);
    CHECK(user_reward(inst, {{1}, {}}, 0) == 10.0);
}

TEST_CASE("reward recomputation from counts on random profiles") {
    for_random_profiles(40, [](const Instance& inst, const Profile& profile, tt::TestRng&) {
        auto counts = execution_counts(inst, profile);
        for (std::size_t i = 0; i < profile.size(); ++i) {
            double expect = 0.0;
            for (TaskId id : profile[i]) expect += inst.task(id).reward / counts.at(id);
            CHECK(user_reward(inst, profile, i) == doctest::Approx(expect).epsilon(1e-12));
        }
    });
}

TEST_CASE("execution cost sums selected entries") {
    Instance inst = tt::two_user_one_task();
    inst.users[0].tasks[1].exec_cost = 1.0;
    inst.users[0].tasks.emplace(2, TaskEffort{60.0, 2.5});
    inst.tasks.push_back({2, {0.0, 0.0}, 1.0, 0.0, 7200.0});
    CHECK(execution_cost(inst.users[0], {}) == 0.0);
    CHECK(execution_cost(inst.users[0], {1, 2}) == 3.5);
}

TEST_CASE("travel cost follows the visiting order") {
    User u;
    u.start = {0.0, 0.0};
    u.travel_cost_rate = 0.5;
    Instance inst;
    inst.horizon = 7200.0;
    inst.tasks = {{1, {10.0, 0.0}, 0.0, 0.0, 7200.0}, {2, {10.0, 10.0}, 0.0, 0.0, 7200.0}};
    u.tasks.emplace(1, TaskEffort{});
    u.tasks.emplace(2, TaskEffort{});
    inst.users.push_back(u);

    CHECK(travel_cost(inst, inst.users[0], {}) == 0.0);
    CHECK(travel_cost(inst, inst.users[0], {1, 2}) == doctest::Approx(10.0));

    SUBCASE("co-located consecutive tasks add nothing") {
        Instance co = inst;
        co.tasks[1].location = {3.0, 4.0};
        co.tasks[0].location = {3.0, 4.0};
        co.users[0].travel_cost_rate = 2.0;
        CHECK(travel_cost(co, co.users[0], {1, 2}) == doctest::Approx(5.0 * 2.0));
    }
}

TEST_CASE("travel cost is order-sensitive, reward and execution cost are not") {
    for_random_profiles(25, [](const Instance& inst, const Profile& profile, tt::TestRng& rng) {
        for (std::size_t i = 0; i < profile.size(); ++i) {
            Schedule shuffled = profile[i];
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            Profile alt = profile;
            alt[i] = shuffled;
            CHECK(execution_cost(inst.users[i], shuffled) ==
                  doctest::Approx(execution_cost(inst.users[i], profile[i])).epsilon(1e-12));
            CHECK(user_reward(inst, alt, i) ==
                  doctest::Approx(user_reward(inst, profile, i)).epsilon(1e-12));
        }
    });
}

TEST_CASE("worked example payoffs") {
    Instance inst = tt::two_user_one_task();
    CHECK(user_payoff(inst, {{}, {}}, 0) == 0.0);
    CHECK(user_payoff(inst, {{1}, {}}, 0) == doctest::Approx(5.2));
    CHECK(user_payoff(inst, {{1}, {1}}, 0) == doctest::Approx(0.2));
    CHECK(user_payoff(inst, {{1}, {1}}, 1) == doctest::Approx(0.1));
}

TEST_CASE("potential on the worked example") {
    Instance inst = tt::two_user_one_task();
    CHECK(potential(inst, {{}, {}}) == 0.0);
    CHECK(potential(inst, {{1}, {1}}) == doctest::Approx(5.3));
}

TEST_CASE("unilateral deviations move payoff and potential identically") {
    tt::TestRng rng(29);
    int checked = 0;
    while (checked < 400) {
        Instance inst =
            tt::desk_instance_varied(static_cast<std::uint64_t>(checked * 7 + 1), 5, 3);
        Profile profile = tt::random_feasible_profile(inst, rng);
        std::uniform_int_distribution<std::size_t> pick(0, inst.users.size() - 1);
        std::size_t i = pick(rng);
        Schedule deviation = tt::random_feasible_schedule(inst, inst.users[i], rng);

        Profile deviated = profile;
        deviated[i] = deviation;
        double du = user_payoff(inst, deviated, i) - user_payoff(inst, profile, i);
        double dphi = potential(inst, deviated) - potential(inst, profile);
        CHECK(std::abs(du - dphi) <= 1e-9);
        ++checked;
    }
}

TEST_CASE("potential matches the user-by-user construction oracle") {
    for_random_profiles(60, [](const Instance& inst, const Profile& profile, tt::TestRng&) {
        CHECK(potential(inst, profile) ==
              doctest::Approx(tt::potential_oracle(inst, profile)).epsilon(1e-12));
    });
}

TEST_CASE("social welfare basics and payoff-sum identity") {
    Instance inst = tt::two_user_one_task();
    CHECK(social_welfare(inst, {{}, {}}) == 0.0);
    CHECK(social_welfare(inst, {{1}, {1}}) == doctest::Approx(0.3));

    for_random_profiles(60, [](const Instance& inst, const Profile& profile, tt::TestRng&) {
        CHECK(tt::payoff_sum_gap(inst, profile) <= 1e-9);
    });
}

TEST_CASE("potential dominates welfare, equal only without sharing") {
    for_random_profiles(60, [](const Instance& inst, const Profile& profile, tt::TestRng&) {
        double phi = potential(inst, profile);
        double w = social_welfare(inst, profile);
        CHECK(phi >= w - 1e-9);
        auto counts = execution_counts(inst, profile);
        bool shared = false;
        for (const auto& [id, m] : counts)
            if (m >= 2 && inst.task(id).reward > 0.0) shared = true;
        if (shared)
            CHECK(phi > w + 1e-9);
        else
            CHECK(phi == doctest::Approx(w).epsilon(1e-12));
    });
}

TEST_CASE("jain index") {
    CHECK(jain_index({1.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(jain_index({0.7, 0.0, 0.0, 0.0}) == doctest::Approx(0.25));
    CHECK(jain_index({0.2, 0.1}) == doctest::Approx(0.9));
    CHECK(jain_index({0.0, 0.0}) == 1.0);
    CHECK(jain_index(std::vector<double>{}) == 1.0);
}
