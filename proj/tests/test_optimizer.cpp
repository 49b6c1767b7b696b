#include <doctest.h>

#include "support/oracles.hpp"
#include "tsg/dynamics.hpp"
#include "tsg/optimizer.hpp"

using namespace tsg;
namespace tt = tsg::testing;

TEST_CASE("single user optima coincide with the solo best response") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Instance inst = tt::desk_instance_varied(seed, 5, 1);
        BestResponse solo = best_response(inst, Profile(1), 0);
        JointOptimum phi = maximize_potential(inst);
        CAPTURE(seed);
        CHECK(phi.profile[0] == solo.schedule);
        CHECK(phi.value == doctest::Approx(solo.payoff).epsilon(1e-12));
    }
}

TEST_CASE("worked example joint optima") {
    Instance inst = tt::two_user_one_task();

    JointOptimum phi = maximize_potential(inst);
    CHECK((phi.profile == Profile{{1}, {1}}));
    CHECK(phi.value == doctest::Approx(5.3));

    JointOptimum se = maximize_welfare(inst);
    CHECK((se.profile == Profile{{1}, {}}));
    CHECK(se.value == doctest::Approx(5.2));
}

TEST_CASE("potential maximizer is an equilibrium") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = tt::desk_instance_varied(seed, 4, 3);
        JointOptimum phi = maximize_potential(inst);
        CAPTURE(seed);
        CHECK(verify_ne(inst, phi.profile).is_ne);
        CHECK(potential(inst, phi.profile) == phi.value);
    }
}

TEST_CASE("joint search matches brute force on tiny instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = tt::desk_instance_varied(seed, 3, 3);
        for (bool welfare : {false, true}) {
            JointOptimum got = welfare ? maximize_welfare(inst) : maximize_potential(inst);
            tt::JointOracle want = tt::brute_force_joint(inst, welfare);
            CAPTURE(seed);
            CAPTURE(welfare);
            CHECK(got.value == doctest::Approx(want.value).epsilon(1e-12));
            CHECK(got.profile == want.profile);
        }
    }
}

TEST_CASE("welfare optimum dominates every profile the system produces") {
    tt::TestRng rng(53);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Instance inst = tt::desk_instance_varied(seed, 4, 3);
        double best = maximize_welfare(inst).value;
        CAPTURE(seed);

        for (int k = 0; k < 10; ++k)
            CHECK(best >= social_welfare(inst, tt::random_feasible_profile(inst, rng)) - 1e-9);

        DynamicsResult dyn = best_response_dynamics(inst, Profile(inst.users.size()));
        CHECK(best >= social_welfare(inst, dyn.profile) - 1e-9);
        CHECK(best >= social_welfare(inst, maximize_potential(inst).profile) - 1e-9);
        CHECK(best >= social_welfare(inst, greedy_welfare_heuristic(inst)) - 1e-9);
    }
}

TEST_CASE("greedy heuristic basics") {
    SUBCASE("single profitable task is assigned") {
        Instance inst = tt::two_user_one_task();
        Profile profile = greedy_welfare_heuristic(inst);
        CHECK((profile == Profile{{1}, {}}));
    }
    SUBCASE("empty instance gives an empty profile") {
        Instance inst;
        inst.horizon = 100.0;
        CHECK(greedy_welfare_heuristic(inst).empty());

        Instance users_only = tt::two_user_one_task();
        users_only.tasks.clear();
        users_only.users[0].tasks.clear();
        users_only.users[1].tasks.clear();
        CHECK((greedy_welfare_heuristic(users_only) == Profile{{}, {}}));
    }
    SUBCASE("result is always feasible and well formed") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Instance inst = tt::desk_instance_varied(seed, 6, 4);
            Profile profile = greedy_welfare_heuristic(inst);
            REQUIRE(profile_well_formed(inst, profile));
            for (std::size_t i = 0; i < profile.size(); ++i)
                CHECK(is_feasible(inst, inst.users[i], profile[i]));
        }
    }
}

TEST_CASE("greedy heuristic calibration against the exact optimum") {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Instance inst = tt::desk_instance_varied(seed, 5, 3);
        double exact = maximize_welfare(inst).value;
        double greedy = social_welfare(inst, greedy_welfare_heuristic(inst));
        CHECK(greedy <= exact + 1e-9);
        if (greedy >= 0.8 * exact - 1e-9) ++good;
    }
    CHECK(good >= 180);
}

TEST_CASE("caps are enforced") {
    Instance inst = tt::desk_instance(5, 5, 3);
    OptimizerOptions opts;
    opts.joint_cap = 10.0;
    CHECK_THROWS_AS(maximize_welfare(inst, opts), CapExceededError);

    Instance wide = tt::desk_instance(6, 9, 2);
    CHECK_THROWS_AS(maximize_potential(wide), CapExceededError);  // enumeration cap
}
