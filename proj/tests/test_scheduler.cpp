#include <doctest.h>

#include <cmath>
#include <random>

#include "depsim/scheduler.hpp"

using namespace depsim;

namespace {

SwitchConfig stoch(double p, int h_dep) {
    SwitchConfig c;
    c.mode = SwitchConfig::Mode::stoch;
    c.p_switch = p;
    c.h_dep = h_dep;
    return c;
}

Eigen::VectorXd zero_policy(const Eigen::VectorXd& obs) {
    return Eigen::VectorXd::Zero(1);
}

}  // namespace

TEST_CASE("p = 0 never leaves the policy") {
    SwitchState state;
    std::mt19937_64 rng(1);
    const auto c = stoch(0.0, 20);
    for (int t = 0; t < 10000; ++t) CHECK(state.next(c, rng) == ControllerTag::policy);
}

TEST_CASE("p = 1 gives one policy step then full DEP spans") {
    SwitchState state;
    std::mt19937_64 rng(2);
    const auto c = stoch(1.0, 3);
    // switch is decided on policy steps, so the cycle is P D D D P D D D ...
    for (int cycle = 0; cycle < 50; ++cycle) {
        CHECK(state.next(c, rng) == ControllerTag::policy);
        for (int k = 0; k < 3; ++k) CHECK(state.next(c, rng) == ControllerTag::dep);
    }
}

TEST_CASE("every DEP span has length exactly h_dep") {
    SwitchState state;
    std::mt19937_64 rng(3);
    const auto c = stoch(0.05, 7);
    int run = 0;
    int spans = 0;
    for (int t = 0; t < 200000; ++t) {
        if (state.next(c, rng) == ControllerTag::dep) {
            ++run;
        } else if (run > 0) {
            CHECK(run == 7);
            ++spans;
            run = 0;
        }
    }
    CHECK(spans > 100);
}

TEST_CASE("stationary DEP occupancy matches p h / (1 + p h)") {
    std::mt19937_64 rng(4);
    struct Case { double p; int h; };
    for (const auto [p, h] : {Case{0.01, 20}, Case{0.05, 10}, Case{0.2, 5}}) {
        SwitchState state;
        const auto c = stoch(p, h);
        const int n = 2000000;
        int dep_steps = 0;
        for (int t = 0; t < n; ++t)
            if (state.next(c, rng) == ControllerTag::dep) ++dep_steps;
        const double expected = p * h / (1.0 + p * h);
        CHECK(std::abs(double(dep_steps) / n - expected) < 0.02);
    }
}

TEST_CASE("det mode alternates h_rl policy steps with h_dep DEP steps") {
    SwitchConfig c;
    c.mode = SwitchConfig::Mode::det;
    c.h_rl = 4;
    c.h_dep = 2;
    SwitchState state;
    std::mt19937_64 rng(5);
    for (int cycle = 0; cycle < 30; ++cycle) {
        for (int k = 0; k < 4; ++k) CHECK(state.next(c, rng) == ControllerTag::policy);
        for (int k = 0; k < 2; ++k) CHECK(state.next(c, rng) == ControllerTag::dep);
    }
}

TEST_CASE("avg and init_only modes emit their single tag") {
    std::mt19937_64 rng(6);
    SwitchConfig c;
    SwitchState state;
    c.mode = SwitchConfig::Mode::avg;
    for (int t = 0; t < 100; ++t) CHECK(state.next(c, rng) == ControllerTag::avg);
    c.mode = SwitchConfig::Mode::init_only;
    state.reset();
    for (int t = 0; t < 100; ++t) CHECK(state.next(c, rng) == ControllerTag::policy);
}

TEST_CASE("switch config validation") {
    auto c = stoch(0.01, 20);
    CHECK_NOTHROW(c.validate());
    c.p_switch = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = stoch(0.01, 0);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("replay buffer keeps the newest transitions in FIFO order") {
    ReplayBuffer buf(100);
    for (int i = 0; i < 250; ++i) {
        Transition t;
        t.reward = double(i);
        buf.push(std::move(t));
    }
    CHECK(buf.size() == 100);
    CHECK(buf.capacity() == 100);
    for (size_t i = 0; i < 100; ++i) CHECK(buf.at(i).reward == double(150 + i));
    CHECK_THROWS_AS(buf.at(100), std::out_of_range);
}

TEST_CASE("episode runs cover the full horizon and log consistent tags") {
    MountainCarConfig mc;
    mc.horizon = 200;
    MountainCarEnv env(mc);
    DepParams dp = DepParams::locomotion_preset();
    DepController dep(1, 1, dp);
    std::mt19937_64 rng(7);
    ReplayBuffer buf(1000);

    auto c = stoch(0.1, 5);
    const auto log = run_episode(env, zero_policy, dep, c, rng, &buf);
    CHECK(log.steps.size() == 200);
    CHECK(buf.size() == 200);
    double total = 0.0;
    for (const auto& s : log.steps) {
        total += s.reward;
        CHECK((s.tag == ControllerTag::policy || s.tag == ControllerTag::dep));
    }
    CHECK(log.total_reward == doctest::Approx(total));
}

TEST_CASE("without background learning C is untouched during policy control") {
    MountainCarConfig mc;
    mc.horizon = 300;
    DepParams dp = DepParams::locomotion_preset();
    std::mt19937_64 rng(8);

    // p = 0 keeps the policy in control for the whole episode, so with
    // background learning off the DEP matrix must stay at its initial state.
    MountainCarEnv env(mc);
    DepController dep(1, 1, dp);
    auto c = stoch(0.0, 5);
    c.background_learning = false;
    run_episode(env, zero_policy, dep, c, rng);
    CHECK(dep.raw_C()(0, 0) == 0.0);

    // with background learning on, the same episode trains C
    MountainCarEnv env2(mc);
    DepController dep2(1, 1, dp);
    std::mt19937_64 rng2(8);
    auto c2 = stoch(0.0, 5);
    run_episode(env2, zero_policy, dep2, c2, rng2);
    CHECK(dep2.raw_C()(0, 0) != 0.0);
}

TEST_CASE("avg mode blends policy and DEP actions") {
    MountainCarConfig mc;
    mc.horizon = 50;
    MountainCarEnv env(mc);
    DepParams dp = DepParams::locomotion_preset();
    DepController dep(1, 1, dp);
    std::mt19937_64 rng(9);

    SwitchConfig c;
    c.mode = SwitchConfig::Mode::avg;
    c.w_avg = 0.25;
    auto policy = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Constant(1, 0.8); };
    const auto log = run_episode(env, policy, dep, c, rng);
    for (const auto& s : log.steps) {
        CHECK(s.tag == ControllerTag::avg);
        // DEP contributes in [-1, 1] (tanh rounds to +/-1 when saturated),
        // so the blend stays near the policy value
        CHECK(s.action[0] >= 0.8 * 0.75 - 0.25);
        CHECK(s.action[0] <= 0.8 * 0.75 + 0.25);
    }
}

TEST_CASE("prefill pushes exactly n steps, all tagged dep") {
    MountainCarConfig mc;
    mc.horizon = 60;
    MountainCarEnv env(mc);
    DepParams dp = DepParams::locomotion_preset();
    DepController dep(1, 1, dp);
    std::mt19937_64 rng(10);
    ReplayBuffer buf(500);
    prefill(env, dep, 200, buf, rng);  // spans several auto-reset episodes
    CHECK(buf.size() == 200);
    for (size_t i = 0; i < buf.size(); ++i) CHECK(buf.at(i).tag == ControllerTag::dep);
}

TEST_CASE("identical seeds give identical episodes") {
    auto run_once = [](std::uint64_t seed) {
        MountainCarConfig mc;
        mc.horizon = 150;
        MountainCarEnv env(mc);
        DepController dep(1, 1, DepParams::locomotion_preset());
        std::mt19937_64 rng(seed);
        return run_episode(env, zero_policy, dep, stoch(0.05, 10), rng);
    };
    const auto a = run_once(42);
    const auto b = run_once(42);
    REQUIRE(a.steps.size() == b.steps.size());
    for (size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].action == b.steps[i].action);
        CHECK(a.steps[i].tag == b.steps[i].tag);
        CHECK(a.steps[i].reward == b.steps[i].reward);
    }
}
