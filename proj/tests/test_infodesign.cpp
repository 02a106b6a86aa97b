#include <doctest.h>

#include <cmath>
#include <random>

#include "sigmalab/infodesign.hpp"
#include "sigmalab/lattice.hpp"
#include "test_util.hpp"

using namespace sigmalab;

namespace {

InfoDesignInstance sqrt_instance(int n_actions = 2) {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition g = Partition::trivial(4);
    std::vector<Partition> support{g, Partition({0, 0, 1, 1}), Partition::singletons(4)};
    return InfoDesignInstance(u4, g, support, n_actions, Utility{Utility::Kind::Power, 0.5});
}

StrategyProfile uniform_profile(const InfoDesignInstance& inst) {
    StrategyProfile s;
    s.per_support.resize(inst.support.size());
    for (std::size_t h = 0; h < inst.support.size(); ++h) {
        std::size_t nb = inst.observed(h).n_blocks();
        s.per_support[h].assign(nb, std::vector<double>(
                                        static_cast<std::size_t>(inst.n_actions),
                                        1.0 / inst.n_actions));
    }
    return s;
}

std::vector<std::vector<double>> random_state_utility(std::mt19937_64& rng, std::size_t n,
                                                      int n_actions) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<std::vector<double>> su(n, std::vector<double>(n_actions));
    for (auto& row : su)
        for (auto& x : row) x = dist(rng);
    return su;
}

}  // namespace

TEST_CASE("instance validation") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition g({0, 0, 1, 1});
    // support must contain dm_info
    CHECK_THROWS_AS(InfoDesignInstance(u4, g, {Partition::singletons(4)}, 2,
                                       Utility{Utility::Kind::Power, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(InfoDesignInstance(u4, g, {g}, 0, Utility{Utility::Kind::Power, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(InfoDesignInstance(u4, g, {g}, 2, Utility{Utility::Kind::Power, 1.5}),
                    std::invalid_argument);
}

TEST_CASE("payoff examples") {
    // N = 1: the only strategy plays the single action, payoff v(1)
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition g = Partition::trivial(4);
    InfoDesignInstance one(u4, g, {g}, 1, Utility{Utility::Kind::Power, 0.5});
    StrategyProfile s1 = uniform_profile(one);
    CHECK(payoff(one, s1, Transfer::dirac(1, 0)) == doctest::Approx(1.0));

    // state-independent form with v = sqrt: uniform strategy gives 2 sqrt(1/2)
    auto inst = sqrt_instance();
    auto su = uniform_profile(inst);
    for (std::size_t h = 0; h < 3; ++h) {
        CHECK(payoff(inst, su, Transfer::dirac(3, h)) ==
              doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-12));
    }

    // linear v: payoff is 1 plus the state term for any simplex strategy
    std::mt19937_64 rng(67);
    auto state = random_state_utility(rng, 4, 2);
    InfoDesignInstance lin(u4, g, {g}, 2, Utility{Utility::Kind::Power, 1.0}, state);
    StrategyProfile sl = uniform_profile(lin);
    double expected_state = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        expected_state += 0.25 * 0.5 * (state[i][0] + state[i][1]);
    CHECK(payoff(lin, sl, Transfer::dirac(1, 0)) ==
          doctest::Approx(1.0 + expected_state).epsilon(1e-12));
}

TEST_CASE("payoff rejects malformed inputs") {
    auto inst = sqrt_instance();
    auto s = uniform_profile(inst);
    CHECK_THROWS_AS(payoff(inst, s, Transfer{{0.5, 0.5}}), std::invalid_argument);
    Transfer bad{{0.5, 0.2, 0.2}};
    CHECK_THROWS_AS(payoff(inst, s, bad), std::invalid_argument);
    auto s2 = s;
    s2.per_support[0][0][0] = 0.9;  // simplex violated
    CHECK_THROWS_AS(payoff(inst, s2, Transfer::dirac(3, 0)), std::invalid_argument);
}

TEST_CASE("payoff is linear in the transfer") {
    std::mt19937_64 rng(71);
    auto inst = sqrt_instance(3);
    auto s = dm_best_response(inst, Transfer{{0.2, 0.3, 0.5}});
    Transfer n1{{1.0, 0.0, 0.0}};
    Transfer n2{{0.0, 0.25, 0.75}};
    for (double lam : {0.0, 0.3, 0.5, 0.9, 1.0}) {
        Transfer mix{{lam * n1.weights[0] + (1 - lam) * n2.weights[0],
                      lam * n1.weights[1] + (1 - lam) * n2.weights[1],
                      lam * n1.weights[2] + (1 - lam) * n2.weights[2]}};
        CHECK(std::abs(payoff(inst, s, mix) - (lam * payoff(inst, s, n1) +
                                               (1 - lam) * payoff(inst, s, n2))) <= 1e-12);
    }
    (void)rng;
}

TEST_CASE("dm_best_response examples") {
    // strictly concave state-independent: uniform on every block
    auto inst = sqrt_instance();
    auto br = dm_best_response(inst, Transfer{{0.5, 0.5, 0.0}});
    for (const auto& blocks : br.per_support)
        for (const auto& pt : blocks)
            for (double x : pt) CHECK(x == doctest::Approx(0.5).epsilon(1e-10));

    // linear v with state utility: vertex argmax, ties to lowest action
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition g({0, 0, 1, 1});
    std::vector<std::vector<double>> state{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
    InfoDesignInstance lin(u4, g, {g}, 2, Utility{Utility::Kind::Power, 1.0}, state);
    auto brl = dm_best_response(lin, Transfer::dirac(1, 0));
    CHECK(brl.per_support[0][0][0] == 1.0);  // block {0,1} prefers action 0
    CHECK(brl.per_support[0][1][1] == 1.0);  // block {2,3} prefers action 1

    std::vector<std::vector<double>> tied{{1, 1}, {1, 1}, {1, 1}, {1, 1}};
    InfoDesignInstance tie(u4, g, {g}, 2, Utility{Utility::Kind::Power, 1.0}, tied);
    auto brt = dm_best_response(tie, Transfer::dirac(1, 0));
    CHECK(brt.per_support[0][0][0] == 1.0);  // tie goes to the lowest action

    // N = 1: the unique strategy
    InfoDesignInstance one(u4, g, {g}, 1, Utility{Utility::Kind::Power, 0.5});
    auto bro = dm_best_response(one, Transfer::dirac(1, 0));
    CHECK(bro.per_support[0][0][0] == 1.0);
}

TEST_CASE("best response maximizes blockwise payoff") {
    std::mt19937_64 rng(73);
    FiniteProbSpace u6 = FiniteProbSpace::uniform(6);
    Partition g({0, 0, 1, 1, 2, 2});
    for (auto kind : {Utility{Utility::Kind::Power, 0.5}, Utility{Utility::Kind::Log1p, 0.0},
                      Utility{Utility::Kind::Power, 1.0}}) {
        auto state = random_state_utility(rng, 6, 3);
        InfoDesignInstance inst(u6, g, {g}, 3, kind, state);
        Transfer nu = Transfer::dirac(1, 0);
        auto br = dm_best_response(inst, nu);
        double best = payoff(inst, br, nu);
        // random feasible perturbations never beat the returned profile
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (int t = 0; t < 300; ++t) {
            auto s = br;
            for (auto& blocks : s.per_support)
                for (auto& pt : blocks) {
                    double total = 0.0;
                    for (auto& x : pt) {
                        x = dist(rng);
                        total += x;
                    }
                    for (auto& x : pt) x /= total;
                }
            CHECK(payoff(inst, s, nu) <= best + 1e-7);
        }
    }
}

TEST_CASE("value_of_information examples") {
    auto inst = sqrt_instance();
    // state-independent model: information is worthless, value N v(1/N)
    double base = 2.0 * std::sqrt(0.5);
    for (const auto& h : inst.support)
        CHECK(value_of_information(inst, h) == doctest::Approx(base).epsilon(1e-12));
    CHECK_THROWS_AS(value_of_information(inst, Partition({0, 1, 1, 0})),
                    std::invalid_argument);

    // linear v + state utility: value = sum_b P(b) max_i mean utility
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition g = Partition::trivial(4);
    std::vector<std::vector<double>> state{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
    Partition fine({0, 0, 1, 1});
    InfoDesignInstance lin(u4, g, {g, fine}, 2, Utility{Utility::Kind::Power, 1.0}, state);
    CHECK(value_of_information(lin, g) == doctest::Approx(1.0 + 0.5));
    CHECK(value_of_information(lin, fine) == doctest::Approx(1.0 + 1.0));
}

TEST_CASE("refinement monotonicity of the value of information") {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 50; ++t) {
        FiniteProbSpace s = testutil::random_space(rng, 6);
        Partition g = testutil::random_partition(rng, 6);
        Partition h1 = testutil::random_partition(rng, 6);
        Partition h2 = testutil::random_partition(rng, 6);
        Partition h12 = join(h1, h2);
        auto state = random_state_utility(rng, 6, 3);
        InfoDesignInstance inst(s, g, {g, h1, h2, h12}, 3,
                                Utility{Utility::Kind::Power, 1.0}, state);
        double v12 = value_of_information(inst, h12);
        CHECK(v12 >= value_of_information(inst, h1) - 1e-10);
        CHECK(v12 >= value_of_information(inst, h2) - 1e-10);
    }
}

TEST_CASE("solve_equilibrium examples") {
    // state-independent: flat value function, Dirac at the lowest index, slack 0
    auto inst = sqrt_instance();
    auto eq = solve_equilibrium(inst);
    CHECK(eq.certificate.chosen_support_index == 0);
    CHECK(eq.nu_hat.weights[0] == 1.0);
    CHECK(eq.certificate.id_vertex_gap == 0.0);
    CHECK(eq.certificate.dm_kkt_residual <= 1e-8);
    CHECK(eq.certificate.optimal_face.size() == 3);
    for (const auto& blocks : eq.s_hat.per_support)
        for (const auto& pt : blocks)
            for (double x : pt) CHECK(x == doctest::Approx(0.5).epsilon(1e-10));

    // a strictly informative refinement wins under linear v
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition g = Partition::trivial(4);
    std::vector<std::vector<double>> state{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
    Partition fine({0, 0, 1, 1});
    InfoDesignInstance lin(u4, g, {g, fine}, 2, Utility{Utility::Kind::Power, 1.0}, state);
    auto eql = solve_equilibrium(lin);
    CHECK(eql.certificate.chosen_support_index == 1);
    CHECK(eql.value == doctest::Approx(2.0));
    CHECK(eql.certificate.optimal_face == std::vector<std::size_t>{1});

    // singleton support
    InfoDesignInstance solo(u4, g, {g}, 2, Utility{Utility::Kind::Power, 0.5});
    auto eqs = solve_equilibrium(solo);
    CHECK(eqs.nu_hat.weights == std::vector<double>{1.0});
}

TEST_CASE("equilibrium certificate is sound under random deviations") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        FiniteProbSpace s = testutil::random_space(rng, 5);
        Partition g = testutil::random_partition(rng, 5);
        std::vector<Partition> support{g, testutil::random_partition(rng, 5),
                                       testutil::random_partition(rng, 5)};
        auto state = random_state_utility(rng, 5, 3);
        InfoDesignInstance inst(s, g, support, 3, Utility{Utility::Kind::Power, 0.5}, state);
        auto eq = solve_equilibrium(inst);
        double val = payoff(inst, eq.s_hat, eq.nu_hat);
        for (int d = 0; d < 100; ++d) {
            // DM deviation
            auto sp = eq.s_hat;
            for (auto& blocks : sp.per_support)
                for (auto& pt : blocks) {
                    double total = 0.0;
                    for (auto& x : pt) {
                        x = dist(rng);
                        total += x;
                    }
                    for (auto& x : pt) x /= total;
                }
            CHECK(payoff(inst, sp, eq.nu_hat) <= val + 1e-7);
            // ID deviation
            Transfer nu{{dist(rng), dist(rng), dist(rng)}};
            double tot = nu.weights[0] + nu.weights[1] + nu.weights[2];
            for (auto& w : nu.weights) w /= tot;
            CHECK(payoff(inst, eq.s_hat, nu) <= val + 1e-7);
        }
    }
}
