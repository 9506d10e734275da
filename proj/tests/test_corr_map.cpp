#include "gaclutter/corr_map.hpp"
#include "gaclutter/errors.hpp"
#include "gaclutter/ga0.hpp"

#include <doctest.h>

#include <cmath>

using namespace gaclutter;
using namespace gaclutter::corr_map;

TEST_CASE("cross_moment limits: independence and coincidence") {
    for (double alpha : {-1.5, -3.0})
        for (int looks : {1, 3}) {
            const CorrMapKey key{alpha, looks};
            const double m1 = ga0::moment({alpha, 1.0, looks}, 1.0);
            CHECK(cross_moment(key, 0.0) == doctest::Approx(m1 * m1).epsilon(1e-9));
            // tau -> 1 approaches E[Z^2] = -1/(1+alpha) at unit scale.
            CHECK(cross_moment(key, 1.0 - 1e-6) ==
                  doctest::Approx(-1.0 / (1.0 + alpha)).epsilon(1e-3));
        }
    CHECK_THROWS_AS(cross_moment({-3.0, 1}, 0.9999999), std::domain_error);
}

TEST_CASE("cross_moment matches the frozen Monte-Carlo oracle") {
    // 10^7 bivariate-normal draws, (alpha=-3, n=1), tau=0.5:
    // mean 0.41840866, 3 standard errors 0.00053.
    CHECK(std::fabs(cross_moment({-3.0, 1}, 0.5) - 0.41840866) < 0.00053);
}

TEST_CASE("rho_of_tau hits tabulated transfer values") {
    CHECK(std::fabs(rho_of_tau({-1.5, 1}, 0.629) - 0.5) < 0.01);
    CHECK(std::fabs(rho_of_tau({-3.0, 1}, -0.886) - (-0.7)) < 0.01);
    CHECK(std::fabs(rho_of_tau({-9.0, 3}, -0.953) - (-0.9)) < 0.01);
    CHECK(std::fabs(rho_of_tau({-3.0, 1}, 0.0)) < 5e-4);
}

TEST_CASE("lookup is strictly monotone and sign-preserving") {
    const auto& lk = shared_lookup({-3.0, 1});
    const auto& taus = lk.taus();
    const auto& rhos = lk.rhos();
    REQUIRE(taus.size() == rhos.size());
    REQUIRE(taus.size() == 129);
    for (std::size_t i = 1; i < rhos.size(); ++i) {
        CHECK(taus[i] > taus[i - 1]);
        CHECK(rhos[i] > rhos[i - 1]);
    }
    for (std::size_t i = 0; i < rhos.size(); ++i)
        if (taus[i] != 0.0)
            CHECK(std::signbit(rhos[i]) == std::signbit(taus[i]));
    CHECK(std::fabs(lk.rho_at(0.0)) < 5e-4);
}

TEST_CASE("doubling the quadrature order barely moves the tabulation") {
    const auto a = build_lookup({-3.0, 1}, 33, 64);
    const auto b = build_lookup({-3.0, 1}, 33, 128);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rhos().size(); ++i)
        worst = std::max(worst, std::fabs(a.rhos()[i] - b.rhos()[i]));
    CHECK(worst <= 1e-4);
}

TEST_CASE("tau_of_rho inverts the transfer function") {
    for (double alpha : {-1.5, -3.0})
        for (int looks : {1, 3}) {
            const CorrMapKey key{alpha, looks};
            const auto& lk = shared_lookup(key);
            const auto range = lk.range();
            for (double rho = -0.9; rho <= 0.91; rho += 0.1) {
                if (!range.contains(rho)) continue;
                const double tau = tau_of_rho(key, rho, lk);
                CHECK(std::fabs(rho_of_tau(key, tau) - rho) <= 5e-4);
            }
            CHECK(tau_of_rho(key, 0.0, lk) == 0.0);
            CHECK(tau_of_rho(key, 1.0, lk) == 1.0);
            CHECK(tau_of_rho(key, -1.0, lk) == -1.0);
        }
}

TEST_CASE("round trip through the forward map stays within 1e-3 in tau") {
    for (auto key : {CorrMapKey{-1.5, 1}, CorrMapKey{-3.0, 3}}) {
        const auto& lk = shared_lookup(key);
        for (double tau = -0.9; tau <= 0.91; tau += 0.1) {
            const double rho = rho_of_tau(key, tau);
            CHECK(std::fabs(tau_of_rho(key, rho, lk) - tau) <= 1e-3);
        }
    }
}

TEST_CASE("feasible ranges match the tabulated blank pattern") {
    const auto r15 = shared_lookup({-1.5, 1}).range();
    CHECK(r15.rho_min > -0.5);
    CHECK(r15.rho_min <= -0.4);
    CHECK(r15.rho_max > 0.9);

    const auto r93 = shared_lookup({-9.0, 3}).range();
    CHECK(r93.rho_min < -0.9);
    CHECK(r93.rho_max > 0.9);
}

TEST_CASE("infeasible targets raise a descriptive error") {
    const CorrMapKey key{-1.5, 1};
    const auto& lk = shared_lookup(key);
    CHECK_THROWS_AS(tau_of_rho(key, -0.9, lk), infeasible_correlation_error);
    try {
        tau_of_rho(key, -0.9, lk);
    } catch (const infeasible_correlation_error& e) {
        CHECK(e.rho_min > -1.0);
        CHECK(e.rho_max < 1.0);
        CHECK(e.rho_min > -0.5);
    }
}

TEST_CASE("alpha drives the transfer far more than n") {
    // Identity trend: the alpha=-9 map is closer to the identity than alpha=-1.5.
    double worst9 = 0.0, worst15 = 0.0;
    const auto& l9 = shared_lookup({-9.0, 1});
    const auto& l15 = shared_lookup({-1.5, 1});
    for (double rho = -0.4; rho <= 0.91; rho += 0.1) {
        worst9 = std::max(worst9, std::fabs(tau_of_rho({-9.0, 1}, rho, l9) - rho));
        worst15 = std::max(worst15, std::fabs(tau_of_rho({-1.5, 1}, rho, l15) - rho));
    }
    CHECK(worst9 < worst15);
}

TEST_CASE("shared_lookup caches by key") {
    const auto& a = shared_lookup({-3.0, 1});
    const auto& b = shared_lookup({-3.0, 1});
    CHECK(&a == &b);
    const auto& c = shared_lookup({-3.0, 3});
    CHECK(&a != &c);
}

TEST_CASE("invalid keys are rejected") {
    CHECK_THROWS_AS(rho_of_tau({-0.5, 1}, 0.3), std::domain_error);
    CHECK_THROWS_AS(rho_of_tau({-3.0, 0}, 0.3), std::domain_error);
}
