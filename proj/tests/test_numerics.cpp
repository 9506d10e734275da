#include "gaclutter/errors.hpp"
#include "gaclutter/numerics.hpp"

#include <doctest.h>

#include <cmath>

using namespace gaclutter;
using namespace gaclutter::numerics;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ln_gamma known values") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ln_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-2.5), std::domain_error);
}

TEST_CASE("reg_inc_beta endpoints and a known value") {
    // I_0.5(2,3) = 11/16 by expanding the degree-4 polynomial.
    CHECK(reg_inc_beta(2.0, 3.0, 0.5) == doctest::Approx(0.6875).epsilon(1e-13));
    CHECK(reg_inc_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(reg_inc_beta(2.0, 3.0, 1.0) == 1.0);
    // Uniform special case: I_x(1,1) = x.
    for (double x : {0.1, 0.25, 0.9})
        CHECK(reg_inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-14));
}

TEST_CASE("reg_inc_beta symmetry I_x(a,b) + I_{1-x}(b,a) = 1") {
    const double abs[] = {0.5, 1.0, 2.0, 3.5, 10.0, 40.0};
    for (double a : abs)
        for (double b : abs)
            for (double x : {0.001, 0.1, 0.37, 0.5, 0.81, 0.999}) {
                const double s = reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1.0 - x);
                CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            }
}

TEST_CASE("inv_reg_inc_beta round trips, including extreme tails") {
    const double ps[] = {1e-14, 1e-8, 1e-3, 0.1, 0.5, 0.9, 1.0 - 1e-6};
    const std::pair<double, double> shapes[] = {
        {0.5, 0.5}, {2.0, 3.0}, {1.0, 4.0}, {3.0, 1.0}, {10.0, 0.5}, {1.0, 9.0}};
    for (auto [a, b] : shapes)
        for (double p : ps) {
            const double x = inv_reg_inc_beta(a, b, p);
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
            CHECK(reg_inc_beta(a, b, x) == doctest::Approx(p).epsilon(1e-9));
        }
    // Closed forms.
    CHECK(inv_reg_inc_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(inv_reg_inc_beta(2.0, 1.0, 0.25) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("f_cdf known value and bounds") {
    // F(2,4) at x=1: I_y(1,2) with y = 2/(2+4) = 1/3 -> 1-(1-1/3)^2 = 5/9.
    CHECK(f_cdf(2.0, 4.0, 1.0) == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
    CHECK(f_cdf(2.0, 4.0, 0.0) == 0.0);
    CHECK(f_cdf(2.0, 4.0, -3.0) == 0.0);
    CHECK(f_cdf(3.0, 7.0, 1e9) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("f_quantile round trips and throws at p = 1") {
    for (double p : {0.001, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-9})
        for (auto [n1, n2] : {std::pair{2.0, 4.0}, {2.0, 18.0}, {6.0, 3.0}, {20.0, 1.5}}) {
            const double x = f_quantile(n1, n2, p);
            CHECK(f_cdf(n1, n2, x) == doctest::Approx(p).epsilon(1e-9));
        }
    CHECK(f_quantile(2.0, 4.0, 0.0) == 0.0);
    CHECK_THROWS_AS(f_quantile(2.0, 4.0, 1.0), infinite_value_error);
}

TEST_CASE("f_quantile_upper stays accurate for tiny upper tails") {
    for (double q : {1e-3, 1e-8, 1e-13})
        for (auto [n1, n2] : {std::pair{2.0, 4.0}, {2.0, 18.0}, {6.0, 3.0}}) {
            const double x = f_quantile_upper(n1, n2, q);
            // Survival through the beta complement: P(F > x) = I_{1-y}(b, a).
            const double y = n1 * x / (n1 * x + n2);
            const double surv = reg_inc_beta(n2 / 2.0, n1 / 2.0, 1.0 - y);
            CHECK(surv == doctest::Approx(q).epsilon(1e-8));
        }
    // Consistency with the central quantile.
    CHECK(f_quantile_upper(2.0, 4.0, 0.25) ==
          doctest::Approx(f_quantile(2.0, 4.0, 0.75)).epsilon(1e-10));
}

TEST_CASE("normal cdf/quantile") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-14));
    CHECK(normal_cdf(-1.0) == doctest::Approx(1.0 - 0.8413447460685429).epsilon(1e-14));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
    CHECK(normal_quantile(0.5) == 0.0);
    for (double p : {1e-300, 1e-15, 1e-4, 0.3, 0.9, 1.0 - 1e-10})
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    // Survival symmetry used by the clutter transform.
    for (double x : {0.3, 2.0, 7.5, 30.0})
        CHECK(normal_cdf(-x) > 0.0);
}

TEST_CASE("gauss_hermite order 2 in closed form") {
    const auto rule = gauss_hermite(2);
    REQUIRE(rule.nodes.size() == 2);
    CHECK(rule.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rule.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rule.weights[0] == doctest::Approx(0.8862269254527580).epsilon(1e-13));
    CHECK(rule.weights[1] == doctest::Approx(0.8862269254527580).epsilon(1e-13));
}

TEST_CASE("gauss_hermite integrates monomials exactly") {
    // integral t^{2m} exp(-t^2) dt = Gamma(m + 1/2); odd moments vanish.
    const auto rule = gauss_hermite(16);
    double sum_w = 0.0;
    for (double w : rule.weights) sum_w += w;
    CHECK(sum_w == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
    for (int m = 0; m <= 8; ++m) {
        double even = 0.0, odd = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            even += rule.weights[i] * std::pow(rule.nodes[i], 2 * m);
            odd += rule.weights[i] * std::pow(rule.nodes[i], 2 * m + 1);
        }
        CHECK(even == doctest::Approx(std::exp(ln_gamma(m + 0.5))).epsilon(1e-11));
        CHECK(odd == doctest::Approx(0.0).epsilon(1e-10));
    }
    for (int order : {8, 32, 64, 128}) {
        const auto r = gauss_hermite(order);
        CHECK(static_cast<int>(r.nodes.size()) == order);
        for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
}

TEST_CASE("find_root solves and never leaves the bracket") {
    const double r = find_root([](double x) { return std::cos(x); }, 0.0, 2.0);
    CHECK(r == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(r >= 0.0);
    CHECK(r <= 2.0);

    // Steep function: root of x^9 - 1e-6 on [0, 2].
    const double s = find_root([](double x) { return std::pow(x, 9) - 1e-6; }, 0.0, 2.0, 1e-14);
    CHECK(std::pow(s, 9) == doctest::Approx(1e-6).epsilon(1e-9));

    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, 1.0, -1.0), std::invalid_argument);
}
