#include "gaclutter/corr_models.hpp"
#include "gaclutter/field_gen.hpp"
#include "gaclutter/raster_io.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace gaclutter;
using namespace gaclutter::corr_models;

TEST_CASE("parametric wedge model values") {
    const ParametricCorr m{0.4, 2, 0.001};
    CHECK(parametric_rho(m, 0, 0) == 1.0);
    CHECK(parametric_rho(m, 1, 0) == doctest::Approx(0.311520313228562).epsilon(1e-14));
    CHECK(parametric_rho(m, 0, 1) == doctest::Approx(-0.311520313228562).epsilon(1e-14));
    CHECK(parametric_rho(m, 1, 1) == doctest::Approx(0.311520313228562).epsilon(1e-14));
    CHECK(parametric_rho(m, 8, 0) == 0.0);   // 0.4 e^{-16} < eps
    CHECK(parametric_rho(m, 0, 8) == 0.0);
    // The negative branch applies strictly below the diagonal.
    CHECK(parametric_rho(m, 2, 3) < 0.0);
    CHECK(parametric_rho(m, 3, 2) > 0.0);
}

TEST_CASE("parametric model validation") {
    CHECK_THROWS_AS(parametric_rho({1.2, 2, 0.001}, 1, 0), std::domain_error);
    CHECK_THROWS_AS(parametric_rho({0.4, 3, 0.001}, 1, 0), std::domain_error);  // odd L
    CHECK_THROWS_AS(parametric_rho({0.4, 2, 0.0}, 1, 0), std::domain_error);
    CHECK_THROWS_AS(parametric_rho({0.4, 2, 0.001}, -1, 0), std::domain_error);
}

TEST_CASE("materialize_r1 covers the base quadrant") {
    const auto base = materialize_r1({0.4, 2, 0.001}, 8);
    REQUIRE(base.rows() == 5);
    REQUIRE(base.cols() == 5);
    CHECK(base(0, 0) == 1.0);
    CHECK(base(1, 0) == parametric_rho({0.4, 2, 0.001}, 1, 0));
    CHECK(base(0, 1) == parametric_rho({0.4, 2, 0.001}, 0, 1));
    CHECK_NOTHROW(field_gen::extend_rho(base, 8));
}

TEST_CASE("load_matrix validation and thresholding") {
    CHECK(load_matrix(std::string("1.0\n")).order() == 1);
    CHECK_THROWS(load_matrix(std::string("1.0,0.2\n0.2,1.2\n")));          // out of range
    CHECK_THROWS(load_matrix(std::string("0.9,0.2\n0.2,0.1\n")));          // origin not 1
    CHECK_THROWS(load_matrix(std::string("1.0,0.2\n0.2\n")));              // ragged
    CHECK_THROWS(load_matrix(std::string("1.0,0.2,0.1\n0.2,1.0,0.0\n")));  // not square
    CHECK_THROWS(load_matrix(std::string("")));

    const auto mc = load_matrix(std::string("# comment\n1.0,0.0005\n-0.25,0.1\n"));
    CHECK(mc.values(0, 1) == 0.0);     // below the 1e-3 threshold
    CHECK(mc.values(1, 0) == -0.25);
    CHECK_THROWS(load_matrix(std::string("1.0,0.2\n# late comment\n0.2,0.1\n")));
}

TEST_CASE("matrix CSV round-trips bit-exactly at 17 digits") {
    Matrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 0.3115203132285620;
    m(1, 0) = -1.0 / 3.0;
    m(1, 1) = 0.1234567890123456;
    std::ostringstream out;
    raster_io::write_csv(out, m);
    const auto mc = load_matrix(out.str());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(mc.values(i, j) == m(i, j));
}

TEST_CASE("to_r1_rho pads beyond the window with zeros") {
    const auto mc = load_matrix(std::string("1.0,0.2\n0.3,0.1\n"));
    const auto base = to_r1_rho(mc, 8);
    REQUIRE(base.rows() == 5);
    CHECK(base(0, 0) == 1.0);
    CHECK(base(0, 1) == 0.2);
    CHECK(base(1, 0) == 0.3);
    CHECK(base(1, 1) == 0.1);
    CHECK(base(2, 2) == 0.0);
    CHECK(base(4, 0) == 0.0);
    CHECK_THROWS_AS(to_r1_rho(mc, 2), std::domain_error);   // window exceeds N/2+1
}

TEST_CASE("pearson_estimate: duplicated columns give lag-(0,1) correlation 1") {
    const int n = 64;
    Matrix image(n, n);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; j += 2) {
            image(i, j) = normal(rng);
            image(i, j + 1) = image(i, j);
        }
    const auto sc = pearson_estimate(image, 2);
    CHECK(sc.corr(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sc.corr(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sc.window == 2);
    CHECK(sc.col_blocks == 16);
    CHECK(sc.row_blocks == 16);
}

TEST_CASE("pearson_estimate: iid noise keeps off-origin correlations small") {
    const auto noise = field_gen::white_noise(512, 11);
    const auto sc = pearson_estimate(noise.values, 4);
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            if (k == 0 && l == 0) {
                CHECK(sc.corr(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
            } else {
                CHECK(std::fabs(sc.corr(k, l)) <= 0.05);
            }
        }
}

TEST_CASE("pearson_estimate is affine-invariant") {
    const auto noise = field_gen::white_noise(64, 13);
    Matrix scaled(64, 64);
    for (std::size_t i = 0; i < scaled.size(); ++i)
        scaled.data()[i] = 7.5 * noise.values.data()[i] + 3.0;
    const auto a = pearson_estimate(noise.values, 3);
    const auto b = pearson_estimate(scaled, 3);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            CHECK(a.corr(k, l) == doctest::Approx(b.corr(k, l)).epsilon(1e-12));
}

TEST_CASE("pearson_estimate rejects degenerate input") {
    Matrix constant(32, 32, 5.0);
    CHECK_THROWS_AS(pearson_estimate(constant, 2), std::domain_error);
    Matrix tiny(3, 3, 0.0);
    CHECK_THROWS_AS(pearson_estimate(tiny, 2), std::domain_error);   // no blocks fit
}
