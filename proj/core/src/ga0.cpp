#include "gaclutter/ga0.hpp"
#include "gaclutter/errors.hpp"
#include "gaclutter/numerics.hpp"

#include <cmath>
#include <random>
#include <string>

namespace gaclutter::ga0 {

using numerics::ln_gamma;

namespace {

void require_valid(const GA0Params& p, const char* where) {
    if (!p.valid())
        throw std::domain_error(std::string(where) + ": parameters require alpha<0, gamma>0, looks>=1");
}

// Uniform in (0,1): 53-bit mantissa, offset by half an ulp so 0 never occurs.
double uniform_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Gamma-function part of the moment ratio m1^2/m2 as a function of alpha.
double moment_ratio(double alpha, int n) {
    return std::exp(2.0 * ln_gamma(-alpha - 0.5) + 2.0 * ln_gamma(n + 0.5)
                    - ln_gamma(-alpha) - ln_gamma(-alpha - 1.0)
                    - ln_gamma(static_cast<double>(n)) - ln_gamma(n + 1.0));
}

} // namespace

double pdf(const GA0Params& p, double z) {
    require_valid(p, "ga0::pdf");
    if (z <= 0.0) return 0.0;
    const double n = p.looks;
    const double ln_f = std::log(2.0) + n * std::log(n) + ln_gamma(n - p.alpha)
                      - 0.5 * std::log(p.gamma) - ln_gamma(-p.alpha) - ln_gamma(n)
                      + (2.0 * n - 1.0) * (std::log(z) - 0.5 * std::log(p.gamma))
                      - (n - p.alpha) * std::log1p(n * z * z / p.gamma);
    return std::exp(ln_f);
}

double cdf(const GA0Params& p, double z) {
    require_valid(p, "ga0::cdf");
    if (z <= 0.0) return 0.0;
    return numerics::f_cdf(2.0 * p.looks, -2.0 * p.alpha, -p.alpha * z * z / p.gamma);
}

double quantile(const GA0Params& p, double t) {
    require_valid(p, "ga0::quantile");
    if (!(t >= 0.0) || t > 1.0) throw std::domain_error("ga0::quantile: t must be in [0,1)");
    if (t >= 1.0) throw infinite_value_error("ga0::quantile: quantile at t=1 is infinite");
    if (t == 0.0) return 0.0;
    const double y = numerics::f_quantile(2.0 * p.looks, -2.0 * p.alpha, t);
    return std::sqrt(-(p.gamma / p.alpha) * y);
}

double quantile_from_tails(const GA0Params& p, double t_lower, double t_upper) {
    require_valid(p, "ga0::quantile_from_tails");
    if (t_lower <= 0.0) return 0.0;
    if (t_upper <= 0.0) throw infinite_value_error("ga0::quantile_from_tails: upper tail is zero");
    double y;
    if (t_lower <= 0.5) y = numerics::f_quantile(2.0 * p.looks, -2.0 * p.alpha, t_lower);
    else y = numerics::f_quantile_upper(2.0 * p.looks, -2.0 * p.alpha, t_upper);
    return std::sqrt(-(p.gamma / p.alpha) * y);
}

double moment(const GA0Params& p, double r) {
    require_valid(p, "ga0::moment");
    if (!(r > 0.0)) throw std::domain_error("ga0::moment: order must be positive");
    if (!(p.alpha < -0.5 * r))
        throw infinite_moment_error("ga0::moment: moment of order " + std::to_string(r) +
                                    " is infinite for alpha = " + std::to_string(p.alpha));
    const double n = p.looks;
    return std::exp(0.5 * r * (std::log(p.gamma) - std::log(n))
                    + ln_gamma(-p.alpha - 0.5 * r) + ln_gamma(n + 0.5 * r)
                    - ln_gamma(-p.alpha) - ln_gamma(n));
}

MomentSummary moment_summary(const GA0Params& p) {
    require_valid(p, "ga0::moment_summary");
    if (!(p.alpha < -1.0))
        throw infinite_moment_error("ga0::moment_summary: variance is infinite for alpha >= -1");
    const double m1 = moment(p, 1.0);
    const double m2 = moment(p, 2.0);
    return {m1, m2 - m1 * m1};
}

double normalizing_scale(double alpha, int looks) {
    if (!(alpha < -1.0) || looks < 1)
        throw std::domain_error("ga0::normalizing_scale: requires alpha < -1 and looks >= 1");
    const double n = looks;
    return n * std::exp(2.0 * (ln_gamma(-alpha) + ln_gamma(n)
                               - ln_gamma(-alpha - 0.5) - ln_gamma(n + 0.5)));
}

std::vector<double> sample_iid(const GA0Params& p, std::size_t count, std::uint64_t seed) {
    require_valid(p, "ga0::sample_iid");
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(quantile(p, uniform_open(rng)));
    return out;
}

GA0Params fit_moments_from(double m1, double m2, int looks) {
    if (looks < 1) throw std::domain_error("ga0::fit_moments: looks must be >= 1");
    if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2))
        throw no_moment_solution_error("ga0::fit_moments: sample moments must be finite and positive");
    const double ratio = m1 * m1 / m2;

    // moment_ratio is increasing on alpha in (-inf, -1): 0 at alpha -> -1-,
    // sup Gamma(n+1/2)^2/(Gamma(n)Gamma(n+1)) < 1 as alpha -> -inf.
    constexpr double alpha_lo = -200.0, alpha_hi = -1.0 - 1e-6;
    const double r_lo = moment_ratio(alpha_lo, looks);
    const double r_hi = moment_ratio(alpha_hi, looks);
    if (!(ratio > r_hi) || !(ratio < r_lo))
        throw no_moment_solution_error(
            "ga0::fit_moments: moment ratio " + std::to_string(ratio) +
            " outside attainable range (" + std::to_string(r_hi) + ", " + std::to_string(r_lo) + ")");

    const double alpha = numerics::find_root(
        [&](double a) { return moment_ratio(a, looks) - ratio; }, alpha_lo, alpha_hi, 1e-10);

    const double n = looks;
    const double gamma = n * std::exp(2.0 * (std::log(m1) + ln_gamma(-alpha) + ln_gamma(n)
                                             - ln_gamma(-alpha - 0.5) - ln_gamma(n + 0.5)));
    return {alpha, gamma, looks};
}

GA0Params fit_moments(std::span<const double> amplitudes, int looks) {
    if (amplitudes.size() < 2)
        throw no_moment_solution_error("ga0::fit_moments: need at least two samples");
    double s1 = 0.0, s2 = 0.0;
    for (double z : amplitudes) { s1 += z; s2 += z * z; }
    const double m1 = s1 / amplitudes.size();
    const double m2 = s2 / amplitudes.size();
    if (!(m2 > m1 * m1))
        throw no_moment_solution_error("ga0::fit_moments: degenerate sample variance");
    return fit_moments_from(m1, m2, looks);
}

} // namespace gaclutter::ga0
