#ifndef GACLUTTER_GA0_HPP
#define GACLUTTER_GA0_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace gaclutter::ga0 {

/// Marginal amplitude law: roughness alpha < 0, scale gamma > 0, looks >= 1.
/// Density/cdf/quantile only need alpha < 0; correlated simulation and the
/// moment summary need the finite-variance regime alpha < -1.
struct GA0Params {
    double alpha;
    double gamma;
    int looks;

    bool valid() const { return alpha < 0.0 && gamma > 0.0 && looks >= 1; }
    bool simulation_valid() const { return alpha < -1.0 && gamma > 0.0 && looks >= 1; }
};

struct MomentSummary {
    double mean;
    double variance;
};

double pdf(const GA0Params& params, double z);
double cdf(const GA0Params& params, double z);

/// Inverse cdf. Throws infinite_value_error for t >= 1.
double quantile(const GA0Params& params, double t);

/// Quantile given both tails of the probability: t_upper = 1 - t_lower held to
/// full precision. Keeps the extreme upper tail accurate (used by the
/// Gaussian-to-clutter transform at large arguments).
double quantile_from_tails(const GA0Params& params, double t_lower, double t_upper);

/// r-th moment; finite only for alpha < -r/2, otherwise throws infinite_moment_error.
double moment(const GA0Params& params, double r);

MomentSummary moment_summary(const GA0Params& params);

/// Scale value gamma_{alpha,n} making the law's mean exactly 1.
double normalizing_scale(double alpha, int looks);

/// count iid draws via quantile(uniform); deterministic for a fixed seed.
std::vector<double> sample_iid(const GA0Params& params, std::size_t count, std::uint64_t seed);

/// Moment-matching fit of (alpha, gamma) for known looks.
/// Throws no_moment_solution_error when the sample moment ratio is unattainable.
GA0Params fit_moments(std::span<const double> amplitudes, int looks);

/// Fit directly from precomputed first and second sample moments.
GA0Params fit_moments_from(double m1, double m2, int looks);

} // namespace gaclutter::ga0

#endif
