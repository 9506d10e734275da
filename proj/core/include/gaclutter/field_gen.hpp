#ifndef GACLUTTER_FIELD_GEN_HPP
#define GACLUTTER_FIELD_GEN_HPP

#include "gaclutter/corr_map.hpp"
#include "gaclutter/ga0.hpp"
#include "gaclutter/grid.hpp"

#include <cstdint>

namespace gaclutter::field_gen {

/// Target clutter correlation materialized on the full N x N lag torus.
struct CorrelationGrid {
    Matrix rho;   // rho(0,0) = 1, reflection-symmetric
    int size() const { return rho.rows(); }
};

/// Gaussian correlation grid: elementwise inverse transfer of rho, tau(0,0)=1.
struct TauGrid {
    Matrix tau;
    int size() const { return tau.rows(); }
};

/// How spectral_mask treats negative transform values beyond roundoff.
/// strict: clamp only [-1e-9, 0), error below (the target is not a valid
///         torus correlation).
/// clamp_negative: zero all negative frequencies and renormalize so the
///         filter reproduces unit variance; the achieved correlation is the
///         nearest attainable one, and clamped_mass reports the distortion.
enum class MaskPolicy { strict, clamp_negative };

/// Square root of the normalized DFT of tau; the white-noise filter spectrum.
struct SpectralMask {
    Matrix psi;               // nonnegative, symmetric under (k,l) -> (N-k, N-l) mod N
    double clamped_mass = 0;  // total negative spectral mass removed (clamp policy)
    long clamped_count = 0;   // frequencies below -1e-9 that were zeroed
    int size() const { return psi.rows(); }
};

struct SimulationConfig {
    ga0::GA0Params params;      // requires simulation_valid()
    CorrelationGrid corr;       // even size
    std::uint64_t seed = 0;
    int quadrature_order = 64;
    int lookup_size = 129;
    MaskPolicy mask_policy = MaskPolicy::strict;
};

/// Intermediate artifacts of one simulation, for audit output.
struct SimulationResult {
    FieldGrid field;            // the clutter Z_A
    TauGrid tau;
    SpectralMask mask;
    std::uint64_t quantile_clamps = 0;  // pixels where Phi(zeta) hit 1 in double precision
};

/// Extend a base correlation defined on {0..N/2}^2 to the full lag torus by
/// the four-quadrant reflection. base(0,0) must be 1, all else in (-1,1).
CorrelationGrid extend_rho(const Matrix& base, int size);

/// Elementwise inverse correlation transfer; tau(0,0) = 1 by convention.
/// Throws infeasible_correlation_error listing the offending lags.
TauGrid tau_grid(const CorrelationGrid& corr, const corr_map::CorrMapKey& key,
                 int quadrature_order = 64, int lookup_size = 129);

SpectralMask spectral_mask(const TauGrid& tau, MaskPolicy policy = MaskPolicy::strict);

/// N^2 iid standard normal draws, row-major fill, deterministic per seed.
FieldGrid white_noise(int size, std::uint64_t seed);

/// Filter white noise to the correlated standard-Gaussian field.
FieldGrid correlated_gaussian(const SpectralMask& mask, const FieldGrid& noise);

/// Pointwise Gaussian -> clutter transform: sqrt(gamma) * quantile(Phi(zeta)).
FieldGrid to_clutter(const FieldGrid& zeta, const ga0::GA0Params& params,
                     std::uint64_t* clamp_count = nullptr);

/// The full pipeline: tau_grid -> spectral_mask -> white_noise ->
/// correlated_gaussian -> to_clutter.
FieldGrid simulate(const SimulationConfig& config);
SimulationResult simulate_detailed(const SimulationConfig& config);

/// Filter kernel theta (normalized inverse transform of psi); exposed so the
/// theta*theta = tau identity can be checked directly.
Matrix filter_kernel(const SpectralMask& mask);

/// Circular self-convolution of a kernel on the torus.
Matrix self_convolve(const Matrix& kernel);

} // namespace gaclutter::field_gen

#endif
