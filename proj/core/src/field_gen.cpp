#include "gaclutter/field_gen.hpp"
#include "gaclutter/errors.hpp"
#include "gaclutter/numerics.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <vector>

namespace gaclutter::field_gen {

namespace {

constexpr double kMaskRoundoff = 1e-9;   // negative transform values above this are roundoff
constexpr double kImagTolerance = 1e-8;  // residual imaginary part allowed in zeta

// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex& fftw_mutex() {
    static std::mutex mu;
    return mu;
}

// In-place 2-D DFT of complex data, unnormalized, sign = FFTW_FORWARD/BACKWARD.
void dft2(std::vector<std::complex<double>>& data, int n, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::scoped_lock lock(fftw_mutex());
        plan = fftw_plan_dft_2d(n, n, raw, raw, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::scoped_lock lock(fftw_mutex());
    fftw_destroy_plan(plan);
}

std::vector<std::complex<double>> to_complex(const Matrix& m) {
    std::vector<std::complex<double>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = m.data()[i];
    return out;
}

double uniform_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

} // namespace

CorrelationGrid extend_rho(const Matrix& base, int size) {
    if (size < 4 || size % 2 != 0)
        throw std::domain_error("field_gen::extend_rho: size must be an even integer >= 4");
    const int half = size / 2;
    if (base.rows() != half + 1 || base.cols() != half + 1)
        throw std::domain_error("field_gen::extend_rho: base must be (N/2+1) x (N/2+1)");
    if (base(0, 0) != 1.0)
        throw std::domain_error("field_gen::extend_rho: base(0,0) must be 1");
    for (int k = 0; k <= half; ++k)
        for (int l = 0; l <= half; ++l)
            if ((k || l) && !(std::fabs(base(k, l)) < 1.0))
                throw std::domain_error("field_gen::extend_rho: off-origin |rho| must be < 1");

    CorrelationGrid out;
    out.rho = Matrix(size, size);
    for (int k = 0; k < size; ++k) {
        const int kk = (k <= half) ? k : size - k;
        for (int l = 0; l < size; ++l) {
            const int ll = (l <= half) ? l : size - l;
            out.rho(k, l) = base(kk, ll);
        }
    }
    return out;
}

TauGrid tau_grid(const CorrelationGrid& corr, const corr_map::CorrMapKey& key,
                 int quadrature_order, int lookup_size) {
    const int n = corr.size();
    const auto& lookup = corr_map::shared_lookup(key, lookup_size, quadrature_order);

    // Distinct rho values only: symmetric grids repeat a handful of values.
    std::map<double, double> cache;
    std::ostringstream offenders;
    int offender_count = 0;
    TauGrid out;
    out.tau = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (k == 0 && l == 0) { out.tau(0, 0) = 1.0; continue; }
            const double rho = corr.rho(k, l);
            auto it = cache.find(rho);
            if (it == cache.end()) {
                try {
                    it = cache.emplace(rho, corr_map::tau_of_rho(key, rho, lookup)).first;
                } catch (const infeasible_correlation_error&) {
                    if (offender_count < 8) offenders << " (" << k << "," << l << ")=" << rho;
                    ++offender_count;
                    it = cache.emplace(rho, 0.0).first;  // placeholder; error raised below
                }
            }
            out.tau(k, l) = it->second;
        }
    }
    if (offender_count > 0) {
        const auto range = lookup.range();
        throw infeasible_correlation_error(
            "field_gen::tau_grid: " + std::to_string(offender_count) +
            " lag(s) with correlation outside feasible range [" +
            std::to_string(range.rho_min) + ", " + std::to_string(range.rho_max) +
            "]:" + offenders.str(),
            range.rho_min, range.rho_max);
    }
    return out;
}

SpectralMask spectral_mask(const TauGrid& tau, MaskPolicy policy) {
    const int n = tau.size();
    auto data = to_complex(tau.tau);
    dft2(data, n, FFTW_FORWARD);

    const double norm = 1.0 / (static_cast<double>(n) * n);
    SpectralMask mask;
    mask.psi = Matrix(n, n);

    double min_value = 0.0;
    long below_roundoff = 0;
    std::vector<double> spectrum(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::complex<double> f = data[i] * norm;
        if (std::fabs(f.imag()) > kMaskRoundoff)
            throw invalid_correlation_structure_error(
                "field_gen::spectral_mask: transform has non-real entries (grid not symmetric?)",
                f.imag(), 1);
        double re = f.real();
        if (re < min_value) min_value = re;
        if (re < -kMaskRoundoff) ++below_roundoff;
        spectrum[i] = re;
    }

    if (below_roundoff > 0 && policy == MaskPolicy::strict)
        throw invalid_correlation_structure_error(
            "field_gen::spectral_mask: invalid correlation structure: " +
            std::to_string(below_roundoff) + " transform value(s) below -1e-9 (min " +
            std::to_string(min_value) + "); tau is not nonnegative-definite on the torus",
            min_value, below_roundoff);

    double kept = 0.0, removed = 0.0;
    for (double& re : spectrum) {
        if (re < 0.0) { removed -= re; re = 0.0; }
        else kept += re;
    }
    mask.clamped_mass = removed;
    mask.clamped_count = below_roundoff;

    // Under the clamp policy, rescale so the filter reproduces unit variance:
    // (theta*theta)(0,0) = sum of the spectrum = tau(0,0).
    double scale = 1.0;
    if (below_roundoff > 0 && policy == MaskPolicy::clamp_negative && kept > 0.0)
        scale = tau.tau(0, 0) / kept;
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        mask.psi.data()[i] = std::sqrt(spectrum[i] * scale);
    return mask;
}

FieldGrid white_noise(int size, std::uint64_t seed) {
    if (size < 1) throw std::domain_error("field_gen::white_noise: size must be >= 1");
    std::mt19937_64 rng(seed);
    FieldGrid out(size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            out(i, j) = numerics::normal_quantile(uniform_open(rng));
    return out;
}

FieldGrid correlated_gaussian(const SpectralMask& mask, const FieldGrid& noise) {
    const int n = mask.size();
    if (noise.size() != n)
        throw std::invalid_argument("field_gen::correlated_gaussian: size mismatch");

    auto data = to_complex(noise.values);
    dft2(data, n, FFTW_FORWARD);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= mask.psi.data()[i];
    dft2(data, n, FFTW_BACKWARD);

    // zeta = N * Finv(psi * F(xi)); with unnormalized transforms this is /N.
    const double norm = 1.0 / n;
    FieldGrid out(n);
    double max_imag = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        max_imag = std::max(max_imag, std::fabs(data[i].imag() * norm));
        out.values.data()[i] = data[i].real() * norm;
    }
    if (max_imag > kImagTolerance)
        throw std::runtime_error(
            "field_gen::correlated_gaussian: imaginary residue " + std::to_string(max_imag) +
            " exceeds tolerance; mask normalization inconsistent");
    return out;
}

FieldGrid to_clutter(const FieldGrid& zeta, const ga0::GA0Params& params,
                     std::uint64_t* clamp_count) {
    if (!params.simulation_valid())
        throw std::domain_error("field_gen::to_clutter: params require alpha < -1");
    const int n = zeta.size();
    FieldGrid out(n);
    std::uint64_t clamps = 0;
    for (std::size_t i = 0; i < zeta.values.size(); ++i) {
        const double z = zeta.values.data()[i];
        double lower = numerics::normal_cdf(z);
        double upper = numerics::normal_cdf(-z);
        if (upper <= 0.0) { lower = 1.0 - 1e-15; upper = 1e-15; ++clamps; }
        out.values.data()[i] = ga0::quantile_from_tails(params, lower, upper);
    }
    if (clamp_count) *clamp_count = clamps;
    return out;
}

SimulationResult simulate_detailed(const SimulationConfig& config) {
    if (!config.params.simulation_valid())
        throw std::domain_error("field_gen::simulate: params require alpha < -1, gamma > 0, looks >= 1");
    const int n = config.corr.size();
    if (n < 4 || n % 2 != 0)
        throw std::domain_error("field_gen::simulate: grid size must be even and >= 4");

    const corr_map::CorrMapKey key{config.params.alpha, config.params.looks};
    SimulationResult result{FieldGrid(n), TauGrid{}, SpectralMask{}, 0};
    result.tau = tau_grid(config.corr, key, config.quadrature_order, config.lookup_size);
    result.mask = spectral_mask(result.tau, config.mask_policy);
    const FieldGrid noise = white_noise(n, config.seed);
    const FieldGrid zeta = correlated_gaussian(result.mask, noise);
    result.field = to_clutter(zeta, config.params, &result.quantile_clamps);
    return result;
}

FieldGrid simulate(const SimulationConfig& config) {
    return simulate_detailed(config).field;
}

Matrix filter_kernel(const SpectralMask& mask) {
    const int n = mask.size();
    auto data = to_complex(mask.psi);
    dft2(data, n, FFTW_BACKWARD);
    const double norm = 1.0 / n;  // theta = (1/N) * unnormalized inverse transform
    Matrix out(n, n);
    for (std::size_t i = 0; i < data.size(); ++i) out.data()[i] = data[i].real() * norm;
    return out;
}

Matrix self_convolve(const Matrix& kernel) {
    const int n = kernel.rows();
    auto data = to_complex(kernel);
    dft2(data, n, FFTW_FORWARD);
    for (auto& c : data) c *= c;
    dft2(data, n, FFTW_BACKWARD);
    const double norm = 1.0 / (static_cast<double>(n) * n);
    Matrix out(n, n);
    for (std::size_t i = 0; i < data.size(); ++i) out.data()[i] = data[i].real() * norm;
    return out;
}

} // namespace gaclutter::field_gen
