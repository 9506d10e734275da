#include "gaclutter/corr_map.hpp"
#include "gaclutter/errors.hpp"
#include "gaclutter/ga0.hpp"
#include "gaclutter/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace gaclutter::corr_map {

namespace {

constexpr double kEdgeDelta = 1e-4;   // tau grid stays inside (-1+delta, 1-delta)
constexpr double kRhoTol = 5e-4;      // inversion tolerance in rho-space

void require_key(const CorrMapKey& key, const char* where) {
    if (!key.valid())
        throw std::domain_error(std::string(where) + ": requires alpha < -1 and looks >= 1");
}

// Gaussian-to-clutter pointwise transform at unit scale, tail-aware so that
// Phi(u) saturating to 1 in double precision never loses the upper tail.
double g_of_u(const CorrMapKey& key, double u) {
    const double nu1 = 2.0 * key.looks, nu2 = -2.0 * key.alpha;
    double y;
    if (u <= 0.0) y = numerics::f_quantile(nu1, nu2, numerics::normal_cdf(u));
    else y = numerics::f_quantile_upper(nu1, nu2, numerics::normal_cdf(-u));
    return std::sqrt(-y / key.alpha);
}

// Squared mean of the unit-scale law (the numerator offset in the transfer
// function) in closed form.
double unit_mean_sq(const CorrMapKey& key) {
    using numerics::ln_gamma;
    const double n = key.looks;
    return std::exp(2.0 * (ln_gamma(n + 0.5) + ln_gamma(-key.alpha - 0.5)
                           - ln_gamma(n) - ln_gamma(-key.alpha))) / n;
}

struct CacheKey {
    double alpha;
    int looks, grid, order;
    bool operator<(const CacheKey& o) const {
        return std::tie(alpha, looks, grid, order) < std::tie(o.alpha, o.looks, o.grid, o.order);
    }
};

} // namespace

CorrLookup::CorrLookup(CorrMapKey key, std::vector<double> taus, std::vector<double> rhos,
                       int quadrature_order)
    : key_(key), taus_(std::move(taus)), rhos_(std::move(rhos)), order_(quadrature_order) {
    for (std::size_t i = 1; i < rhos_.size(); ++i) {
        if (!(rhos_[i] > rhos_[i - 1]))
            throw std::logic_error(
                "CorrLookup: tabulated transfer function is not strictly increasing; "
                "quadrature order too low");
    }
}

double CorrLookup::rho_at(double tau) const {
    const auto it = std::lower_bound(taus_.begin(), taus_.end(), tau);
    if (it == taus_.begin()) return rhos_.front();
    if (it == taus_.end()) return rhos_.back();
    const std::size_t i = static_cast<std::size_t>(it - taus_.begin());
    const double w = (tau - taus_[i - 1]) / (taus_[i] - taus_[i - 1]);
    return rhos_[i - 1] + w * (rhos_[i] - rhos_[i - 1]);
}

double CorrLookup::tau_guess(double rho) const {
    const auto it = std::lower_bound(rhos_.begin(), rhos_.end(), rho);
    if (it == rhos_.begin()) return taus_.front();
    if (it == rhos_.end()) return taus_.back();
    const std::size_t i = static_cast<std::size_t>(it - rhos_.begin());
    const double w = (rho - rhos_[i - 1]) / (rhos_[i] - rhos_[i - 1]);
    return taus_[i - 1] + w * (taus_[i] - taus_[i - 1]);
}

std::size_t CorrLookup::bracket_index(double rho) const {
    auto it = std::lower_bound(rhos_.begin(), rhos_.end(), rho);
    if (it == rhos_.begin()) ++it;
    if (it == rhos_.end()) --it;
    return static_cast<std::size_t>(it - rhos_.begin());
}

double cross_moment(const CorrMapKey& key, double tau, int quadrature_order) {
    require_key(key, "corr_map::cross_moment");
    if (!(std::fabs(tau) <= 1.0 - 1e-6))
        throw std::domain_error("corr_map::cross_moment: |tau| too close to 1 (bivariate "
                                "normal density is near-singular)");
    static std::mutex rule_mu;
    static std::map<int, numerics::QuadratureRule> rules;
    const numerics::QuadratureRule* rule_ptr;
    {
        std::scoped_lock lock(rule_mu);
        auto it = rules.find(quadrature_order);
        if (it == rules.end())
            it = rules.emplace(quadrature_order, numerics::gauss_hermite(quadrature_order)).first;
        rule_ptr = &it->second;
    }
    const auto& rule = *rule_ptr;
    const int k = rule.order;
    const double root2 = std::sqrt(2.0);
    const double s = std::sqrt(1.0 - tau * tau);

    std::vector<double> g_u(k);
    for (int i = 0; i < k; ++i) g_u[i] = g_of_u(key, root2 * rule.nodes[i]);

    // V = tau*U + sqrt(1-tau^2)*W turns the bivariate normal expectation into
    // a tensor integral with the Hermite weight on each axis.
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double u = root2 * rule.nodes[i];
        double inner = 0.0;
        for (int j = 0; j < k; ++j) {
            const double v = tau * u + s * root2 * rule.nodes[j];
            inner += rule.weights[j] * g_of_u(key, v);
        }
        sum += rule.weights[i] * g_u[i] * inner;
    }
    return sum / M_PI;
}

double rho_of_tau(const CorrMapKey& key, double tau, int quadrature_order) {
    const double m1sq = unit_mean_sq(key);
    const double m2 = -1.0 / (1.0 + key.alpha);
    return (cross_moment(key, tau, quadrature_order) - m1sq) / (m2 - m1sq);
}

FeasibleRange feasible_range(const CorrMapKey& key, int quadrature_order) {
    return {rho_of_tau(key, -1.0 + kEdgeDelta, quadrature_order),
            rho_of_tau(key, 1.0 - kEdgeDelta, quadrature_order)};
}

CorrLookup build_lookup(const CorrMapKey& key, int grid_size, int quadrature_order) {
    require_key(key, "corr_map::build_lookup");
    if (grid_size < 33) throw std::domain_error("corr_map::build_lookup: grid_size must be >= 33");
    if (quadrature_order < 32)
        throw std::domain_error("corr_map::build_lookup: quadrature_order must be >= 32");

    // Chebyshev-spaced points: dense near +-1 where the transfer curves sharply.
    std::vector<double> taus(grid_size), rhos(grid_size);
    const double edge = 1.0 - kEdgeDelta;
    for (int i = 0; i < grid_size; ++i)
        taus[i] = -edge * std::cos(M_PI * i / (grid_size - 1));
    for (int i = 0; i < grid_size; ++i)
        rhos[i] = rho_of_tau(key, taus[i], quadrature_order);
    return CorrLookup(key, std::move(taus), std::move(rhos), quadrature_order);
}

double tau_of_rho(const CorrMapKey& key, double rho, const CorrLookup& lookup) {
    require_key(key, "corr_map::tau_of_rho");
    if (rho == 0.0) return 0.0;
    // The +-1 endpoints are the variance-normalization convention, not values
    // of the transfer function.
    if (rho == 1.0) return 1.0;
    if (rho == -1.0) return -1.0;

    const FeasibleRange range = lookup.range();
    if (!range.contains(rho))
        throw infeasible_correlation_error(
            "corr_map::tau_of_rho: target correlation " + std::to_string(rho) +
            " outside feasible range [" + std::to_string(range.rho_min) + ", " +
            std::to_string(range.rho_max) + "] for alpha=" + std::to_string(key.alpha) +
            ", looks=" + std::to_string(key.looks),
            range.rho_min, range.rho_max);

    const std::size_t i = lookup.bracket_index(rho);
    const int order = lookup.quadrature_order();
    double a = lookup.taus()[i - 1], b = lookup.taus()[i];
    double fa = lookup.rhos()[i - 1] - rho, fb = lookup.rhos()[i] - rho;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;

    // Start from the interpolated guess; accept immediately if within tolerance.
    const double tau = lookup.tau_guess(rho);
    const double f_tau = rho_of_tau(key, tau, order) - rho;
    if (std::fabs(f_tau) <= kRhoTol * 0.5) return tau;
    if (f_tau == 0.0) return tau;
    if ((f_tau > 0.0) == (fa > 0.0)) { a = tau; fa = f_tau; }
    else { b = tau; fb = f_tau; }
    return numerics::find_root([&](double t) { return rho_of_tau(key, t, order) - rho; },
                               numerics::RootBracket{a, b, fa, fb}, 1e-6);
}

const CorrLookup& shared_lookup(const CorrMapKey& key, int grid_size, int quadrature_order) {
    static std::mutex mu;
    static std::map<CacheKey, CorrLookup> cache;
    const CacheKey ck{key.alpha, key.looks, grid_size, quadrature_order};
    {
        std::scoped_lock lock(mu);
        if (auto it = cache.find(ck); it != cache.end()) return it->second;
    }
    CorrLookup built = build_lookup(key, grid_size, quadrature_order);
    std::scoped_lock lock(mu);
    return cache.try_emplace(ck, std::move(built)).first->second;
}

double tau_of_rho(const CorrMapKey& key, double rho) {
    return tau_of_rho(key, rho, shared_lookup(key));
}

} // namespace gaclutter::corr_map
