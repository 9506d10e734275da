#ifndef GACLUTTER_CORR_MAP_HPP
#define GACLUTTER_CORR_MAP_HPP

#include <vector>

namespace gaclutter::corr_map {

/// Identifies one correlation transfer function: the law must have finite
/// variance (alpha < -1) for correlation to exist.
struct CorrMapKey {
    double alpha;
    int looks;
    bool valid() const { return alpha < -1.0 && looks >= 1; }
};

/// Attainable clutter correlations for a key; targets outside are rejected.
struct FeasibleRange {
    double rho_min;
    double rho_max;
    bool contains(double rho) const { return rho >= rho_min && rho <= rho_max; }
};

/// Cached monotone tabulation of the Gaussian->clutter correlation transfer
/// function on a symmetric tau grid. Immutable after construction.
class CorrLookup {
public:
    CorrLookup(CorrMapKey key, std::vector<double> taus, std::vector<double> rhos,
               int quadrature_order);

    const CorrMapKey& key() const { return key_; }
    int quadrature_order() const { return order_; }
    const std::vector<double>& taus() const { return taus_; }
    const std::vector<double>& rhos() const { return rhos_; }
    FeasibleRange range() const { return {rhos_.front(), rhos_.back()}; }

    /// Piecewise-linear interpolation of rho at tau (clamped to the grid).
    double rho_at(double tau) const;
    /// Inverse interpolation: initial tau guess for a feasible rho.
    double tau_guess(double rho) const;
    /// Index i with rhos[i-1] <= rho <= rhos[i]; requires rho inside range().
    std::size_t bracket_index(double rho) const;

private:
    CorrMapKey key_;
    std::vector<double> taus_, rhos_;
    int order_;
};

/// E[g(U)g(V)] for standard bivariate normal (U,V) with correlation tau and
/// g the Gaussian-to-unit-scale-clutter transform; tensor Gauss-Hermite.
double cross_moment(const CorrMapKey& key, double tau, int quadrature_order = 64);

/// The correlation transfer function: clutter correlation produced by Gaussian
/// correlation tau. Strictly increasing, sign-preserving, range inside (-1,1).
double rho_of_tau(const CorrMapKey& key, double tau, int quadrature_order = 64);

FeasibleRange feasible_range(const CorrMapKey& key, int quadrature_order = 64);

/// Tabulate the transfer function on a Chebyshev-spaced symmetric tau grid.
CorrLookup build_lookup(const CorrMapKey& key, int grid_size = 129, int quadrature_order = 64);

/// Inverse transfer function: the tau with rho_of_tau(tau) = rho, within 5e-4
/// in rho. Throws infeasible_correlation_error outside the lookup's range.
double tau_of_rho(const CorrMapKey& key, double rho, const CorrLookup& lookup);

/// Process-wide lookup cache keyed by (alpha, looks, grid_size, order).
const CorrLookup& shared_lookup(const CorrMapKey& key, int grid_size = 129,
                                int quadrature_order = 64);

/// Convenience: tau_of_rho through the shared cache.
double tau_of_rho(const CorrMapKey& key, double rho);

} // namespace gaclutter::corr_map

#endif
