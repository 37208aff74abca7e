#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "riesz/anisotropy.hpp"
#include "riesz/measures.hpp"
#include "riesz/potential.hpp"

namespace riesz {

/// Monte Carlo estimate of (W_s * mu)(x) with n draws from sample().
PotentialEstimate mc_potential(const Kernel& kernel, const EquilibriumMeasure& mu, const Vec& x, int n,
                               std::uint64_t seed);

/// Same estimator at every column of xs, all using one shared sample.
std::vector<PotentialEstimate> mc_potential_many(const Kernel& kernel, const EquilibriumMeasure& mu, const Mat& xs,
                                                 int n, std::uint64_t seed);

struct EnergyEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    int n = 0;
    double pairs = 0.0;
};

/// U-statistic over all pairs of the given points, jackknife standard error.
EnergyEstimate energy_of_points(const Kernel& kernel, const Mat& points);

EnergyEstimate energy_estimate(const Kernel& kernel, const EquilibriumMeasure& mu, int n, std::uint64_t seed);

/// Energy difference I(b) - I(a) for two equally sized, index-coupled point
/// sets, with a paired jackknife standard error.
EnergyEstimate energy_difference(const Kernel& kernel, const Mat& a, const Mat& b);

struct ElOptions {
    int n_support = 200;
    int n_grid = 200;
    int mc_samples = 1'000'000;
    int quad_level = 0;  // 0: default_quad_level(d)
    std::uint64_t seed = 1;
};

struct ElReport {
    double constant_estimate = 0.0;
    double constant_se = 0.0;
    double support_spread = 0.0;
    double spread_threshold = 0.0;
    double min_over_E = 0.0;
    bool el1 = false;
    bool el2 = false;
    bool el3 = false;
    std::string el2_method;
    std::string el3_method;
    int n_support = 0;
    int n_grid = 0;

    bool pass() const { return el1 && el2 && el3; }
};

/// Euler-Lagrange check of a candidate measure in the confinement set E.
ElReport el_check(const Kernel& kernel, const EquilibriumMeasure& candidate, const Ellipsoid& e,
                  const ElOptions& options);

struct CounterexampleReport {
    int d = 0;
    double s = 0.0;
    double eps = 0.0;
    double prefactor = 0.0;
    double a_numeric = 0.0;
    double a_numeric_error = 0.0;
    double a_closed = 0.0;
    std::array<double, 6> i_values{};
};

/// A = (W_s * mu_{d-2})(e_2) - (W_s * mu_{d-2})(e_1) on B_1 for the
/// counterexample profile, by 2-D quadrature and by the Gamma closed form.
CounterexampleReport counterexample_A(int d, double s, double eps = 0.0);

/// Closed form alone (cheap; used for scans in s).
double counterexample_A_closed(int d, double s, double eps = 0.0);

struct Competitor {
    std::string name;
    double energy = 0.0;
    double difference = 0.0;  // competitor minus base
    double standard_error = 0.0;
    bool beats = false;
};

struct MinimalityReport {
    EnergyEstimate base;
    std::vector<Competitor> competitors;
    int beaten_by = 0;
};

/// Compares mu_s^E against radial reweightings and support scalings built
/// from the same uniforms.
MinimalityReport minimality_probe(const Kernel& kernel, const Ellipsoid& e, int n, int perturbations,
                                  std::uint64_t seed);

} // namespace riesz
