#pragma once

#include <map>
#include <string>
#include <vector>

#include "riesz/anisotropy.hpp"
#include "riesz/measures.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

enum class Method { ClosedForm, RadialQuadrature, MonteCarlo, Regularized };

const char* method_name(Method m);

struct PotentialEstimate {
    double value = 0.0;
    Method method = Method::ClosedForm;
    double error_bound = 0.0;
    std::map<std::string, double> detail;
    std::vector<std::string> notes;
};

/// 2^{s-d-1} Gamma(1+q/2) Gamma(s/2) / (pi^d Gamma(1+(q-s)/2))
double tilde_c(int d, double s, double q);

/// Closed-form potentials of mu_q^E under the anisotropic kernel.  Caches
/// Psi(omega)/|D R^T omega|^s on the nodes of the given rule and of the
/// embedded half-level rule used for the error estimate.
class PotentialEvaluator {
public:
    PotentialEvaluator(const Kernel& kernel, const EquilibriumMeasure& mu, const SphereQuadrature& quad);

    /// Interior formula with the 2F1 factor; x strictly inside E.
    PotentialEstimate inside(const Vec& x) const;
    /// Mollified potential P_r with the Appell F4 factor.
    PotentialEstimate regularized(const Vec& x, double r) const;

    const Kernel& kernel() const { return kernel_; }
    const EquilibriumMeasure& measure() const { return mu_; }

private:
    struct Rule {
        Mat nodes;
        Vec g;         // w Psi / h^s
        Vec inv_h;     // 1 / |D R^T omega|
    };
    Rule make_rule(const SphereQuadrature& q) const;
    template <class F>
    double sum_rule(const Rule& rule, F&& factor) const;

    Kernel kernel_;
    EquilibriumMeasure mu_;
    FourierSymbol psi_;
    double ct_;
    Rule fine_;
    Rule coarse_;
    int level_;
};

PotentialEstimate potential_inside(const Kernel& kernel, const EquilibriumMeasure& mu, const Vec& x,
                                   const SphereQuadrature& quad);

/// q = s: the potential is constant on E (boundary included).
PotentialEstimate constant_potential(const Kernel& kernel, const Ellipsoid& e, const SphereQuadrature& quad);

struct QuadraticPotential {
    double c0 = 0.0;
    Mat m;
    double error_bound = 0.0;
    double operator()(const Vec& x) const { return c0 - x.dot(m * x); }
};

/// q = s + 2: potential(x) = c0 - x^T M x on E.
QuadraticPotential quadratic_potential(const Kernel& kernel, const Ellipsoid& e, const SphereQuadrature& quad);

PotentialEstimate regularized_potential(const Kernel& kernel, const EquilibriumMeasure& mu, const Vec& x, double r,
                                        const SphereQuadrature& quad);

/// |S^{d-2}| for d >= 3, 2 for d = 2
double sphere_constant_c(int d);

/// Potential at distance t of the (unnormalised) Riesz kernel |x|^{-s}
/// integrated over the sphere of radius r.
double sphere_potential_vs(double t, double r, double s, int d);

/// Isotropic potential of mu_q on B_1 at distance t from the centre, by
/// one-dimensional quadrature in the radius.
PotentialEstimate isotropic_radial_potential(double s, double q, double t, int d);

} // namespace riesz
