#pragma once

#include <limits>
#include <map>
#include <vector>

#include "riesz/measures.hpp"

namespace riesz {

/// Homogeneous polynomial in d variables; keys are exponent vectors.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int d) : d_(d) {}
    Polynomial(int d, std::map<Exponents, double> terms);

    static Polynomial constant(int d, double c);

    int dim() const { return d_; }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    const std::map<Exponents, double>& terms() const { return terms_; }

    void add(const Exponents& e, double c);
    double operator()(const Vec& x) const;
    double eval(const double* x) const;
    Polynomial laplacian() const;
    /// |x|^2 * p
    Polynomial times_r2() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial scaled(double c) const;
    double max_abs_coeff() const;
    bool is_harmonic(double rel_tol = 1e-12) const;

private:
    int d_ = 0;
    std::map<Exponents, double> terms_;
};

/// All exponent vectors of total degree k in d variables (lexicographic).
std::vector<Polynomial::Exponents> monomials(int d, int k);

struct HarmonicTerm {
    int degree = 0;
    Polynomial poly;
};

/// Angular profile Phi on S^{d-1}.
class Profile {
public:
    enum class Type { Isotropic, DiagonalQuadratic, HarmonicSum };

    static Profile isotropic(int d);
    static Profile diagonal_quadratic(const Vec& alpha);
    /// Each term must be an even-degree harmonic polynomial.
    static Profile harmonic_sum(int d, std::vector<HarmonicTerm> terms);
    /// Splits an even homogeneous polynomial into harmonic pieces
    /// p = h_k + |x|^2 h_{k-2} + ... and keeps their restrictions.
    static Profile from_even_polynomial(const Polynomial& p);

    Type type() const { return type_; }
    int dim() const { return d_; }
    const Vec& alpha() const { return alpha_; }
    const std::vector<HarmonicTerm>& terms() const { return terms_; }

    /// Phi(x / |x|)
    double operator()(const Vec& x) const;
    /// Phi at a unit vector (no normalisation).
    double on_sphere(const Vec& omega) const;
    /// Phi(x / r) for a raw d-array x with |x| = r > 0.
    double at_scaled(const double* x, double r) const;

    /// Harmonic components by degree (degree 0 first).
    std::vector<HarmonicTerm> harmonic_components() const;

private:
    Profile() = default;
    Type type_ = Type::Isotropic;
    int d_ = 0;
    Vec alpha_;
    std::vector<HarmonicTerm> terms_;
};

/// (-1)^{k/2} 2^{d-s} pi^{d/2} Gamma((k+d-s)/2) / Gamma((k+s)/2)
double stein_multiplier(int k, double s, int d);

/// Deterministic point set on S^{d-1}: +-e_i followed by seeded Gaussian
/// directions, n points in total.
Mat sphere_grid(int d, int n);

/// W_s(x) = Phi(x/|x|) / |x|^s
class Kernel {
public:
    Kernel(double s, Profile profile);

    double s() const { return s_; }
    int dim() const { return profile_.dim(); }
    const Profile& profile() const { return profile_; }
    double operator()(const Vec& x) const;
    /// Minimum of Phi found by the positivity check.
    double profile_min() const { return profile_min_; }

private:
    double s_;
    Profile profile_;
    double profile_min_ = 0.0;
};

struct SymbolComponent {
    int degree = 0;
    double multiplier = 0.0;
    Polynomial poly;
};

/// Psi = hat W_s restricted to S^{d-1}.
class FourierSymbol {
public:
    explicit FourierSymbol(const Kernel& kernel);

    int dim() const { return d_; }
    double s() const { return s_; }
    const std::vector<SymbolComponent>& components() const { return comps_; }
    /// Psi(omega) for |omega| = 1
    double operator()(const Vec& omega) const;
    /// |xi|^{s-d} Psi(xi/|xi|)
    double at(const Vec& xi) const;

private:
    int d_;
    double s_;
    std::vector<SymbolComponent> comps_;
    // quadratic fast path: Psi = c0 + sum_i q_i omega_i^2
    bool diagonal_ = false;
    double c0_ = 0.0;
    Vec q_;
};

inline FourierSymbol symbol(const Kernel& kernel) { return FourierSymbol(kernel); }

struct CriterionResult {
    bool nonnegative = false;
    double margin = 0.0;
    /// true when the closed-form inequality was used, false for the grid fallback
    bool closed_form = false;
};

/// Sign criterion for a DiagonalQuadratic symbol.
CriterionResult nonneg_criterion(const Vec& alpha, double s, int d);

/// alpha_1 = (d-1-eps)/(d-s-1), alpha_j = 1 for j >= 2.
Profile counterexample_profile(int d, double s, double eps = 0.0);

} // namespace riesz
