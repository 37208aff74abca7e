#pragma once

// Real-parameter special functions: Gamma/Beta, the Gauss hypergeometric
// function on [0, 1], the Appell function F4 and Bessel functions of the
// first kind.  All functions are pure and thread-safe.

namespace riesz::specfun {

struct SeriesResult {
    double value = 0.0;
    int terms_used = 1;
    double truncation_bound = 0.0;
};

/// Gamma function.  Throws DomainError at the poles 0, -1, -2, ... and
/// NumericalError when the result overflows.
double gamma(double x);

/// 1/Gamma(x), continued by zero at the poles.
double rgamma(double x);

/// log|Gamma(x)|.
double lgamma_abs(double x);

/// Euler's psi function.  Throws DomainError at the poles.
double digamma(double x);

/// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0.
double beta(double x, double y);

/// Pochhammer symbol (lambda)_n.
double pochhammer(double lambda, int n);

bool is_nonpositive_integer(double x);

/// 2F1(a, b; c; z) for z in [0, 1].  At z = 1 the Gauss sum is returned
/// when c - a - b > 0; otherwise NumericalError (divergent).
SeriesResult hyp2f1(double a, double b, double c, double z);

/// 2F1(a, b; c; 1 - w) for w in [0, 1], taking the complement directly so
/// that arguments very close to 1 keep full relative accuracy in 1 - z.
SeriesResult hyp2f1_complement(double a, double b, double c, double w);

enum class BoundaryClass { Logarithmic, Power };

/// Leading behaviour of 2F1(a, b; c; z) as z -> 1-, valid when c - a - b <= 0:
/// logarithmic: F ~ coefficient * (-log(1 - z))
/// power:       F ~ coefficient * (1 - z)^exponent
struct BoundaryRate {
    BoundaryClass kind = BoundaryClass::Power;
    double exponent = 0.0;
    double coefficient = 0.0;
};

BoundaryRate hyp2f1_boundary_rate(double a, double b, double c);

/// Appell F4(a, b; c, cp; x, y) for x, y >= 0 with sqrt(x) + sqrt(y) < 1,
/// summed along diagonals of constant total degree m + n.
SeriesResult appell_f4(double a, double b, double c, double cp, double x, double y);

/// Bessel function of the first kind J_nu(x), nu >= -1/2, x >= 0.
double bessel_j(double nu, double x);

/// J_nu(x) / x^nu, continuous at x = 0 with value 1 / (2^nu Gamma(nu + 1)).
double bessel_j_scaled(double nu, double x);

} // namespace riesz::specfun
