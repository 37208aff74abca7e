#include "riesz/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "riesz/errors.hpp"

namespace riesz::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesRelTol = 1e-16;
constexpr int kMaxGaussTerms = 200'000'000;
constexpr double kGammaOverflow = 171.62437695630272;

// Parameters computed as (s - q) / 2 and the like can land a few ulps away
// from the integer they are meant to be.
double snap_integer(double v)
{
    const double r = std::round(v);
    if (std::abs(v - r) <= 8.0 * kEps * std::max(1.0, std::abs(v)))
        return r;
    return v;
}

// Compensated accumulation; the hypergeometric series mix signs.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v)
    {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

SeriesResult gauss_series(double a, double b, double c, double z, int max_terms = kMaxGaussTerms)
{
    KahanSum acc;
    acc.add(1.0);
    double term = 1.0;
    double ratio = 0.0;
    int small = 0;
    int n = 0;
    for (; n < max_terms; ++n) {
        const double factor = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        term *= factor;
        if (term == 0.0)
            return {acc.sum, n + 1, 0.0};
        acc.add(term);
        ratio = std::abs(factor);
        if (std::abs(term) < kSeriesRelTol * std::abs(acc.sum) || std::abs(term) < 1e-300) {
            if (++small == 3)
                break;
        } else {
            small = 0;
        }
    }
    if (n >= max_terms)
        throw NumericalError("hyp2f1: series did not converge within the term cap");
    const double tail = ratio < 1.0 ? std::abs(term) * ratio / (1.0 - ratio) : std::abs(term);
    return {acc.sum, n + 2, tail};
}

bool is_polynomial_case(double a, double b)
{
    return is_nonpositive_integer(a) || is_nonpositive_integer(b);
}

// Connection formula around z = 1 when c - a - b = k is an integer
// (the logarithmic cases).  w = 1 - z is small.
SeriesResult gauss_log_case(double a, double b, double c, int k, double w)
{
    const double lw = std::log(w);
    const int mk = std::abs(k);
    const double ap = k >= 0 ? a + k : a;  // parameters of the infinite sum
    const double bp = k >= 0 ? b + k : b;

    // psi values advanced by recurrence along the sum
    double psi_n1 = digamma(1.0);               // psi(n + 1)
    double psi_nm1 = digamma(1.0 + mk);         // psi(n + |k| + 1)
    double psi_a = digamma(ap);
    double psi_b = digamma(bp);
    double coef = 1.0;
    for (int j = 1; j <= mk; ++j)
        coef /= j;  // 1 / (n + |k|)! at n = 0

    KahanSum inf;
    double ratio = 0.0;
    int small = 0;
    int n = 0;
    double last = 0.0;
    for (; n < 100000; ++n) {
        const double bracket = (k == 0)
            ? 2.0 * psi_n1 - psi_a - psi_b - lw
            : lw - psi_n1 - psi_nm1 + psi_a + psi_b;
        last = coef * bracket;
        inf.add(last);
        if (std::abs(last) < kSeriesRelTol * std::abs(inf.sum) || last == 0.0) {
            if (++small == 3)
                break;
        } else {
            small = 0;
        }
        const double factor = (ap + n) * (bp + n) / ((n + 1.0) * (n + 1.0 + mk)) * w;
        ratio = std::abs(factor);
        coef *= factor;
        psi_n1 += 1.0 / (n + 1.0);
        psi_nm1 += 1.0 / (n + 1.0 + mk);
        psi_a += 1.0 / (ap + n);
        psi_b += 1.0 / (bp + n);
    }
    if (n >= 100000)
        throw NumericalError("hyp2f1: logarithmic connection series did not converge");
    const double tail = std::abs(last) * (ratio < 1.0 ? ratio / (1.0 - ratio) : 1.0);

    const double gc = gamma(c);
    double value = 0.0;
    double bound = 0.0;
    if (k == 0) {
        const double pref = gc * rgamma(a) * rgamma(b);
        value = pref * inf.sum;
        bound = std::abs(pref) * tail;
    } else if (k > 0) {
        double finite = 0.0;
        double t = 1.0;
        for (int j = 0; j < k; ++j) {
            finite += t;
            t *= (a + j) * (b + j) / ((j + 1.0) * (1.0 - k + j)) * w;
        }
        const double t1 = gamma(k) * gc * rgamma(a + k) * rgamma(b + k) * finite;
        const double pref = std::pow(-w, k) * gc * rgamma(a) * rgamma(b);
        value = t1 - pref * inf.sum;
        bound = std::abs(pref) * tail;
    } else {
        double finite = 0.0;
        double t = 1.0;
        for (int j = 0; j < mk; ++j) {
            finite += t;
            t *= (a - mk + j) * (b - mk + j) / ((j + 1.0) * (1.0 - mk + j)) * w;
        }
        const double t1 = gamma(mk) * gc * rgamma(a) * rgamma(b) * std::pow(w, -mk) * finite;
        const double sign = (mk % 2 == 0) ? 1.0 : -1.0;
        const double pref = sign * gc * rgamma(a - mk) * rgamma(b - mk);
        value = t1 - pref * inf.sum;
        bound = std::abs(pref) * tail;
    }
    bound += 4.0 * kEps * std::abs(value);
    return {value, n + 1, bound};
}

SeriesResult gauss_near_one(double a, double b, double c, double w)
{
    const double m = c - a - b;
    const double k = std::round(m);
    const double frac = std::abs(m - k);
    if (frac <= 1e-12 * std::max(1.0, std::abs(m)))
        return gauss_log_case(a, b, c, static_cast<int>(k), w);
    if (frac < 1e-4) {
        // Both connection terms blow up like 1/frac and cancel; sum directly.
        return gauss_series(a, b, c, 1.0 - w);
    }
    const double gc = gamma(c);
    const SeriesResult f1 = gauss_series(a, b, 1.0 - m, w);
    const SeriesResult f2 = gauss_series(c - a, c - b, 1.0 + m, w);
    const double p1 = gc * gamma(m) * rgamma(c - a) * rgamma(c - b);
    const double p2 = std::pow(w, m) * gc * gamma(-m) * rgamma(a) * rgamma(b);
    const double value = p1 * f1.value + p2 * f2.value;
    const double bound = std::abs(p1) * f1.truncation_bound + std::abs(p2) * f2.truncation_bound
        + 4.0 * kEps * (std::abs(p1 * f1.value) + std::abs(p2 * f2.value));
    return {value, f1.terms_used + f2.terms_used, bound};
}

void check_hyp_params(double a, double b, double c)
{
    detail::require_finite(a, "hyp2f1: a");
    detail::require_finite(b, "hyp2f1: b");
    detail::require_finite(c, "hyp2f1: c");
    if (is_nonpositive_integer(c))
        throw ParameterError("hyp2f1: c must not be a non-positive integer");
}

SeriesResult gauss_at_one(double a, double b, double c)
{
    if (is_polynomial_case(a, b))
        return gauss_series(a, b, c, 1.0);
    const double m = c - a - b;
    if (m <= 0.0)
        throw NumericalError("hyp2f1: series diverges at z = 1 when c - a - b <= 0");
    return {gamma(c) * gamma(m) * rgamma(c - a) * rgamma(c - b), 1, 0.0};
}

// ---- Bessel helpers -------------------------------------------------------

// Power series in extended precision.  Returns J_nu(x) / x^nu.
long double bessel_scaled_series(double nu, double x)
{
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L / (std::pow(2.0L, static_cast<long double>(nu)) * std::tgamma(static_cast<long double>(nu) + 1.0L));
    long double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= -q / (static_cast<long double>(n) * (static_cast<long double>(nu) + n));
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum))
            break;
    }
    return sum;
}

// Large-argument (Hankel) expansion.  Returns NaN if the asymptotic series
// cannot reach double precision at this (nu, x).
double bessel_hankel(double nu, double x)
{
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (term == 0.0) {
            converged = true;
            break;
        }
        if (k > 2 && std::abs(term) > prev)
            break;
        prev = std::abs(term);
        if (k % 2 == 0)
            p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        else
            q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        if (std::abs(term) < 1e-17) {
            converged = true;
            break;
        }
    }
    if (!converged)
        return std::numeric_limits<double>::quiet_NaN();
    const double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller backward recurrence normalised by the Neumann-type sum
// (x/2)^nu0 = sum_k (nu0 + 2k) Gamma(nu0 + k) / k! J_{nu0 + 2k}(x).
double bessel_miller(double nu, double x)
{
    const double nu0 = nu >= 0.0 ? nu - std::floor(nu) : nu;
    const int n = static_cast<int>(std::llround(nu - nu0));
    const double top = std::max(static_cast<double>(n), x);
    int big = static_cast<int>(top + 30.0 + std::ceil(std::sqrt(60.0 * top)));
    big += big % 2;

    std::vector<double> weight(static_cast<std::size_t>(big / 2 + 1));
    weight[0] = std::tgamma(nu0 + 1.0);
    double g = std::tgamma(nu0 + 1.0);  // Gamma(nu0 + k) / k! at k = 1
    for (int k = 1; k <= big / 2; ++k) {
        if (k > 1)
            g *= (nu0 + k - 1.0) / k;
        weight[static_cast<std::size_t>(k)] = (nu0 + 2.0 * k) * g;
    }

    double fp1 = 0.0;
    double f = 1.0;
    double norm = 0.0;
    double target = 0.0;
    for (int m = big;; --m) {
        if (m == n)
            target = f;
        if (m % 2 == 0)
            norm += weight[static_cast<std::size_t>(m / 2)] * f;
        if (m == 0)
            break;
        const double fm1 = 2.0 * (nu0 + m) / x * f - fp1;
        fp1 = f;
        f = fm1;
        if (std::abs(f) > 1e200) {
            f *= 1e-200;
            fp1 *= 1e-200;
            norm *= 1e-200;
            target *= 1e-200;
        }
    }
    return target * std::pow(0.5 * x, nu0) / norm;
}

void check_bessel_args(double nu, double x)
{
    detail::require_finite(nu, "bessel_j: nu");
    detail::require_finite(x, "bessel_j: x");
    if (nu < -0.5)
        throw DomainError("bessel_j: order must be >= -1/2");
    if (x < 0.0)
        throw DomainError("bessel_j: argument must be >= 0");
}

constexpr double kBesselSeriesLimit = 20.0;

} // namespace

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

double gamma(double x)
{
    detail::require_finite(x, "gamma: x");
    if (is_nonpositive_integer(x))
        throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
    if (x > kGammaOverflow)
        throw NumericalError("gamma: overflow for x = " + std::to_string(x));
    return std::tgamma(x);
}

double rgamma(double x)
{
    detail::require_finite(x, "rgamma: x");
    if (is_nonpositive_integer(x) || x > kGammaOverflow)
        return 0.0;
    if (x < -170.0) {
        // reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
        const double s = std::sin(kPi * x);
        return s * std::exp(lgamma_abs(1.0 - x)) / kPi;
    }
    return 1.0 / std::tgamma(x);
}

double lgamma_abs(double x)
{
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double digamma(double x)
{
    detail::require_finite(x, "digamma: x");
    if (is_nonpositive_integer(x))
        throw DomainError("digamma: pole at non-positive integer");
    if (x < 0.5)
        return digamma(1.0 - x) - kPi / std::tan(kPi * x);
    double result = 0.0;
    while (x < 12.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    const double series = f * (1.0 / 12.0 - f * (1.0 / 120.0 - f * (1.0 / 252.0
        - f * (1.0 / 240.0 - f * (1.0 / 132.0 - f * (691.0 / 32760.0))))));
    return result + std::log(x) - 0.5 / x - series;
}

double beta(double x, double y)
{
    detail::require_finite(x, "beta: x");
    detail::require_finite(y, "beta: y");
    if (x <= 0.0 || y <= 0.0)
        throw DomainError("beta: arguments must be positive");
    if (x + y < 170.0)
        return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
    return std::exp(lgamma_abs(x) + lgamma_abs(y) - lgamma_abs(x + y));
}

double pochhammer(double lambda, int n)
{
    detail::require_finite(lambda, "pochhammer: lambda");
    if (n < 0)
        throw ParameterError("pochhammer: n must be non-negative");
    double p = 1.0;
    for (int j = 0; j < n; ++j)
        p *= lambda + j;
    return p;
}

SeriesResult hyp2f1(double a, double b, double c, double z)
{
    check_hyp_params(a, b, c);
    detail::require_finite(z, "hyp2f1: z");
    if (z < 0.0 || z > 1.0)
        throw DomainError("hyp2f1: z must lie in [0, 1]");
    a = snap_integer(a);
    b = snap_integer(b);
    if (z == 1.0)
        return gauss_at_one(a, b, c);
    if (z <= 0.9 || is_polynomial_case(a, b))
        return gauss_series(a, b, c, z);
    return gauss_near_one(a, b, c, 1.0 - z);
}

SeriesResult hyp2f1_complement(double a, double b, double c, double w)
{
    check_hyp_params(a, b, c);
    detail::require_finite(w, "hyp2f1: w");
    if (w < 0.0 || w > 1.0)
        throw DomainError("hyp2f1: 1 - z must lie in [0, 1]");
    a = snap_integer(a);
    b = snap_integer(b);
    if (w == 0.0)
        return gauss_at_one(a, b, c);
    if (w >= 0.1 || is_polynomial_case(a, b))
        return gauss_series(a, b, c, 1.0 - w);
    return gauss_near_one(a, b, c, w);
}

BoundaryRate hyp2f1_boundary_rate(double a, double b, double c)
{
    check_hyp_params(a, b, c);
    const double m = c - a - b;
    const double tol = 1e-14 * std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    if (m > tol)
        throw ParameterError("hyp2f1_boundary_rate: c - a - b > 0, the series converges at z = 1");
    if (std::abs(m) <= tol)
        return {BoundaryClass::Logarithmic, 0.0, gamma(a + b) * rgamma(a) * rgamma(b)};
    return {BoundaryClass::Power, m, gamma(c) * gamma(a + b - c) * rgamma(a) * rgamma(b)};
}

SeriesResult appell_f4(double a, double b, double c, double cp, double x, double y)
{
    detail::require_finite(a, "appell_f4: a");
    detail::require_finite(b, "appell_f4: b");
    detail::require_finite(c, "appell_f4: c");
    detail::require_finite(cp, "appell_f4: cp");
    detail::require_finite(x, "appell_f4: x");
    detail::require_finite(y, "appell_f4: y");
    if (is_nonpositive_integer(c) || is_nonpositive_integer(cp))
        throw ParameterError("appell_f4: c and c' must not be non-positive integers");
    if (x < 0.0 || y < 0.0)
        throw DomainError("appell_f4: arguments must be non-negative");
    if (std::sqrt(x) + std::sqrt(y) >= 1.0)
        throw DomainError("appell_f4: requires sqrt(x) + sqrt(y) < 1");
    a = snap_integer(a);
    b = snap_integer(b);

    // diag[m] holds the term of index (m, N - m) of the current diagonal N
    std::vector<double> diag{1.0};
    std::vector<double> next;
    KahanSum acc;
    acc.add(1.0);
    double prev_abs = 1.0;
    double ratio = 0.0;
    double last_abs = 1.0;
    int small = 0;
    int big = 1;
    constexpr int kMaxDiagonals = 100000;
    for (; big < kMaxDiagonals; ++big) {
        const double ab = (a + big - 1.0) * (b + big - 1.0);
        next.assign(static_cast<std::size_t>(big) + 1, 0.0);
        for (int m = 0; m < big; ++m) {
            const int n = big - 1 - m;  // index of y in the old term
            next[static_cast<std::size_t>(m)] =
                diag[static_cast<std::size_t>(m)] * ab / ((cp + n) * (n + 1.0)) * y;
        }
        next[static_cast<std::size_t>(big)] =
            diag[static_cast<std::size_t>(big) - 1] * ab / ((c + big - 1.0) * big) * x;
        KahanSum dsum;
        double dabs = 0.0;
        for (double t : next) {
            dsum.add(t);
            dabs += std::abs(t);
        }
        acc.add(dsum.sum);
        diag.swap(next);
        ratio = prev_abs > 0.0 ? dabs / prev_abs : 0.0;
        prev_abs = dabs;
        last_abs = dabs;
        if (dabs == 0.0)
            return {acc.sum, big + 1, 0.0};
        if (dabs < kSeriesRelTol * std::abs(acc.sum)) {
            if (++small == 3)
                break;
        } else {
            small = 0;
        }
    }
    if (big >= kMaxDiagonals)
        throw NumericalError("appell_f4: double series did not converge");
    const double tail = ratio < 1.0 ? last_abs * ratio / (1.0 - ratio) : last_abs;
    return {acc.sum, big + 1, tail};
}

double bessel_j(double nu, double x)
{
    check_bessel_args(nu, x);
    if (x == 0.0) {
        if (nu == 0.0)
            return 1.0;
        if (nu > 0.0)
            return 0.0;
        throw DomainError("bessel_j: J_nu(0) is unbounded for nu < 0");
    }
    if (x <= kBesselSeriesLimit)
        return static_cast<double>(bessel_scaled_series(nu, x) * std::pow(static_cast<long double>(x), static_cast<long double>(nu)));
    const double h = bessel_hankel(nu, x);
    if (!std::isnan(h))
        return h;
    return bessel_miller(nu, x);
}

double bessel_j_scaled(double nu, double x)
{
    check_bessel_args(nu, x);
    if (x <= kBesselSeriesLimit)
        return static_cast<double>(bessel_scaled_series(nu, x));
    return bessel_j(nu, x) / std::pow(x, nu);
}

} // namespace riesz::specfun
