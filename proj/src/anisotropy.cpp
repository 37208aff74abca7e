#include "riesz/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "riesz/errors.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kPi = std::numbers::pi;

void enumerate(int d, int k, int pos, Polynomial::Exponents& cur, std::vector<Polynomial::Exponents>& out)
{
    if (pos == d - 1) {
        cur[static_cast<std::size_t>(pos)] = k;
        out.push_back(cur);
        return;
    }
    for (int e = k; e >= 0; --e) {
        cur[static_cast<std::size_t>(pos)] = e;
        enumerate(d, k - e, pos + 1, cur, out);
    }
}

double monomial_value(const Polynomial::Exponents& e, const Vec& x)
{
    double v = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int p = 0; p < e[i]; ++p)
            v *= x(static_cast<Eigen::Index>(i));
    return v;
}

// Harmonic pieces of an even homogeneous polynomial restricted to the sphere.
void decompose(const Polynomial& p, int degree, std::vector<HarmonicTerm>& out)
{
    const int d = p.dim();
    if (degree == 0) {
        out.push_back({0, p});
        return;
    }
    // Find q of degree k-2 with Laplacian(|x|^2 q) = Laplacian(p); then
    // h = p - |x|^2 q is harmonic and p = h + q on the sphere.
    const auto basis = monomials(d, degree - 2);
    const auto rows = monomials(d, degree - 2);
    std::map<Polynomial::Exponents, int> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i)
        row_index[rows[i]] = static_cast<int>(i);
    const int n = static_cast<int>(basis.size());
    Mat a = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        Polynomial mono(d);
        mono.add(basis[static_cast<std::size_t>(j)], 1.0);
        const Polynomial img = mono.times_r2().laplacian();
        for (const auto& [e, c] : img.terms())
            a(row_index.at(e), j) = c;
    }
    Vec rhs = Vec::Zero(n);
    const Polynomial lap = p.laplacian();
    for (const auto& [e, c] : lap.terms())
        rhs(row_index.at(e)) = c;
    const Vec sol = a.fullPivLu().solve(rhs);
    Polynomial q(d);
    for (int j = 0; j < n; ++j)
        if (sol(j) != 0.0)
            q.add(basis[static_cast<std::size_t>(j)], sol(j));
    Polynomial h = p - q.times_r2();
    // drop round-off residue
    Polynomial clean(d);
    const double scale = std::max(h.max_abs_coeff(), p.max_abs_coeff());
    for (const auto& [e, c] : h.terms())
        if (std::abs(c) > 1e-14 * scale)
            clean.add(e, c);
    decompose(q, degree - 2, out);
    if (!clean.terms().empty())
        out.push_back({degree, clean});
}

void check_profile_dim(int d)
{
    if (d < 2)
        throw ParameterError("profile dimension must be >= 2");
}

} // namespace

// ---- Polynomial ------------------------------------------------------------

Polynomial::Polynomial(int d, std::map<Exponents, double> terms) : d_(d)
{
    for (const auto& [e, c] : terms)
        add(e, c);
}

Polynomial Polynomial::constant(int d, double c)
{
    Polynomial p(d);
    p.add(Exponents(static_cast<std::size_t>(d), 0), c);
    return p;
}

int Polynomial::degree() const
{
    if (terms_.empty())
        return -1;
    const auto& e = terms_.begin()->first;
    int k = 0;
    for (int v : e)
        k += v;
    return k;
}

void Polynomial::add(const Exponents& e, double c)
{
    if (static_cast<int>(e.size()) != d_)
        throw ParameterError("monomial has " + std::to_string(e.size()) + " exponents, expected " + std::to_string(d_));
    int k = 0;
    for (int v : e) {
        if (v < 0)
            throw ParameterError("negative exponent");
        k += v;
    }
    detail::require_finite(c, "polynomial coefficient");
    const int deg = degree();
    if (deg >= 0 && deg != k)
        throw ParameterError("polynomial must be homogeneous");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0.0)
            terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0.0)
        terms_.erase(it);
}

double Polynomial::operator()(const Vec& x) const
{
    double v = 0.0;
    for (const auto& [e, c] : terms_)
        v += c * monomial_value(e, x);
    return v;
}

double Polynomial::eval(const double* x) const
{
    double v = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int p = 0; p < e[i]; ++p)
                t *= x[i];
        v += t;
    }
    return v;
}

Polynomial Polynomial::laplacian() const
{
    Polynomial out(d_);
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < d_; ++i) {
            const int p = e[static_cast<std::size_t>(i)];
            if (p < 2)
                continue;
            Exponents f = e;
            f[static_cast<std::size_t>(i)] -= 2;
            out.add(f, c * p * (p - 1));
        }
    return out;
}

Polynomial Polynomial::times_r2() const
{
    Polynomial out(d_);
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < d_; ++i) {
            Exponents f = e;
            f[static_cast<std::size_t>(i)] += 2;
            out.add(f, c);
        }
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const
{
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add(e, -c);
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add(e, c);
    return out;
}

Polynomial Polynomial::scaled(double c) const
{
    Polynomial out(d_);
    for (const auto& [e, v] : terms_)
        out.add(e, c * v);
    return out;
}

double Polynomial::max_abs_coeff() const
{
    double m = 0.0;
    for (const auto& kv : terms_)
        m = std::max(m, std::abs(kv.second));
    return m;
}

bool Polynomial::is_harmonic(double rel_tol) const
{
    const double scale = std::max(max_abs_coeff(), 1e-300);
    return laplacian().max_abs_coeff() <= rel_tol * scale;
}

std::vector<Polynomial::Exponents> monomials(int d, int k)
{
    std::vector<Polynomial::Exponents> out;
    if (k < 0)
        return out;
    Polynomial::Exponents cur(static_cast<std::size_t>(d), 0);
    enumerate(d, k, 0, cur, out);
    return out;
}

// ---- Profile ---------------------------------------------------------------

Profile Profile::isotropic(int d)
{
    check_profile_dim(d);
    Profile p;
    p.type_ = Type::Isotropic;
    p.d_ = d;
    return p;
}

Profile Profile::diagonal_quadratic(const Vec& alpha)
{
    const int d = static_cast<int>(alpha.size());
    check_profile_dim(d);
    for (int i = 0; i < d; ++i) {
        detail::require_finite(alpha(i), "alpha");
        if (!(alpha(i) > 0.0))
            throw ParameterError("diagonal quadratic profile needs all alpha_i > 0");
    }
    Profile p;
    p.type_ = Type::DiagonalQuadratic;
    p.d_ = d;
    p.alpha_ = alpha;
    return p;
}

Profile Profile::harmonic_sum(int d, std::vector<HarmonicTerm> terms)
{
    check_profile_dim(d);
    if (terms.empty())
        throw ParameterError("harmonic sum needs at least one term");
    for (const auto& t : terms) {
        if (t.degree < 0 || t.degree % 2 != 0)
            throw ParameterError("harmonic sum degrees must be even and non-negative");
        if (t.poly.dim() != d)
            throw ParameterError("harmonic term dimension mismatch");
        const int deg = t.poly.degree();
        if (deg != -1 && deg != t.degree)
            throw ParameterError("harmonic term polynomial does not have the declared degree");
        if (!t.poly.is_harmonic())
            throw ParameterError("harmonic sum term of degree " + std::to_string(t.degree) + " is not harmonic");
    }
    Profile p;
    p.type_ = Type::HarmonicSum;
    p.d_ = d;
    p.terms_ = std::move(terms);
    return p;
}

Profile Profile::from_even_polynomial(const Polynomial& poly)
{
    const int k = poly.degree();
    if (k < 0)
        throw ParameterError("zero polynomial is not a profile");
    if (k % 2 != 0)
        throw ParameterError("profile polynomial must have even degree");
    std::vector<HarmonicTerm> parts;
    decompose(poly, k, parts);
    return harmonic_sum(poly.dim(), std::move(parts));
}

double Profile::on_sphere(const Vec& omega) const
{
    switch (type_) {
    case Type::Isotropic:
        return 1.0;
    case Type::DiagonalQuadratic:
        return alpha_.dot(omega.cwiseAbs2());
    case Type::HarmonicSum: {
        double v = 0.0;
        for (const auto& t : terms_)
            v += t.poly(omega);
        return v;
    }
    }
    return 0.0;
}

double Profile::at_scaled(const double* x, double r) const
{
    switch (type_) {
    case Type::Isotropic:
        return 1.0;
    case Type::DiagonalQuadratic: {
        double v = 0.0;
        for (int i = 0; i < d_; ++i)
            v += alpha_(i) * x[i] * x[i];
        return v / (r * r);
    }
    case Type::HarmonicSum: {
        double v = 0.0;
        for (const auto& t : terms_)
            v += t.poly.eval(x) * std::pow(r, -t.degree);
        return v;
    }
    }
    return 0.0;
}

double Profile::operator()(const Vec& x) const
{
    const double r = x.norm();
    if (r == 0.0)
        throw DomainError("profile is undefined at the origin");
    return on_sphere(x / r);
}

std::vector<HarmonicTerm> Profile::harmonic_components() const
{
    std::vector<HarmonicTerm> out;
    switch (type_) {
    case Type::Isotropic:
        out.push_back({0, Polynomial::constant(d_, 1.0)});
        break;
    case Type::DiagonalQuadratic: {
        // Phi = (1/d) sum alpha_i p_0 + (1/d) sum alpha_i p_{2,i}, p_{2,i} = d x_i^2 - |x|^2
        const double mean = alpha_.mean();
        out.push_back({0, Polynomial::constant(d_, mean)});
        Polynomial p2(d_);
        for (int i = 0; i < d_; ++i) {
            Polynomial::Exponents e(static_cast<std::size_t>(d_), 0);
            e[static_cast<std::size_t>(i)] = 2;
            p2.add(e, alpha_(i) - mean);
        }
        if (!p2.terms().empty())
            out.push_back({2, p2});
        break;
    }
    case Type::HarmonicSum: {
        std::map<int, Polynomial> by_degree;
        for (const auto& t : terms_) {
            auto it = by_degree.find(t.degree);
            if (it == by_degree.end())
                by_degree.emplace(t.degree, t.poly);
            else
                it->second = it->second + t.poly;
        }
        for (auto& [k, p] : by_degree)
            out.push_back({k, p});
        break;
    }
    }
    return out;
}

// ---- multipliers and kernel --------------------------------------------------

double stein_multiplier(int k, double s, int d)
{
    detail::require_finite(s, "s");
    if (d < 2)
        throw DomainError("dimension must be >= 2");
    if (k < 0 || k % 2 != 0)
        throw DomainError("harmonic degree must be even and non-negative");
    if (!(s > 0.0 && s < d))
        throw DomainError("s must lie in (0, d)");
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::pow(2.0, d - s) * std::pow(kPi, d / 2.0) * specfun::gamma((k + d - s) / 2.0)
        * specfun::rgamma((k + s) / 2.0);
}

Mat sphere_grid(int d, int n)
{
    if (d < 2 || n < 2 * d)
        throw ParameterError("sphere grid needs d >= 2 and at least 2d points");
    Mat g(d, n);
    int col = 0;
    for (int i = 0; i < d; ++i) {
        g.col(col++) = Vec::Unit(d, i);
        g.col(col++) = -Vec::Unit(d, i);
    }
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(d));
    std::normal_distribution<double> normal;
    while (col < n) {
        Vec v(d);
        for (int i = 0; i < d; ++i)
            v(i) = normal(rng);
        const double r = v.norm();
        if (r == 0.0)
            continue;
        g.col(col++) = v / r;
    }
    return g;
}

Kernel::Kernel(double s, Profile profile) : s_(s), profile_(std::move(profile))
{
    detail::require_finite(s, "s");
    const int d = profile_.dim();
    if (!(s > 0.0 && s < d))
        throw DomainError("s must lie in (0, d)");
    if (profile_.type() == Profile::Type::Isotropic) {
        profile_min_ = 1.0;
        return;
    }
    const Mat grid = sphere_grid(d, 10000 * d);
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < grid.cols(); ++j)
        lo = std::min(lo, profile_.on_sphere(grid.col(j)));
    profile_min_ = lo;
    if (!(lo > 0.0))
        throw ParameterError("profile is not strictly positive on the sphere (sampled minimum " + std::to_string(lo) + ")");
}

double Kernel::operator()(const Vec& x) const
{
    const double r = x.norm();
    if (r == 0.0)
        throw DomainError("kernel is singular at the origin");
    return profile_.on_sphere(x / r) * std::pow(r, -s_);
}

// ---- symbol ----------------------------------------------------------------

FourierSymbol::FourierSymbol(const Kernel& kernel) : d_(kernel.dim()), s_(kernel.s())
{
    for (auto& t : kernel.profile().harmonic_components())
        comps_.push_back({t.degree, stein_multiplier(t.degree, s_, d_), t.poly});
    const auto& prof = kernel.profile();
    if (prof.type() != Profile::Type::HarmonicSum) {
        diagonal_ = true;
        q_ = Vec::Zero(d_);
        for (const auto& c : comps_) {
            if (c.degree == 0) {
                c0_ += c.multiplier * c.poly(Vec::Zero(d_));
            } else {
                for (const auto& [e, v] : c.poly.terms())
                    for (int i = 0; i < d_; ++i)
                        if (e[static_cast<std::size_t>(i)] == 2)
                            q_(i) += c.multiplier * v;
            }
        }
    }
}

double FourierSymbol::operator()(const Vec& omega) const
{
    if (diagonal_)
        return c0_ + q_.dot(omega.cwiseAbs2());
    double v = 0.0;
    for (const auto& c : comps_)
        v += c.multiplier * c.poly(omega);
    return v;
}

double FourierSymbol::at(const Vec& xi) const
{
    const double r = xi.norm();
    if (r == 0.0)
        throw DomainError("symbol is singular at the origin");
    return std::pow(r, s_ - d_) * (*this)(xi / r);
}

CriterionResult nonneg_criterion(const Vec& alpha, double s, int d)
{
    if (alpha.size() != d)
        throw ParameterError("alpha has the wrong length");
    const Profile prof = Profile::diagonal_quadratic(alpha);
    CriterionResult out;
    if (s > 0.0 && s < d - 2.0) {
        const double sum = alpha.sum();
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < d; ++i) {
            const double slack = (sum - alpha(i)) / (d - s - 1.0) - alpha(i);
            margin = std::min(margin, slack);
        }
        out.closed_form = true;
        out.margin = margin;
        out.nonnegative = margin >= -1e-12 * alpha.cwiseAbs().maxCoeff();
        return out;
    }
    const FourierSymbol psi(Kernel(s, prof));
    const Mat grid = sphere_grid(d, 10000);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index j = 0; j < grid.cols(); ++j) {
        const double v = psi(grid.col(j));
        lo = std::min(lo, v);
        hi = std::max(hi, std::abs(v));
    }
    out.closed_form = false;
    out.margin = lo;
    out.nonnegative = lo >= -1e-12 * hi;
    return out;
}

Profile counterexample_profile(int d, double s, double eps)
{
    detail::require_finite(s, "s");
    detail::require_finite(eps, "eps");
    if (d < 3)
        throw DomainError("counterexample needs d >= 3");
    if (!(s > 0.0 && s < d - 2.0))
        throw DomainError("counterexample needs 0 < s < d - 2");
    if (!(eps >= 0.0 && eps < d - 1.0))
        throw DomainError("counterexample needs 0 <= eps < d - 1");
    Vec alpha = Vec::Ones(d);
    alpha(0) = (d - 1.0 - eps) / (d - s - 1.0);
    return Profile::diagonal_quadratic(alpha);
}

} // namespace riesz
