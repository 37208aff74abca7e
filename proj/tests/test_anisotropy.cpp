#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "riesz/anisotropy.hpp"
#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

using namespace riesz;
namespace sf = riesz::specfun;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

Vec random_unit(int d, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Vec v(d);
    for (int i = 0; i < d; ++i)
        v(i) = g(rng);
    return v / v.norm();
}

// the quadratic symbol written out coordinatewise, without the harmonic split
double quadratic_symbol_direct(const Vec& alpha, double s, const Vec& w)
{
    const int d = static_cast<int>(alpha.size());
    const double pref = std::pow(2.0, d - s) * std::pow(pi, d / 2.0) * sf::gamma((d - s) / 2.0) / sf::gamma(s / 2.0) / s;
    const double total = alpha.sum();
    double v = 0.0;
    for (int i = 0; i < d; ++i)
        v += ((1.0 - d + s) * alpha(i) + (total - alpha(i))) * w(i) * w(i);
    return pref * v;
}

Polynomial poly(int d, std::initializer_list<std::pair<std::vector<int>, double>> terms)
{
    Polynomial p(d);
    for (const auto& [e, c] : terms)
        p.add(e, c);
    return p;
}

} // namespace

TEST_CASE("Stein multiplier")
{
    CHECK(rel(stein_multiplier(0, 1.0, 3), 4.0 * pi) < 1e-14);
    CHECK(rel(stein_multiplier(2, 1.0, 3), -8.0 * pi) < 1e-14);
    for (double s : {0.1, 0.9, 2.5})
        CHECK(stein_multiplier(0, s, 3) > 0.0);
    CHECK(stein_multiplier(4, 1.0, 3) > 0.0);
    CHECK_THROWS_AS(stein_multiplier(1, 1.0, 3), DomainError);
    CHECK_THROWS_AS(stein_multiplier(2, 3.0, 3), DomainError);
    CHECK_THROWS_AS(stein_multiplier(-2, 1.0, 3), DomainError);
}

TEST_CASE("polynomials and harmonicity")
{
    const auto h = poly(3, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, -1.0}});
    CHECK(h.is_harmonic());
    CHECK(h.degree() == 2);
    const auto r2 = poly(3, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}});
    CHECK_FALSE(r2.is_harmonic());
    const Polynomial lap = r2.laplacian();
    CHECK(lap.degree() == 0);
    CHECK(lap.terms().begin()->second == doctest::Approx(6.0));
    auto p = poly(3, {{{1, 1, 0}, 1.0}});
    CHECK_THROWS_AS(p.add({1, 0, 0}, 1.0), ParameterError);
    CHECK(monomials(3, 2).size() == 6);
    CHECK(monomials(4, 4).size() == 35);
}

TEST_CASE("profile construction")
{
    CHECK_THROWS_AS(Profile::diagonal_quadratic(Vec::Constant(3, -1.0)), ParameterError);
    std::vector<HarmonicTerm> odd = {{1, poly(3, {{{1, 0, 0}, 1.0}})}};
    CHECK_THROWS_AS(Profile::harmonic_sum(3, odd), ParameterError);
    std::vector<HarmonicTerm> nonharm = {{0, Polynomial::constant(3, 1.0)},
                                         {2, poly(3, {{{2, 0, 0}, 0.2}})}};
    CHECK_THROWS_AS(Profile::harmonic_sum(3, nonharm), ParameterError);

    // Phi = 1 + x1^4 split into harmonic pieces agrees with itself on the sphere
    auto p4 = poly(3, {{{4, 0, 0}, 1.0}});
    auto sq = Polynomial::constant(3, 1.0).times_r2().times_r2();
    const Profile pr = Profile::from_even_polynomial(p4 + sq);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 50; ++k) {
        const Vec w = random_unit(3, rng);
        CHECK(std::abs(pr.on_sphere(w) - (1.0 + std::pow(w(0), 4))) < 1e-13);
        CHECK(pr.on_sphere(w) == doctest::Approx(pr(3.7 * w)).epsilon(1e-13));
    }
    for (const auto& t : pr.harmonic_components())
        CHECK(t.poly.is_harmonic());
}

TEST_CASE("kernel positivity check")
{
    // 1 + 3 (x1^2 - x2^2) is negative at e_2
    std::vector<HarmonicTerm> terms = {{0, Polynomial::constant(3, 1.0)},
                                       {2, poly(3, {{{2, 0, 0}, 3.0}, {{0, 2, 0}, -3.0}})}};
    CHECK_THROWS_AS(Kernel(1.0, Profile::harmonic_sum(3, terms)), ParameterError);
    CHECK_THROWS_AS(Kernel(3.0, Profile::isotropic(3)), DomainError);
    CHECK_THROWS_AS(Kernel(0.0, Profile::isotropic(3)), DomainError);
    Kernel k(1.0, Profile::isotropic(3));
    Vec x(3);
    x << 0.0, 2.0, 0.0;
    CHECK(k(x) == doctest::Approx(0.5));
}

TEST_CASE("symbol of isotropic and quadratic profiles")
{
    const FourierSymbol iso(Kernel(1.0, Profile::isotropic(3)));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 10; ++k)
        CHECK(rel(iso(random_unit(3, rng)), 4.0 * pi) < 1e-14);

    for (int d = 3; d <= 5; ++d) {
        const double s = 0.7 + 0.3 * d;
        const FourierSymbol ones(Kernel(s, Profile::diagonal_quadratic(Vec::Ones(d))));
        const FourierSymbol isod(Kernel(s, Profile::isotropic(d)));
        for (int k = 0; k < 10; ++k) {
            const Vec w = random_unit(d, rng);
            CHECK(rel(ones(w), isod(w)) < 1e-13);
        }
    }

    Vec alpha(4);
    alpha << 1.3, 0.6, 1.0, 2.1;
    const double s = 1.4;
    const FourierSymbol q(Kernel(s, Profile::diagonal_quadratic(alpha)));
    // same profile through the harmonic decomposition route
    Polynomial p(4);
    for (int i = 0; i < 4; ++i) {
        std::vector<int> e(4, 0);
        e[i] = 2;
        p.add(e, alpha(i));
    }
    const FourierSymbol qh(Kernel(s, Profile::from_even_polynomial(p)));
    double scale = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Vec w = random_unit(4, rng);
        scale = std::max(scale, std::abs(q(w)));
    }
    for (int k = 0; k < 100; ++k) {
        const Vec w = random_unit(4, rng);
        CHECK(std::abs(q(w) - quadratic_symbol_direct(alpha, s, w)) < 1e-12 * scale);
        CHECK(std::abs(qh(w) - q(w)) < 1e-12 * scale);
        CHECK(q(-w) == q(w));
        CHECK(rel(q.at(2.5 * w), std::pow(2.5, s - 4.0) * q(w)) < 1e-13);
    }
}

TEST_CASE("symbol against a mollified Fourier transform")
{
    // FT of Phi(x/|x|) |x|^{-s} e^{-|x|^2 / (2 L^2)}: the radial integral is a
    // Kummer function; the angular one is done on a fine sphere rule.
    const int d = 3;
    const double L = 25.0;
    const auto quad = sphere_quadrature(d, 220);
    std::mt19937_64 rng(3);
    for (double s : {0.5, 1.0, 1.8}) {
        Vec alpha(3);
        alpha << 1.4, 0.8, 1.0;
        const Kernel k(s, Profile::diagonal_quadratic(alpha));
        const FourierSymbol psi(k);
        const double a = d - s;
        const double pref = 0.5 * std::pow(2.0 * L * L, a / 2.0) * sf::gamma(a / 2.0);
        double scale = 0.0;
        for (int i = 0; i < d; ++i)
            scale = std::max(scale, std::abs(psi(Vec::Unit(d, i))));
        for (int trial = 0; trial < 4; ++trial) {
            const Vec xi = trial < 3 ? Vec(Vec::Unit(d, trial)) : random_unit(d, rng);
            double acc = 0.0;
            for (std::size_t j = 0; j < quad.size(); ++j) {
                const Vec th = quad.nodes.col(static_cast<Eigen::Index>(j));
                const double u = xi.dot(th);
                const double f = boost::math::hypergeometric_1F1(a / 2.0, 0.5, -0.5 * L * L * u * u);
                acc += quad.weights(static_cast<Eigen::Index>(j)) * k.profile().on_sphere(th) * f;
            }
            const double approx = pref * acc;
            CHECK(std::abs(approx - psi(xi)) <= 0.02 * scale);
        }
    }
}

TEST_CASE("nonnegativity criterion examples")
{
    const auto r1 = nonneg_criterion(Vec::Ones(4), 1.0, 4);
    CHECK(r1.nonnegative);
    CHECK(r1.closed_form);
    CHECK(r1.margin == doctest::Approx(0.5).epsilon(1e-14));

    for (int d = 3; d <= 6; ++d) {
        for (double s : {0.2, 0.5 * (d - 2.0), d - 2.1}) {
            const Profile p = counterexample_profile(d, s);
            const auto r = nonneg_criterion(p.alpha(), s, d);
            CHECK(r.nonnegative);
            CHECK(r.margin >= -1e-12);
            CHECK(std::abs(r.margin) < 1e-12);
        }
    }
    Vec a(3);
    a << 100.0, 1.0, 1.0;
    CHECK_FALSE(nonneg_criterion(a, 0.5, 3).nonnegative);

    // fallback for s >= d - 2
    const auto fb = nonneg_criterion(Vec::Ones(3), 1.5, 3);
    CHECK_FALSE(fb.closed_form);
    CHECK(fb.nonnegative);
}

TEST_CASE("counterexample profiles")
{
    CHECK(rel(counterexample_profile(3, 0.5).alpha()(0), 4.0 / 3.0) < 1e-15);
    CHECK(counterexample_profile(3, 0.5).alpha()(1) == 1.0);
    CHECK(rel(counterexample_profile(4, 1.0).alpha()(0), 1.5) < 1e-15);
    CHECK(rel(counterexample_profile(3, 0.5, 0.1).alpha()(0), 1.9 / 1.5) < 1e-15);
    CHECK_THROWS_AS(counterexample_profile(2, 0.5), DomainError);
    CHECK_THROWS_AS(counterexample_profile(3, 1.0), DomainError);
    CHECK_THROWS_AS(counterexample_profile(3, 0.5, 2.0), DomainError);
}

TEST_CASE("criterion agrees with the sampled symbol sign")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    int agree = 0, n_pos = 0;
    const int total = 50;
    for (int t = 0; t < total; ++t) {
        const int d = 3 + t % 3;
        const double s = unit(rng) * (d - 2.0);
        Vec alpha(d);
        for (int i = 0; i < d; ++i)
            alpha(i) = std::exp(logu(rng));
        const auto crit = nonneg_criterion(alpha, s, d);
        const FourierSymbol psi(Kernel(s, Profile::diagonal_quadratic(alpha)));
        const Mat grid = sphere_grid(d, 10000);
        double mn = 1e300, mx = 0.0;
        for (Eigen::Index j = 0; j < grid.cols(); ++j) {
            const double v = psi(grid.col(j));
            mn = std::min(mn, v);
            mx = std::max(mx, std::abs(v));
        }
        const bool sampled = mn >= -1e-12 * mx;
        agree += (sampled == crit.nonnegative);
        n_pos += crit.nonnegative;
    }
    CHECK(agree == total);
    CHECK(n_pos > 0);
    CHECK(n_pos < total);
}

TEST_CASE("equality in the criterion zeroes the symbol")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int t = 0; t < 12; ++t) {
        const int d = 3 + t % 3;
        const double s = (0.1 + 0.8 * (t % 4) / 3.0) * (d - 2.0);
        const int i = t % d;
        Vec alpha(d);
        for (int j = 0; j < d; ++j)
            alpha(j) = u(rng);
        alpha(i) = (alpha.sum() - alpha(i)) / (d - s - 1.0);
        const FourierSymbol psi(Kernel(s, Profile::diagonal_quadratic(alpha)));
        double mx = 0.0;
        for (int j = 0; j < d; ++j)
            mx = std::max(mx, std::abs(psi(Vec::Unit(d, j))));
        CHECK(std::abs(psi(Vec::Unit(d, i))) <= 1e-10 * mx);
    }
}
