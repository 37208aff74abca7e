#include "riesz/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 4096;
constexpr double kNearBoundaryAlpha2 = 0.999;

void check_kernel_measure(const Kernel& kernel, const EquilibriumMeasure& mu)
{
    if (kernel.dim() != mu.dim())
        throw ParameterError("kernel and measure dimensions differ");
    if (mu.dim() == 2 && mu.q() == 0.0)
        throw DomainError("d = 2 with q = 0 (logarithmic regime) is not supported");
}

void check_point(const Vec& x, int d)
{
    if (x.size() != d)
        throw ParameterError("point dimension mismatch");
    for (int i = 0; i < d; ++i)
        detail::require_finite(x(i), "point coordinate");
}

// v_s(t, r) with gap = |t - r| supplied separately so that 1 - alpha^2 keeps
// its relative accuracy next to the sphere.
double vs_gap(double t, double r, double gap, double s, int d)
{
    const double h = std::max(t, r);
    const double m = std::min(t, r);
    const double w = gap * (h + m) / (h * h);
    const double f = specfun::hyp2f1_complement(s / 2.0, (s - d + 2.0) / 2.0, d / 2.0, std::min(1.0, w)).value;
    return sphere_constant_c(d) * std::pow(r, d - 1.0) * std::pow(h, -s) * specfun::beta((d - 1.0) / 2.0, 0.5) * f;
}

} // namespace

const char* method_name(Method m)
{
    switch (m) {
    case Method::ClosedForm:
        return "closed_form";
    case Method::RadialQuadrature:
        return "radial_quadrature";
    case Method::MonteCarlo:
        return "monte_carlo";
    case Method::Regularized:
        return "regularized";
    }
    return "unknown";
}

double tilde_c(int d, double s, double q)
{
    const double arg = 1.0 + (q - s) / 2.0;
    if (specfun::is_nonpositive_integer(arg))
        throw ParameterError("Gamma(1 + (q - s)/2) has a pole for q - s = " + std::to_string(q - s));
    return std::pow(2.0, s - d - 1.0) * specfun::gamma(1.0 + q / 2.0) * specfun::gamma(s / 2.0)
        * specfun::rgamma(arg) / std::pow(kPi, d);
}

PotentialEvaluator::PotentialEvaluator(const Kernel& kernel, const EquilibriumMeasure& mu,
                                       const SphereQuadrature& quad)
    : kernel_(kernel), mu_(mu), psi_(kernel), ct_(0.0), level_(quad.level)
{
    check_kernel_measure(kernel, mu);
    if (quad.dim != mu.dim())
        throw ParameterError("quadrature dimension mismatch");
    ct_ = tilde_c(mu.dim(), kernel.s(), mu.q());
    fine_ = make_rule(quad);
    coarse_ = make_rule(sphere_quadrature(quad.dim, std::max(1, quad.level / 2), static_cast<std::size_t>(-1)));
}

PotentialEvaluator::Rule PotentialEvaluator::make_rule(const SphereQuadrature& q) const
{
    Rule rule;
    rule.nodes = q.nodes;
    const auto n = static_cast<Eigen::Index>(q.size());
    rule.g.resize(n);
    rule.inv_h.resize(n);
    const double s = kernel_.s();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vec omega = q.nodes.col(j);
        const double h = mu_.ellipsoid().stretch(omega);
        rule.inv_h(j) = 1.0 / h;
        rule.g(j) = q.weights(j) * psi_(omega) * std::pow(h, -s);
    }
    return rule;
}

template <class F>
double PotentialEvaluator::sum_rule(const Rule& rule, F&& factor) const
{
    const std::size_t n = static_cast<std::size_t>(rule.g.size());
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    detail::parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        double acc = 0.0;
        for (std::size_t j = c * kChunk; j < end; ++j)
            acc += rule.g(static_cast<Eigen::Index>(j)) * factor(static_cast<Eigen::Index>(j));
        partial[c] = acc;
    });
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

PotentialEstimate PotentialEvaluator::inside(const Vec& x) const
{
    const int d = mu_.dim();
    check_point(x, d);
    const double rho = mu_.ellipsoid().reference_norm(x);
    if (!(rho < 1.0))
        throw DomainError("potential_inside: point is not in the open ellipsoid");
    const double a = (kernel_.s() - mu_.q()) / 2.0;
    const double b = kernel_.s() / 2.0;
    double max_a2 = 0.0;
    double trunc = 0.0;
    auto eval = [&](const Rule& rule, bool track) {
        std::vector<double> fac(static_cast<std::size_t>(rule.g.size()));
        for (Eigen::Index j = 0; j < rule.g.size(); ++j) {
            const double alpha = x.dot(rule.nodes.col(j)) * rule.inv_h(j);
            const double a2 = std::min(alpha * alpha, 1.0);
            const auto r = specfun::hyp2f1(a, b, 0.5, a2);
            fac[static_cast<std::size_t>(j)] = r.value;
            if (track) {
                max_a2 = std::max(max_a2, a2);
                trunc += std::abs(rule.g(j)) * r.truncation_bound;
            }
        }
        return sum_rule(rule, [&](Eigen::Index j) { return fac[static_cast<std::size_t>(j)]; });
    };
    const double fine = eval(fine_, true);
    const double coarse = eval(coarse_, false);
    PotentialEstimate out;
    out.method = Method::ClosedForm;
    out.value = ct_ * fine;
    out.error_bound = std::abs(ct_) * (std::abs(fine - coarse) + trunc) + 1e-14 * std::abs(out.value);
    out.detail["quad_level"] = level_;
    out.detail["max_alpha2"] = max_a2;
    out.detail["refinement_delta"] = std::abs(ct_ * (fine - coarse));
    if (max_a2 > kNearBoundaryAlpha2)
        out.notes.push_back("near_boundary: max alpha^2 = " + std::to_string(max_a2));
    return out;
}

PotentialEstimate PotentialEvaluator::regularized(const Vec& x, double r) const
{
    const int d = mu_.dim();
    check_point(x, d);
    detail::require_finite(r, "r");
    if (r < 0.0)
        throw DomainError("regularisation radius must be >= 0");
    if (!(mu_.ellipsoid().reference_norm(x) < 1.0))
        throw DomainError("regularized_potential: point is not in the open ellipsoid");
    const double a = (kernel_.s() - mu_.q()) / 2.0;
    const double b = kernel_.s() / 2.0;
    const double c = d / 2.0 + 1.0;
    double worst = 0.0;
    for (const Rule* rule : {&fine_, &coarse_})
        for (Eigen::Index j = 0; j < rule->g.size(); ++j) {
            const double alpha = std::abs(x.dot(rule->nodes.col(j))) * rule->inv_h(j);
            worst = std::max(worst, alpha + r * rule->inv_h(j));
        }
    if (!(worst < 1.0))
        throw DomainError("regularized_potential: |alpha| + beta = " + std::to_string(worst)
                          + " >= 1, point too close to the boundary for this r");
    double trunc = 0.0;
    auto eval = [&](const Rule& rule, bool track) {
        std::vector<double> fac(static_cast<std::size_t>(rule.g.size()));
        for (Eigen::Index j = 0; j < rule.g.size(); ++j) {
            const double alpha = x.dot(rule.nodes.col(j)) * rule.inv_h(j);
            const double beta = r * rule.inv_h(j);
            const auto res = specfun::appell_f4(a, b, c, 0.5, beta * beta, alpha * alpha);
            fac[static_cast<std::size_t>(j)] = res.value;
            if (track)
                trunc += std::abs(rule.g(j)) * res.truncation_bound;
        }
        return sum_rule(rule, [&](Eigen::Index j) { return fac[static_cast<std::size_t>(j)]; });
    };
    const double fine = eval(fine_, true);
    const double coarse = eval(coarse_, false);
    PotentialEstimate out;
    out.method = Method::Regularized;
    out.value = ct_ * fine;
    out.error_bound = std::abs(ct_) * (std::abs(fine - coarse) + trunc) + 1e-14 * std::abs(out.value);
    out.detail["quad_level"] = level_;
    out.detail["r"] = r;
    out.detail["max_alpha_plus_beta"] = worst;
    return out;
}

PotentialEstimate potential_inside(const Kernel& kernel, const EquilibriumMeasure& mu, const Vec& x,
                                   const SphereQuadrature& quad)
{
    return PotentialEvaluator(kernel, mu, quad).inside(x);
}

PotentialEstimate constant_potential(const Kernel& kernel, const Ellipsoid& e, const SphereQuadrature& quad)
{
    const double s = kernel.s();
    if (s < e.dim() - 2.0)
        throw DomainError("constant_potential needs q = s >= d - 2");
    const EquilibriumMeasure mu(s, e);
    return PotentialEvaluator(kernel, mu, quad).inside(Vec::Zero(e.dim()));
}

QuadraticPotential quadratic_potential(const Kernel& kernel, const Ellipsoid& e, const SphereQuadrature& quad)
{
    const int d = e.dim();
    const double s = kernel.s();
    if (s < d - 4.0)
        throw DomainError("quadratic_potential needs q = s + 2 >= d - 2");
    if (kernel.dim() != d || quad.dim != d)
        throw ParameterError("dimension mismatch");
    const double ct = tilde_c(d, s, s + 2.0);
    const FourierSymbol psi(kernel);
    auto assemble = [&](const SphereQuadrature& q, double& c0, Mat& m) {
        c0 = 0.0;
        m = Mat::Zero(d, d);
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(q.size()); ++j) {
            const Vec omega = q.nodes.col(j);
            const double h = e.stretch(omega);
            const double g = q.weights(j) * psi(omega) * std::pow(h, -s);
            c0 += g;
            m.noalias() += (g / (h * h)) * omega * omega.transpose();
        }
        c0 *= ct;
        m *= s * ct;
    };
    QuadraticPotential out;
    assemble(quad, out.c0, out.m);
    double c0c = 0.0;
    Mat mc;
    assemble(sphere_quadrature(d, std::max(1, quad.level / 2), static_cast<std::size_t>(-1)), c0c, mc);
    out.error_bound = std::max(std::abs(out.c0 - c0c), (out.m - mc).cwiseAbs().maxCoeff());
    return out;
}

PotentialEstimate regularized_potential(const Kernel& kernel, const EquilibriumMeasure& mu, const Vec& x, double r,
                                        const SphereQuadrature& quad)
{
    return PotentialEvaluator(kernel, mu, quad).regularized(x, r);
}

double sphere_constant_c(int d)
{
    if (d < 2)
        throw ParameterError("dimension must be >= 2");
    if (d == 2)
        return 2.0;
    return 2.0 * std::pow(kPi, (d - 1.0) / 2.0) / specfun::gamma((d - 1.0) / 2.0);
}

double sphere_potential_vs(double t, double r, double s, int d)
{
    detail::require_finite(t, "t");
    detail::require_finite(r, "r");
    detail::require_finite(s, "s");
    if (d < 2)
        throw ParameterError("dimension must be >= 2");
    if (!(s > 0.0 && s < d))
        throw DomainError("s must lie in (0, d)");
    if (!(t > 0.0) || !(r > 0.0))
        throw DomainError("t and r must be positive");
    if (t == r)
        throw DomainError("v_s(t, r) is singular at t = r");
    return vs_gap(t, r, std::abs(t - r), s, d);
}

PotentialEstimate isotropic_radial_potential(double s, double q, double t, int d)
{
    detail::require_finite(s, "s");
    detail::require_finite(q, "q");
    detail::require_finite(t, "t");
    if (d < 2)
        throw ParameterError("dimension must be >= 2");
    if (!(s > 0.0 && s < d))
        throw DomainError("s must lie in (0, d)");
    if (q < d - 2.0)
        throw DomainError("q must be >= d - 2");
    if (d == 2 && q == 0.0)
        throw DomainError("d = 2 with q = 0 (logarithmic regime) is not supported");
    if (t < 0.0)
        throw DomainError("t must be >= 0");
    const double c = normalization_constant(q, d);
    PotentialEstimate out;
    out.method = Method::RadialQuadrature;
    if (q == d - 2.0) {
        if (t == 1.0)
            throw DomainError("surface potential evaluated on the sphere itself");
        out.value = c * vs_gap(t, 1.0, std::abs(t - 1.0), s, d);
        out.error_bound = 1e-13 * std::abs(out.value);
        return out;
    }
    const double e = (q - d) / 2.0;
    boost::math::quadrature::tanh_sinh<double> integrator(15);
    double total = 0.0;
    double err_total = 0.0;
    double l1_total = 0.0;
    auto piece = [&](double lo, double hi) {
        // xc is the signed distance to the nearest end: lo - r near lo, hi - r near hi
        auto f = [&](double r, double xc) {
            const double to_lo = xc < 0.0 ? -xc : r - lo;
            const double to_hi = xc > 0.0 ? xc : hi - r;
            // distance to the sphere of radius t and to the unit sphere
            double gap;
            if (t <= lo)
                gap = (lo == t) ? to_lo : r - t;
            else
                gap = (hi == t) ? to_hi : t - r;
            const double one_minus_r = (hi == 1.0) ? to_hi : 1.0 - r;
            if (r <= 0.0 || gap <= 0.0)
                return 0.0;
            const double weight = std::pow(one_minus_r * (1.0 + r), e);
            if (t == 0.0)
                return sphere_constant_c(d) * specfun::beta((d - 1.0) / 2.0, 0.5) * std::pow(r, d - 1.0 - s) * weight;
            return vs_gap(t, r, gap, s, d) * weight;
        };
        double err = 0.0;
        double l1 = 0.0;
        std::size_t levels = 0;
        const double v = integrator.integrate(f, lo, hi, 1e-12, &err, &l1, &levels);
        total += v;
        err_total += err;
        l1_total += l1;
    };
    if (t > 0.0 && t < 1.0) {
        piece(0.0, t);
        piece(t, 1.0);
    } else {
        piece(0.0, 1.0);
    }
    out.value = c * total;
    out.error_bound = c * (err_total + 1e-14 * l1_total);
    out.detail["l1_norm"] = c * l1_total;
    if (!(out.error_bound <= 1e-8 * std::abs(out.value)) || !std::isfinite(out.value))
        throw NumericalError("isotropic_radial_potential: quadrature error estimate " + std::to_string(out.error_bound)
                             + " exceeds tolerance for value " + std::to_string(out.value));
    return out;
}

} // namespace riesz
