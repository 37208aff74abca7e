#include "riesz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCoincident = 1e-14;

struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v)
    {
        n += 1.0;
        const double delta = v - mean;
        mean += delta / n;
        m2 += delta * (v - mean);
    }
    void merge(const Moments& o)
    {
        if (o.n == 0.0)
            return;
        const double total = n + o.n;
        const double delta = o.mean - mean;
        mean += delta * o.n / total;
        m2 += o.m2 + delta * delta * n * o.n / total;
        n = total;
    }
    double variance() const { return n > 1.0 ? m2 / (n - 1.0) : 0.0; }
};

std::uint64_t mix(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_same_dim(const Kernel& kernel, const EquilibriumMeasure& mu)
{
    if (kernel.dim() != mu.dim())
        throw ParameterError("kernel and measure dimensions differ");
}

// Jackknife for a symmetric pair statistic given row sums R_i = sum_{j != i} w_ij.
EnergyEstimate jackknife(const std::vector<double>& rows)
{
    const double n = static_cast<double>(rows.size());
    if (rows.size() < 3)
        throw ParameterError("energy estimate needs at least 3 points");
    double total = 0.0;
    for (double r : rows)
        total += r;
    EnergyEstimate out;
    out.n = static_cast<int>(rows.size());
    out.pairs = n * (n - 1.0) / 2.0;
    out.value = total / (n * (n - 1.0));
    const double denom = (n - 1.0) * (n - 2.0);
    double mean_loo = 0.0;
    for (double r : rows)
        mean_loo += (total - 2.0 * r) / denom;
    mean_loo /= n;
    double ss = 0.0;
    for (double r : rows) {
        const double u = (total - 2.0 * r) / denom - mean_loo;
        ss += u * u;
    }
    out.standard_error = std::sqrt((n - 1.0) / n * ss);
    return out;
}

template <class PairWeight>
std::vector<double> pair_rows(int n, PairWeight&& w)
{
    // each worker owns a block of rows i and sums w(i, j) over all j != i
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
    const std::size_t blocks = static_cast<std::size_t>((n + 63) / 64);
    detail::parallel_for(blocks, [&](std::size_t b) {
        const int begin = static_cast<int>(b) * 64;
        const int end = std::min(n, begin + 64);
        for (int i = begin; i < end; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    acc += w(i, j);
            rows[static_cast<std::size_t>(i)] = acc;
        }
    });
    return rows;
}

// W_s(a - b) without temporaries; d is small.
template <class A, class B>
double kernel_between(const Kernel& kernel, const A& a, const B& b)
{
    const int d = kernel.dim();
    double buf[32];
    std::vector<double> heap;
    double* diff = buf;
    if (d > 32) {
        heap.resize(static_cast<std::size_t>(d));
        diff = heap.data();
    }
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
        diff[i] = a(i) - b(i);
        r2 += diff[i] * diff[i];
    }
    const double r = std::sqrt(r2);
    if (r < kCoincident)
        throw NumericalError("coincident points in a kernel evaluation");
    return kernel.profile().at_scaled(diff, r) * std::pow(r, -kernel.s());
}

} // namespace

// ---- Monte Carlo potential -------------------------------------------------

std::vector<PotentialEstimate> mc_potential_many(const Kernel& kernel, const EquilibriumMeasure& mu, const Mat& xs,
                                                 int n, std::uint64_t seed)
{
    check_same_dim(kernel, mu);
    if (n < 1000)
        throw ParameterError("mc_potential needs n >= 1000");
    if (xs.rows() != mu.dim())
        throw ParameterError("point dimension mismatch");
    const PointSample ys = sample(mu, n, seed);
    const std::size_t batches = (static_cast<std::size_t>(n) + kSampleBatch - 1) / kSampleBatch;
    std::vector<PotentialEstimate> out(static_cast<std::size_t>(xs.cols()));
    for (Eigen::Index k = 0; k < xs.cols(); ++k) {
        const Vec x = xs.col(k);
        std::vector<Moments> parts(batches);
        std::vector<int> redraws(batches, 0);
        detail::parallel_for(batches, [&](std::size_t b) {
            const int begin = static_cast<int>(b) * kSampleBatch;
            const int end = std::min(n, begin + kSampleBatch);
            Moments m;
            for (int j = begin; j < end; ++j) {
                auto y = ys.points.col(j);
                if ((x - y).norm() >= kCoincident) {
                    m.push(kernel_between(kernel, x, y));
                    continue;
                }
                // measure-zero event: replace the draw from a derived stream
                int attempt = 0;
                Vec z = y;
                while ((x - z).norm() < kCoincident) {
                    z = sample(mu, 1, mix(mix(seed, static_cast<std::uint64_t>(j)), ++attempt)).points.col(0);
                    ++redraws[b];
                }
                m.push(kernel_between(kernel, x, z));
            }
            parts[b] = m;
        });
        Moments total;
        int redrawn = 0;
        for (std::size_t b = 0; b < batches; ++b) {
            total.merge(parts[b]);
            redrawn += redraws[b];
        }
        PotentialEstimate est;
        est.method = Method::MonteCarlo;
        est.value = total.mean;
        const double se = std::sqrt(total.variance() / total.n);
        est.error_bound = 3.0 * se;
        est.detail["standard_error"] = se;
        est.detail["n"] = n;
        est.detail["seed"] = static_cast<double>(seed);
        if (redrawn > 0)
            est.detail["redrawn"] = redrawn;
        out[static_cast<std::size_t>(k)] = est;
    }
    return out;
}

PotentialEstimate mc_potential(const Kernel& kernel, const EquilibriumMeasure& mu, const Vec& x, int n,
                               std::uint64_t seed)
{
    Mat xs(x.size(), 1);
    xs.col(0) = x;
    return mc_potential_many(kernel, mu, xs, n, seed).front();
}

// ---- energies --------------------------------------------------------------

EnergyEstimate energy_of_points(const Kernel& kernel, const Mat& points)
{
    if (points.rows() != kernel.dim())
        throw ParameterError("point dimension mismatch");
    const int n = static_cast<int>(points.cols());
    const auto rows = pair_rows(n, [&](int i, int j) { return kernel_between(kernel, points.col(i), points.col(j)); });
    return jackknife(rows);
}

EnergyEstimate energy_estimate(const Kernel& kernel, const EquilibriumMeasure& mu, int n, std::uint64_t seed)
{
    check_same_dim(kernel, mu);
    if (n < 1000)
        throw ParameterError("energy_estimate needs n >= 1000");
    return energy_of_points(kernel, sample(mu, n, seed).points);
}

EnergyEstimate energy_difference(const Kernel& kernel, const Mat& a, const Mat& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != kernel.dim())
        throw ParameterError("paired point sets must have equal shapes");
    const int n = static_cast<int>(a.cols());
    const auto rows = pair_rows(n, [&](int i, int j) {
        return kernel_between(kernel, b.col(i), b.col(j)) - kernel_between(kernel, a.col(i), a.col(j));
    });
    return jackknife(rows);
}

// ---- Euler-Lagrange check --------------------------------------------------

ElReport el_check(const Kernel& kernel, const EquilibriumMeasure& candidate, const Ellipsoid& e,
                  const ElOptions& opt)
{
    check_same_dim(kernel, candidate);
    if (e.dim() != candidate.dim())
        throw ParameterError("confinement set dimension mismatch");
    if (opt.n_support < 2 || opt.n_grid < 1)
        throw ParameterError("el_check needs n_support >= 2 and n_grid >= 1");
    const int d = e.dim();
    const int level = opt.quad_level > 0 ? opt.quad_level : default_quad_level(d);
    const SphereQuadrature quad = sphere_quadrature(d, level);
    const PotentialEvaluator closed(kernel, candidate, quad);

    ElReport rep;
    rep.n_support = opt.n_support;
    rep.n_grid = opt.n_grid;

    // EL1: the support lies in E
    const PointSample support = sample(candidate, opt.n_support, opt.seed);
    rep.el1 = true;
    for (int j = 0; j < support.size(); ++j)
        if (e.reference_norm(support.points.col(j)) > 1.0 + 1e-12)
            rep.el1 = false;

    // EL2: constancy on the support
    std::vector<double> values(static_cast<std::size_t>(opt.n_support));
    std::vector<double> ses(values.size());
    double floor = 0.0;
    if (candidate.q() == kernel.s()) {
        rep.el2_method = "closed_form";
        floor = 1e-8;
        for (int j = 0; j < support.size(); ++j) {
            Vec x = support.points.col(j);
            const double rho = candidate.ellipsoid().reference_norm(x);
            // the q = s formula holds up to the boundary; approach it from inside
            if (rho >= 1.0 - 1e-12)
                x *= (1.0 - 1e-12) / rho;
            const auto est = closed.inside(x);
            values[static_cast<std::size_t>(j)] = est.value;
            ses[static_cast<std::size_t>(j)] = est.error_bound;
        }
    } else {
        rep.el2_method = "monte_carlo";
        floor = 1e-3;
        const auto est = mc_potential_many(kernel, candidate, support.points, opt.mc_samples, mix(opt.seed, 1));
        for (std::size_t j = 0; j < est.size(); ++j) {
            values[j] = est[j].value;
            ses[j] = est[j].detail.at("standard_error");
        }
    }
    Moments m;
    double mean_se = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        m.push(values[j]);
        mean_se += ses[j];
    }
    mean_se /= static_cast<double>(values.size());
    const double stdev = std::sqrt(m.variance());
    rep.constant_estimate = m.mean;
    rep.constant_se = std::sqrt((stdev * stdev + mean_se * mean_se) / static_cast<double>(values.size()));
    rep.support_spread = stdev / std::abs(m.mean);
    rep.spread_threshold = std::max(floor, 5.0 * mean_se / std::abs(m.mean));
    rep.el2 = rep.support_spread <= rep.spread_threshold;

    // EL3: potential >= C on sampled interior points of E
    rep.el3_method = "closed_form";
    const EquilibriumMeasure uniform(static_cast<double>(d), e);
    const PointSample grid = sample(uniform, opt.n_grid, mix(opt.seed, 2));
    rep.el3 = true;
    rep.min_over_E = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.size(); ++j) {
        Vec x = grid.points.col(j);
        const double rho = candidate.ellipsoid().reference_norm(x);
        if (!(rho < 1.0)) {
            // outside the candidate's ellipsoid the interior formula does not apply
            rep.el3_method = "closed_form (points outside supp skipped)";
            continue;
        }
        const auto est = closed.inside(x);
        rep.min_over_E = std::min(rep.min_over_E, est.value);
        const double tol = 3.0 * rep.constant_se + est.error_bound + 1e-12 * std::abs(rep.constant_estimate);
        if (est.value < rep.constant_estimate - tol)
            rep.el3 = false;
    }
    return rep;
}

// ---- counterexample --------------------------------------------------------

namespace {

void check_counterexample(int d, double s, double eps)
{
    if (d < 3)
        throw DomainError("counterexample needs d >= 3");
    if (!(s > 0.0 && s < d - 2.0))
        throw DomainError("counterexample needs 0 < s < d - 2");
    if (!(eps >= 0.0 && eps < d - 1.0))
        throw DomainError("counterexample needs 0 <= eps < d - 1");
}

// c_{d-2,d} (s - eps)/(d - s - 1) 2^{-(s+2)/2} C(d); C(3) = 1 with the
// azimuth over (0, 2 pi), |S^{d-3}| otherwise.
double counterexample_prefactor(int d, double s, double eps)
{
    const double cd = d == 3 ? 1.0 : 2.0 * std::pow(kPi, (d - 2.0) / 2.0) / specfun::gamma((d - 2.0) / 2.0);
    return normalization_constant(d - 2.0, d) * (s - eps) / (d - s - 1.0) * std::pow(2.0, -(s + 2.0) / 2.0) * cd;
}

double closed_difference(int d, double s)
{
    // I1 - I2 after the Gamma simplification, proportional to (2 - d + s)
    const double v = std::pow(2.0, d - 1.0 - s / 2.0) * specfun::gamma(d / 2.0 - 1.0)
        * specfun::gamma((d - s - 1.0) / 2.0) * specfun::rgamma(d - s / 2.0) * (std::sqrt(kPi) / 2.0) * (2.0 - d + s);
    return d == 3 ? 2.0 * v : v;
}

} // namespace

double counterexample_A_closed(int d, double s, double eps)
{
    check_counterexample(d, s, eps);
    return counterexample_prefactor(d, s, eps) * closed_difference(d, s);
}

CounterexampleReport counterexample_A(int d, double s, double eps)
{
    check_counterexample(d, s, eps);
    CounterexampleReport rep;
    rep.d = d;
    rep.s = s;
    rep.eps = eps;
    rep.prefactor = counterexample_prefactor(d, s, eps);

    const double dd = d;
    const double phi2_end = d == 3 ? 2.0 * kPi : kPi;
    boost::math::quadrature::tanh_sinh<double> outer;
    double err_total = 0.0;

    // 1 - cos(phi) = 2 sin^2(phi / 2) keeps relative accuracy near phi = 0
    auto one_minus_cos = [](double phi) {
        const double h = std::sin(0.5 * phi);
        return 2.0 * h * h;
    };
    auto nested = [&](auto inner_f, auto outer_f) {
        double inner_err_max = 0.0;
        boost::math::quadrature::tanh_sinh<double> inner;
        auto g = [&](double phi2) {
            double err = 0.0;
            const double v = inner.integrate([&](double phi1) { return inner_f(phi1); }, 0.0, kPi, 1e-14, &err);
            inner_err_max = std::max(inner_err_max, err);
            return outer_f(phi2) * v;
        };
        double err = 0.0;
        double l1 = 0.0;
        const double v = outer.integrate(g, 0.0, phi2_end, 1e-14, &err, &l1);
        err_total += err + inner_err_max * l1;
        return v;
    };
    const double i1 = nested(
        [&](double p1) {
            // sin^d(p) / (1 - cos p)^{(s+2)/2} in half angles, no 0/0 at p = 0
            const double h = 0.5 * p1;
            return std::pow(2.0, dd - (s + 2.0) / 2.0) * std::pow(std::sin(h), dd - s - 2.0) * std::pow(std::cos(h), dd);
        },
        [&](double p2) { const double c = std::cos(p2); return c * c * std::pow(std::abs(std::sin(p2)), dd - 3.0); });
    const double i2 = nested(
        [&](double p1) { return std::pow(one_minus_cos(p1), (2.0 - s) / 2.0) * std::pow(std::sin(p1), dd - 2.0); },
        [&](double p2) { return std::pow(std::abs(std::sin(p2)), dd - 3.0); });

    const double doubling = d == 3 ? 2.0 : 1.0;
    const double i3 = std::pow(2.0, dd - 1.0 - s / 2.0) * specfun::beta((dd - s - 1.0) / 2.0, (dd + 1.0) / 2.0);
    const double i4 = doubling * specfun::beta((dd - 2.0) / 2.0, 1.5);
    const double i5 = std::pow(2.0, dd - 1.0 - s / 2.0) * specfun::beta((dd - s + 1.0) / 2.0, (dd - 1.0) / 2.0);
    const double i6 = doubling * std::pow(2.0, dd - 3.0) * specfun::beta((dd - 2.0) / 2.0, (dd - 2.0) / 2.0);
    rep.i_values = {i1, i2, i3, i4, i5, i6};

    rep.a_numeric = rep.prefactor * (i1 - i2);
    rep.a_numeric_error = std::abs(rep.prefactor) * err_total;
    rep.a_closed = rep.prefactor * closed_difference(d, s);
    return rep;
}

// ---- minimality probe ------------------------------------------------------

MinimalityReport minimality_probe(const Kernel& kernel, const Ellipsoid& e, int n, int perturbations,
                                  std::uint64_t seed)
{
    const int d = e.dim();
    if (kernel.dim() != d)
        throw ParameterError("kernel and ellipsoid dimensions differ");
    const double s = kernel.s();
    if (s < d - 2.0)
        throw DomainError("minimality_probe needs q = s >= d - 2");
    if (n < 3)
        throw ParameterError("minimality_probe needs n >= 3");
    if (perturbations < 1)
        throw ParameterError("minimality_probe needs at least one perturbation");
    const bool surface = (s == d - 2.0);

    // shared directions and uniforms; every competitor is a function of them
    Mat dirs(d, n);
    Vec unif(n);
    {
        auto rng = detail::batch_engine(seed, 0, 0x6d696eULL);
        std::normal_distribution<double> normal;
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        for (int j = 0; j < n; ++j) {
            Vec v(d);
            double r = 0.0;
            do {
                for (int i = 0; i < d; ++i)
                    v(i) = normal(rng);
                r = v.norm();
            } while (r == 0.0);
            dirs.col(j) = v / r;
            double u = 0.0;
            do
                u = uniform(rng);
            while (u <= 0.0);
            unif(j) = u;
        }
    }
    const Mat t = e.rotation() * e.semi_axes().asDiagonal();
    const double b_shape = (s - d) / 2.0 + 1.0;
    auto radial_points = [&](auto radius_of) {
        Mat pts(d, n);
        for (int j = 0; j < n; ++j)
            pts.col(j) = radius_of(unif(j)) * dirs.col(j);
        return Mat(t * pts);
    };
    auto base_radius = [&](double p) {
        if (surface)
            return 1.0;
        return std::sqrt(boost::math::ibeta_inv(d / 2.0, b_shape, p));
    };
    const Mat base = radial_points(base_radius);

    struct Spec {
        std::string name;
        Mat points;
    };
    std::vector<Spec> specs;
    const double scales[] = {0.8, 0.9, 0.95, 0.98};
    for (double lam : scales)
        specs.push_back({"scale_" + std::to_string(lam).substr(0, 4), lam * base});
    {
        // flatten along the last principal axis
        Vec f = Vec::Ones(d);
        f(d - 1) = 0.9;
        const Mat back = t.inverse();
        specs.push_back({"squeeze_last_0.90", Mat(t * f.asDiagonal() * (back * base))});
    }
    const double gammas[] = {0.25, 0.5, 1.0, -0.25, -0.5};
    const double spread_exponents[] = {0.02, 0.05, 0.1, 0.2, 0.5};
    for (int k = 0; k < 5; ++k) {
        if (surface) {
            // spread the unit-sphere mass inward: r = p^e
            const double ex = spread_exponents[k];
            specs.push_back({"radial_power_" + std::to_string(ex).substr(0, 4),
                             radial_points([&](double p) { return std::pow(p, ex); })});
        } else {
            // u = r^2 reweighted by u^gamma: Beta(d/2 + gamma, b)
            const double g = gammas[k];
            specs.push_back({"radial_gamma_" + std::to_string(g).substr(0, g < 0.0 ? 5 : 4),
                             radial_points([&](double p) {
                                 return std::sqrt(boost::math::ibeta_inv(d / 2.0 + g, b_shape, p));
                             })});
        }
    }
    while (static_cast<int>(specs.size()) < perturbations) {
        const double lam = 0.99 - 0.01 * static_cast<double>(specs.size());
        specs.push_back({"scale_" + std::to_string(lam).substr(0, 4), std::max(lam, 0.5) * base});
    }
    specs.resize(static_cast<std::size_t>(perturbations));

    MinimalityReport rep;
    rep.base = energy_of_points(kernel, base);
    for (const auto& sp : specs) {
        Competitor c;
        c.name = sp.name;
        const EnergyEstimate diff = energy_difference(kernel, base, sp.points);
        c.difference = diff.value;
        c.standard_error = diff.standard_error;
        c.energy = rep.base.value + diff.value;
        c.beats = diff.value < -3.0 * diff.standard_error;
        if (c.beats)
            ++rep.beaten_by;
        rep.competitors.push_back(c);
    }
    return rep;
}

} // namespace riesz
