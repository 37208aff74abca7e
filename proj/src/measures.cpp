#include "riesz/measures.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRotationTol = 1e-12;

void check_dim(int d)
{
    if (d < 2)
        throw ParameterError("dimension must be >= 2");
}

} // namespace

Ellipsoid::Ellipsoid(Mat rotation, Vec semi_axes) : rot_(std::move(rotation)), axes_(std::move(semi_axes))
{
    const int d = static_cast<int>(axes_.size());
    check_dim(d);
    if (rot_.rows() != d || rot_.cols() != d)
        throw ParameterError("rotation must be a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    for (int i = 0; i < d; ++i) {
        detail::require_finite(axes_(i), "semi-axis");
        if (!(axes_(i) > 0.0))
            throw ParameterError("semi-axes must be positive");
        for (int j = 0; j < d; ++j)
            detail::require_finite(rot_(i, j), "rotation entry");
    }
    const double orth = (rot_.transpose() * rot_ - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (orth > kRotationTol)
        throw ParameterError("rotation is not orthogonal (max |R^T R - I| = " + std::to_string(orth) + ")");
    if (std::abs(rot_.determinant() - 1.0) > kRotationTol)
        throw ParameterError("rotation must have determinant +1");
}

Ellipsoid Ellipsoid::ball(int d)
{
    check_dim(d);
    return Ellipsoid(Mat::Identity(d, d), Vec::Ones(d));
}

Ellipsoid Ellipsoid::axis_aligned(const Vec& semi_axes)
{
    const int d = static_cast<int>(semi_axes.size());
    check_dim(d);
    return Ellipsoid(Mat::Identity(d, d), semi_axes);
}

Vec Ellipsoid::map(const Vec& y) const
{
    return rot_ * axes_.cwiseProduct(y);
}

Vec Ellipsoid::to_reference(const Vec& x) const
{
    if (x.size() != axes_.size())
        throw ParameterError("point dimension does not match the ellipsoid");
    return (rot_.transpose() * x).cwiseQuotient(axes_);
}

double Ellipsoid::stretch(const Vec& omega) const
{
    return axes_.cwiseProduct(rot_.transpose() * omega).norm();
}

double Ellipsoid::volume() const
{
    const double d = static_cast<double>(dim());
    return std::pow(kPi, d / 2.0) / specfun::gamma(d / 2.0 + 1.0) * axes_product();
}

Ellipsoid Ellipsoid::scaled(double lambda) const
{
    if (!(lambda > 0.0))
        throw ParameterError("scale factor must be positive");
    return Ellipsoid(rot_, lambda * axes_);
}

Ellipsoid Ellipsoid::rotated(const Mat& q) const
{
    return Ellipsoid(q * rot_, axes_);
}

double normalization_constant(double q, int d)
{
    check_dim(d);
    detail::require_finite(q, "q");
    const double dd = d;
    if (q < dd - 2.0)
        throw DomainError("q must be >= d - 2");
    if (q == dd - 2.0)
        return std::pow(kPi, -dd / 2.0) * specfun::gamma(dd / 2.0) / 2.0;
    return std::pow(kPi, -dd / 2.0) * specfun::gamma(1.0 + q / 2.0) * specfun::rgamma(1.0 + (q - dd) / 2.0);
}

EquilibriumMeasure::EquilibriumMeasure(double q, Ellipsoid e) : q_(q), e_(std::move(e))
{
    detail::require_finite(q, "q");
    const double dd = e_.dim();
    if (q < dd - 2.0)
        throw DomainError("q must be >= d - 2");
    kind_ = (q == dd - 2.0) ? MeasureKind::Surface : MeasureKind::Volume;
}

EquilibriumMeasure EquilibriumMeasure::surface(Ellipsoid e)
{
    const double q = e.dim() - 2.0;
    return EquilibriumMeasure(q, std::move(e));
}

double density(const EquilibriumMeasure& mu, const Vec& x)
{
    if (mu.is_surface())
        throw DomainError("the surface measure has no volume density");
    const double rho = mu.ellipsoid().reference_norm(x);
    if (!(rho < 1.0))
        throw DomainError("density: point is not inside the open ellipsoid");
    const double d = mu.dim();
    return mu.normalization() / mu.ellipsoid().axes_product() * std::pow(1.0 - rho * rho, (mu.q() - d) / 2.0);
}

PointSample sample_reference(double q, int d, bool surface, int n, std::uint64_t seed)
{
    check_dim(d);
    if (n < 1)
        throw ParameterError("sample size must be >= 1");
    PointSample out;
    out.seed = seed;
    out.points.resize(d, n);
    const std::size_t batches = (static_cast<std::size_t>(n) + kSampleBatch - 1) / kSampleBatch;
    const double shape_a = d / 2.0;
    const double shape_b = (q - d) / 2.0 + 1.0;
    detail::parallel_for(batches, [&](std::size_t b) {
        auto rng = detail::batch_engine(seed, b);
        std::normal_distribution<double> normal;
        std::gamma_distribution<double> ga(shape_a, 1.0);
        std::gamma_distribution<double> gb(shape_b, 1.0);
        const int begin = static_cast<int>(b) * kSampleBatch;
        const int end = std::min(n, begin + kSampleBatch);
        for (int j = begin; j < end; ++j) {
            auto col = out.points.col(j);
            double norm2 = 0.0;
            do {
                for (int i = 0; i < d; ++i)
                    col(i) = normal(rng);
                norm2 = col.squaredNorm();
            } while (norm2 == 0.0);
            double radius = 1.0;
            if (!surface) {
                const double x = ga(rng);
                const double y = gb(rng);
                radius = std::sqrt(x / (x + y));
            }
            col *= radius / std::sqrt(norm2);
        }
    });
    return out;
}

PointSample sample(const EquilibriumMeasure& mu, int n, std::uint64_t seed)
{
    PointSample s = sample_reference(mu.q(), mu.dim(), mu.is_surface(), n, seed);
    const auto& e = mu.ellipsoid();
    const Mat t = e.rotation() * e.semi_axes().asDiagonal();
    s.points = t * s.points;
    return s;
}

double mu_hat(double q, int d, const Vec& xi)
{
    check_dim(d);
    if (q < d - 2.0)
        throw DomainError("q must be >= d - 2");
    if (xi.size() != d)
        throw ParameterError("frequency dimension mismatch");
    const double nu = q / 2.0;
    const double t = xi.norm();
    if (t == 0.0)
        return 1.0;
    return std::pow(2.0, nu) * specfun::gamma(1.0 + nu) * specfun::bessel_j_scaled(nu, t);
}

double mu_hat_E(const EquilibriumMeasure& mu, const Vec& xi)
{
    const auto& e = mu.ellipsoid();
    const Vec eta = e.semi_axes().cwiseProduct(e.rotation().transpose() * xi);
    return mu_hat(mu.q(), mu.dim(), eta);
}

} // namespace riesz
