#include "riesz/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "riesz/errors.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

std::size_t default_node_cap()
{
    if (const char* env = std::getenv("RIESZ_NODE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 4'000'000;
}

double sphere_area(int d)
{
    if (d < 2)
        throw ParameterError("dimension must be >= 2");
    return 2.0 * std::pow(kPi, d / 2.0) / specfun::gamma(d / 2.0);
}

void gauss_jacobi_symmetric(int n, double a, Vec& nodes, Vec& weights)
{
    if (n < 1)
        throw ParameterError("quadrature order must be >= 1");
    // Golub-Welsch on the monic recurrence of the Gegenbauer family
    Vec diag = Vec::Zero(n);
    Vec off(std::max(n - 1, 1));
    for (int k = 1; k < n; ++k) {
        const double kk = k;
        off(k - 1) = std::sqrt(kk * (kk + 2.0 * a) / ((2.0 * kk + 2.0 * a + 1.0) * (2.0 * kk + 2.0 * a - 1.0)));
    }
    const double mu0 = std::sqrt(kPi) * specfun::gamma(a + 1.0) / specfun::gamma(a + 1.5);
    if (n == 1) {
        nodes = Vec::Zero(1);
        weights = Vec::Constant(1, mu0);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.computeFromTridiagonal(diag, off.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw NumericalError("Golub-Welsch eigenproblem failed");
    nodes = es.eigenvalues();
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v = es.eigenvectors()(0, i);
        weights(i) = mu0 * v * v;
    }
    // enforce the exact symmetry of the rule
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (nodes(j) - nodes(i));
        const double w = 0.5 * (weights(i) + weights(j));
        nodes(i) = -x;
        nodes(j) = x;
        weights(i) = weights(j) = w;
    }
    if (n % 2 == 1)
        nodes(n / 2) = 0.0;
}

int default_quad_level(int d)
{
    if (d <= 2)
        return 64;
    if (d == 3)
        return 32;
    if (d == 4)
        return 16;
    return 12;
}

std::size_t sphere_quadrature_size(int d, int level)
{
    std::size_t n = 2 * static_cast<std::size_t>(level);
    for (int j = 0; j < d - 2; ++j)
        n *= static_cast<std::size_t>(level);
    return n;
}

SphereQuadrature sphere_quadrature(int d, int level, std::size_t node_cap)
{
    if (d < 2)
        throw ParameterError("dimension must be >= 2");
    if (level < 1)
        throw ParameterError("quadrature level must be >= 1");
    // overflow-safe size check
    double approx = 2.0 * level;
    for (int j = 0; j < d - 2; ++j)
        approx *= level;
    if (approx > static_cast<double>(node_cap))
        throw ResourceError("sphere quadrature with d = " + std::to_string(d) + ", level = " + std::to_string(level)
                            + " needs " + std::to_string(static_cast<long long>(approx)) + " nodes, cap is "
                            + std::to_string(node_cap));
    const std::size_t n_total = sphere_quadrature_size(d, level);
    const int n_az = 2 * level;

    // polar factors: angle j (1-based) carries weight sin^{d-1-j}, i.e.
    // (1 - t^2)^{(d-2-j)/2} in t = cos(theta_j)
    std::vector<Vec> t(static_cast<std::size_t>(std::max(d - 2, 0)));
    std::vector<Vec> w(t.size());
    for (int j = 1; j <= d - 2; ++j)
        gauss_jacobi_symmetric(level, (d - 2.0 - j) / 2.0, t[static_cast<std::size_t>(j - 1)],
                               w[static_cast<std::size_t>(j - 1)]);

    SphereQuadrature q;
    q.dim = d;
    q.level = level;
    q.nodes.resize(d, static_cast<Eigen::Index>(n_total));
    q.weights.resize(static_cast<Eigen::Index>(n_total));

    std::vector<int> idx(static_cast<std::size_t>(std::max(d - 2, 0)), 0);
    Eigen::Index col = 0;
    const double daz = 2.0 * kPi / n_az;
    for (;;) {
        // polar part of the coordinates
        Vec head(d);
        double sin_prod = 1.0;
        double wprod = 1.0;
        for (int j = 0; j < d - 2; ++j) {
            const double tj = t[static_cast<std::size_t>(j)](idx[static_cast<std::size_t>(j)]);
            head(j) = sin_prod * tj;
            sin_prod *= std::sqrt(std::max(0.0, 1.0 - tj * tj));
            wprod *= w[static_cast<std::size_t>(j)](idx[static_cast<std::size_t>(j)]);
        }
        for (int k = 0; k < n_az; ++k) {
            const double phi = (k + 0.5) * daz;
            Vec v = head;
            v(d - 2) = sin_prod * std::cos(phi);
            v(d - 1) = sin_prod * std::sin(phi);
            v /= v.norm();
            q.nodes.col(col) = v;
            q.weights(col) = wprod * daz;
            ++col;
        }
        int j = d - 3;
        while (j >= 0) {
            if (++idx[static_cast<std::size_t>(j)] < level)
                break;
            idx[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0)
            break;
    }
    return q;
}

} // namespace riesz
