#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace riesz {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// E = R D B_1 with R a rotation and D = diag(semi_axes).
class Ellipsoid {
public:
    Ellipsoid(Mat rotation, Vec semi_axes);

    static Ellipsoid ball(int d);
    static Ellipsoid axis_aligned(const Vec& semi_axes);

    int dim() const { return static_cast<int>(axes_.size()); }
    const Mat& rotation() const { return rot_; }
    const Vec& semi_axes() const { return axes_; }

    /// T^E(y) = R D y
    Vec map(const Vec& y) const;
    /// D^{-1} R^T x, the preimage of x in the unit ball
    Vec to_reference(const Vec& x) const;
    double reference_norm(const Vec& x) const { return to_reference(x).norm(); }
    bool contains_interior(const Vec& x) const { return reference_norm(x) < 1.0; }

    /// |D R^T omega|
    double stretch(const Vec& omega) const;
    double volume() const;
    double axes_product() const { return axes_.prod(); }

    Ellipsoid scaled(double lambda) const;
    /// Q E for a rotation Q
    Ellipsoid rotated(const Mat& q) const;

private:
    Mat rot_;
    Vec axes_;
};

enum class MeasureKind { Volume, Surface };

/// c_{q,d}; surface normalisation when q == d - 2.
double normalization_constant(double q, int d);

/// mu_q^E.  The surface kind is selected only by exact equality q == d - 2.
class EquilibriumMeasure {
public:
    EquilibriumMeasure(double q, Ellipsoid e);
    static EquilibriumMeasure surface(Ellipsoid e);

    double q() const { return q_; }
    int dim() const { return e_.dim(); }
    MeasureKind kind() const { return kind_; }
    bool is_surface() const { return kind_ == MeasureKind::Surface; }
    const Ellipsoid& ellipsoid() const { return e_; }
    double normalization() const { return normalization_constant(q_, dim()); }

private:
    double q_;
    Ellipsoid e_;
    MeasureKind kind_;
};

/// Density of a volume-kind measure at an interior point.
double density(const EquilibriumMeasure& mu, const Vec& x);

/// Points stored column-wise, uniform weights 1/n.
struct PointSample {
    Mat points;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(points.cols()); }
    double weight() const { return 1.0 / static_cast<double>(points.cols()); }
};

/// Draws from mu_q on the unit ball (before the push-forward).
PointSample sample_reference(double q, int d, bool surface, int n, std::uint64_t seed);

/// i.i.d. draws from mu_q^E; identical seeds give identical samples.
PointSample sample(const EquilibriumMeasure& mu, int n, std::uint64_t seed);

/// Fourier transform of mu_q on B_1 (real because mu_q is even).
double mu_hat(double q, int d, const Vec& xi);

/// mu_hat(q, d, D R^T xi)
double mu_hat_E(const EquilibriumMeasure& mu, const Vec& xi);

/// Batch size used by the samplers; each batch has its own generator.
inline constexpr int kSampleBatch = 8192;

} // namespace riesz
