#pragma once

#include <cstddef>

#include "riesz/measures.hpp"

namespace riesz {

/// Product rule on S^{d-1}: Gauss-Gegenbauer in the cosine of each polar
/// angle and a 2L-point trapezoid in the azimuth.  Integrates spherical
/// polynomials of degree <= 2L - 1 exactly.
struct SphereQuadrature {
    int dim = 0;
    int level = 0;
    Mat nodes;    // d x N, unit columns
    Vec weights;  // sum = |S^{d-1}|

    std::size_t size() const { return static_cast<std::size_t>(weights.size()); }
};

/// Node cap from RIESZ_NODE_CAP, default 4'000'000.
std::size_t default_node_cap();

/// Level used when a caller passes 0.
int default_quad_level(int d);

std::size_t sphere_quadrature_size(int d, int level);

SphereQuadrature sphere_quadrature(int d, int level, std::size_t node_cap = default_node_cap());

/// Nodes and weights of the n-point Gauss rule for (1 - t^2)^a on [-1, 1].
void gauss_jacobi_symmetric(int n, double a, Vec& nodes, Vec& weights);

/// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
double sphere_area(int d);

} // namespace riesz
