#pragma once

#include <functional>
#include <vector>

#include "jnormals/types.hpp"

namespace jnormals {

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_depth = 48;
    // Interior points to split at before adapting (integrable singularities).
    std::vector<double> split_points;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b]. Endpoints and
// split points are never evaluated (all nodes are interior).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace jnormals
