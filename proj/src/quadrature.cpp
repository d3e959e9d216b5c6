#include "jnormals/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace jnormals {

namespace {

// Kronrod-15 nodes on [-1, 1] (symmetric) with weights; the odd-indexed nodes
// form the embedded Gauss-7 rule.
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Piece {
    double integral;
    double error;
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             int max_depth) {
    const Piece p = gk15(f, a, b);
    if (p.error <= tol || depth >= max_depth) return p.integral;
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    std::vector<double> cuts = {a, b};
    for (double s : opts.split_points) {
        if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());

    // First pass to scale the relative tolerance.
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        rough += std::abs(gk15(f, cuts[i], cuts[i + 1]).integral);
    }
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::max(rough, 1e-300));

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += adapt(f, cuts[i], cuts[i + 1], tol / static_cast<double>(cuts.size() - 1), 0,
                       opts.max_depth);
    }
    return total;
}

}  // namespace jnormals
