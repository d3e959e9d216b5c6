#pragma once

#include <string>
#include <vector>

#include "jnormals/curve.hpp"
#include "jnormals/linalg.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

// Frame obtained by Gram-Schmidt on the alternating chord stencil at step h.
struct StencilFrame {
    double h = 0.0;
    std::vector<UnitVec> frame;  // t(h), n_1(h), ..., n_N(h)
};

struct OrderFitReport {
    std::string quantity;
    std::vector<double> steps;      // strictly decreasing
    std::vector<double> residuals;  // per-step norms
    double fitted_slope = 0.0;      // log-log least squares
    double threshold = 0.0;         // required minimal slope
    bool passed = false;
    bool monotone = true;           // residuals decrease along the step range
};

// Alternating forward/backward chords: even k uses points ahead of s, odd k
// behind. Requires s +- (N+2) h inside the domain.
std::vector<Vec> stencil_vectors(const CurveOracle& c, double s, double h, int codim);

StencilFrame stencil_frame(const CurveOracle& c, double s, double h, int codim);

// Default step schedule h in {2^-3 .. 2^-10} * (b-a)/32.
std::vector<double> default_steps(const CurveOracle& c);

// Third-order expansion checks of t(h), N_1(h), n_1(h), N_2(h), n_2(h).
std::vector<OrderFitReport> verify_pgm3(const CurveOracle& c, double s,
                                        const std::vector<double>& steps);

// Codimension-3 expansion checks including the closed-form second-order
// coefficient of n_1(h) and first-order coefficient of n_2(h).
std::vector<OrderFitReport> verify_pgm4(const CurveOracle& c, double s,
                                        const std::vector<double>& steps);

// Projective convergence of the stencil frame to the Jordan frame.
std::vector<OrderFitReport> verify_pgmn(const CurveOracle& c, double s, int j_max,
                                        const std::vector<double>& steps);

double fit_loglog_slope(const std::vector<double>& steps, const std::vector<double>& residuals);

}  // namespace jnormals
