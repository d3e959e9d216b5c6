#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jnormals/types.hpp"

namespace jnormals {

// Analytic curve with exact arc-length derivatives; the ground-truth source
// for inscription, frames and quadrature. Closed oracles evaluate periodically
// on all of R; open oracles throw OutOfDomain outside [a, b].
class CurveOracle {
  public:
    virtual ~CurveOracle() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual double domain_start() const = 0;
    virtual double domain_end() const = 0;
    virtual bool closed() const = 0;
    virtual bool arc_length_parameterized() const = 0;
    virtual int max_order() const = 0;

    virtual Vec eval(double s) const = 0;
    // k-th arc-length derivative, 1 <= k <= max_order().
    virtual Vec deriv(double s, int k) const = 0;

    // Interior parameters where the smooth-turning rank condition fails.
    virtual std::vector<double> singular_params() const { return {}; }

    double period() const { return domain_end() - domain_start(); }

  protected:
    double wrap(double s) const;
    void check_domain(double s) const;
};

using CurvePtr = std::shared_ptr<const CurveOracle>;

// Builtins: line, circle, helix_r3, generalized_helix_r4, generalized_helix_r5,
// eflex, eflat, spiral_infinite_tc. Unknown names throw UnknownCurve; invalid
// parameters throw BadParams.
CurvePtr builtin_curve(const std::string& name, const std::map<std::string, double>& params = {});

}  // namespace jnormals
