#include "jnormals/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jnormals/quadrature.hpp"

namespace jnormals {

namespace {

using std::numbers::pi;

double get(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

class Line final : public CurveOracle {
  public:
    Line(int dim, double length) : d_(dim), len_(length) {
        if (dim < 2 || length <= 0) throw BadParams("line needs dim >= 2, length > 0");
        u_ = Vec::Ones(d_) / std::sqrt(static_cast<double>(d_));
    }
    std::string name() const override { return "line"; }
    int dim() const override { return d_; }
    double domain_start() const override { return 0.0; }
    double domain_end() const override { return len_; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 8; }
    Vec eval(double s) const override {
        check_domain(s);
        return s * u_;
    }
    Vec deriv(double s, int k) const override {
        check_domain(s);
        return k == 1 ? u_ : Vec(Vec::Zero(d_));
    }

  private:
    int d_;
    double len_;
    Vec u_;
};

class Circle final : public CurveOracle {
  public:
    explicit Circle(double r) : r_(r) {
        if (!(r > 0)) throw BadParams("circle radius must be positive");
    }
    std::string name() const override { return "circle"; }
    int dim() const override { return 3; }
    double domain_start() const override { return 0.0; }
    double domain_end() const override { return 2.0 * pi * r_; }
    bool closed() const override { return true; }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 8; }
    Vec eval(double s) const override {
        const double t = s / r_;
        Vec v(3);
        v << r_ * std::cos(t), r_ * std::sin(t), 0.0;
        return v;
    }
    Vec deriv(double s, int k) const override {
        const double t = s / r_ + k * pi / 2.0;
        const double amp = r_ * std::pow(1.0 / r_, k);
        Vec v(3);
        v << amp * std::cos(t), amp * std::sin(t), 0.0;
        return v;
    }

  private:
    double r_;
};

class HelixR3 final : public CurveOracle {
  public:
    HelixR3(double a, double b, double turns) : a_(a), b_(b), turns_(turns) {
        if (!(a > 0) || b == 0.0 || !(turns > 0)) throw BadParams("helix needs a > 0, b != 0");
        c0_ = std::sqrt(a * a + b * b);
    }
    std::string name() const override { return "helix_r3"; }
    int dim() const override { return 3; }
    double domain_start() const override { return 0.0; }
    double domain_end() const override { return turns_ * 2.0 * pi * c0_; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 10; }
    Vec eval(double s) const override {
        check_domain(s);
        const double t = s / c0_;
        Vec v(3);
        v << a_ * std::cos(t), a_ * std::sin(t), b_ * t;
        return v;
    }
    Vec deriv(double s, int k) const override {
        check_domain(s);
        const double w = 1.0 / c0_;
        const double t = s * w + k * pi / 2.0;
        const double amp = a_ * std::pow(w, k);
        Vec v(3);
        v << amp * std::cos(t), amp * std::sin(t), (k == 1 ? b_ * w : 0.0);
        return v;
    }

  private:
    double a_, b_, turns_, c0_;
};

// Trigonometric curve on two frequency pairs, optionally with a linear drift
// coordinate; rescaled to unit speed. Constant curvatures, smoothly turning.
class TrigHelix final : public CurveOracle {
  public:
    TrigHelix(std::string name, int dim, double r1, double r2, double f1, double f2, double drift,
              double coverage)
        : name_(std::move(name)), d_(dim), r1_(r1), r2_(r2), drift_(drift) {
        if (!(r1 > 0) || !(r2 > 0) || !(f1 > 0) || !(f2 > 0) || f1 == f2)
            throw BadParams("generalized helix needs positive radii and distinct frequencies");
        if (d_ == 5 && drift == 0.0) throw BadParams("generalized helix in R^5 needs a drift");
        const double speed2 = r1 * f1 * r1 * f1 + r2 * f2 * r2 * f2 + drift * drift;
        lambda_ = 1.0 / std::sqrt(speed2);
        w1_ = f1 * lambda_;
        w2_ = f2 * lambda_;
        smax_ = coverage * 2.0 * pi / (lambda_ * std::min(f1, f2));
    }
    std::string name() const override { return name_; }
    int dim() const override { return d_; }
    double domain_start() const override { return 0.0; }
    double domain_end() const override { return smax_; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 10; }
    Vec eval(double s) const override {
        check_domain(s);
        Vec v = Vec::Zero(d_);
        v[0] = r1_ * std::cos(w1_ * s);
        v[1] = r1_ * std::sin(w1_ * s);
        v[2] = r2_ * std::cos(w2_ * s);
        v[3] = r2_ * std::sin(w2_ * s);
        if (d_ == 5) v[4] = drift_ * lambda_ * s;
        return v;
    }
    Vec deriv(double s, int k) const override {
        check_domain(s);
        Vec v = Vec::Zero(d_);
        const double p1 = w1_ * s + k * pi / 2.0;
        const double p2 = w2_ * s + k * pi / 2.0;
        const double a1 = r1_ * std::pow(w1_, k);
        const double a2 = r2_ * std::pow(w2_, k);
        v[0] = a1 * std::cos(p1);
        v[1] = a1 * std::sin(p1);
        v[2] = a2 * std::cos(p2);
        v[3] = a2 * std::sin(p2);
        if (d_ == 5 && k == 1) v[4] = drift_ * lambda_;
        return v;
    }

  private:
    std::string name_;
    int d_;
    double r1_, r2_, drift_, lambda_, w1_, w2_, smax_;
};

// Example curve with an inflection at s=0 where the frame flips sign but the
// projective normal stays continuous. Unit-speed by construction; positions
// are tabulated from the closed-form tangent.
class Eflex final : public CurveOracle {
  public:
    explicit Eflex(double half_width) : w_(half_width) {
        if (!(half_width > 0) || half_width >= 1.0) throw BadParams("eflex needs 0 < half_width < 1");
        build_table();
    }
    std::string name() const override { return "eflex"; }
    int dim() const override { return 3; }
    double domain_start() const override { return -w_; }
    double domain_end() const override { return w_; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 3; }
    std::vector<double> singular_params() const override { return {0.0}; }

    Vec eval(double s) const override {
        check_domain(s);
        // Hermite interpolation with exact endpoint tangents.
        const int cells = static_cast<int>(table_.size()) - 1;
        const double x = (s + w_) / (2.0 * w_) * cells;
        const int i = std::clamp(static_cast<int>(x), 0, cells - 1);
        const double h = 2.0 * w_ / cells;
        const double s0 = -w_ + i * h;
        const double t = (s - s0) / h;
        const Vec& p0 = table_[i];
        const Vec& p1 = table_[i + 1];
        const Vec m0 = h * deriv_raw(s0, 1);
        const Vec m1 = h * deriv_raw(s0 + h, 1);
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
               (t3 - t2) * m1;
    }

    Vec deriv(double s, int k) const override {
        check_domain(s);
        return deriv_raw(s, k);
    }

  private:
    Vec deriv_raw(double s, int k) const {
        const double s2 = s * s, s4 = s2 * s2;
        const double root = std::sqrt(1.0 - s4);
        const double inv = 1.0 / std::numbers::sqrt2;
        Vec v(3);
        switch (k) {
            case 1:
                v << inv, inv * s2, inv * root;
                return v;
            case 2:
                v << 0.0, 2.0 * inv * s, -2.0 * inv * s * s2 / root;
                return v;
            case 3:
                v << 0.0, 2.0 * inv, std::numbers::sqrt2 * s2 * (s4 - 3.0) / (root * root * root);
                return v;
            default:
                throw Error("eflex derivatives available up to order 3");
        }
    }

    void build_table() {
        const int cells = 4096;
        table_.resize(cells + 1, Vec::Zero(3));
        const double h = 2.0 * w_ / cells;
        Vec acc = Vec::Zero(3);
        // c(-w) fixed so that c(0) = 0 as in the reference construction.
        std::vector<Vec> increments(cells, Vec::Zero(3));
        for (int i = 0; i < cells; ++i) {
            const double a = -w_ + i * h;
            for (int comp = 0; comp < 3; ++comp) {
                increments[i][comp] =
                    integrate([this, comp](double u) { return deriv_raw(u, 1)[comp]; }, a, a + h,
                              {1e-14, 1e-16, 24, {}});
            }
        }
        table_[0] = Vec::Zero(3);
        for (int i = 0; i < cells; ++i) table_[i + 1] = table_[i] + increments[i];
        // shift so that c(0) = 0
        const Vec at0 = eval_nocheck(0.0);
        for (Vec& p : table_) p -= at0;
    }

    Vec eval_nocheck(double s) const {
        const int cells = static_cast<int>(table_.size()) - 1;
        const double x = (s + w_) / (2.0 * w_) * cells;
        const int i = std::clamp(static_cast<int>(x), 0, cells - 1);
        const double h = 2.0 * w_ / cells;
        const double s0 = -w_ + i * h;
        const double t = (s - s0) / h;
        const Vec m0 = h * deriv_raw(s0, 1);
        const Vec m1 = h * deriv_raw(s0 + h, 1);
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * table_[i] + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * table_[i + 1] + (t3 - t2) * m1;
    }

    double w_;
    std::vector<Vec> table_;
};

// Two flat pieces glued at t=0 with all derivatives vanishing there; the
// normal and binormal jump by pi/2 across the junction. Numerically
// reparameterized to arc length with chain-rule derivatives up to order 4.
class Eflat final : public CurveOracle {
  public:
    Eflat() { build_tables(); }

    std::string name() const override { return "eflat"; }
    int dim() const override { return 3; }
    double domain_start() const override { return s_lo_; }
    double domain_end() const override { return s_hi_; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 4; }
    std::vector<double> singular_params() const override {
        const double ti = std::sqrt(2.0 / 3.0);
        return {sigma(-ti), 0.0, sigma(ti)};
    }

    Vec eval(double s) const override {
        check_domain(s);
        return gamma(t_of_s(s));
    }

    Vec deriv(double s, int k) const override {
        check_domain(s);
        if (k < 1 || k > 4) throw Error("eflat derivatives available up to order 4");
        const double t = t_of_s(s);
        const double sp = sigma_d1(t);
        const double spp = sigma_d2(t);
        const double sppp = sigma_d3(t);
        const double spppp = sigma_d4(t);
        const double t1 = 1.0 / sp;
        const double t2 = -spp / std::pow(sp, 3);
        const double t3 = (3.0 * spp * spp - sp * sppp) / std::pow(sp, 5);
        const double t4 =
            (-15.0 * std::pow(spp, 3) + 10.0 * sp * spp * sppp - sp * sp * spppp) / std::pow(sp, 7);
        const Vec g1 = gamma_d(t, 1), g2 = gamma_d(t, 2), g3 = gamma_d(t, 3), g4 = gamma_d(t, 4);
        switch (k) {
            case 1:
                return g1 * t1;
            case 2:
                return g2 * (t1 * t1) + g1 * t2;
            case 3:
                return g3 * (t1 * t1 * t1) + 3.0 * g2 * t1 * t2 + g1 * t3;
            default:
                return g4 * std::pow(t1, 4) + 6.0 * g3 * t1 * t1 * t2 +
                       g2 * (3.0 * t2 * t2 + 4.0 * t1 * t3) + g1 * t4;
        }
    }

  private:
    static double f(double t) {
        if (t == 0.0) return 0.0;
        return std::exp(-1.0 / (t * t));
    }
    static double fp(double t, int k) {
        // k-th derivative of exp(-1/t^2); exact rational prefactors.
        if (t == 0.0) return 0.0;
        const double v = f(t);
        if (v == 0.0) return 0.0;
        const double i1 = 1.0 / t;
        const double i2 = i1 * i1;
        switch (k) {
            case 0:
                return v;
            case 1:
                return v * 2.0 * i2 * i1;
            case 2:
                return v * (4.0 * i2 * i2 * i2 - 6.0 * i2 * i2);
            case 3:
                return v * (8.0 * std::pow(i1, 9) - 36.0 * std::pow(i1, 7) + 24.0 * std::pow(i1, 5));
            default:
                return v * (16.0 * std::pow(i1, 12) - 144.0 * std::pow(i1, 10) +
                            300.0 * std::pow(i1, 8) - 120.0 * std::pow(i1, 6));
        }
    }

    static Vec gamma(double t) {
        Vec v(3);
        if (t <= 0.0)
            v << t, f(t), 0.0;
        else
            v << t, 0.0, f(t);
        return v;
    }
    static Vec gamma_d(double t, int k) {
        Vec v(3);
        const double fk = fp(t, k);
        if (t <= 0.0)
            v << (k == 1 ? 1.0 : 0.0), fk, 0.0;
        else
            v << (k == 1 ? 1.0 : 0.0), 0.0, fk;
        return v;
    }

    static double sigma_d1(double t) {
        const double g = fp(t, 1);
        return std::sqrt(1.0 + g * g);
    }
    static double sigma_d2(double t) {
        return fp(t, 1) * fp(t, 2) / sigma_d1(t);
    }
    static double sigma_d3(double t) {
        const double sp = sigma_d1(t);
        const double a = fp(t, 2) * fp(t, 2) + fp(t, 1) * fp(t, 3);
        const double b = fp(t, 1) * fp(t, 2);
        return a / sp - b * b / std::pow(sp, 3);
    }
    static double sigma_d4(double t) {
        const double sp = sigma_d1(t);
        const double b = fp(t, 1) * fp(t, 2);
        const double a = fp(t, 2) * fp(t, 2) + fp(t, 1) * fp(t, 3);
        const double c = 3.0 * fp(t, 2) * fp(t, 3) + fp(t, 1) * fp(t, 4);
        return c / sp - 3.0 * b * a / std::pow(sp, 3) + 3.0 * std::pow(b, 3) / std::pow(sp, 5);
    }

    // Arc length from t=0, via the cumulative table plus a short local
    // integral inside the containing cell.
    double sigma(double t) const {
        const auto it = std::upper_bound(t_nodes_.begin(), t_nodes_.end(), t);
        int i = static_cast<int>(it - t_nodes_.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(t_nodes_.size()) - 2);
        return s_nodes_[i] +
               integrate([](double u) { return sigma_d1(u); }, t_nodes_[i], t, {1e-14, 1e-16, 12, {}});
    }

    void build_tables() {
        const int cells = 4096;
        t_nodes_.resize(cells + 1);
        s_nodes_.resize(cells + 1);
        double acc = 0.0;
        t_nodes_[0] = -1.0;
        s_nodes_[0] = 0.0;
        for (int i = 1; i <= cells; ++i) {
            const double a = -1.0 + 2.0 * (i - 1) / cells;
            const double b = -1.0 + 2.0 * i / cells;
            acc += integrate([](double u) { return sigma_d1(u); }, a, b, {1e-14, 1e-16, 24, {}});
            t_nodes_[i] = b;
            s_nodes_[i] = acc;
        }
        // shift so s(t=0) = 0; t=0 is the middle node
        const double mid = s_nodes_[cells / 2];
        for (double& s : s_nodes_) s -= mid;
        s_lo_ = s_nodes_.front();
        s_hi_ = s_nodes_.back();
    }

    double t_of_s(double s) const {
        const auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), s);
        int i = static_cast<int>(it - s_nodes_.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(s_nodes_.size()) - 2);
        double t = t_nodes_[i] + (t_nodes_[i + 1] - t_nodes_[i]) * (s - s_nodes_[i]) /
                                     (s_nodes_[i + 1] - s_nodes_[i]);
        // Newton refinement on sigma(t) - s
        for (int it2 = 0; it2 < 40; ++it2) {
            const double g = sigma(t) - s;
            const double gp = sigma_d1(t);
            const double step = g / gp;
            t -= step;
            if (std::abs(step) < 1e-14) break;
        }
        return std::clamp(t, -1.0, 1.0);
    }

    std::vector<double> t_nodes_, s_nodes_;
    double s_lo_ = 0.0, s_hi_ = 0.0;
};

// Planar spiral with finite length and infinite total curvature; natural
// parameter t in [0,1], not arc length.
class SpiralInfiniteTc final : public CurveOracle {
  public:
    std::string name() const override { return "spiral_infinite_tc"; }
    int dim() const override { return 3; }
    double domain_start() const override { return 0.0; }
    double domain_end() const override { return 1.0; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return false; }
    int max_order() const override { return 2; }

    Vec eval(double t) const override {
        check_domain(t);
        Vec v = Vec::Zero(3);
        if (t <= 0.0) return v;
        const double w = 2.0 * pi / t;
        v << t * t * std::sin(w), t * t * std::cos(w), 0.0;
        return v;
    }
    Vec deriv(double t, int k) const override {
        check_domain(t);
        if (t <= 1e-9) throw OutOfDomain(t);
        const double w = 2.0 * pi / t;
        Vec v = Vec::Zero(3);
        if (k == 1) {
            v << 2.0 * t * std::sin(w) - 2.0 * pi * std::cos(w),
                2.0 * t * std::cos(w) + 2.0 * pi * std::sin(w), 0.0;
            return v;
        }
        if (k == 2) {
            // d/dt of the first derivative, with dw/dt = -2 pi / t^2
            const double dw = -2.0 * pi / (t * t);
            v << 2.0 * std::sin(w) + 2.0 * t * std::cos(w) * dw + 2.0 * pi * std::sin(w) * dw,
                2.0 * std::cos(w) - 2.0 * t * std::sin(w) * dw + 2.0 * pi * std::cos(w) * dw, 0.0;
            return v;
        }
        throw Error("spiral derivatives available up to order 2");
    }
};

}  // namespace

CurvePtr builtin_curve(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "line") {
        return std::make_shared<Line>(static_cast<int>(get(params, "dim", 3)),
                                      get(params, "length", 2.0));
    }
    if (name == "circle") {
        return std::make_shared<Circle>(get(params, "r", 1.0));
    }
    if (name == "helix_r3") {
        return std::make_shared<HelixR3>(get(params, "a", 1.0), get(params, "b", 0.5),
                                         get(params, "turns", 1.0));
    }
    if (name == "generalized_helix_r4") {
        return std::make_shared<TrigHelix>("generalized_helix_r4", 4, get(params, "r1", 1.0),
                                           get(params, "r2", 0.5), get(params, "f1", 1.0),
                                           get(params, "f2", 2.0), 0.0,
                                           get(params, "coverage", 0.75));
    }
    if (name == "generalized_helix_r5") {
        return std::make_shared<TrigHelix>("generalized_helix_r5", 5, get(params, "r1", 1.0),
                                           get(params, "r2", 0.5), get(params, "f1", 1.0),
                                           get(params, "f2", 2.0), get(params, "drift", 0.4),
                                           get(params, "coverage", 0.75));
    }
    if (name == "eflex") {
        return std::make_shared<Eflex>(get(params, "half_width", 0.9));
    }
    if (name == "eflat") {
        return std::make_shared<Eflat>();
    }
    if (name == "spiral_infinite_tc") {
        return std::make_shared<SpiralInfiniteTc>();
    }
    throw UnknownCurve(name);
}

}  // namespace jnormals
