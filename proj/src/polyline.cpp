#include "jnormals/polyline.hpp"

#include <algorithm>
#include <cmath>

namespace jnormals {

Polygonal::Polygonal(std::vector<Vec> vertices, bool closed)
    : verts_(std::move(vertices)), closed_(closed) {
    const int n = static_cast<int>(verts_.size());
    if (n < 2 || (closed_ && n < 3)) throw Error("polygonal needs at least 2 vertices (3 if closed)");
    const Eigen::Index d = verts_.front().size();
    if (d < 1) throw DimensionMismatch("polygonal vertex dimension");
    for (const Vec& v : verts_) {
        if (v.size() != d) throw DimensionMismatch("polygonal vertices");
    }
    for (int i = 0; i < segment_count(); ++i) {
        if (segment_length(i) <= kSegTol) throw DegenerateSegment(i);
    }
}

Vec Polygonal::segment(int i) const {
    const int n = vertex_count();
    return verts_[(i + 1) % n] - verts_[i];
}

std::vector<UnitVec> Polygonal::segment_directions() const {
    std::vector<UnitVec> out;
    out.reserve(segment_count());
    for (int i = 0; i < segment_count(); ++i) {
        const Vec s = segment(i);
        const double l = s.norm();
        if (l <= kSegTol) throw DegenerateSegment(i);
        out.push_back(UnitVec(s / l));
    }
    return out;
}

double Polygonal::length() const {
    double L = 0.0;
    for (int i = 0; i < segment_count(); ++i) L += segment_length(i);
    return L;
}

double Polygonal::mesh() const {
    double m = 0.0;
    for (int i = 0; i < segment_count(); ++i) m = std::max(m, segment_length(i));
    return m;
}

double Polygonal::total_curvature() const {
    const std::vector<UnitVec> dirs = segment_directions();
    const int m = static_cast<int>(dirs.size());
    if (m < 2) return 0.0;
    double tc = 0.0;
    const int junctions = closed_ ? m : m - 1;
    for (int i = 0; i < junctions; ++i) {
        tc += sphere_distance(dirs[i], dirs[(i + 1) % m]);
    }
    return tc;
}

InscribedPolygonal::InscribedPolygonal(CurvePtr curve, std::vector<double> params)
    : curve_(std::move(curve)),
      params_(std::move(params)),
      poly_([&] {
          std::vector<Vec> verts;
          verts.reserve(params_.size());
          for (double s : params_) verts.push_back(curve_->eval(s));
          return Polygonal(std::move(verts), curve_->closed());
      }()) {
    for (std::size_t i = 1; i < params_.size(); ++i) {
        if (params_[i] <= params_[i - 1]) throw Error("inscription parameters must increase");
    }
    if (curve_->closed() && !params_.empty() &&
        params_.back() - params_.front() >= curve_->period()) {
        throw Error("closed inscription parameters must fit one period");
    }
}

double modulus(const InscribedPolygonal& p, int samples_per_arc) {
    if (samples_per_arc < 2) throw Error("modulus needs at least 2 samples per arc");
    const CurveOracle& c = p.curve();
    const std::vector<double>& s = p.params();
    const int n = static_cast<int>(s.size());
    const int arcs = c.closed() ? n : n - 1;
    double worst = 0.0;
    std::vector<Vec> pts(samples_per_arc, Vec());
    for (int i = 0; i < arcs; ++i) {
        const double s0 = s[i];
        const double s1 = (i + 1 < n) ? s[i + 1] : s[0] + c.period();
        for (int k = 0; k < samples_per_arc; ++k) {
            const double t = s0 + (s1 - s0) * k / (samples_per_arc - 1);
            pts[k] = c.eval(t);
        }
        for (int a = 0; a < samples_per_arc; ++a) {
            for (int b = a + 1; b < samples_per_arc; ++b) {
                worst = std::max(worst, (pts[a] - pts[b]).norm());
            }
        }
    }
    return worst;
}

InscribedPolygonal refine(const InscribedPolygonal& p, int factor) {
    if (factor < 2) throw Error("refinement factor must be >= 2");
    const CurveOracle& c = p.curve();
    const std::vector<double>& s = p.params();
    const int n = static_cast<int>(s.size());
    const int arcs = c.closed() ? n : n - 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(arcs) * factor + 1);
    for (int i = 0; i < arcs; ++i) {
        const double s0 = s[i];
        const double s1 = (i + 1 < n) ? s[i + 1] : s[0] + c.period();
        for (int k = 0; k < factor; ++k) out.push_back(s0 + (s1 - s0) * k / factor);
    }
    if (!c.closed()) out.push_back(s.back());
    return InscribedPolygonal(p.curve_ptr(), std::move(out));
}

InscribedPolygonal inscribe_uniform(CurvePtr curve, int n) {
    const bool closed = curve->closed();
    if (n < 2 || (closed && n < 3)) throw Error("inscription needs n >= 2 (3 if closed)");
    const double a = curve->domain_start();
    const double len = curve->period();
    std::vector<double> params;
    const int count = closed ? n : n + 1;
    params.reserve(count);
    for (int i = 0; i < count; ++i) params.push_back(a + len * i / n);
    return InscribedPolygonal(std::move(curve), std::move(params));
}

namespace {

class PolygonalCurve final : public CurveOracle {
  public:
    explicit PolygonalCurve(Polygonal p) : poly_(std::move(p)) {
        cum_.push_back(0.0);
        for (int i = 0; i < poly_.segment_count(); ++i) {
            cum_.push_back(cum_.back() + poly_.segment_length(i));
        }
    }

    std::string name() const override { return "polygonal"; }
    int dim() const override { return poly_.dim(); }
    double domain_start() const override { return 0.0; }
    double domain_end() const override { return cum_.back(); }
    bool closed() const override { return poly_.closed(); }
    bool arc_length_parameterized() const override { return true; }
    int max_order() const override { return 1; }

    Vec eval(double s) const override {
        s = closed() ? wrap(s) : s;
        check_domain(s);
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        int i = static_cast<int>(it - cum_.begin()) - 1;
        i = std::clamp(i, 0, poly_.segment_count() - 1);
        const double t = (s - cum_[i]) / (cum_[i + 1] - cum_[i]);
        const int n = poly_.vertex_count();
        return (1.0 - t) * poly_.vertex(i) + t * poly_.vertex((i + 1) % n);
    }

    Vec deriv(double s, int k) const override {
        if (k != 1) throw Error("polygonal oracle has first derivatives only");
        s = closed() ? wrap(s) : s;
        check_domain(s);
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        int i = static_cast<int>(it - cum_.begin()) - 1;
        i = std::clamp(i, 0, poly_.segment_count() - 1);
        return poly_.segment(i) / poly_.segment_length(i);
    }

  private:
    Polygonal poly_;
    std::vector<double> cum_;
};

}  // namespace

CurvePtr polygonal_as_curve(const Polygonal& p) { return std::make_shared<PolygonalCurve>(p); }

double CurveOracle::wrap(double s) const {
    const double a = domain_start();
    const double len = period();
    double t = std::fmod(s - a, len);
    if (t < 0) t += len;
    return a + t;
}

void CurveOracle::check_domain(double s) const {
    const double slack = 1e-9 * (1.0 + std::abs(period()));
    if (s < domain_start() - slack || s > domain_end() + slack) throw OutOfDomain(s);
}

}  // namespace jnormals
