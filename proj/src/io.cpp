#include "jnormals/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jnormals {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
}

Polygonal polyline_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int dim = -1;
    bool closed = false;
    bool have_header = false;
    std::vector<Vec> verts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string tok;
            while (hs >> tok) {
                if (tok.rfind("dim=", 0) == 0) dim = std::stoi(tok.substr(4));
                if (tok.rfind("closed=", 0) == 0) closed = tok.substr(7) == "1";
            }
            have_header = true;
            continue;
        }
        std::vector<double> coords;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                coords.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("bad coordinate '" + cell + "'");
            }
        }
        if (coords.empty()) continue;
        Vec v(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) v[i] = coords[i];
        verts.push_back(std::move(v));
    }
    if (!have_header) throw IoError("missing '# dim=<d> closed=<0|1>' header");
    if (verts.empty()) throw IoError("no vertices in polyline");
    if (dim > 0) {
        for (const Vec& v : verts) {
            if (v.size() != dim) throw IoError("vertex dimension differs from header");
        }
    }
    return Polygonal(std::move(verts), closed);
}

Polygonal read_polyline_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return polyline_from_csv_text(ss.str());
}

std::string polyline_to_csv_text(const Polygonal& p) {
    std::ostringstream out;
    out << "# dim=" << p.dim() << " closed=" << (p.closed() ? 1 : 0) << "\n";
    for (int i = 0; i < p.vertex_count(); ++i) {
        const Vec& v = p.vertex(i);
        for (Eigen::Index c = 0; c < v.size(); ++c) {
            if (c) out << ",";
            out << format_double(v[c]);
        }
        out << "\n";
    }
    return out.str();
}

void write_polyline_csv(const std::string& path, const Polygonal& p) {
    write_text_file(path, polyline_to_csv_text(p));
}

namespace {

// Restriction of a builtin to a sub-domain (always open).
class RestrictedCurve final : public CurveOracle {
  public:
    RestrictedCurve(CurvePtr base, double a, double b) : base_(std::move(base)), a_(a), b_(b) {
        if (!(a < b)) throw BadParams("domain must satisfy a < b");
        if (!base_->closed() &&
            (a < base_->domain_start() - 1e-12 || b > base_->domain_end() + 1e-12))
            throw BadParams("domain exceeds the curve's native domain");
    }
    std::string name() const override { return base_->name(); }
    int dim() const override { return base_->dim(); }
    double domain_start() const override { return a_; }
    double domain_end() const override { return b_; }
    bool closed() const override { return false; }
    bool arc_length_parameterized() const override { return base_->arc_length_parameterized(); }
    int max_order() const override { return base_->max_order(); }
    Vec eval(double s) const override {
        check_domain(s);
        return base_->eval(s);
    }
    Vec deriv(double s, int k) const override {
        check_domain(s);
        return base_->deriv(s, k);
    }
    std::vector<double> singular_params() const override {
        std::vector<double> out;
        for (double s : base_->singular_params()) {
            if (s > a_ && s < b_) out.push_back(s);
        }
        return out;
    }

  private:
    CurvePtr base_;
    double a_, b_;
};

}  // namespace

CurvePtr curve_from_json(const nlohmann::json& spec) {
    if (!spec.contains("curve")) throw IoError("curve spec needs a 'curve' name");
    const std::string name = spec.at("curve").get<std::string>();
    std::map<std::string, double> params;
    if (spec.contains("params")) {
        for (const auto& [key, value] : spec.at("params").items()) {
            params[key] = value.get<double>();
        }
    }
    CurvePtr c = builtin_curve(name, params);
    if (spec.contains("dim") && spec.at("dim").get<int>() != c->dim())
        throw IoError("curve spec dim does not match the builtin's dimension");
    if (spec.contains("domain")) {
        const auto dom = spec.at("domain");
        c = std::make_shared<RestrictedCurve>(c, dom.at(0).get<double>(), dom.at(1).get<double>());
    }
    return c;
}

CurvePtr curve_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json spec;
    in >> spec;
    return curve_from_json(spec);
}

nlohmann::json to_json(const GeodesicPolygonStats& s) {
    return {{"length", s.length},
            {"geodesic_rotation", s.geodesic_rotation},
            {"ambient_tc", s.ambient_tc}};
}

nlohmann::json to_json(const DiscreteNormal& dn) {
    nlohmann::json pts = nlohmann::json::array();
    for (const ProjPoint& p : dn.points) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index i = 0; i < p.vec().size(); ++i) row.push_back(p.vec()[i]);
        pts.push_back(row);
    }
    return {{"j", dn.j}, {"points", pts}, {"stats", to_json(dn.stats)}};
}

nlohmann::json to_json(const InequalityReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const InequalityRow& r : rep.rows) {
        rows.push_back({{"j", r.j},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"holds", r.holds},
                        {"skipped", r.skipped}});
    }
    return {{"rows", rows},
            {"tc", rep.tc},
            {"length_n1", rep.length_n1},
            {"pigp_holds", rep.pigp_holds},
            {"all_hold", rep.all_hold()}};
}

nlohmann::json to_json(const RelaxationRun& run) {
    nlohmann::json levels = nlohmann::json::array();
    for (const RelaxLevel& l : run.levels) {
        levels.push_back({{"n", l.n},
                          {"modulus", l.modulus},
                          {"mesh", l.mesh},
                          {"length_j", l.length_j},
                          {"tc_ambient_j", l.tc_ambient_j}});
    }
    nlohmann::json out = {{"j", run.j}, {"levels", levels}, {"cauchy", run.cauchy}};
    if (run.extrapolated) out["extrapolated"] = *run.extrapolated;
    return out;
}

nlohmann::json to_json(const F1TcReport& rep) {
    nlohmann::json levels = nlohmann::json::array();
    for (const F1TcLevel& l : rep.levels) {
        levels.push_back(
            {{"n", l.n}, {"length_n1", l.length_n1}, {"tc", l.tc}, {"holds", l.holds}});
    }
    return {{"levels", levels}, {"all_hold", rep.all_hold}};
}

nlohmann::json to_json(const IntGeoReport& rep) {
    return {{"direct", rep.direct},     {"mc_mean", rep.mc_mean},
            {"mc_stderr", rep.mc_stderr}, {"n_samples", rep.n_samples},
            {"rejected", rep.rejected},   {"z_score", rep.z_score}};
}

nlohmann::json to_json(const TarReport& rep) {
    return {{"length", to_json(rep.length)},
            {"rotation", to_json(rep.rotation)},
            {"tc", to_json(rep.tc)}};
}

nlohmann::json to_json(const OrderFitReport& rep) {
    return {{"quantity", rep.quantity},
            {"steps", rep.steps},
            {"residuals", rep.residuals},
            {"fitted_slope", rep.fitted_slope},
            {"threshold", rep.threshold},
            {"passed", rep.passed},
            {"monotone", rep.monotone}};
}

nlohmann::json to_json(const MeasureReport& rep) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const MeasureAtom& a : rep.atoms) {
        nlohmann::json jump = nlohmann::json::array();
        for (Eigen::Index i = 0; i < a.jump.size(); ++i) jump.push_back(a.jump[i]);
        atoms.push_back({{"t", a.t}, {"jump", jump}, {"mass", a.mass}});
    }
    nlohmann::json dens = nlohmann::json::array();
    for (const DensitySample& d : rep.ac_density_samples) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index i = 0; i < d.density.size(); ++i) row.push_back(d.density[i]);
        dens.push_back({{"t", d.t}, {"s", d.s}, {"density", row}});
    }
    return {{"atoms", atoms},
            {"total_variation", rep.total_variation},
            {"length", rep.length},
            {"ac_density_samples", dens}};
}

nlohmann::json to_json(const MeasureBins& bins) {
    return {{"n", bins.n},
            {"discrete_mass", bins.discrete_mass},
            {"smooth_mass", bins.smooth_mass},
            {"max_discrepancy", bins.max_discrepancy},
            {"total_mass", bins.total_mass}};
}

nlohmann::json to_json(const EmonCounterexample& emon) {
    return {{"tat_p", emon.tat_p},
            {"tat_p_prime", emon.tat_p_prime},
            {"alpha", emon.alpha},
            {"beta", emon.beta},
            {"eps", emon.eps},
            {"p_csv", polyline_to_csv_text(emon.p)},
            {"p_prime_csv", polyline_to_csv_text(emon.p_prime)}};
}

nlohmann::json to_json(const SmoothComparison& cmp) {
    return {{"max_pointwise", cmp.max_pointwise}, {"frechet_estimate", cmp.frechet_estimate}};
}

nlohmann::json to_json(const NonrectifiableReport& rep) {
    nlohmann::json levels = nlohmann::json::array();
    for (const NonrectifiableLevel& l : rep.levels) {
        levels.push_back({{"n", l.n}, {"length", l.length}, {"tc", l.tc}, {"tat", l.tat}});
    }
    return {{"levels", levels}, {"quadrature_length", rep.quadrature_length}};
}

}  // namespace jnormals
