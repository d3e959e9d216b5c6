// Command-line surface: discrete normals, relaxation runs, projection
// averages, stencil order fits, curvature measures, and the monotonicity
// counterexample. Inputs are polyline CSV files or curve spec JSON; outputs
// are JSON and/or CSV files with the full run configuration embedded.
//
// Exit codes: 0 success, 1 usage or i/o failure, 2 numerical failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "jnormals/io.hpp"

using namespace jnormals;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string input;       // polyline csv
    std::string curve_json;  // curve spec json
    int j = 0;               // 0 = all applicable
    std::vector<int> levels;
    int samples = 10000;
    std::uint64_t seed = 20240915;
    double tol = kRankTol;
    std::string out = "jnormals_out";
    std::string format = "json";
};

json config_json(const CommonOpts& o, const std::string& command) {
    return {{"command", command}, {"input", o.input},   {"curve_json", o.curve_json},
            {"j", o.j},           {"levels", o.levels}, {"samples", o.samples},
            {"seed", o.seed},     {"tol", o.tol},       {"out", o.out},
            {"format", o.format}};
}

void add_common(CLI::App* cmd, CommonOpts* o, bool needs_input) {
    if (needs_input) {
        cmd->add_option("--input", o->input, "polyline CSV path");
        cmd->add_option("--curve-json", o->curve_json, "curve spec JSON path");
    }
    cmd->add_option("--j", o->j, "normal order (0 = all applicable)");
    cmd->add_option("--levels", o->levels, "inscription level counts");
    cmd->add_option("--samples", o->samples, "Monte-Carlo sample count");
    cmd->add_option("--seed", o->seed, "random seed");
    cmd->add_option("--tol", o->tol, "rank tolerance");
    cmd->add_option("--out", o->out, "output path prefix");
    cmd->add_option("--format", o->format, "json|csv|both");
}

void emit(const CommonOpts& o, const std::string& command, const json& result,
          const std::string& csv) {
    json doc = {{"config", config_json(o, command)}, {"result", result}};
    if (o.format == "json" || o.format == "both") {
        write_text_file(o.out + ".json", doc.dump(2) + "\n");
    }
    if (o.format == "csv" || o.format == "both") {
        write_text_file(o.out + ".csv", csv);
    }
}

Polygonal load_polyline(const CommonOpts& o) {
    if (o.input.empty()) throw IoError("this command needs --input <polyline.csv>");
    return read_polyline_csv(o.input);
}

CurvePtr load_curve(const CommonOpts& o) {
    if (o.curve_json.empty()) throw IoError("this command needs --curve-json <spec.json>");
    return curve_from_json_file(o.curve_json);
}

std::vector<int> schedule_or_default(const CommonOpts& o) {
    return o.levels.empty() ? default_schedule() : o.levels;
}

int cmd_normals(const CommonOpts& o) {
    const Polygonal p = load_polyline(o);
    const int N = p.dim() - 1;
    json result;
    std::ostringstream csv;
    csv << "j,length,geodesic_rotation,ambient_tc\n";
    const int j_lo = o.j > 0 ? o.j : 1;
    const int j_hi = o.j > 0 ? o.j : N;
    json normals = json::array();
    for (int j = j_lo; j <= j_hi; ++j) {
        const DiscreteNormal dn = discrete_normal(p, j, o.tol);
        normals.push_back(to_json(dn));
        csv << j << "," << format_double(dn.stats.length) << ","
            << format_double(dn.stats.geodesic_rotation) << ","
            << format_double(dn.stats.ambient_tc) << "\n";
    }
    result["normals"] = normals;
    result["inequalities"] = to_json(check_inequalities(p, o.tol));
    if (p.dim() == 3) result["tat"] = tat(p);
    emit(o, "normals", result, csv.str());
    return 0;
}

int cmd_converge(const CommonOpts& o) {
    const CurvePtr c = load_curve(o);
    const int j = o.j > 0 ? o.j : 1;
    const RelaxationRun run = estimate_Fj(c, j, schedule_or_default(o));
    json result = {{"run", to_json(run)}};
    try {
        const double smooth = smooth_nj_length(*c, j);
        result["smooth_length"] = smooth;
        result["final_error"] = std::abs(run.final_value() - smooth);
    } catch (const NotSmoothlyTurning&) {
        // no smooth reference for this order; report the run alone
    }
    std::ostringstream csv;
    csv << "n,modulus,mesh,length_j,tc_ambient_j\n";
    for (const RelaxLevel& lvl : run.levels) {
        csv << lvl.n << "," << format_double(lvl.modulus) << "," << format_double(lvl.mesh) << ","
            << format_double(lvl.length_j) << "," << format_double(lvl.tc_ambient_j) << "\n";
    }
    emit(o, "converge", result, csv.str());
    if (!run.cauchy) {
        std::cerr << "convergence levels are not Cauchy\n";
        return 2;
    }
    return 0;
}

int cmd_intgeo(const CommonOpts& o) {
    json result;
    std::ostringstream csv;
    csv << "check,j,direct,mc_mean,mc_stderr,z\n";
    double worst_z = 0.0;
    const auto add_row = [&](const std::string& name, int j, const IntGeoReport& rep) {
        result[name + "_j" + std::to_string(j)] = to_json(rep);
        csv << name << "," << j << "," << format_double(rep.direct) << ","
            << format_double(rep.mc_mean) << "," << format_double(rep.mc_stderr) << ","
            << format_double(rep.z_score) << "\n";
        worst_z = std::max(worst_z, std::abs(rep.z_score));
    };
    if (!o.input.empty()) {
        const Polygonal p = load_polyline(o);
        const int N = p.dim() - 1;
        for (int j = 1; j <= N - 1; ++j) {
            if (o.j > 0 && j != o.j) continue;
            add_row("igp", j, verify_igp(p, j, o.samples, o.seed + j));
        }
        for (int j = 0; j <= N - 1; ++j) {
            if (o.j > 0 && j != o.j) continue;
            add_row("igtc", j, verify_igtc(p, j, o.samples, o.seed + 100 + j));
        }
        // projection formulas for the tantrix as a spherical polygon
        PolygonOnSphere tantrix{p.segment_directions(), p.closed(), false};
        const TarReport tar = verify_tar(tantrix, 1, o.samples, o.seed + 200);
        result["tar_tantrix"] = to_json(tar);
        add_row("tar_length", 1, tar.length);
        add_row("tar_rotation", 1, tar.rotation);
    } else {
        const CurvePtr c = load_curve(o);
        const int j = o.j > 0 ? o.j : 1;
        const IgcReport rep = verify_igc_curve(c, j, schedule_or_default(o).back(), o.samples, o.seed);
        result["igc"] = to_json(rep.report);
        result["igc_lhs"] = rep.lhs;
        add_row("igc", j, rep.report);
    }
    result["crofton_dim3_k2"] = crofton_length_constant(3, 2, o.samples, o.seed + 300);
    emit(o, "intgeo", result, csv.str());
    return worst_z > 3.0 ? 2 : 0;
}

int cmd_taylor(const CommonOpts& o, double s_point) {
    const CurvePtr c = load_curve(o);
    const double s = s_point != 0.0 ? s_point : c->period() / 2;
    const std::vector<double> steps = default_steps(*c);
    std::vector<OrderFitReport> reports;
    if (c->dim() == 4) {
        reports = verify_pgm4(*c, s, steps);
    } else {
        reports = verify_pgm3(*c, s, steps);
    }
    const auto pgmn = verify_pgmn(*c, s, c->dim() - 1, steps);
    reports.insert(reports.end(), pgmn.begin(), pgmn.end());
    json rows = json::array();
    bool all_passed = true;
    std::ostringstream csv;
    csv << "quantity,h,residual\n";
    for (const OrderFitReport& rep : reports) {
        rows.push_back(to_json(rep));
        all_passed = all_passed && rep.passed;
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
            csv << '"' << rep.quantity << '"' << "," << format_double(rep.steps[i]) << ","
                << format_double(rep.residuals[i]) << "\n";
        }
    }
    emit(o, "taylor", {{"reports", rows}, {"s", s}}, csv.str());
    return all_passed ? 0 : 2;
}

int cmd_measure(const CommonOpts& o) {
    json result;
    std::ostringstream csv;
    if (!o.input.empty()) {
        const Polygonal p = load_polyline(o);
        const int j = o.j > 0 ? o.j : p.dim() - 1;
        const DiscreteNormal dn = discrete_normal(p, j, o.tol);
        const MeasureReport rep = polygonal_jump_measure(dn, p.closed());
        result["jump_measure"] = to_json(rep);
        csv << "t,mass\n";
        for (const MeasureAtom& a : rep.atoms) {
            csv << format_double(a.t) << "," << format_double(a.mass) << "\n";
        }
    } else {
        const CurvePtr c = load_curve(o);
        const int j = o.j > 0 ? o.j : c->dim() - 1;
        const MeasureReport rep = smooth_density(c, j);
        result["smooth_density"] = to_json(rep);
        const auto bins = convergence_of_measures(c, j, schedule_or_default(o));
        json blist = json::array();
        for (const MeasureBins& mb : bins) blist.push_back(to_json(mb));
        result["binned_convergence"] = blist;
        csv << "t,density_norm\n";
        for (const DensitySample& d : rep.ac_density_samples) {
            csv << format_double(d.t) << "," << format_double(d.density.norm()) << "\n";
        }
    }
    emit(o, "measure", result, csv.str());
    return 0;
}

int cmd_counterexample(const CommonOpts& o) {
    const EmonCounterexample emon = counterexample_emon();
    emit(o, "counterexample", to_json(emon), polyline_to_csv_text(emon.p));
    write_text_file(o.out + "_p.csv", polyline_to_csv_text(emon.p));
    write_text_file(o.out + "_p_prime.csv", polyline_to_csv_text(emon.p_prime));
    std::cout << "TAT(P)  = " << format_double(emon.tat_p) << "\n"
              << "TAT(P') = " << format_double(emon.tat_p_prime) << "\n";
    return emon.tat_p_prime > emon.tat_p ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete j-th normals of polygonal curves and their relaxed variations"};
    app.require_subcommand(1);

    CommonOpts opts;
    double s_point = 0.0;

    CLI::App* normals = app.add_subcommand("normals", "discrete normals and inequality report");
    add_common(normals, &opts, true);
    CLI::App* converge = app.add_subcommand("converge", "relaxation run against smooth lengths");
    add_common(converge, &opts, true);
    CLI::App* intgeo = app.add_subcommand("intgeo", "projection-average checks");
    add_common(intgeo, &opts, true);
    CLI::App* taylor = app.add_subcommand("taylor", "stencil expansion order fits");
    add_common(taylor, &opts, true);
    taylor->add_option("--s", s_point, "expansion point (default: domain midpoint)");
    CLI::App* measure = app.add_subcommand("measure", "curvature measures");
    add_common(measure, &opts, true);
    CLI::App* counter = app.add_subcommand("counterexample", "monotonicity failure of TAT");
    add_common(counter, &opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (normals->parsed()) return cmd_normals(opts);
        if (converge->parsed()) return cmd_converge(opts);
        if (intgeo->parsed()) return cmd_intgeo(opts);
        if (taylor->parsed()) return cmd_taylor(opts, s_point);
        if (measure->parsed()) return cmd_measure(opts);
        if (counter->parsed()) return cmd_counterexample(opts);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
