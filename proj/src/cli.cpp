#include "schrospec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "schrospec/spectrum.hpp"
#include "schrospec/stokes.hpp"
#include "schrospec/threshold.hpp"

namespace schrospec::cli {

namespace {

using nlohmann::json;

// Bad user input that CLI11 cannot see (malformed pairs, inconsistent ranges, unreadable files).
struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double round15(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round15(x);
}

ComplexValue parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ArgumentError(std::string(what) + " must be RE,IM");
    try {
        std::size_t used_re = 0, used_im = 0;
        const std::string re = s.substr(0, comma), im = s.substr(comma + 1);
        const double a = std::stod(re, &used_re), b = std::stod(im, &used_im);
        if (used_re != re.size() || used_im != im.size())
            throw ArgumentError(std::string(what) + " must be RE,IM");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ArgumentError(std::string(what) + " must be RE,IM");
    }
}

struct Common {
    std::vector<std::string> args;
    bool degrees = false;
    std::string out_path;
    std::string format;

    double angle(double v) const { return degrees ? v * kPi / 180.0 : v; }

    std::string csv_header() const {
        std::string h = "# schrospec " + std::string(kVersion) + "\n# argv:";
        for (const auto& a : args) h += " " + a;
        return h + "\n";
    }

    json json_header(const std::string& command) const {
        return json{{"command", command}, {"version", kVersion}, {"argv", args}};
    }
};

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string row;
    for (const auto& c : cells) {
        if (!row.empty()) row += ',';
        row += c;
    }
    return row + "\n";
}

std::string f(double x) { return format_number(x); }

// ---------------------------------------------------------------- theta0, scan

int cmd_theta0(const Common& cm, double tol, std::ostream& body) {
    const auto r = solve_theta0(tol);
    if (cm.format == "csv") {
        body << cm.csv_header() << "quantity,value\n";
        body << csv_row({"theta0", f(r.theta0)}) << csv_row({"enclosure_lo", f(r.enclosure.lo)})
             << csv_row({"enclosure_hi", f(r.enclosure.hi)}) << csv_row({"F_lo", f(r.f_lo)})
             << csv_row({"F_hi", f(r.f_hi)}) << csv_row({"iterations", std::to_string(r.iterations)});
        return 0;
    }
    json j = cm.json_header("theta0");
    j["theta0"] = num(r.theta0);
    j["enclosure"] = {num(r.enclosure.lo), num(r.enclosure.hi)};
    j["F_lo"] = num(r.f_lo);
    j["F_hi"] = num(r.f_hi);
    j["iterations"] = r.iterations;
    j["samples_increasing"] = r.samples_increasing;
    json samples = json::array();
    for (const auto& [t, v] : r.f_samples) samples.push_back({num(t), num(v)});
    j["F_samples"] = samples;
    bool all = true;
    json checks = json::array();
    for (const auto& c : r.paper_checks) {
        checks.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"value", num(c.value)},
                          {"reference", num(c.reference)}});
        all = all && c.passed;
    }
    j["checks"] = checks;
    j["all_checks_passed"] = all;
    body << j.dump(2) << "\n";
    return 0;
}

int cmd_scan(const Common& cm, double from, double to, int steps, std::ostream& body) {
    from = cm.angle(from);
    to = cm.angle(to);
    if (!(to > from) || steps < 1)
        throw ArgumentError("scan needs --from < --to and --steps >= 1");
    std::vector<std::pair<double, double>> rows;
    for (int i = 0; i <= steps; ++i) {
        const double theta = from + (to - from) * i / steps;
        rows.emplace_back(theta, F_theta(theta));
    }
    if (cm.format == "json") {
        json j = cm.json_header("scan");
        json th = json::array(), fv = json::array();
        for (const auto& [t, v] : rows) {
            th.push_back(num(t));
            fv.push_back(num(v));
        }
        j["theta"] = th;
        j["F"] = fv;
        body << j.dump(2) << "\n";
        return 0;
    }
    body << cm.csv_header() << "theta,F\n";
    for (const auto& [t, v] : rows) body << csv_row({f(t), f(v)});
    return 0;
}

// ---------------------------------------------------------------- stokes

// Points of a curve kept for output: at least `spacing` apart, stopping after the first point
// outside the box, which is enough for the polyline to leave the viewport.
std::vector<ComplexValue> thin(const std::vector<ComplexValue>& pts, double spacing, double box) {
    std::vector<ComplexValue> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool last = i + 1 == pts.size();
        if (kept.empty() || last || std::abs(pts[i] - kept.back()) >= spacing) kept.push_back(pts[i]);
        if (std::abs(pts[i].real() - 0.5) > box || std::abs(pts[i].imag()) > box) break;
    }
    return kept;
}

std::string svg_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", x);
    return buf;
}

std::string render_svg(const StokesGraph& g, const std::optional<double>& ray_angle,
                       const std::optional<RayCrossingReport>& crossings) {
    std::ostringstream s;
    // viewBox is [-1.5, 2.5] x [-2, 2]; the group flips the imaginary axis upward.
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
         "viewBox=\"-1.5 -2 4 4\">\n"
      << "<rect x=\"-1.5\" y=\"-2\" width=\"4\" height=\"4\" fill=\"white\"/>\n"
      << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n"
      << "<line x1=\"-1.5\" y1=\"0\" x2=\"2.5\" y2=\"0\" stroke=\"#cccccc\" stroke-width=\"0.005\"/>\n"
      << "<line x1=\"0\" y1=\"-2\" x2=\"0\" y2=\"2\" stroke=\"#cccccc\" stroke-width=\"0.005\"/>\n";
    for (const auto& c : g.curves) {
        const auto pts = thin(c.points, 2e-3, 4.0);
        s << "<polyline stroke=\"" << (c.origin_index == 0 ? "#1f4e9c" : "#b3361f")
          << "\" stroke-width=\"0.012\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            s << (i ? " " : "") << svg_number(pts[i].real()) << "," << svg_number(pts[i].imag());
        s << "\"/>\n";
    }
    if (ray_angle) {
        const ComplexValue end = std::polar(6.0, *ray_angle);
        s << "<line x1=\"0\" y1=\"0\" x2=\"" << svg_number(end.real()) << "\" y2=\"" << svg_number(end.imag())
          << "\" stroke=\"#333333\" stroke-width=\"0.01\" stroke-dasharray=\"0.05,0.04\"/>\n";
    }
    if (crossings) {
        for (const auto* bucket : {&crossings->crossings_complex1, &crossings->crossings_complex2})
            for (const auto& x : *bucket)
                s << "<circle cx=\"" << svg_number(x.point.real()) << "\" cy=\"" << svg_number(x.point.imag())
                  << "\" r=\"0.03\" stroke=\"#333333\" stroke-width=\"0.008\"/>\n";
    }
    for (const auto& tp : turning_points(g.potential))
        s << "<circle cx=\"" << svg_number(tp.real()) << "\" cy=\"" << svg_number(tp.imag())
          << "\" r=\"0.035\" fill=\"black\"/>\n";
    s << "</g>\n</svg>\n";
    return s.str();
}

json crossing_json(const RayCrossingReport& r) {
    auto list = [](const std::vector<RayCrossing>& v) {
        json a = json::array();
        for (const auto& x : v)
            a.push_back({{"curve", x.curve}, {"radius", num(x.radius)}, {"re", num(x.point.real())},
                         {"im", num(x.point.imag())}});
        return a;
    };
    json j{{"gamma", num(r.gamma)}, {"psi", num(r.psi)}, {"complex1", list(r.crossings_complex1)},
           {"complex2", list(r.crossings_complex2)}, {"consistent", crossing_counts_consistent(r)}};
    j["extremum"] = r.extremum ? json{{"tau0", num(r.extremum->tau0)}, {"beta0", num(r.extremum->beta0)}} : json();
    return j;
}

int cmd_stokes(const Common& cm, std::optional<double> psi, const std::string& t_form, std::optional<double> gamma,
               double max_arclen, std::ostream& body) {
    if (psi.has_value() == !t_form.empty())
        throw ArgumentError("stokes needs exactly one of --psi and --t-form");
    if (gamma && !psi)
        throw ArgumentError("--gamma is only meaningful with --psi");
    if (!(max_arclen > 0.0))
        throw ArgumentError("--max-arclen must be positive");
    if (psi) psi = cm.angle(*psi);
    if (gamma) gamma = cm.angle(*gamma);
    const auto pot = psi ? PotentialQuadratic::z_form(*psi) : PotentialQuadratic::t_form(parse_pair(t_form, "--t-form"));
    const auto graph = build_stokes_graph(pot, max_arclen);
    std::optional<RayCrossingReport> crossings;
    if (gamma) crossings = ray_crossing_report(graph, *psi, *gamma);

    if (cm.format == "json") {
        json j = cm.json_header("stokes");
        j["compound"] = graph.compound;
        json tps = json::array();
        for (const auto& tp : turning_points(pot)) tps.push_back({num(tp.real()), num(tp.imag())});
        j["turning_points"] = tps;
        json curves = json::array();
        for (const auto& c : graph.curves) {
            json pts = json::array();
            for (const auto& p : thin(c.points, 1e-2, 1e300)) pts.push_back({num(p.real()), num(p.imag())});
            json cj{{"origin", c.origin_index}, {"k", c.direction_index}, {"initial_angle", num(c.initial_angle)},
                    {"points", pts}};
            if (c.terminal == StokesCurve::Terminal::ToInfinity) {
                cj["terminal"] = "infinity";
                cj["asymptotic_angle"] = num(c.asymptotic_angle);
            } else {
                cj["terminal"] = "turning_point";
                cj["target"] = c.target_index;
            }
            curves.push_back(cj);
        }
        j["curves"] = curves;
        j["diagnostics"] = graph.diagnostics;
        if (crossings) j["ray"] = crossing_json(*crossings);
        body << j.dump(2) << "\n";
        return 0;
    }
    std::optional<double> ray;
    if (gamma) ray = *gamma - *psi;
    body << render_svg(graph, ray, crossings);
    return 0;
}

// ---------------------------------------------------------------- spectrum, resolvent

int cmd_spectrum(const Common& cm, double alpha, const std::string& c_text, int n, double tol, std::ostream& body) {
    if (n < 1) throw ArgumentError("--n must be at least 1");
    if (!(tol > 0.0)) throw ArgumentError("--tol must be positive");
    const ComplexValue c = parse_pair(c_text, "--c");
    const auto spec = OperatorSpec::for_eigenvalues(c, alpha, n);
    const auto r = complex_spectrum(spec, n, tol);
    if (cm.format == "json") {
        json j = cm.json_header("spectrum");
        j["alpha"] = num(alpha);
        j["c"] = {num(c.real()), num(c.imag())};
        j["X"] = num(spec.X);
        json rows = json::array();
        for (int k = 0; k < n; ++k) {
            const auto& l = r.eigenvalues[k];
            rows.push_back({{"n", k + 1}, {"t", num(r.t_values[k])}, {"lambda_re", num(l.real())},
                            {"lambda_im", num(l.imag())}, {"t_asymptotic", num(t_asymptotic(k + 1, alpha))},
                            {"deviation", num(r.asymptotic_deviation[k])}, {"s", num(1.0 / std::abs(l))}});
        }
        j["eigenvalues"] = rows;
        j["scaling_verified"] = r.scaling_verified;
        body << j.dump(2) << "\n";
        return 0;
    }
    body << cm.csv_header() << "# truncation X = " << f(spec.X) << "\n"
         << "n,t,lambda_re,lambda_im,t_asymptotic,deviation,s\n";
    for (int k = 0; k < n; ++k) {
        const auto& l = r.eigenvalues[k];
        body << csv_row({std::to_string(k + 1), f(r.t_values[k]), f(l.real()), f(l.imag()),
                         f(t_asymptotic(k + 1, alpha)), f(r.asymptotic_deviation[k]), f(1.0 / std::abs(l))});
    }
    return 0;
}

// Reads rows "x,re[,im]" on a uniform grid starting at 0; '#' lines and blank lines are skipped.
SampledFunction read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot read " + path);
    std::vector<double> xs;
    std::vector<ComplexValue> vs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                cells.push_back(std::stod(cell, &used));
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::logic_error&) {
                if (xs.empty() && cells.empty()) break;   // a column header line
                throw ArgumentError(path + ":" + std::to_string(lineno) + ": not a number");
            }
        }
        if (cells.empty()) continue;
        if (cells.size() < 2 || cells.size() > 3)
            throw ArgumentError(path + ":" + std::to_string(lineno) + ": expected x,re[,im]");
        xs.push_back(cells[0]);
        vs.emplace_back(cells[1], cells.size() == 3 ? cells[2] : 0.0);
    }
    if (xs.size() < 5) throw ArgumentError(path + ": need at least 5 grid points");
    const double X = xs.back();
    const double h = X / static_cast<double>(xs.size() - 1);
    if (!(X > 0.0)) throw ArgumentError(path + ": grid must increase from 0");
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (std::abs(xs[j] - j * h) > 1e-9 * X)
            throw ArgumentError(path + ": grid must be uniform and start at 0");
    return SampledFunction{X, std::move(vs)};
}

int cmd_resolvent(const Common& cm, double alpha, const std::string& c_text, const std::string& input,
                  std::ostream& body) {
    const ComplexValue c = parse_pair(c_text, "--c");
    const auto f_in = read_grid_csv(input);
    const OperatorSpec spec{c, alpha, f_in.X, f_in.size()};
    const auto r = apply_inverse(spec, f_in);
    const auto Ly = apply_operator_fd(spec, r.y);
    double fmax = 0.0, res = 0.0;
    for (const auto& v : f_in.values) fmax = std::max(fmax, std::abs(v));
    for (std::size_t j = 2; j + 2 < spec.grid_n; ++j) res = std::max(res, std::abs(Ly.values[j] - f_in.values[j]));
    const double rel = fmax > 0.0 ? res / fmax : res;

    if (cm.format == "json") {
        json j = cm.json_header("resolvent");
        json x = json::array(), re = json::array(), im = json::array();
        for (std::size_t k = 0; k < r.y.size(); ++k) {
            x.push_back(num(r.y.x(k)));
            re.push_back(num(r.y.values[k].real()));
            im.push_back(num(r.y.values[k].imag()));
        }
        j["x"] = x;
        j["y_re"] = re;
        j["y_im"] = im;
        j["residual_rel"] = num(rel);
        j["wronskian"] = {num(r.wronskian.real()), num(r.wronskian.imag())};
        j["wronskian_variation"] = num(r.wronskian_variation);
        body << j.dump(2) << "\n";
        return 0;
    }
    body << cm.csv_header() << "x,y_re,y_im\n";
    for (std::size_t k = 0; k < r.y.size(); ++k)
        body << csv_row({f(r.y.x(k)), f(r.y.values[k].real()), f(r.y.values[k].imag())});
    body << "# residual_rel " << f(rel) << "\n# wronskian " << f(r.wronskian.real()) << " " << f(r.wronskian.imag())
         << "\n# wronskian_variation " << f(r.wronskian_variation) << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Common& cm, double gamma, int points, std::ostream& body) {
    gamma = cm.angle(gamma);
    if (points < 1) throw ArgumentError("--points must be at least 1");
    const auto checks = verify_paper_bounds();
    const auto sweep = crossing_sweep(gamma, points);
    int checks_ok = 0, sweep_ok = 0;
    for (const auto& c : checks) checks_ok += c.passed;
    for (const auto& r : sweep) sweep_ok += crossing_counts_consistent(r);
    const bool ok = checks_ok == static_cast<int>(checks.size()) && sweep_ok == static_cast<int>(sweep.size());
    const char* regimes[3] = {"inner", "monotone", "outer"};

    if (cm.format == "json") {
        json j = cm.json_header("verify");
        json cj = json::array();
        for (const auto& c : checks) {
            json e{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"value", num(c.value)},
                   {"reference", num(c.reference)}};
            if (std::isfinite(c.value2)) {
                e["value2"] = num(c.value2);
                e["reference2"] = num(c.reference2);
            }
            cj.push_back(e);
        }
        j["checks"] = cj;
        json sj = json::array();
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            json e = crossing_json(sweep[i]);
            e["regime"] = regimes[i / points];
            sj.push_back(e);
        }
        j["crossing_sweep"] = sj;
        j["passed"] = ok;
        body << j.dump(2) << "\n";
        return ok ? 0 : 1;
    }
    body << cm.csv_header() << "kind,id,name,status,value,reference,value2,reference2\n";
    for (const auto& c : checks)
        body << csv_row({"check", c.id, c.name, c.passed ? "pass" : "FAIL", f(c.value), f(c.reference),
                         std::isfinite(c.value2) ? f(c.value2) : "", std::isfinite(c.reference2) ? f(c.reference2) : ""});
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto& r = sweep[i];
        body << csv_row({"crossing", std::to_string(i), regimes[i / points],
                         crossing_counts_consistent(r) ? "pass" : "FAIL", f(r.psi),
                         f(r.gamma), std::to_string(r.count1()), std::to_string(r.count2())});
    }
    body << "# bound checks " << checks_ok << "/" << checks.size() << ", crossing sweep " << sweep_ok << "/"
         << sweep.size() << (ok ? ": pass" : ": FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", x);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stokes geometry, threshold angle and spectra of -y'' + c x^alpha y on the half-line", "schrospec"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Common cm;
    cm.args = args;
    app.add_flag("--degrees", cm.degrees, "Read angle arguments in degrees");
    app.add_option("--out", cm.out_path, "Write output to this file instead of stdout");
    app.fallthrough();

    const auto csv_json = CLI::IsMember({"csv", "json"});

    double tol = 1e-10;
    auto* theta0 = app.add_subcommand("theta0", "Solve F(theta) = 0 on [pi/10, pi/9]");
    theta0->add_option("--tol", tol, "Enclosure width")->check(CLI::PositiveNumber);
    theta0->add_option("--format", cm.format, "json (default) or csv")->check(csv_json);

    double from = 0.0, to = kPi / 6.0 - 1e-9;
    int steps = 100;
    auto* scan = app.add_subcommand("scan", "Tabulate F(theta)");
    scan->add_option("--from", from, "First theta");
    scan->add_option("--to", to, "Last theta");
    scan->add_option("--steps", steps, "Number of intervals");
    scan->add_option("--format", cm.format, "csv (default) or json")->check(csv_json);

    std::optional<double> psi, gamma;
    std::string t_form;
    double max_arclen = 12.0;
    auto* stokes = app.add_subcommand("stokes", "Stokes graph of a quadratic potential");
    auto* psi_opt = stokes->add_option("--psi", psi, "P(z) = e^{2 i psi} z (z - 1)");
    stokes->add_option("--t-form", t_form, "P(t) = t (t - mu) with mu = RE,IM")->excludes(psi_opt);
    stokes->add_option("--gamma", gamma, "Overlay the ray arg z = gamma - psi");
    stokes->add_option("--max-arclen", max_arclen, "Arclength traced per curve");
    stokes->add_option("--format", cm.format, "svg (default) or json")->check(CLI::IsMember({"svg", "json"}));

    double alpha = 2.0 / 3.0;
    std::string c_text = "1,0";
    int n = 0;
    double spec_tol = 1e-10;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of -y'' + c x^alpha y, y(0) = 0");
    spectrum->add_option("--alpha", alpha, "Exponent")->check(CLI::PositiveNumber);
    spectrum->add_option("--c", c_text, "Coefficient RE,IM");
    spectrum->add_option("--n", n, "Number of eigenvalues")->required();
    spectrum->add_option("--tol", spec_tol, "Root tolerance");
    spectrum->add_option("--format", cm.format, "csv (default) or json")->check(csv_json);

    std::string input;
    auto* resolvent = app.add_subcommand("resolvent", "Apply the inverse operator to sampled data");
    resolvent->add_option("--alpha", alpha, "Exponent")->check(CLI::PositiveNumber);
    resolvent->add_option("--c", c_text, "Coefficient RE,IM");
    resolvent->add_option("--input", input, "CSV rows x,re[,im] on a uniform grid from 0")->required();
    resolvent->add_option("--format", cm.format, "csv (default) or json")->check(csv_json);

    double verify_gamma = kPi / 8.0;
    int points = 50;
    auto* verify = app.add_subcommand("verify", "Threshold bound checks and the crossing-count sweep");
    verify->add_option("--gamma", verify_gamma, "Ray parameter of the sweep");
    verify->add_option("--points", points, "Sweep points per regime");
    verify->add_option("--format", cm.format, "csv (default) or json")->check(csv_json);

    std::vector<std::string> argv_store{"schrospec"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    std::ostringstream body;
    int code = 0;
    try {
        if (*theta0) {
            if (cm.format.empty()) cm.format = "json";
            code = cmd_theta0(cm, tol, body);
        } else if (*scan) {
            if (cm.format.empty()) cm.format = "csv";
            code = cmd_scan(cm, from, to, steps, body);
        } else if (*stokes) {
            if (cm.format.empty()) cm.format = "svg";
            code = cmd_stokes(cm, psi, t_form, gamma, max_arclen, body);
        } else if (*spectrum) {
            if (cm.format.empty()) cm.format = "csv";
            code = cmd_spectrum(cm, alpha, c_text, n, spec_tol, body);
        } else if (*resolvent) {
            if (cm.format.empty()) cm.format = "csv";
            code = cmd_resolvent(cm, alpha, c_text, input, body);
        } else if (*verify) {
            if (cm.format.empty()) cm.format = "csv";
            code = cmd_verify(cm, verify_gamma, points, body);
        }
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 1;
    }

    if (cm.out_path.empty()) {
        out << body.str();
    } else {
        std::ofstream file(cm.out_path, std::ios::binary);
        if (!(file << body.str())) {
            err << "error: cannot write " << cm.out_path << "\n";
            return 1;
        }
    }
    return code;
}

}  // namespace schrospec::cli
