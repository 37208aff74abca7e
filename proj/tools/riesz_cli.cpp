#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "riesz/config.hpp"
#include "riesz/errors.hpp"
#include "riesz/oracle.hpp"
#include "riesz/potential.hpp"
#include "riesz/quadrature.hpp"

using namespace riesz;

namespace {

enum Exit { kOk = 0, kConfig = 2, kDomain = 3, kNumerical = 4 };

struct Output {
    json doc;
    std::string csv;
    bool tolerance_failed = false;
    std::string failure;
};

json point_json(const Vec& x)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        a.push_back(x(i));
    return a;
}

std::string csv_number(double v)
{
    // same shortest round-trip text the JSON writer uses
    return json(v).dump();
}

std::string csv_header(int d, const std::vector<std::string>& tail)
{
    std::string h;
    for (int i = 1; i <= d; ++i)
        h += (i > 1 ? "," : "") + std::string("x") + std::to_string(i);
    for (const auto& t : tail)
        h += "," + t;
    return h + "\n";
}

int level_of(const RunConfig& cfg, int d)
{
    return cfg.numerics.quad_level > 0 ? cfg.numerics.quad_level : default_quad_level(d);
}

Output run_potential(const RunConfig& cfg)
{
    const Kernel& k = *cfg.kernel;
    const EquilibriumMeasure& mu = *cfg.measure;
    const Mat& xs = cfg.evaluation.points;
    const int d = mu.dim();
    const std::string& method = cfg.evaluation.method;

    std::vector<PotentialEstimate> est;
    if (method == "mc") {
        est = mc_potential_many(k, mu, xs, cfg.evaluation.mc_samples, *cfg.evaluation.seed);
    } else if (method == "radial") {
        for (Eigen::Index j = 0; j < xs.cols(); ++j)
            est.push_back(isotropic_radial_potential(k.s(), mu.q(), xs.col(j).norm(), d));
    } else {
        const PotentialEvaluator ev(k, mu, sphere_quadrature(d, level_of(cfg, d), cfg.numerics.node_cap));
        for (Eigen::Index j = 0; j < xs.cols(); ++j)
            est.push_back(method == "closed" ? ev.inside(xs.col(j)) : ev.regularized(xs.col(j), cfg.evaluation.r));
    }

    Output out;
    json records = json::array();
    out.csv = csv_header(d, {"value", "error_bound", "method"});
    for (std::size_t j = 0; j < est.size(); ++j) {
        const Vec x = xs.col(static_cast<Eigen::Index>(j));
        json r = to_json(est[j]);
        r["x"] = point_json(x);
        records.push_back(r);
        for (int i = 0; i < d; ++i)
            out.csv += csv_number(x(i)) + ",";
        out.csv += csv_number(est[j].value) + "," + csv_number(est[j].error_bound) + "," +
                   method_name(est[j].method) + "\n";
        if (method != "mc" && est[j].error_bound > cfg.numerics.potential_rel * std::abs(est[j].value) &&
            !out.tolerance_failed) {
            out.tolerance_failed = true;
            out.failure = "point " + std::to_string(j) + ": error bound " + csv_number(est[j].error_bound) +
                          " exceeds potential_rel * |value|";
        }
    }
    out.doc = {{"type", "PotentialTable"},
               {"method", method},
               {"dim", d},
               {"s", k.s()},
               {"q", mu.q()},
               {"records", records}};
    if (method != "mc" && method != "radial")
        out.doc["quad_level"] = level_of(cfg, d);
    if (method == "mc") {
        out.doc["seed"] = *cfg.evaluation.seed;
        out.doc["mc_samples"] = cfg.evaluation.mc_samples;
    }
    return out;
}

Output run_symbol(const RunConfig& cfg)
{
    const Kernel& k = *cfg.kernel;
    const int d = k.dim();
    const FourierSymbol psi(k);
    const Mat& dirs = cfg.evaluation.points;

    Output out;
    json records = json::array();
    out.csv = csv_header(d, {"value"});
    for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
        const double v = psi(dirs.col(j));
        records.push_back({{"omega", point_json(dirs.col(j))}, {"value", v}});
        for (int i = 0; i < d; ++i)
            out.csv += csv_number(dirs(i, j)) + ",";
        out.csv += csv_number(v) + "\n";
    }
    const Mat grid = sphere_grid(d, 10000);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index j = 0; j < grid.cols(); ++j) {
        const double v = psi(grid.col(j));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.doc = {{"type", "SymbolTable"},
               {"dim", d},
               {"s", k.s()},
               {"profile", profile_to_json(k.profile())},
               {"records", records},
               {"grid_points", grid.cols()},
               {"grid_min", lo},
               {"grid_max", hi}};
    if (k.profile().type() == Profile::Type::DiagonalQuadratic) {
        const auto c = nonneg_criterion(k.profile().alpha(), k.s(), d);
        out.doc["criterion"] = {{"nonnegative", c.nonnegative}, {"margin", c.margin}, {"closed_form", c.closed_form}};
    } else {
        out.doc["criterion"] = nullptr;
    }
    return out;
}

Output run_sample(const RunConfig& cfg)
{
    const EquilibriumMeasure& mu = *cfg.measure;
    const int d = mu.dim();
    const auto s = sample(mu, cfg.evaluation.n_samples, *cfg.evaluation.seed);
    Output out;
    json pts = json::array();
    out.csv = csv_header(d, {});
    for (int j = 0; j < s.size(); ++j) {
        pts.push_back(point_json(s.points.col(j)));
        for (int i = 0; i < d; ++i)
            out.csv += (i ? "," : "") + csv_number(s.points(i, j));
        out.csv += "\n";
    }
    out.doc = {{"type", "Sample"}, {"dim", d}, {"q", mu.q()}, {"seed", s.seed}, {"points", pts}};
    return out;
}

Output run(const RunConfig& cfg)
{
    const std::string& c = cfg.command;
    if (c == "potential")
        return run_potential(cfg);
    if (c == "symbol")
        return run_symbol(cfg);
    if (c == "sample")
        return run_sample(cfg);
    Output out;
    if (c == "verify-el") {
        out.doc = to_json(el_check(*cfg.kernel, *cfg.measure, *cfg.ellipsoid, cfg.el));
    } else if (c == "counterexample") {
        const auto& ce = cfg.counterexample;
        out.doc = to_json(counterexample_A(ce.d, ce.s, ce.eps));
    } else if (c == "energy") {
        const std::uint64_t seed = *cfg.evaluation.seed;
        if (cfg.perturbations > 0)
            out.doc = to_json(minimality_probe(*cfg.kernel, *cfg.ellipsoid, cfg.evaluation.n_samples,
                                               cfg.perturbations, seed));
        else
            out.doc = to_json(energy_estimate(*cfg.kernel, *cfg.measure, cfg.evaluation.n_samples, seed));
    }
    return out;
}

// write to a sibling temporary, then rename, so readers never see half a file
void write_file(const std::string& path, const std::string& text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f)
            throw ConfigError("cannot write '" + path + "'");
        f << text;
        if (!f)
            throw ConfigError("cannot write '" + path + "'");
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Riesz potentials of ellipsoidal equilibrium measures"};
    app.require_subcommand(1);
    std::string config_path, out_path, csv_path;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"potential", "evaluate the potential at points of E"},
        {"symbol", "Fourier symbol on the sphere and its sign"},
        {"verify-el", "Euler-Lagrange check of a candidate measure"},
        {"counterexample", "the sub-Coulombic counterexample quantity A"},
        {"energy", "energy estimate, or minimality probe with perturbations"},
        {"sample", "draw points from the measure"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_path, "JSON output file (default stdout)");
        sub->add_option("--csv", csv_path, "CSV point table");
        sub->allow_extras();
        sub->footer("Scalar fields can be overridden with --dotted.key=value.");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        json doc = load_json_file(config_path);
        for (const std::string& extra : sub->remaining()) {
            const auto eq = extra.find('=');
            if (extra.rfind("--", 0) != 0 || eq == std::string::npos || eq == 2)
                throw ConfigError("unexpected argument '" + extra + "' (overrides look like --key=value)");
            apply_override(doc, extra.substr(2, eq - 2), extra.substr(eq + 1));
        }
        const RunConfig cfg = parse_run_config(doc, command);
        if (!csv_path.empty() && command != "potential" && command != "symbol" && command != "sample")
            throw ConfigError("--csv is only available for potential, symbol and sample");

        Output out = run(cfg);
        out.doc["command"] = command;
        const std::string text = out.doc.dump(2) + "\n";
        if (!csv_path.empty())
            write_file(csv_path, out.csv);
        if (out_path.empty())
            std::cout << text;
        else
            write_file(out_path, text);
        if (out.tolerance_failed) {
            std::cerr << "riesz: numerical tolerance not met: " << out.failure << "\n";
            return kNumerical;
        }
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "riesz: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ResourceError& e) {
        std::cerr << "riesz: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ParameterError& e) {
        std::cerr << "riesz: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "riesz: domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const NumericalError& e) {
        std::cerr << "riesz: numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}
