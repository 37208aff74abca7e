#include "riesz/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg)
{
    throw ConfigError(where + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        bad(where, std::string("missing field '") + key + "'");
    return *it;
}

const json* optional_field(const json& j, const char* key)
{
    if (!j.is_object())
        return nullptr;
    auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return nullptr;
    return &*it;
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number())
        bad(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        bad(where, "must be finite");
    return v;
}

long long integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer() && !(j.is_number_float() && std::floor(j.get<double>()) == j.get<double>()))
        bad(where, "expected an integer");
    return j.is_number_integer() ? j.get<long long>() : static_cast<long long>(j.get<double>());
}

int positive_int(const json& j, const std::string& where, long long lo = 1)
{
    const long long v = integer(j, where);
    if (v < lo || v > 2'000'000'000LL)
        bad(where, "must be an integer in [" + std::to_string(lo) + ", 2e9]");
    return static_cast<int>(v);
}

Vec vector_of(const json& j, const std::string& where)
{
    if (!j.is_array() || j.empty())
        bad(where, "expected a non-empty array of numbers");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = number(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

Polynomial::Exponents parse_exponents(const std::string& key, int d, const std::string& where)
{
    Polynomial::Exponents e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(part, &pos);
            if (pos != part.size() || v < 0)
                throw std::invalid_argument(part);
            e.push_back(v);
        } catch (const std::exception&) {
            bad(where, "bad exponent key '" + key + "'");
        }
    }
    if (static_cast<int>(e.size()) != d)
        bad(where, "exponent key '" + key + "' needs " + std::to_string(d) + " entries");
    return e;
}

std::string exponent_key(const Polynomial::Exponents& e)
{
    std::string k;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i)
            k += ',';
        k += std::to_string(e[i]);
    }
    return k;
}

Polynomial polynomial_of(const json& coeffs, int d, const std::string& where)
{
    if (!coeffs.is_object() || coeffs.empty())
        bad(where, "expected a non-empty object of coefficients");
    Polynomial p(d);
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it)
        p.add(parse_exponents(it.key(), d, where), number(it.value(), where + "." + it.key()));
    return p;
}

json polynomial_to_json(const Polynomial& p)
{
    json c = json::object();
    for (const auto& [e, v] : p.terms())
        c[exponent_key(e)] = v;
    return c;
}

// Library constructors report bad parameters with ParameterError or
// DomainError; inside config parsing both are configuration mistakes.
template <class F>
auto as_config(const std::string& where, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const ParameterError& e) {
        bad(where, e.what());
    } catch (const DomainError& e) {
        bad(where, e.what());
    }
}

json vec_json(const Vec& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(v(i));
    return a;
}

Mat grid_points(const Ellipsoid& e, const json& g)
{
    const int n = positive_int(field(g, "n", "evaluation.grid"), "evaluation.grid.n", 2);
    double scale = 0.9;
    if (const json* s = optional_field(g, "scale"))
        scale = number(*s, "evaluation.grid.scale");
    if (!(scale > 0.0 && scale < 1.0))
        bad("evaluation.grid.scale", "must lie in (0, 1)");
    const int d = e.dim();
    Mat pts(d, static_cast<Eigen::Index>(n) * d);
    Eigen::Index col = 0;
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < n; ++k) {
            const double t = -scale + 2.0 * scale * k / (n - 1);
            pts.col(col++) = e.map(t * Vec::Unit(d, i));
        }
    return pts;
}

} // namespace

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

void apply_override(json& doc, const std::string& key, const std::string& value)
{
    if (key.empty())
        throw ConfigError("empty override key");
    json v;
    try {
        v = json::parse(value);
    } catch (const json::parse_error&) {
        v = value;
    }
    if (v.is_object() || v.is_array())
        throw ConfigError("override --" + key + " must be a scalar");
    json* node = &doc;
    std::stringstream ss(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        if (part.empty())
            throw ConfigError("bad override key '" + key + "'");
        parts.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object())
            throw ConfigError("override --" + key + ": '" + parts[i] + "' is not inside an object");
        node = &(*node)[parts[i]];
        if (node->is_null())
            *node = json::object();
    }
    if (!node->is_object())
        throw ConfigError("override --" + key + " targets a non-object");
    json& target = (*node)[parts.back()];
    if (target.is_object() || target.is_array())
        throw ConfigError("override --" + key + " would replace a structured field");
    target = v;
}

// ---- profiles and ellipsoids -----------------------------------------------

Profile profile_from_json(const json& j, int d)
{
    const std::string where = "kernel.profile";
    const json& t = field(j, "type", where);
    if (!t.is_string())
        bad(where + ".type", "expected a string");
    const std::string type = t.get<std::string>();
    return as_config(where, [&]() -> Profile {
        if (type == "isotropic")
            return Profile::isotropic(d);
        if (type == "diag_quadratic") {
            Vec alpha = vector_of(field(j, "alpha", where), where + ".alpha");
            if (alpha.size() != d)
                bad(where + ".alpha", "needs " + std::to_string(d) + " entries");
            return Profile::diagonal_quadratic(alpha);
        }
        if (type == "harmonic_sum") {
            const json& terms = field(j, "terms", where);
            if (!terms.is_array() || terms.empty())
                bad(where + ".terms", "expected a non-empty array");
            std::vector<HarmonicTerm> out;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string w = where + ".terms[" + std::to_string(i) + "]";
                HarmonicTerm h;
                h.degree = positive_int(field(terms[i], "degree", w), w + ".degree", 0);
                h.poly = polynomial_of(field(terms[i], "coeffs", w), d, w + ".coeffs");
                if (h.poly.degree() >= 0 && h.poly.degree() != h.degree)
                    bad(w, "coefficients do not have the stated degree");
                out.push_back(std::move(h));
            }
            return Profile::harmonic_sum(d, std::move(out));
        }
        if (type == "polynomial")
            return Profile::from_even_polynomial(polynomial_of(field(j, "coeffs", where), d, where + ".coeffs"));
        bad(where + ".type", "unknown profile type '" + type + "'");
    });
}

json profile_to_json(const Profile& p)
{
    switch (p.type()) {
    case Profile::Type::Isotropic:
        return {{"type", "isotropic"}};
    case Profile::Type::DiagonalQuadratic:
        return {{"type", "diag_quadratic"}, {"alpha", vec_json(p.alpha())}};
    case Profile::Type::HarmonicSum: {
        json terms = json::array();
        for (const auto& t : p.terms())
            terms.push_back({{"degree", t.degree}, {"coeffs", polynomial_to_json(t.poly)}});
        return {{"type", "harmonic_sum"}, {"terms", terms}};
    }
    }
    return {};
}

Ellipsoid ellipsoid_from_json(const json& j)
{
    const std::string where = "ellipsoid";
    const int d = positive_int(field(j, "dim", where), where + ".dim", 2);
    if (d > 32)
        bad(where + ".dim", "dimensions above 32 are not supported");
    Vec axes = vector_of(field(j, "semi_axes", where), where + ".semi_axes");
    if (axes.size() != d)
        bad(where + ".semi_axes", "needs " + std::to_string(d) + " entries");
    Mat rot = Mat::Identity(d, d);
    if (const json* r = optional_field(j, "rotation")) {
        if (!r->is_array() || static_cast<int>(r->size()) != d)
            bad(where + ".rotation", "expected " + std::to_string(d) + " rows");
        for (int i = 0; i < d; ++i) {
            Vec row = vector_of((*r)[static_cast<std::size_t>(i)], where + ".rotation[" + std::to_string(i) + "]");
            if (row.size() != d)
                bad(where + ".rotation", "rows need " + std::to_string(d) + " entries");
            rot.row(i) = row.transpose();
        }
    }
    return as_config(where, [&] { return Ellipsoid(rot, axes); });
}

json ellipsoid_to_json(const Ellipsoid& e)
{
    json rows = json::array();
    for (int i = 0; i < e.dim(); ++i)
        rows.push_back(vec_json(e.rotation().row(i).transpose()));
    return {{"dim", e.dim()}, {"rotation", rows}, {"semi_axes", vec_json(e.semi_axes())}};
}

// ---- run config --------------------------------------------------------------

namespace {

Kernel kernel_from_json(const json& j, int d)
{
    const double s = number(field(j, "s", "kernel"), "kernel.s");
    if (!(s > 0.0 && s < d))
        bad("kernel.s", "must lie in (0, " + std::to_string(d) + ")");
    Profile p = profile_from_json(field(j, "profile", "kernel"), d);
    return as_config("kernel", [&] { return Kernel(s, p); });
}

EquilibriumMeasure measure_from_json(const json& j, const Ellipsoid& e)
{
    const int d = e.dim();
    std::string kind;
    if (const json* k = optional_field(j, "kind")) {
        if (!k->is_string())
            bad("measure.kind", "expected a string");
        kind = k->get<std::string>();
        if (kind != "surface" && kind != "volume")
            bad("measure.kind", "must be 'surface' or 'volume'");
    }
    if (kind == "surface") {
        if (const json* q = optional_field(j, "q"))
            if (number(*q, "measure.q") != d - 2.0)
                bad("measure.q", "a surface measure has q = d - 2");
        if (d == 2)
            bad("measure", "q = 0 in d = 2 is not supported");
        return EquilibriumMeasure::surface(e);
    }
    const double q = number(field(j, "q", "measure"), "measure.q");
    if (q < d - 2.0)
        bad("measure.q", "must be >= d - 2");
    if (kind == "volume" && q == d - 2.0)
        bad("measure.q", "a volume measure needs q > d - 2");
    if (d == 2 && q == 0.0)
        bad("measure", "q = 0 in d = 2 is not supported");
    return as_config("measure", [&] { return EquilibriumMeasure(q, e); });
}

std::uint64_t seed_of(const json& j, const std::string& where)
{
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0)
        return static_cast<std::uint64_t>(j.get<long long>());
    bad(where, "expected a non-negative integer");
}

void check_interior(const Ellipsoid& e, const Mat& pts)
{
    for (Eigen::Index i = 0; i < pts.cols(); ++i)
        if (!e.contains_interior(pts.col(i)))
            throw DomainError("evaluation point " + std::to_string(i) + " is not strictly inside E");
}

} // namespace

RunConfig parse_run_config(const json& doc, const std::string& command)
{
    static const std::vector<std::string> known = {"potential", "symbol", "verify-el", "counterexample", "energy",
                                                   "sample"};
    if (std::find(known.begin(), known.end(), command) == known.end())
        throw ConfigError("unknown command '" + command + "'");
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    RunConfig cfg;
    cfg.command = command;

    const json* ev = optional_field(doc, "evaluation");
    if (ev && !ev->is_object())
        bad("evaluation", "expected an object");
    if (ev) {
        if (const json* s = optional_field(*ev, "seed"))
            cfg.evaluation.seed = seed_of(*s, "evaluation.seed");
    }

    cfg.numerics.node_cap = default_node_cap();
    if (const json* nu = optional_field(doc, "numerics")) {
        if (const json* l = optional_field(*nu, "quad_level"))
            cfg.numerics.quad_level = positive_int(*l, "numerics.quad_level", 0);
        if (const json* c = optional_field(*nu, "node_cap"))
            cfg.numerics.node_cap = static_cast<std::size_t>(positive_int(*c, "numerics.node_cap"));
        if (const json* t = optional_field(*nu, "tolerances")) {
            if (const json* p = optional_field(*t, "potential_rel")) {
                cfg.numerics.potential_rel = number(*p, "numerics.tolerances.potential_rel");
                if (!(cfg.numerics.potential_rel > 0.0))
                    bad("numerics.tolerances.potential_rel", "must be positive");
            }
        }
    }

    if (command == "counterexample") {
        const json& c = field(doc, "counterexample", "config");
        const long long d = integer(field(c, "d", "counterexample"), "counterexample.d");
        if (d < 3 || d > 32)
            bad("counterexample.d", "must lie in [3, 32]");
        cfg.counterexample.d = static_cast<int>(d);
        cfg.counterexample.s = number(field(c, "s", "counterexample"), "counterexample.s");
        if (!(cfg.counterexample.s > 0.0 && cfg.counterexample.s < d - 2.0))
            bad("counterexample.s", "must lie in (0, d - 2)");
        if (const json* e = optional_field(c, "eps"))
            cfg.counterexample.eps = number(*e, "counterexample.eps");
        if (!(cfg.counterexample.eps >= 0.0 && cfg.counterexample.eps < d - 1.0))
            bad("counterexample.eps", "must lie in [0, d - 1)");
        return cfg;
    }

    if (command == "symbol") {
        const json& k = field(doc, "kernel", "config");
        const json* dim = optional_field(k, "dim");
        if (!dim)
            if (const json* el = optional_field(doc, "ellipsoid"))
                dim = optional_field(*el, "dim");
        if (!dim)
            bad("kernel", "missing field 'dim' (or ellipsoid.dim)");
        const int d = positive_int(*dim, "kernel.dim", 2);
        if (d > 32)
            bad("kernel.dim", "dimensions above 32 are not supported");
        cfg.kernel = kernel_from_json(k, d);
        if (ev) {
            if (const json* p = optional_field(*ev, "points")) {
                if (!p->is_array() || p->empty())
                    bad("evaluation.points", "expected a non-empty array");
                cfg.evaluation.points.resize(d, static_cast<Eigen::Index>(p->size()));
                for (std::size_t i = 0; i < p->size(); ++i) {
                    Vec v = vector_of((*p)[i], "evaluation.points");
                    if (v.size() != d)
                        bad("evaluation.points", "directions need " + std::to_string(d) + " entries");
                    if (v.norm() == 0.0)
                        bad("evaluation.points", "zero direction");
                    cfg.evaluation.points.col(static_cast<Eigen::Index>(i)) = v / v.norm();
                }
            } else if (const json* n = optional_field(*ev, "n_samples")) {
                cfg.evaluation.n_samples = positive_int(*n, "evaluation.n_samples");
                cfg.evaluation.points = sphere_grid(d, cfg.evaluation.n_samples);
            }
        }
        if (cfg.evaluation.points.cols() == 0)
            cfg.evaluation.points = sphere_grid(d, 2 * d);
        return cfg;
    }

    if (command == "energy") {
        if (const json* p = optional_field(doc, "perturbations"))
            cfg.perturbations = positive_int(*p, "perturbations", 0);
    }

    cfg.ellipsoid = ellipsoid_from_json(field(doc, "ellipsoid", "config"));
    const Ellipsoid& e = *cfg.ellipsoid;
    const int d = e.dim();
    const bool probe = command == "energy" && cfg.perturbations > 0;
    if (!probe || optional_field(doc, "measure"))
        cfg.measure = measure_from_json(field(doc, "measure", "config"), e);
    if (command != "sample") {
        const json& k = field(doc, "kernel", "config");
        if (const json* kd = optional_field(k, "dim"))
            if (integer(*kd, "kernel.dim") != d)
                bad("kernel.dim", "does not match ellipsoid.dim");
        cfg.kernel = kernel_from_json(k, d);
    }
    if (probe && cfg.kernel->s() < d - 2.0)
        bad("perturbations", "the minimality probe needs s >= d - 2");

    auto need_seed = [&](const char* why) {
        if (!cfg.evaluation.seed)
            bad("evaluation.seed", std::string("a seed is required for ") + why);
    };

    if (command == "potential") {
        if (!ev)
            bad("config", "missing field 'evaluation'");
        if (const json* m = optional_field(*ev, "method")) {
            if (!m->is_string())
                bad("evaluation.method", "expected a string");
            cfg.evaluation.method = m->get<std::string>();
        }
        const std::string& method = cfg.evaluation.method;
        if (method != "closed" && method != "radial" && method != "mc" && method != "regularized")
            bad("evaluation.method", "must be closed, radial, mc or regularized");
        if (method == "regularized") {
            cfg.evaluation.r = number(field(*ev, "r", "evaluation"), "evaluation.r");
            if (!(cfg.evaluation.r > 0.0))
                bad("evaluation.r", "must be positive");
        }
        if (method == "mc") {
            need_seed("Monte Carlo evaluation");
            if (const json* n = optional_field(*ev, "mc_samples"))
                cfg.evaluation.mc_samples = positive_int(*n, "evaluation.mc_samples", 1000);
        }
        if (method == "radial") {
            const bool ball = e.semi_axes().isApprox(Vec::Ones(d), 0.0)
                              && e.rotation().isApprox(Mat::Identity(d, d), 0.0);
            if (cfg.kernel->profile().type() != Profile::Type::Isotropic || !ball)
                bad("evaluation.method", "radial needs an isotropic kernel on the unit ball");
        }
        if (const json* p = optional_field(*ev, "points")) {
            if (!p->is_array() || p->empty())
                bad("evaluation.points", "expected a non-empty array");
            cfg.evaluation.points.resize(d, static_cast<Eigen::Index>(p->size()));
            for (std::size_t i = 0; i < p->size(); ++i) {
                Vec v = vector_of((*p)[i], "evaluation.points[" + std::to_string(i) + "]");
                if (v.size() != d)
                    bad("evaluation.points", "points need " + std::to_string(d) + " entries");
                cfg.evaluation.points.col(static_cast<Eigen::Index>(i)) = v;
            }
        } else if (const json* g = optional_field(*ev, "grid")) {
            cfg.evaluation.points = grid_points(e, *g);
        } else if (const json* n = optional_field(*ev, "n_samples")) {
            need_seed("random evaluation points");
            cfg.evaluation.n_samples = positive_int(*n, "evaluation.n_samples");
            // uniform points in E
            cfg.evaluation.points = sample(EquilibriumMeasure(double(d), e), cfg.evaluation.n_samples,
                                           *cfg.evaluation.seed ^ 0x70747300ULL)
                                        .points;
        } else {
            bad("evaluation", "needs one of points, grid, n_samples");
        }
        check_interior(e, cfg.evaluation.points);
        const int level = cfg.numerics.quad_level > 0 ? cfg.numerics.quad_level : default_quad_level(d);
        if (method == "closed" || method == "regularized") {
            if (static_cast<double>(sphere_quadrature_size(d, level)) > static_cast<double>(cfg.numerics.node_cap))
                throw ResourceError("quadrature level " + std::to_string(level) + " exceeds the node cap");
        }
        return cfg;
    }

    if (command == "verify-el") {
        need_seed("the Euler-Lagrange check");
        cfg.el.seed = *cfg.evaluation.seed;
        cfg.el.quad_level = cfg.numerics.quad_level;
        if (const json* o = optional_field(doc, "el")) {
            if (const json* v = optional_field(*o, "n_support"))
                cfg.el.n_support = positive_int(*v, "el.n_support", 2);
            if (const json* v = optional_field(*o, "n_grid"))
                cfg.el.n_grid = positive_int(*v, "el.n_grid");
            if (const json* v = optional_field(*o, "mc_samples"))
                cfg.el.mc_samples = positive_int(*v, "el.mc_samples", 1000);
        }
        const int level = cfg.el.quad_level > 0 ? cfg.el.quad_level : default_quad_level(d);
        if (static_cast<double>(sphere_quadrature_size(d, level)) > static_cast<double>(cfg.numerics.node_cap))
            throw ResourceError("quadrature level " + std::to_string(level) + " exceeds the node cap");
        return cfg;
    }

    // energy, sample
    need_seed(command == "energy" ? "energy estimation" : "sampling");
    if (!ev)
        bad("config", "missing field 'evaluation'");
    cfg.evaluation.n_samples =
        positive_int(field(*ev, "n_samples", "evaluation"), "evaluation.n_samples", command == "energy" ? 1000 : 1);
    return cfg;
}

std::uint64_t require_seed(const RunConfig& cfg)
{
    if (!cfg.evaluation.seed)
        throw ConfigError("evaluation.seed is required");
    return *cfg.evaluation.seed;
}

// ---- reports -------------------------------------------------------------------

json to_json(const PotentialEstimate& p)
{
    json j = {{"value", p.value}, {"method", method_name(p.method)}, {"error_bound", p.error_bound}};
    if (!p.detail.empty())
        j["detail"] = p.detail;
    if (!p.notes.empty())
        j["notes"] = p.notes;
    return j;
}

json to_json(const ElReport& r)
{
    return {{"type", "ElReport"},
            {"constant_estimate", r.constant_estimate},
            {"constant_se", r.constant_se},
            {"support_spread", r.support_spread},
            {"spread_threshold", r.spread_threshold},
            {"min_over_E", r.min_over_E},
            {"el1", r.el1},
            {"el2", r.el2},
            {"el3", r.el3},
            {"el2_method", r.el2_method},
            {"el3_method", r.el3_method},
            {"n_support", r.n_support},
            {"n_grid", r.n_grid},
            {"pass", r.pass()}};
}

json to_json(const CounterexampleReport& r)
{
    return {{"type", "CounterexampleReport"},
            {"d", r.d},
            {"s", r.s},
            {"eps", r.eps},
            {"prefactor", r.prefactor},
            {"a_numeric", r.a_numeric},
            {"a_numeric_error", r.a_numeric_error},
            {"a_closed", r.a_closed},
            {"i_values", r.i_values}};
}

json to_json(const EnergyEstimate& e)
{
    return {{"type", "EnergyEstimate"},
            {"value", e.value},
            {"standard_error", e.standard_error},
            {"n", e.n},
            {"pairs", e.pairs}};
}

json to_json(const MinimalityReport& m)
{
    json comps = json::array();
    for (const auto& c : m.competitors)
        comps.push_back({{"name", c.name},
                         {"energy", c.energy},
                         {"difference", c.difference},
                         {"standard_error", c.standard_error},
                         {"beats", c.beats}});
    return {{"type", "MinimalityReport"}, {"base", to_json(m.base)}, {"competitors", comps}, {"beaten_by", m.beaten_by}};
}

ElReport el_report_from_json(const json& j)
{
    try {
        if (j.at("type").get<std::string>() != "ElReport")
            throw ConfigError("not an ElReport");
        ElReport r;
        r.constant_estimate = j.at("constant_estimate").get<double>();
        r.constant_se = j.at("constant_se").get<double>();
        r.support_spread = j.at("support_spread").get<double>();
        r.spread_threshold = j.at("spread_threshold").get<double>();
        r.min_over_E = j.at("min_over_E").get<double>();
        r.el1 = j.at("el1").get<bool>();
        r.el2 = j.at("el2").get<bool>();
        r.el3 = j.at("el3").get<bool>();
        r.el2_method = j.at("el2_method").get<std::string>();
        r.el3_method = j.at("el3_method").get<std::string>();
        r.n_support = j.at("n_support").get<int>();
        r.n_grid = j.at("n_grid").get<int>();
        if (j.at("pass").get<bool>() != r.pass())
            throw ConfigError("ElReport pass flag is inconsistent");
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed ElReport: ") + e.what());
    }
}

CounterexampleReport counterexample_report_from_json(const json& j)
{
    try {
        if (j.at("type").get<std::string>() != "CounterexampleReport")
            throw ConfigError("not a CounterexampleReport");
        CounterexampleReport r;
        r.d = j.at("d").get<int>();
        r.s = j.at("s").get<double>();
        r.eps = j.at("eps").get<double>();
        r.prefactor = j.at("prefactor").get<double>();
        r.a_numeric = j.at("a_numeric").get<double>();
        r.a_numeric_error = j.at("a_numeric_error").get<double>();
        r.a_closed = j.at("a_closed").get<double>();
        r.i_values = j.at("i_values").get<std::array<double, 6>>();
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed CounterexampleReport: ") + e.what());
    }
}

} // namespace riesz
