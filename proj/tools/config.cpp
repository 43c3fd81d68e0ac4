#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>

namespace diracred::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || item.key() == a;
        if (!ok) throw CliError(3, "unknown key '" + item.key() + "' in " + ctx);
    }
}

const json& need(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.contains(key)) throw CliError(3, ctx + " requires key '" + key + "'");
    return obj.at(key);
}

double as_double(const json& v, const std::string& ctx) {
    if (!v.is_number()) throw CliError(3, ctx + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& ctx) {
    if (!v.is_number_integer()) throw CliError(3, ctx + " must be an integer");
    return v.get<int>();
}

complexd as_complex(const json& v, const std::string& ctx) {
    if (v.is_number()) return complexd{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return complexd{v[0].get<double>(), v[1].get<double>()};
    throw CliError(3, ctx + " must be a number or [re, im]");
}

ModelKind parse_model(const std::string& s) {
    if (s == "poschl_teller") return ModelKind::poschl_teller;
    if (s == "crossed_combs") return ModelKind::crossed_combs;
    if (s == "soliton") return ModelKind::soliton;
    if (s == "scenario2") return ModelKind::scenario2;
    if (s == "custom") return ModelKind::custom;
    throw CliError(3, "unknown model '" + s + "'");
}

ReductionParams default_reduction(ModelKind m) {
    const double q = pi_v / 4.0;
    switch (m) {
        case ModelKind::poschl_teller: return {q, q, -1};
        case ModelKind::crossed_combs: return {q, 0.0, -1};
        case ModelKind::scenario2: return {q, pi_v / 2.0, 1};
        case ModelKind::soliton:
        case ModelKind::custom:
        case ModelKind::none: break;
    }
    return {q, 0.0, 1};
}

void enforce_fixed(ModelKind m, const ReductionParams& r) {
    const double q = pi_v / 4.0;
    auto fix = [&](bool ok, const char* what) {
        if (!ok)
            throw CliError(2, std::string(model_name(m)) + " fixes " + what);
    };
    switch (m) {
        case ModelKind::poschl_teller:
            fix(r.epsilon == -1, "epsilon = -1");
            break;
        case ModelKind::crossed_combs:
            fix(std::abs(r.tau - q) <= 1e-12, "tau = pi/4");
            fix(r.epsilon == -1, "epsilon = -1");
            break;
        case ModelKind::soliton:
            fix(std::abs(r.tau - q) <= 1e-12, "tau = pi/4");
            fix(r.epsilon == 1, "epsilon = +1");
            break;
        case ModelKind::scenario2:
            fix(std::abs(r.tau - q) <= 1e-12, "tau = pi/4");
            fix(std::abs(r.phi - pi_v / 2.0) <= 1e-12, "phi = pi/2");
            fix(r.epsilon == 1, "epsilon = +1");
            break;
        case ModelKind::custom:
        case ModelKind::none: break;
    }
}

void parse_params(RunConfig& c, const json& p) {
    switch (c.model) {
        case ModelKind::poschl_teller: {
            check_keys(p, {"delta", "delta2", "n_values", "k_y_values"}, "params");
            c.pt_delta = as_double(need(p, "delta", "params"), "params.delta");
            if (p.contains("delta2"))
                c.pt_delta2 = as_double(p.at("delta2"), "params.delta2");
            c.pt_n = {1, 2};
            c.pt_ky = {0.0, 0.5};
            if (p.contains("n_values")) {
                c.pt_n.clear();
                for (const auto& v : p.at("n_values"))
                    c.pt_n.push_back(as_int(v, "params.n_values entry"));
            }
            if (p.contains("k_y_values")) {
                c.pt_ky.clear();
                for (const auto& v : p.at("k_y_values"))
                    c.pt_ky.push_back(as_double(v, "params.k_y_values entry"));
            }
            break;
        }
        case ModelKind::crossed_combs: {
            check_keys(p, {"m1", "omega1", "m2", "omega2"}, "params");
            c.comb1 = {as_double(need(p, "m1", "params"), "params.m1"),
                       as_double(need(p, "omega1", "params"), "params.omega1")};
            c.comb2 = {as_double(need(p, "m2", "params"), "params.m2"),
                       as_double(need(p, "omega2", "params"), "params.omega2")};
            break;
        }
        case ModelKind::soliton: {
            check_keys(p, {"m", "omega", "Delta"}, "params");
            c.sol = {as_double(need(p, "m", "params"), "params.m"),
                     as_double(need(p, "omega", "params"), "params.omega")};
            if (p.contains("Delta"))
                c.sol_Delta = as_double(p.at("Delta"), "params.Delta");
            break;
        }
        case ModelKind::scenario2: {
            check_keys(p, {"delta", "k_y", "V2", "n"}, "params");
            c.s2_delta = as_double(need(p, "delta", "params"), "params.delta");
            c.s2_ky = as_double(need(p, "k_y", "params"), "params.k_y");
            c.s2_V2 = as_double(need(p, "V2", "params"), "params.V2");
            c.s2_n = as_int(need(p, "n", "params"), "params.n");
            break;
        }
        case ModelKind::custom: {
            check_keys(p, {"a1", "b1", "d1", "a2", "b2", "d2"}, "params");
            const char* names[6] = {"a1", "b1", "d1", "a2", "b2", "d2"};
            for (int i = 0; i < 6; ++i)
                c.custom_entries[i] = as_complex(need(p, names[i], "params"),
                                                 std::string("params.") + names[i]);
            break;
        }
        case ModelKind::none:
            throw CliError(3, "'params' given without 'model'");
    }
}

void parse_grid(RunConfig& c, const json& g) {
    if (!g.is_object()) throw CliError(3, "'grid' must be an object");
    if (g.contains("nt")) {
        check_keys(g, {"t_min", "t_max", "nt", "x_min", "x_max", "nx"}, "grid");
        GridTX t;
        t.t_min = as_double(need(g, "t_min", "grid"), "grid.t_min");
        t.t_max = as_double(need(g, "t_max", "grid"), "grid.t_max");
        t.nt = as_int(need(g, "nt", "grid"), "grid.nt");
        t.x_min = as_double(need(g, "x_min", "grid"), "grid.x_min");
        t.x_max = as_double(need(g, "x_max", "grid"), "grid.x_max");
        t.nx = as_int(need(g, "nx", "grid"), "grid.nx");
        t.validate();
        c.gridtx = t;
    } else if (g.contains("ny")) {
        check_keys(g, {"x_min", "x_max", "nx", "y_min", "y_max", "ny"}, "grid");
        Grid2D t;
        t.x_min = as_double(need(g, "x_min", "grid"), "grid.x_min");
        t.x_max = as_double(need(g, "x_max", "grid"), "grid.x_max");
        t.nx = as_int(need(g, "nx", "grid"), "grid.nx");
        t.y_min = as_double(need(g, "y_min", "grid"), "grid.y_min");
        t.y_max = as_double(need(g, "y_max", "grid"), "grid.y_max");
        t.ny = as_int(need(g, "ny", "grid"), "grid.ny");
        t.validate();
        c.grid2 = t;
    } else if (g.contains("n_points")) {
        check_keys(g, {"x_min", "x_max", "n_points"}, "grid");
        Grid1D t;
        t.x_min = as_double(need(g, "x_min", "grid"), "grid.x_min");
        t.x_max = as_double(need(g, "x_max", "grid"), "grid.x_max");
        t.n = as_int(need(g, "n_points", "grid"), "grid.n_points");
        t.validate();
        c.grid1 = t;
    } else {
        throw CliError(3, "'grid' needs n_points (1D), ny (2D), or nt (t,x)");
    }
}

}  // namespace

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::poschl_teller: return "poschl_teller";
        case ModelKind::crossed_combs: return "crossed_combs";
        case ModelKind::soliton: return "soliton";
        case ModelKind::scenario2: return "scenario2";
        case ModelKind::custom: return "custom";
        case ModelKind::none: break;
    }
    return "(none)";
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError(3, "cannot open config: " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw CliError(3, "config parse error: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw CliError(3, "config root must be an object");
    check_keys(doc,
               {"model", "params", "reduction", "grid", "tol", "seed", "epsilon",
                "input", "potential_file", "perturbation"},
               "config");

    RunConfig c;
    c.raw = doc;
    if (doc.contains("model")) {
        if (!doc.at("model").is_string())
            throw CliError(3, "'model' must be a string");
        c.model = parse_model(doc.at("model").get<std::string>());
    }
    c.reduction = default_reduction(c.model);
    if (doc.contains("params")) {
        if (!doc.at("params").is_object())
            throw CliError(3, "'params' must be an object");
        parse_params(c, doc.at("params"));
    } else if (c.model != ModelKind::none) {
        throw CliError(3, "'model' given without 'params'");
    }
    if (doc.contains("reduction")) {
        const json& r = doc.at("reduction");
        if (!r.is_object()) throw CliError(3, "'reduction' must be an object");
        check_keys(r, {"tau", "phi", "epsilon"}, "reduction");
        if (r.contains("tau"))
            c.reduction.tau = as_double(r.at("tau"), "reduction.tau");
        if (r.contains("phi"))
            c.reduction.phi = as_double(r.at("phi"), "reduction.phi");
        if (r.contains("epsilon"))
            c.reduction.epsilon = as_int(r.at("epsilon"), "reduction.epsilon");
        if (c.reduction.epsilon != 1 && c.reduction.epsilon != -1)
            throw CliError(2, "reduction.epsilon must be +1 or -1");
        enforce_fixed(c.model, c.reduction);
    }
    if (doc.contains("grid")) parse_grid(c, doc.at("grid"));
    if (doc.contains("tol")) {
        c.tol = as_double(doc.at("tol"), "tol");
        if (!(*c.tol > 0.0)) throw CliError(2, "tol must be positive");
    }
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned()) throw CliError(3, "'seed' must be a nonnegative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("epsilon")) {
        const int e = as_int(doc.at("epsilon"), "epsilon");
        if (e != 1 && e != -1) throw CliError(2, "epsilon must be +1 or -1");
        c.epsilon_pin = e;
    }
    if (doc.contains("input")) {
        if (!doc.at("input").is_string()) throw CliError(3, "'input' must be a string");
        c.input = doc.at("input").get<std::string>();
    }
    if (doc.contains("potential_file")) {
        if (!doc.at("potential_file").is_string())
            throw CliError(3, "'potential_file' must be a string");
        c.potential_file = doc.at("potential_file").get<std::string>();
    }
    if (doc.contains("perturbation")) {
        const json& p = doc.at("perturbation");
        if (!p.is_object()) throw CliError(3, "'perturbation' must be an object");
        check_keys(p, {"v1", "v2", "v3", "v4"}, "perturbation");
        c.perturb.present = true;
        c.perturb.v1 = as_complex(need(p, "v1", "perturbation"), "perturbation.v1");
        c.perturb.v2 = as_complex(need(p, "v2", "perturbation"), "perturbation.v2");
        c.perturb.v3 = as_complex(need(p, "v3", "perturbation"), "perturbation.v3");
        c.perturb.v4 = as_complex(need(p, "v4", "perturbation"), "perturbation.v4");
    }
    return c;
}

Grid1D grid1_or(const RunConfig& c, const Grid1D& fallback) {
    return c.grid1 ? *c.grid1 : fallback;
}
Grid2D grid2_or(const RunConfig& c, const Grid2D& fallback) {
    return c.grid2 ? *c.grid2 : fallback;
}
GridTX gridtx_or(const RunConfig& c, const GridTX& fallback) {
    return c.gridtx ? *c.gridtx : fallback;
}

}  // namespace diracred::cli
