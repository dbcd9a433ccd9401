#include "wgm/run_config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wgm {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed)
{
    if (!obj.is_object()) throw ValidationError(where + " must be an object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ValidationError("unknown key '" + item.key() + "' in " + where);
}

double get_number(const json& v, const std::string& where)
{
    if (!v.is_number()) throw ValidationError(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(where + " must be finite");
    return x;
}

int get_int(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) throw ValidationError(where + " must be an integer");
    return v.get<int>();
}

template <class T, class Get>
std::vector<T> get_list(const json& v, const std::string& where, Get get)
{
    if (!v.is_array()) throw ValidationError(where + " must be an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

PotentialSpec parse_potential(const json& p)
{
    reject_unknown(p, "potential", {"terms", "b0"});
    if (!p.contains("terms")) throw ValidationError("potential.terms is required");
    if (!p.contains("b0")) throw ValidationError("potential.b0 is required");
    const json& terms = p["terms"];
    if (!terms.is_array()) throw ValidationError("potential.terms must be an array");
    std::vector<PotentialTerm> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string where = "potential.terms[" + std::to_string(i) + "]";
        reject_unknown(terms[i], where, {"b", "p"});
        if (!terms[i].contains("b") || !terms[i].contains("p"))
            throw ValidationError(where + " needs both b and p");
        out.push_back({get_number(terms[i]["b"], where + ".b"), get_number(terms[i]["p"], where + ".p")});
    }
    return PotentialSpec(std::move(out), get_number(p["b0"], "potential.b0"));
}

}  // namespace

RunConfig parse_run_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "config", {"potential", "solve", "sweep", "linear"});
    RunConfig cfg;
    if (root.contains("potential")) cfg.potential = parse_potential(root["potential"]);

    if (root.contains("solve")) {
        const json& s = root["solve"];
        reject_unknown(s, "solve", {"n", "delta", "m_max", "k_max", "tol", "max_iter"});
        if (s.contains("n")) cfg.solve.n = get_int(s["n"], "solve.n");
        if (s.contains("delta")) cfg.solve.delta = get_number(s["delta"], "solve.delta");
        if (s.contains("m_max")) cfg.solve.m_max = get_int(s["m_max"], "solve.m_max");
        if (s.contains("k_max")) cfg.solve.k_max = get_int(s["k_max"], "solve.k_max");
        if (s.contains("tol")) cfg.solve.tol = get_number(s["tol"], "solve.tol");
        if (s.contains("max_iter")) cfg.solve.max_iter = get_int(s["max_iter"], "solve.max_iter");
        if (cfg.solve.n < 1) throw ValidationError("solve.n must be at least 1");
        if (!(cfg.solve.delta > 0.0)) throw ValidationError("solve.delta must be positive");
        if (cfg.solve.m_max < 0 || (cfg.solve.m_max > 0 && cfg.solve.m_max < cfg.solve.n))
            throw ValidationError("solve.m_max must be at least n");
        if (cfg.solve.k_max < 2) throw ValidationError("solve.k_max must be at least 2");
        if (!(cfg.solve.tol > 0.0)) throw ValidationError("solve.tol must be positive");
        if (cfg.solve.max_iter < 1) throw ValidationError("solve.max_iter must be positive");
    }

    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        reject_unknown(s, "sweep", {"n_list", "tau_list", "delta"});
        if (s.contains("n_list")) cfg.sweep.n_list = get_list<int>(s["n_list"], "sweep.n_list", get_int);
        if (s.contains("tau_list"))
            cfg.sweep.tau_list = get_list<double>(s["tau_list"], "sweep.tau_list", get_number);
        if (s.contains("delta")) cfg.sweep.delta = get_number(s["delta"], "sweep.delta");
        for (int n : cfg.sweep.n_list)
            if (n < 1) throw ValidationError("sweep.n_list entries must be at least 1");
        for (double t : cfg.sweep.tau_list)
            if (!(t > 0.0 && t <= 1.0)) throw ValidationError("sweep.tau_list entries must lie in (0, 1]");
        if (!(cfg.sweep.delta > 0.0)) throw ValidationError("sweep.delta must be positive");
    }

    if (root.contains("linear")) {
        const json& s = root["linear"];
        reject_unknown(s, "linear", {"d", "nu_min", "nu_max", "p_list"});
        if (s.contains("d")) cfg.linear.d = get_int(s["d"], "linear.d");
        if (s.contains("nu_min")) cfg.linear.nu_min = get_number(s["nu_min"], "linear.nu_min");
        if (s.contains("nu_max")) cfg.linear.nu_max = get_number(s["nu_max"], "linear.nu_max");
        if (s.contains("p_list")) cfg.linear.p_list = get_list<double>(s["p_list"], "linear.p_list", get_number);
        if (cfg.linear.d != 2 && cfg.linear.d != 3) throw ValidationError("linear.d must be 2 or 3");
        if (cfg.linear.nu_min < 0.0) throw ValidationError("linear.nu_min must be nonnegative");
        for (double p : cfg.linear.p_list)
            if (!(p >= 2.0)) throw ValidationError("linear.p_list entries must be at least 2");
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str());
}

}  // namespace wgm
