#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "keps/snapshot.hpp"
#include "presets.hpp"

namespace keps::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": cannot parse '" + v + "' as a number");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": cannot parse '" + v + "' as an integer");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("config key " + key + ": expected true or false, got '" + v + "'");
}

using KeyMap = std::map<std::string, std::string>;

KeyMap tokenize(const std::string& text) {
    KeyMap kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key)) throw ConfigError("config key " + key + " appears more than once");
        kv[key] = value;
    }
    return kv;
}

void apply_keys(RunConfig& cfg, const KeyMap& kv) {
    bool mu_e_given = false;
    for (const auto& [key, v] : kv) {
        if (key == "grid.dim") cfg.dim = parse_int(key, v);
        else if (key == "grid.n") {
            auto items = split_list(v);
            if (items.empty() || items.size() > 3)
                throw ConfigError("grid.n wants 1..3 comma-separated counts");
            cfg.n = {1, 1, 1};
            for (std::size_t a = 0; a < items.size(); ++a) cfg.n[a] = parse_int(key, items[a]);
        } else if (key == "grid.length") {
            auto items = split_list(v);
            if (items.empty() || items.size() > 3)
                throw ConfigError("grid.length wants 1..3 comma-separated extents");
            cfg.length = {1.0, 1.0, 1.0};
            for (std::size_t a = 0; a < items.size(); ++a)
                cfg.length[a] = parse_double(key, items[a]);
        } else if (key == "grid.bc") {
            if (v == "wall") cfg.bc = BcMode::wall;
            else if (v == "periodic") cfg.bc = BcMode::periodic;
            else throw ConfigError("grid.bc must be wall or periodic");
        } else if (key == "params.mu") cfg.params.mu = parse_double(key, v);
        else if (key == "params.mu_t") cfg.params.mu_t = parse_double(key, v);
        else if (key == "params.mu_e") { cfg.params.mu_e = parse_double(key, v); mu_e_given = true; }
        else if (key == "params.c1") cfg.params.c1 = parse_double(key, v);
        else if (key == "params.c2") cfg.params.c2 = parse_double(key, v);
        else if (key == "params.gamma") cfg.params.gamma = parse_double(key, v);
        else if (key == "params.m") cfg.params.m = parse_double(key, v);
        else if (key == "params.c_generic") cfg.params.c_generic = parse_double(key, v);
        else if (key == "time.dt") cfg.dt = parse_double(key, v);
        else if (key == "time.t_end") cfg.t_end = parse_double(key, v);
        else if (key == "time.window") cfg.window = parse_double(key, v);
        else if (key == "picard.tol") cfg.picard_tol = parse_double(key, v);
        else if (key == "picard.max_outer") cfg.max_outer = parse_int(key, v);
        else if (key == "picard.ratio_window") cfg.ratio_window = parse_int(key, v);
        else if (key == "picard.auto_shrink") cfg.auto_shrink = parse_bool(key, v);
        else if (key == "linsolve.tol") cfg.lin_tol = parse_double(key, v);
        else if (key == "linsolve.maxit") cfg.lin_maxit = parse_int(key, v);
        else if (key == "init.preset") cfg.preset = v;
        else if (key == "init.files") {
            auto items = split_list(v);
            if (items.size() != 5)
                throw ConfigError("init.files wants exactly five paths: rho,u,h,k,eps");
            for (int i = 0; i < 5; ++i) cfg.files[i] = items[i];
            cfg.has_files = true;
        } else if (key == "output.dir") cfg.out_dir = v;
        else if (key == "output.dump_every") cfg.dump_every = parse_int(key, v);
        else if (key == "output.norms_every") cfg.norms_every = parse_int(key, v);
        else if (key == "estimate.t1") cfg.estimate_t1 = parse_double(key, v);
        else if (key == "estimate.t2") cfg.estimate_t2 = parse_double(key, v);
        else throw ConfigError("unknown config key: " + key);
    }
    // mu_e is derived from mu + mu_t unless pinned explicitly
    if (!mu_e_given) cfg.params.mu_e = cfg.params.mu + cfg.params.mu_t;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    const KeyMap kv = tokenize(text);
    RunConfig cfg;
    const auto preset_it = kv.find("init.preset");
    if (preset_it != kv.end()) {
        if (!preset_exists(preset_it->second))
            throw ConfigError("unknown preset: " + preset_it->second);
        apply_preset_defaults(cfg, preset_it->second);
    }
    apply_keys(cfg, kv);
    if (!cfg.preset.empty() && cfg.has_files)
        throw ConfigError("init.preset and init.files are mutually exclusive");
    if (cfg.preset.empty() && !cfg.has_files)
        throw ConfigError("one of init.preset or init.files is required");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
    std::string s;
    auto put = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    auto num = [&](double v) { return std::isinf(v) ? std::string("inf") : format_full(v); };

    put("grid.dim", std::to_string(cfg.dim));
    {
        std::string v;
        for (int a = 0; a < cfg.dim; ++a) v += (a ? "," : "") + std::to_string(cfg.n[a]);
        put("grid.n", v);
        v.clear();
        for (int a = 0; a < cfg.dim; ++a) v += (a ? "," : "") + format_full(cfg.length[a]);
        put("grid.length", v);
    }
    put("grid.bc", cfg.bc == BcMode::wall ? "wall" : "periodic");
    put("params.mu", format_full(cfg.params.mu));
    put("params.mu_t", format_full(cfg.params.mu_t));
    put("params.mu_e", format_full(cfg.params.mu_e));
    put("params.c1", format_full(cfg.params.c1));
    put("params.c2", format_full(cfg.params.c2));
    put("params.gamma", format_full(cfg.params.gamma));
    put("params.m", format_full(cfg.params.m));
    put("params.c_generic", format_full(cfg.params.c_generic));
    put("time.dt", format_full(cfg.dt));
    put("time.t_end", format_full(cfg.t_end));
    put("time.window", format_full(cfg.window));
    put("picard.tol", format_full(cfg.picard_tol));
    put("picard.max_outer", std::to_string(cfg.max_outer));
    put("picard.ratio_window", std::to_string(cfg.ratio_window));
    put("picard.auto_shrink", cfg.auto_shrink ? "true" : "false");
    put("linsolve.tol", format_full(cfg.lin_tol));
    put("linsolve.maxit", std::to_string(cfg.lin_maxit));
    if (!cfg.preset.empty()) put("init.preset", cfg.preset);
    if (cfg.has_files) {
        std::string v;
        for (int i = 0; i < 5; ++i) v += (i ? "," : "") + cfg.files[i];
        put("init.files", v);
    }
    put("output.dir", cfg.out_dir);
    put("output.dump_every", std::to_string(cfg.dump_every));
    put("output.norms_every", std::to_string(cfg.norms_every));
    put("estimate.t1", num(cfg.estimate_t1));
    put("estimate.t2", num(cfg.estimate_t2));
    return s;
}

} // namespace keps::cli
