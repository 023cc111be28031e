#include "gmc/config.hpp"

#include "gmc/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gmc {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kGlobalKeys{"seed", "workers", "out"};
const std::set<std::string> kExperimentKeys{
    "gamma", "N_schedule", "M",      "replicas", "seed",       "radii",
    "p",     "beta_list",  "s_list", "delta",    "workers",    "angles",
    "interval_M", "interval_eps_cells", "levels"};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw)
{
    const std::string s = trim(raw);
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("bad value for '" + key + "': '" + raw + "'");
    return v;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& raw)
{
    std::vector<T> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty())
            out.push_back(parse_number<T>(key, item));
    return out;
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string list(const std::vector<T>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        if constexpr (std::is_floating_point_v<T>)
            s += num(v[i]);
        else
            s += std::to_string(v[i]);
    }
    return s;
}

void apply_experiment_key(ExperimentConfig& c, const std::string& key, const std::string& v)
{
    if (key == "gamma")
        c.gamma = parse_number<double>(key, v);
    else if (key == "N_schedule")
        c.N_schedule = parse_list<int>(key, v);
    else if (key == "M")
        c.M = parse_number<std::size_t>(key, v);
    else if (key == "replicas")
        c.replicas = parse_number<std::size_t>(key, v);
    else if (key == "seed")
        c.master_seed = parse_number<std::uint64_t>(key, v);
    else if (key == "radii")
        c.radii = parse_list<double>(key, v);
    else if (key == "p")
        c.p = parse_number<double>(key, v);
    else if (key == "beta_list")
        c.beta_list = parse_list<double>(key, v);
    else if (key == "s_list")
        c.s_list = parse_list<double>(key, v);
    else if (key == "delta")
        c.delta = parse_number<double>(key, v);
    else if (key == "workers")
        c.workers = parse_number<int>(key, v);
    else if (key == "angles")
        c.angles = parse_number<int>(key, v);
    else if (key == "interval_M")
        c.interval_M = parse_number<std::size_t>(key, v);
    else if (key == "interval_eps_cells")
        c.interval_eps_cells = parse_number<double>(key, v);
    else if (key == "levels")
        c.levels = parse_number<int>(key, v);
}

bool is_experiment(const std::string& name)
{
    for (const auto& n : experiment_names())
        if (n == name)
            return true;
    return false;
}

}  // namespace

RunConfig RunConfig::defaults()
{
    RunConfig c;
    for (const auto& name : experiment_names()) {
        c.experiments[name] = default_config(name);
        c.experiments[name].master_seed = c.seed;
    }
    return c;
}

const ExperimentConfig& RunConfig::experiment(const std::string& name) const
{
    const auto it = experiments.find(name);
    if (it == experiments.end())
        throw ConfigError("unknown experiment '" + name + "'");
    return it->second;
}

RunConfig parse_config(const std::string& ini_text, const std::vector<std::string>& overrides)
{
    pt::ptree tree;
    try {
        std::istringstream in(ini_text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        const auto dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigError("override must look like section.key=value: '" + o + "'");
        const std::string section = trim(o.substr(0, dot));
        const std::string key = trim(o.substr(dot + 1, eq - dot - 1));
        tree.put_child(pt::ptree::path_type(section + '\x1f' + key, '\x1f'),
                       pt::ptree(trim(o.substr(eq + 1))));
    }

    std::vector<std::string> unknown;
    for (const auto& [section, body] : tree) {
        const bool global = section == "global";
        if (!global && !is_experiment(section)) {
            unknown.push_back("[" + section + "]");
            continue;
        }
        for (const auto& kv : body)
            if (!(global ? kGlobalKeys : kExperimentKeys).count(kv.first))
                unknown.push_back(section + "." + kv.first);
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& u : unknown)
            msg += " " + u;
        throw ConfigError(msg);
    }

    RunConfig cfg;
    if (const auto g = tree.get_child_optional("global")) {
        for (const auto& [key, node] : *g) {
            const std::string v = node.data();
            if (key == "seed")
                cfg.seed = parse_number<std::uint64_t>(key, v);
            else if (key == "workers")
                cfg.workers = parse_number<int>(key, v);
            else
                cfg.out = trim(v);
        }
    }
    for (const auto& name : experiment_names()) {
        ExperimentConfig e = default_config(name);
        e.master_seed = cfg.seed;
        e.workers = cfg.workers;
        if (const auto s = tree.get_child_optional(pt::ptree::path_type(name, '\x1f')))
            for (const auto& [key, node] : *s)
                apply_experiment_key(e, key, node.data());
        cfg.experiments[name] = std::move(e);
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    if (path.empty())
        return parse_config("", overrides);
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string serialize_config(const RunConfig& cfg)
{
    std::ostringstream o;
    o << "[global]\nseed = " << cfg.seed << "\nworkers = " << cfg.workers << "\nout = " << cfg.out
      << "\n";
    for (const auto& [name, e] : cfg.experiments) {
        o << "\n[" << name << "]\n"
          << "gamma = " << num(e.gamma) << "\n"
          << "N_schedule = " << list(e.N_schedule) << "\n"
          << "M = " << e.M << "\n"
          << "replicas = " << e.replicas << "\n"
          << "seed = " << e.master_seed << "\n"
          << "radii = " << list(e.radii) << "\n"
          << "p = " << num(e.p) << "\n"
          << "beta_list = " << list(e.beta_list) << "\n"
          << "s_list = " << list(e.s_list) << "\n"
          << "delta = " << num(e.delta) << "\n"
          << "workers = " << e.workers << "\n"
          << "angles = " << e.angles << "\n"
          << "interval_M = " << e.interval_M << "\n"
          << "interval_eps_cells = " << num(e.interval_eps_cells) << "\n"
          << "levels = " << e.levels << "\n";
    }
    return o.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b)
{
    return a.gamma == b.gamma && a.N_schedule == b.N_schedule && a.M == b.M &&
           a.replicas == b.replicas && a.master_seed == b.master_seed && a.radii == b.radii &&
           a.p == b.p && a.beta_list == b.beta_list && a.s_list == b.s_list &&
           a.delta == b.delta && a.workers == b.workers && a.angles == b.angles &&
           a.interval_M == b.interval_M && a.interval_eps_cells == b.interval_eps_cells &&
           a.levels == b.levels;
}

bool operator==(const RunConfig& a, const RunConfig& b)
{
    return a.seed == b.seed && a.workers == b.workers && a.out == b.out &&
           a.experiments == b.experiments;
}

}  // namespace gmc
