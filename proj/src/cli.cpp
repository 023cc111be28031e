#include "gmc/cli.hpp"

#include "gmc/chaos.hpp"
#include "gmc/clark.hpp"
#include "gmc/decomp.hpp"
#include "gmc/errors.hpp"
#include "gmc/field.hpp"
#include "gmc/rng.hpp"
#include "gmc/zeros.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gmc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << text;
}

// "theta:mass,theta:mass,..."
std::pair<std::vector<double>, std::vector<double>> parse_atoms(const std::string& spec)
{
    std::vector<double> theta, mass;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("atom must look like theta:mass, got '" + item + "'");
        try {
            theta.push_back(std::stod(item.substr(0, colon)));
            mass.push_back(std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ConfigError("bad atom '" + item + "'");
        }
    }
    if (theta.empty())
        throw ConfigError("empty atom list");
    return {theta, mass};
}

struct MeasureOptions {
    std::string atoms;
    int N = 256;
    std::size_t M = 0;
    double gamma = 1.0;
    std::size_t index = 0;

    void add(CLI::App* app)
    {
        app->add_option("--atoms", atoms, "explicit atoms theta:mass,...");
        app->add_option("--N", N, "truncation of the canonical field");
        app->add_option("--M", M, "grid size (default 4N)");
        app->add_option("--gamma", gamma, "chaos parameter");
        app->add_option("--index", index, "replica index for the seed derivation");
    }
    GridSpec grid() const { return GridSpec::circle(M ? M : 4 * static_cast<std::size_t>(N)); }
    ChaosMeasure measure(std::uint64_t seed) const
    {
        Rng rng(derive_seed(seed, stream::field, index));
        return build_measure(sample_canonical(N, grid(), rng), gamma);
    }
    InnerFunctionEval evaluator(std::uint64_t seed) const
    {
        if (!atoms.empty()) {
            auto [t, m] = parse_atoms(atoms);
            return InnerFunctionEval(std::move(t), std::move(m));
        }
        return InnerFunctionEval(measure(seed));
    }
};

std::string manifest_json(const RunConfig& cfg, const std::string& start,
                          const std::vector<std::pair<std::string, std::vector<fs::path>>>& outs)
{
    json m;
    m["version"] = GMC_VERSION;
    m["master_seed"] = cfg.seed;
    m["config"] = serialize_config(cfg);
    m["start"] = start;
    m["end"] = utc_now();
    json o = json::object();
    for (const auto& [name, paths] : outs) {
        json list = json::array();
        for (const auto& p : paths)
            list.push_back(p.string());
        o[name] = list;
    }
    m["outputs"] = o;
    return m.dump(2) + "\n";
}

}  // namespace

std::string result_csv(const ExperimentResult& res)
{
    std::string s;
    if (!res.rows.empty()) {
        for (const auto& [k, v] : res.rows.front().params)
            s += k + ",";
        s += "estimate,se,replicas\n";
    }
    for (const auto& row : res.rows) {
        for (const auto& [k, v] : row.params)
            s += num(v) + ",";
        s += num(row.estimate) + "," + num(row.se) + "," + std::to_string(row.replicas) + "\n";
    }
    return s;
}

std::string result_jsonl(const ExperimentResult& res)
{
    std::string s;
    for (const auto& row : res.rows) {
        json j;
        j["experiment"] = row.experiment;
        json params = json::object();
        for (const auto& [k, v] : row.params)
            params[k] = v;
        j["params"] = params;
        j["estimate"] = row.estimate;
        j["se"] = row.se;
        j["replicas"] = row.replicas;
        j["seed"] = row.seed;
        j["wall_time"] = row.wall_time;
        s += j.dump() + "\n";
    }
    json summary = json::object();
    for (const auto& [k, v] : res.summary)
        summary[k] = v;
    s += json{{"experiment", res.name}, {"summary", summary}}.dump() + "\n";
    return s;
}

std::vector<fs::path> write_result(const ExperimentResult& res, const fs::path& dir)
{
    fs::create_directories(dir);
    const fs::path csv = dir / (res.name + ".csv"), jsonl = dir / (res.name + ".jsonl");
    write_file(csv, result_csv(res));
    write_file(jsonl, result_jsonl(res));
    return {csv, jsonl};
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"Random inner functions from Gaussian multiplicative chaos"};
    app.require_subcommand(1);
    app.set_version_flag("--version", GMC_VERSION);

    std::string config_path, out_dir;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    app.add_option("--config", config_path, "ini config file");
    app.add_option("--seed", seed, "master seed (overrides the config)");
    app.add_option("--workers", workers, "worker threads, 0 = all");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--override", overrides, "section.key=value, repeatable");

    auto* sample = app.add_subcommand("sample-field", "write sampled field rows");
    int sf_N = 64, sf_rows = 1;
    std::size_t sf_M = 0;
    std::string sf_kernel = "canonical";
    double sf_eps = 0.0;
    sample->add_option("--N", sf_N, "truncation");
    sample->add_option("--M", sf_M, "grid size (default 4N)");
    sample->add_option("--kernel", sf_kernel, "canonical | exact_scaling");
    sample->add_option("--eps", sf_eps, "exact-scaling cutoff (default 2/M)");
    sample->add_option("--rows", sf_rows, "number of replicas");

    auto* dump = app.add_subcommand("dump-measure", "write the atoms of one chaos measure");
    MeasureOptions dump_opts;
    dump_opts.add(dump);

    auto* eval = app.add_subcommand("eval-phi", "evaluate h and phi at a point");
    MeasureOptions eval_opts;
    eval_opts.add(eval);
    std::vector<double> at;
    eval->add_option("--at", at, "x,y")->required()->expected(2)->delimiter(',');

    auto* zeros = app.add_subcommand("find-zeros", "locate the zeros of phi");
    MeasureOptions zero_opts;
    zero_opts.add(zeros);
    double r_max = 0.9;
    zeros->add_option("--rmax,--r-max", r_max, "search radius");

    auto* decompose = app.add_subcommand("decompose", "rank-two decomposition of a kernel");
    std::string g_spec;
    int degree = -1, dec_N = 256;
    decompose->add_option("--g-spec", g_spec, "file of 'i j value' lines (trig basis)");
    decompose->add_option("--degree", degree, "basis degree D (default deg g + 2)");
    decompose->add_option("--N", dec_N, "grid resolution parameter");

    auto* experiment = app.add_subcommand("experiment", "run one experiment");
    std::string exp_name;
    experiment->add_option("name", exp_name, "experiment name")
        ->required()
        ->check(CLI::IsMember(experiment_names()));
    auto* all = app.add_subcommand("all", "run every experiment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path, overrides);
        if (seed)
            cfg.seed = *seed;
        if (workers)
            cfg.workers = *workers;
        for (auto& [name, e] : cfg.experiments) {
            if (seed)
                e.master_seed = *seed;
            if (workers)
                e.workers = *workers;
        }
        if (!out_dir.empty())
            cfg.out = out_dir;
        const fs::path out = cfg.out;
        const std::string start = utc_now();

        if (sample->parsed()) {
            const std::size_t M = sf_M ? sf_M : 4 * static_cast<std::size_t>(sf_N);
            const KernelKind kind = kernel_kind_from_string(sf_kernel);
            std::string text;
            if (kind == KernelKind::exact_scaling) {
                const GridSpec grid = GridSpec::interval(M);
                const ExactScalingSampler s(sf_eps > 0 ? sf_eps : 2.0 * grid.spacing(), grid);
                for (int r = 0; r < sf_rows; ++r) {
                    Rng rng(derive_seed(cfg.seed, stream::field, static_cast<std::uint64_t>(r)));
                    text += serialize_row(s.sample(rng)) + "\n";
                }
            } else if (kind == KernelKind::canonical) {
                for (int r = 0; r < sf_rows; ++r) {
                    Rng rng(derive_seed(cfg.seed, stream::field, static_cast<std::uint64_t>(r)));
                    text += serialize_row(sample_canonical(sf_N, GridSpec::circle(M), rng)) + "\n";
                }
            } else {
                throw ConfigError("sample-field supports canonical and exact_scaling kernels");
            }
            fs::create_directories(out);
            write_file(out / "field.txt", text);
            std::cout << (out / "field.txt").string() << "\n";
        } else if (dump->parsed()) {
            const ChaosMeasure mu = dump_opts.measure(cfg.seed);
            std::string text = "theta,weight\n";
            for (std::size_t j = 0; j < mu.grid().M; ++j)
                text += num(mu.position(j)) + "," + num(mu.weights()[j]) + "\n";
            fs::create_directories(out);
            write_file(out / "measure.csv", text);
            std::cout << (out / "measure.csv").string() << " total_mass=" << num(mu.total_mass())
                      << "\n";
        } else if (eval->parsed()) {
            const InnerFunctionEval f = eval_opts.evaluator(cfg.seed);
            const cplx z(at[0], at[1]);
            const cplx h = f.herglotz(z), phi = f.phi(z);
            std::printf("h=%.15g%+.15gi\nphi=%.15g%+.15gi\nx=%.15g\ny=%.15g\nlog|phi|=%.15g\n",
                        h.real(), h.imag(), phi.real(), phi.imag(), f.poisson_x(z),
                        f.conj_poisson_y(z), f.log_abs_phi(z));
        } else if (zeros->parsed()) {
            const InnerFunctionEval f = zero_opts.evaluator(cfg.seed);
            const ZeroSet zs = locate_zeros(f, r_max);
            std::string text = "re,im,multiplicity,one_minus_abs\n";
            for (const auto& z : zs.zeros)
                text += num(z.z.real()) + "," + num(z.z.imag()) + "," +
                        std::to_string(z.multiplicity) + "," + num(1.0 - std::abs(z.z)) + "\n";
            fs::create_directories(out);
            write_file(out / "zeros.csv", text);
            std::cout << (out / "zeros.csv").string() << " zeros=" << zs.total_multiplicity()
                      << " complete=" << (zs.complete ? "true" : "false") << "\n";
        } else if (decompose->parsed()) {
            std::vector<std::array<double, 3>> entries;
            int dim = 1;
            if (!g_spec.empty()) {
                std::ifstream in(g_spec);
                if (!in)
                    throw ConfigError("cannot read g-spec file '" + g_spec + "'");
                double i, j, v;
                while (in >> i >> j >> v) {
                    if (i < 0 || j < 0)
                        throw ConfigError("negative index in g-spec");
                    entries.push_back({i, j, v});
                    dim = std::max(dim, static_cast<int>(std::max(i, j)) + 1);
                }
            }
            if (dim % 2 == 0)
                ++dim;
            Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
            for (const auto& [i, j, v] : entries) {
                g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            }
            int D = degree >= 0 ? degree : dim / 2 + 2;
            OperatorGrid op = build_operators(g, D);
            auto psi = deficiency_constraints(op);
            if (degree < 0 && static_cast<int>(psi.size()) + 2 > D) {
                D = static_cast<int>(psi.size()) + 2;
                op = build_operators(g, D);
                psi = deficiency_constraints(op);
            }
            for (const auto& w : op.warnings)
                std::cerr << "warning: " << w << "\n";
            const GridSpec grid = GridSpec::circle(4 * static_cast<std::size_t>(dec_N));
            const PerturbFunctions pf = find_f1_f2(op, psi, D, grid);
            std::string text = "index,f1,f2\n", f1s, f2s;
            for (std::size_t k = 0; k < pf.f1.coeffs().size(); ++k) {
                text += std::to_string(k) + "," + num(pf.f1.coeffs()[k]) + "," +
                        num(pf.f2.coeffs()[k]) + "\n";
                f1s += (k ? " " : "") + num(pf.f1.coeffs()[k]);
                f2s += (k ? " " : "") + num(pf.f2.coeffs()[k]);
            }
            fs::create_directories(out);
            write_file(out / "decomposition.csv", text);
            std::printf("l=%zu\nD=%d\nf1=%s\nf2=%s\neps1=%.12g\neps2=%.12g\nA_inf=%.12g\n"
                        "residual_min_eig=%.6g\n",
                        psi.size(), D, f1s.c_str(), f2s.c_str(), pf.eps1, pf.eps2, pf.A_inf,
                        pf.residual_min_eig);
        } else {
            std::vector<std::string> names;
            if (all->parsed())
                names = experiment_names();
            else
                names = {exp_name};
            std::vector<std::pair<std::string, std::vector<fs::path>>> outputs;
            for (const auto& name : names) {
                const ExperimentResult res = run_experiment(name, cfg.experiment(name));
                outputs.emplace_back(name, write_result(res, out));
                std::cout << res.summary_line() << "\n";
            }
            write_file(out / "manifest.json", manifest_json(cfg, start, outputs));
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gmc
