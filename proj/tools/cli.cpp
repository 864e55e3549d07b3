#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "hyperwalk/diagnostics.hpp"
#include "hyperwalk/errors.hpp"
#include "hyperwalk/heat_kernel.hpp"
#include "hyperwalk/io.hpp"
#include "hyperwalk/spectral.hpp"
#include "hyperwalk/walk_sim.hpp"

namespace hyperwalk::cli {

using nlohmann::json;

namespace {

// Usage and configuration problems map to exit 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double to_number(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("bad number '" + s + "'");
    return v;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    f << text;
}

void write_sidecar(const std::string& out_path, const std::string& command, const json& config) {
    if (out_path.empty() || out_path == "-") return;
    json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = config.value("seed", json(nullptr));
    j["version"] = io::version();
    std::ofstream f(out_path + ".json", std::ios::binary);
    if (!f) throw UsageError("cannot open sidecar file '" + out_path + ".json'");
    f << j.dump(2) << "\n";
}

std::string density_text(const json& d) { return d.is_string() ? d.get<std::string>() : d.dump(); }

RadialProfile load_density(const std::string& spec, int dim) {
    // a path to a JSON file is accepted as well as inline text
    if (!spec.empty() && spec.front() != '{' && spec.rfind("bump:", 0) != 0) {
        std::ifstream f(spec);
        if (!f) throw UsageError("density argument '" + spec + "' is not bump:<eta_max>, JSON, or a readable file");
        std::stringstream ss;
        ss << f.rdbuf();
        return io::parse_density(ss.str(), dim);
    }
    return io::parse_density(spec, dim);
}

json read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) throw UsageError(what + " config must be a JSON object");
    for (const auto& [k, _] : j.items())
        if (!allowed.count(k)) throw UsageError("unknown key '" + k + "' in " + what + " config");
}

template <class T>
T need(const json& j, const char* key) {
    if (!j.contains(key)) throw UsageError(std::string("missing config key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
    }
}

template <class T>
T opt(const json& j, const char* key, T fallback) {
    return j.contains(key) ? need<T>(j, key) : fallback;
}

std::string csv_of(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    return io::csv(header, rows);
}

// ---- subcommands ----

int cmd_props(const std::vector<int>& dims, long long trials, std::uint64_t seed, const std::string& out_path,
              std::ostream& out) {
    for (int d : dims) Dimension{d};
    if (trials < 1) throw UsageError("--trials must be >= 1");
    const Verdict v = gyro_property_suite(dims, trials, seed);
    json cfg{{"dims", dims}, {"trials", trials}, {"seed", seed}};
    emit(out_path, io::verdict_to_json(v, cfg.dump()) + "\n", out);
    return v.pass ? kOk : kFailure;
}

int cmd_transform(int dim, const std::string& density, const std::string& lambdas, const std::string& out_path,
                  std::ostream& out) {
    const RadialProfile p = load_density(density, dim);
    const auto grid = parse_grid(lambdas);
    const double f0 = fh_transform(p, 0.0);
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (double l : grid) {
        const double f = fh_transform(p, l);
        rows.push_back({l, f, f / f0});
    }
    emit(out_path, csv_of({"lambda", "fhat", "char2"}, rows), out);
    write_sidecar(out_path, "transform", json{{"dim", dim}, {"density", density}, {"lambda", lambdas}});
    return kOk;
}

int cmd_heat_kernel(int dim, double t, const std::string& etas, const std::string& out_path, std::ostream& out) {
    const Dimension n(dim);
    if (!(t > 0.0)) throw UsageError("--t must be > 0");
    const auto grid = parse_grid(etas);
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (double e : grid) {
        if (e < 0.0) throw UsageError("eta grid must be >= 0");
        rows.push_back({e, hk(t, e, n), psi_clt(t, e, n)});
    }
    emit(out_path, csv_of({"eta", "psi", "Psi"}, rows), out);
    write_sidecar(out_path, "heat-kernel", json{{"dim", dim}, {"t", t}, {"eta", etas}});
    return kOk;
}

int cmd_walk(int dim, const std::string& density, long long N, long long paths, std::uint64_t seed,
             const std::string& scaling, const std::string& out_path, std::ostream& out) {
    if (N < 1) throw UsageError("--N must be >= 1");
    if (paths < 1) throw UsageError("--paths must be >= 1");
    Scaling sc;
    try {
        sc = parse_scaling(scaling);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    WalkConfig cfg{load_density(density, dim), N, paths, sc, seed};
    const WalkEnsemble e = run_walk(cfg);
    std::string text = "path,eta\r\n";
    for (std::size_t i = 0; i < e.terminal_etas.size(); ++i)
        text += std::to_string(i) + "," + io::format_double(e.terminal_etas[i]) + "\r\n";
    emit(out_path, text, out);
    write_sidecar(out_path, "walk",
                  json{{"dim", dim}, {"density", density}, {"N", N}, {"paths", paths}, {"seed", seed},
                       {"scaling", scaling}});
    return kOk;
}

int cmd_verify(const std::string& which, const std::string& config_path, const std::string& out_path,
               std::ostream& out) {
    const json cfg = read_config(config_path);
    Verdict v;
    if (which == "clt") {
        only_keys(cfg, {"dim", "density", "N", "paths", "seed", "t_scale", "threshold"}, "clt");
        const int dim = need<int>(cfg, "dim");
        const RadialProfile p = load_density(density_text(need<json>(cfg, "density")), dim);
        CltOptions o;
        o.t_scale = opt<double>(cfg, "t_scale", 1.0);
        o.threshold = opt<double>(cfg, "threshold", 0.01);
        v = clt_check(p, need<long long>(cfg, "N"), need<long long>(cfg, "paths"), need<std::uint64_t>(cfg, "seed"),
                      o);
    } else if (which == "llt") {
        only_keys(cfg, {"dim", "density", "Ns", "t_scale", "grid_points"}, "llt");
        const int dim = need<int>(cfg, "dim");
        const RadialProfile p = load_density(density_text(need<json>(cfg, "density")), dim);
        LltOptions o;
        o.t_scale = opt<double>(cfg, "t_scale", 1.0);
        o.grid_points = opt<int>(cfg, "grid_points", 200);
        v = llt_check(p, need<std::vector<long long>>(cfg, "Ns"), o);
    } else if (which == "lln") {
        only_keys(cfg, {"dim", "density", "Ns", "paths", "seed", "scaling"}, "lln");
        const int dim = need<int>(cfg, "dim");
        const RadialProfile p = load_density(density_text(need<json>(cfg, "density")), dim);
        LlnOptions o;
        try {
            o.scaling = parse_scaling(opt<std::string>(cfg, "scaling", "lln"));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        v = lln_check(p, need<std::vector<long long>>(cfg, "Ns"), need<long long>(cfg, "paths"),
                      need<std::uint64_t>(cfg, "seed"), o);
    } else if (which == "variance") {
        only_keys(cfg, {"dim", "density", "Ns"}, "variance");
        const int dim = need<int>(cfg, "dim");
        const RadialProfile p = load_density(density_text(need<json>(cfg, "density")), dim);
        v = variance_rate_check(p, need<std::vector<long long>>(cfg, "Ns"));
    } else {
        throw UsageError("unknown check '" + which + "'");
    }
    emit(out_path, io::verdict_to_json(v, cfg.dump()) + "\n", out);
    return v.pass ? kOk : kFailure;
}

void error_json(std::ostream& err, const char* kind, const std::string& msg) {
    err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) return {to_number(spec)};
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("grid must be a:b:step");
    const double a = to_number(spec.substr(0, c1));
    const double b = to_number(spec.substr(c1 + 1, c2 - c1 - 1));
    const double h = to_number(spec.substr(c2 + 1));
    if (!(h > 0.0) || !(b >= a)) throw UsageError("grid needs step > 0 and end >= start");
    const auto count = static_cast<long long>(std::floor((b - a) / h + 1e-9)) + 1;
    if (count > 10'000'000) throw UsageError("grid too large");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = a + static_cast<double>(i) * h;
    return g;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random walks on the Poincare ball: simulation, spectral analysis and limit-theorem checks",
                 "hyperwalk"};
    app.require_subcommand(1);

    std::string out_path;
    int dim = 3;
    std::string density = "bump:1.0";
    long long N = 1000, paths = 10000, trials = 10000;
    std::uint64_t seed = 42;
    double t = 1.0;
    std::string lambdas = "0:40:0.1", etas = "0:5:0.01", scaling = "clt", config, check;
    std::vector<int> dims;

    auto* props = app.add_subcommand("props", "run the gyrogroup property suite");
    props->add_option("--dim", dims, "dimension(s), default 2 3 5");
    props->add_option("--trials", trials, "random triples per dimension");
    props->add_option("--seed", seed);
    props->add_option("--out", out_path);

    auto* transform = app.add_subcommand("transform", "Fourier-Helgason transform of a radial density");
    transform->add_option("--dim", dim);
    transform->add_option("--density", density, "bump:<eta_max>, JSON text, or JSON file");
    transform->add_option("--lambda", lambdas, "grid a:b:step or a value");
    transform->add_option("--out", out_path);

    auto* heat = app.add_subcommand("heat-kernel", "heat kernel psi(t,.) and limit density Psi(t,.)");
    heat->add_option("--dim", dim);
    heat->add_option("--t", t);
    heat->add_option("--eta", etas, "grid a:b:step or a value");
    heat->add_option("--out", out_path);

    auto* walk = app.add_subcommand("walk", "simulate terminal positions of a walk");
    walk->add_option("--dim", dim);
    walk->add_option("--density", density);
    walk->add_option("--N", N);
    walk->add_option("--paths", paths);
    walk->add_option("--seed", seed);
    walk->add_option("--scaling", scaling, "clt, lln or sturm");
    walk->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run a limit-theorem check from a JSON config");
    verify->add_option("check", check, "clt, llt, lln or variance")->required();
    verify->add_option("--config", config)->required();
    verify->add_option("--out", out_path);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*props) return cmd_props(dims.empty() ? std::vector<int>{2, 3, 5} : dims, trials, seed, out_path, out);
        if (*transform) return cmd_transform(dim, density, lambdas, out_path, out);
        if (*heat) return cmd_heat_kernel(dim, t, etas, out_path, out);
        if (*walk) return cmd_walk(dim, density, N, paths, seed, scaling, out_path, out);
        if (*verify) return cmd_verify(check, config, out_path, out);
    } catch (const NumericalError& e) {
        error_json(err, "numerical", e.what());
        return kFailure;
    } catch (const DomainError& e) {
        error_json(err, "domain", e.what());
        return kFailure;
    } catch (const std::invalid_argument& e) {
        error_json(err, "usage", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        error_json(err, "internal", e.what());
        return kFailure;
    }
    return kUsage;
}

}  // namespace hyperwalk::cli
