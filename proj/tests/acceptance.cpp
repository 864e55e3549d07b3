// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "../tools/cli.hpp"
#include "hyperwalk/diagnostics.hpp"
#include "hyperwalk/heat_kernel.hpp"
#include "hyperwalk/quadrature.hpp"
#include "hyperwalk/radial_density.hpp"
#include "hyperwalk/spectral.hpp"
#include "hyperwalk/walk_sim.hpp"

using namespace hyperwalk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string summary;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome gyro_suite() {
    const Verdict v = gyro_property_suite({2, 3, 5}, 10000, 20240601);
    double worst = 0;
    for (const auto& [k, r] : v.details)
        if (k != "non_distributivity_gap" && k != "trials") worst = std::max(worst, r);
    return {v.pass, "max residual " + fmt("%.2e", worst) + ", distributivity gap " +
                        fmt("%.3f", v.details.at("non_distributivity_gap"))};
}

Outcome spherical_functions() {
    double series_gap = 0, closed_gap = 0;
    for (int n : {2, 3, 4, 5})
        for (double lam = 0.0; lam <= 20.0 + 1e-12; lam += 0.25)
            for (double eta = 0.0; eta <= 0.5 + 1e-12; eta += 0.01) {
                const double a = phi_integral(lam, eta, Dimension(n)), b = phi_series(lam, eta, Dimension(n));
                series_gap = std::max(series_gap, std::abs(a - b));
                if (n == 3) {
                    const double c = eta == 0 ? 1.0 : lam == 0 ? eta / std::sinh(eta) : std::sin(lam * eta) / (lam * std::sinh(eta));
                    closed_gap = std::max({closed_gap, std::abs(a - c), std::abs(b - c)});
                }
            }
    return {series_gap < 1e-10 && closed_gap < 1e-12,
            "integral vs series " + fmt("%.2e", series_gap) + ", n=3 closed form " + fmt("%.2e", closed_gap)};
}

Outcome convolution_theorem() {
    double worst = 0;
    for (int n : {2, 3}) {
        const auto f = make_bump(0.6, Dimension(n)), g = make_bump(0.9, Dimension(n));
        const auto h = convolve_profile(f, g);
        for (int i = 0; i < 50; ++i) {
            const double lam = 0.1 * i;
            const double prod = fh_transform(f, lam) * fh_transform(g, lam);
            worst = std::max(worst, std::abs(fh_transform(h, lam) - prod) / std::abs(prod));
        }
    }
    return {worst < 1e-6, "max relative error " + fmt("%.2e", worst) + " over 100 points"};
}

Outcome heat_kernel_pair() {
    double odd = 0, even = 0, mass_gap = 0;
    for (int nd : {2, 3, 5}) {
        const Dimension n(nd);
        for (double t : {0.5, 1.0, 2.0}) {
            const auto F = tabulate_decaying([&](double l) { return hk_fourier(t, l, n); }, n);
            for (int i = 0; i <= 50; ++i) {
                const double eta = 0.1 * i;
                const double d = std::abs(fh_inverse(F, eta) - hk(t, eta, n));
                (n.odd() ? odd : even) = std::max(n.odd() ? odd : even, d);
            }
            const auto r = quad::composite_gauss_legendre(0.0, 12.0 * std::sqrt(t) + 4.0 * nd, 40, 20);
            double m = 0;
            for (std::size_t i = 0; i < r.x.size(); ++i) m += r.w[i] * hk(t, r.x[i], n) * radial_area_weight(r.x[i], n);
            mass_gap = std::max(mass_gap, std::abs(sphere_area(n) * m - 1.0));
        }
    }
    return {odd < 1e-8 && even < 1e-7 && mass_gap < 1e-6,
            "odd " + fmt("%.2e", odd) + ", even " + fmt("%.2e", even) + ", mass " + fmt("%.2e", mass_gap)};
}

Outcome variance_scaling() {
    double additivity = 0;
    for (int n : {2, 3}) {
        const auto f = make_bump(0.6, Dimension(n)), g = make_bump(0.9, Dimension(n));
        additivity = std::max(additivity, std::abs(variance_direct(convolve_profile(f, g)) - variance_direct(f) - variance_direct(g)));
    }
    const auto p = make_bump(1.0, Dimension(3));
    const double target = second_moment(p) / 3.0;
    auto r = [&](double e) { return variance_direct(scale_profile(p, e)) / (e * e); };
    const double r1 = r(0.1), r2 = r(0.05), r4 = r(0.025);
    const double limit = (4 * r4 - r2) / 3;
    const double order = (r1 - r2) / (r2 - r4);  // 4 for an O(ε²) correction
    const double near = std::abs(r2 / limit - 1.0);
    const double lim_err = std::abs(limit / target - 1.0);
    const bool pass = additivity < 1e-6 && near < 0.01 && lim_err < 1e-5 && std::abs(order - 4.0) < 0.5;
    return {pass, "additivity " + fmt("%.2e", additivity) + ", ratio at 0.05 off limit by " + fmt("%.2e", near) +
                      ", limit vs m2/n " + fmt("%.2e", lim_err) + ", error ratio " + fmt("%.3f", order)};
}

Outcome variance_rate() {
    const Verdict v = variance_rate_check(make_bump(1.0, Dimension(3)), {4, 16, 64, 256, 1024});
    const double s = *v.fitted_slope;
    return {s >= -1.5 && s <= -0.8, "slope " + fmt("%.4f", s)};
}

Outcome clt() {
    WalkConfig cfg{make_bump(1.0, Dimension(3))};
    cfg.steps = 1000;
    cfg.paths = 100000;
    cfg.scaling = Scaling::clt;
    cfg.master_seed = 7;
    const WalkEnsemble e = run_walk(cfg);
    const Verdict good = clt_check_ensemble(e);
    CltOptions wrong;
    wrong.t_scale = 2.0;
    const Verdict bad = clt_check_ensemble(e, wrong);
    return {good.statistic < 0.01 && bad.statistic > 0.05,
            "KS " + fmt("%.4f", good.statistic) + ", doubled-t KS " + fmt("%.4f", bad.statistic)};
}

Outcome llt() {
    const Verdict v = llt_check(make_bump(1.0, Dimension(3)), {16, 32, 64, 128, 256});
    const double s = *v.fitted_slope;
    const bool monotone = v.details.at("monotone") == 1.0;
    return {s >= -1.3 && s <= -0.8 && monotone,
            "slope " + fmt("%.4f", s) + ", E(16) " + fmt("%.3e", v.details.at("E(16)")) + ", E(256) " +
                fmt("%.3e", v.details.at("E(256)")) + (monotone ? ", monotone" : ", not monotone")};
}

Outcome lln() {
    const Verdict v = lln_check(make_bump(1.0, Dimension(3)), {100, 1000, 10000}, 10000, 11);
    const double last = v.details.at("mean(10000)"), single = v.details.at("single_step_mean");
    const bool decreasing = v.details.at("decreasing") == 1.0;
    return {decreasing && last < 0.1 * single,
            "mean radius " + fmt("%.4f", v.details.at("mean(100)")) + " -> " + fmt("%.4f", v.details.at("mean(1000)")) +
                " -> " + fmt("%.5f", last) + ", ratio to single step " + fmt("%.4f", last / single)};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome reproducibility() {
    const fs::path dir = fs::temp_directory_path() / ("hyperwalk_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cfg = std::string(HYPERWALK_CONFIG_DIR);
    const std::vector<std::vector<std::string>> commands = {
        {"walk", "--dim", "3", "--density", "bump:1", "--N", "500", "--paths", "4000", "--seed", "3", "--scaling", "clt"},
        {"walk", "--dim", "2", "--density", "bump:0.8", "--N", "300", "--paths", "2000", "--seed", "9", "--scaling", "sturm"},
        {"verify", "clt", "--config", cfg + "/smoke_clt.json"},
        {"verify", "llt", "--config", cfg + "/default_llt.json"},
        {"verify", "variance", "--config", cfg + "/default_variance.json"},
    };
    int compared = 0, identical = 0;
    for (std::size_t c = 0; c < commands.size(); ++c) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "3"}) {
            ::setenv("HYPERWALK_THREADS", threads, 1);
            const fs::path out = dir / ("run" + std::to_string(c) + "_" + threads);
            auto args = commands[c];
            args.insert(args.end(), {"--out", out.string()});
            std::ostringstream o, e;
            cli::run_cli(args, o, e);
            std::string bytes = slurp(out);
            if (fs::exists(out.string() + ".json")) bytes += slurp(out.string() + ".json");
            outputs.push_back(bytes);
        }
        ++compared;
        if (!outputs[0].empty() && outputs[0] == outputs[1]) ++identical;
    }
    ::unsetenv("HYPERWALK_THREADS");
    fs::remove_all(dir);
    return {identical == compared,
            std::to_string(identical) + "/" + std::to_string(compared) + " commands byte-identical at 1 vs 3 threads"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"gyrogroup property suite", 10, gyro_suite},
        {"spherical function representations", 30, spherical_functions},
        {"convolution theorem", 120, convolution_theorem},
        {"heat kernel Fourier pair and mass", 60, heat_kernel_pair},
        {"variance additivity and scaling", 600, variance_scaling},
        {"variance convergence rate", 600, variance_rate},
        {"central limit theorem", 300, clt},
        {"local limit theorem rate", 600, llt},
        {"law of large numbers", 600, lln},
        {"reproducibility across thread counts", 600, reproducibility},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > criteria[i].budget_seconds) {
            o.pass = false;
            o.summary += ", over time budget";
        }
        if (!o.pass) ++failures;
        std::printf("%s  %2zu. %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.summary.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
