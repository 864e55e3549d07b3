#include "hyperwalk/walk_sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hyperwalk/errors.hpp"
#include "hyperwalk/gyro.hpp"
#include "hyperwalk/quadrature.hpp"

namespace hyperwalk {

std::string to_string(Scaling s) {
    switch (s) {
        case Scaling::clt: return "clt";
        case Scaling::lln: return "lln";
        case Scaling::sturm: return "sturm";
    }
    return "clt";
}

Scaling parse_scaling(const std::string& s) {
    if (s == "clt") return Scaling::clt;
    if (s == "lln") return Scaling::lln;
    if (s == "sturm") return Scaling::sturm;
    throw std::invalid_argument("unknown scaling '" + s + "'");
}

void WalkConfig::validate() const {
    if (steps < 1) throw std::invalid_argument("walk needs N >= 1");
    if (paths < 1) throw std::invalid_argument("walk needs paths >= 1");
}

double WalkConfig::epsilon() const {
    switch (scaling) {
        case Scaling::clt: return 1.0 / std::sqrt(static_cast<double>(steps));
        case Scaling::lln: return 1.0 / static_cast<double>(steps);
        case Scaling::sturm: return 1.0;
    }
    return 1.0;
}

std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path) {
    // splitmix64 finalizer over a Weyl-sequence combination
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (path + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int default_thread_count() {
    if (const char* env = std::getenv("HYPERWALK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 1024));
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

void draw(const RadialProfile& p, double eps, RandomStream& rng, std::span<double> out) {
    const double eta = eps * p.quantile(uniform_open(rng));
    sample_direction(rng, out);
    const double r = radius_of_eta(eta);
    for (double& v : out) v *= r;
}

// Terminal point of one path, written to `acc`.
void simulate_path(const WalkConfig& cfg, std::uint64_t path, std::vector<double>& acc, std::vector<double>& z,
                   std::vector<double>& tmp, std::vector<double>& pool) {
    const std::size_t n = acc.size();
    RandomStream rng(path_seed(cfg.master_seed, path));
    const double eps = cfg.epsilon();
    std::fill(acc.begin(), acc.end(), 0.0);

    if (cfg.permute_summands) {
        pool.resize(static_cast<std::size_t>(cfg.steps) * n);
        for (long long j = 0; j < cfg.steps; ++j)
            draw(cfg.profile, eps, rng, std::span<double>(pool).subspan(static_cast<std::size_t>(j) * n, n));
        for (long long j = cfg.steps - 1; j > 0; --j) {
            const auto k = static_cast<long long>(rng() % static_cast<std::uint64_t>(j + 1));
            std::swap_ranges(pool.begin() + j * n, pool.begin() + (j + 1) * n, pool.begin() + k * n);
        }
    }

    for (long long j = 0; j < cfg.steps; ++j) {
        if (cfg.permute_summands)
            std::copy_n(pool.begin() + j * n, n, z.begin());
        else
            draw(cfg.profile, eps, rng, z);
        if (cfg.scaling == Scaling::sturm) {
            // acc ⊕ (1/k) ⊗ (⊖acc ⊕ z)
            for (std::size_t i = 0; i < n; ++i) tmp[i] = -acc[i];
            kernel::mobius_add(tmp, z, tmp);
            kernel::mobius_scalar(1.0 / static_cast<double>(j + 1), tmp, tmp);
            kernel::mobius_add(acc, tmp, acc);
        } else {
            kernel::mobius_add(acc, z, acc);
        }
    }
}

}  // namespace

WalkEnsemble run_walk(const WalkConfig& cfg, int threads) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const int n = cfg.profile.dim().value();
    const long long paths = cfg.paths;
    if (threads <= 0) threads = default_thread_count();
    threads = static_cast<int>(std::min<long long>(threads, paths));

    WalkEnsemble out{cfg, {}, {}, 0.0, 1};
    out.threads_used = threads;
    out.terminal_etas.assign(static_cast<std::size_t>(paths), 0.0);
    if (cfg.keep_coordinates) out.coordinates.assign(static_cast<std::size_t>(paths) * n, 0.0);

    // warm the CDF table before workers share the profile
    (void)cfg.profile.quantile(0.5);

    std::atomic<long long> next{0};
    std::mutex err_mu;
    long long err_path = std::numeric_limits<long long>::max();
    std::string err_msg;
    constexpr long long kChunk = 64;

    auto worker = [&] {
        std::vector<double> acc(n), z(n), tmp(n), pool;
        for (;;) {
            const long long begin = next.fetch_add(kChunk);
            if (begin >= paths) return;
            const long long end = std::min(paths, begin + kChunk);
            for (long long p = begin; p < end; ++p) {
                try {
                    simulate_path(cfg, static_cast<std::uint64_t>(p), acc, z, tmp, pool);
                } catch (const std::exception& ex) {
                    std::lock_guard lock(err_mu);
                    if (p < err_path) {
                        err_path = p;
                        err_msg = ex.what();
                    }
                    continue;
                }
                out.terminal_etas[static_cast<std::size_t>(p)] = eta_of_radius(std::sqrt(dot(acc, acc)));
                if (cfg.keep_coordinates) std::copy(acc.begin(), acc.end(), out.coordinates.begin() + p * n);
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (err_path != std::numeric_limits<long long>::max())
        throw DomainError("walk path " + std::to_string(err_path) + " failed: " + err_msg);

    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<DensityBin> empirical_radial_density(const WalkEnsemble& e, const std::vector<double>& edges) {
    if (edges.size() < 2) throw std::invalid_argument("density grid needs at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1])) throw std::invalid_argument("density grid must be strictly increasing");
    if (edges.front() < 0.0) throw std::invalid_argument("density grid must start at eta >= 0");
    const Dimension n = e.config.profile.dim();
    const double omega = sphere_area(n);
    std::vector<long long> counts(edges.size() - 1, 0);
    for (double eta : e.terminal_etas) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), eta);
        if (it == edges.begin() || it == edges.end()) continue;
        ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
    const double total = static_cast<double>(e.terminal_etas.size());
    std::vector<DensityBin> bins;
    bins.reserve(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        const double vol =
            omega * quad::integrate_gl([n](double x) { return radial_area_weight(x, n); }, a, b, 20);
        bins.push_back({a, b, 0.5 * (a + b), counts[i], static_cast<double>(counts[i]) / (total * vol)});
    }
    return bins;
}

MeanRadius mean_radius(const std::vector<double>& etas) {
    if (etas.empty()) throw std::invalid_argument("empty ensemble");
    const double m = static_cast<double>(etas.size());
    double mean = 0.0;
    for (double v : etas) mean += v;
    mean /= m;
    double var = 0.0;
    for (double v : etas) var += (v - mean) * (v - mean);
    var = etas.size() > 1 ? var / (m - 1.0) : 0.0;
    return {mean, std::sqrt(var / m)};
}

MeanRadius mean_radius(const WalkEnsemble& e) { return mean_radius(e.terminal_etas); }

}  // namespace hyperwalk
