#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperwalk/radial_density.hpp"

namespace hyperwalk {

enum class Scaling { clt, lln, sturm };

std::string to_string(Scaling s);
Scaling parse_scaling(const std::string& s);

struct WalkConfig {
    RadialProfile profile;
    long long steps = 1;
    long long paths = 1;
    Scaling scaling = Scaling::clt;
    std::uint64_t master_seed = 0;
    bool permute_summands = false;  // shuffle Z^1..Z^N before folding
    bool keep_coordinates = false;

    void validate() const;
    // per-step scale ε (1 for sturm)
    double epsilon() const;
};

struct WalkEnsemble {
    WalkConfig config;
    std::vector<double> terminal_etas;
    std::vector<double> coordinates;  // paths × n, only with keep_coordinates
    double wall_seconds = 0.0;
    int threads_used = 1;
};

// 64-bit stream key for (master_seed, path index)
std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path);

// HYPERWALK_THREADS or hardware concurrency
int default_thread_count();

WalkEnsemble run_walk(const WalkConfig& cfg, int threads = 0);

struct DensityBin {
    double lo, hi, mid;
    long long count;
    double value;
};

std::vector<DensityBin> empirical_radial_density(const WalkEnsemble& e, const std::vector<double>& edges);

struct MeanRadius {
    double mean;
    double std_error;
};

MeanRadius mean_radius(const WalkEnsemble& e);
MeanRadius mean_radius(const std::vector<double>& etas);

}  // namespace hyperwalk
