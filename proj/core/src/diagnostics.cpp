#include "hyperwalk/diagnostics.hpp"

#include <Eigen/QR>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hyperwalk/gyro.hpp"
#include "hyperwalk/heat_kernel.hpp"
#include "hyperwalk/spectral.hpp"

namespace hyperwalk {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("slope fit needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

RadialProfile limit_law(double t, Dimension n) {
    const double eta_hi = n.rho() * t + 9.0 * std::sqrt(t) + 0.5;
    ProfileOptions opt;
    opt.normalize = false;
    opt.initial_cells = 256;
    std::ostringstream os;
    os << "Psi(t=" << t << ")";
    return RadialProfile::from_function([t, n](double eta) { return psi_clt(t, eta, n); }, eta_hi, n, os.str(), opt);
}

Verdict clt_check_ensemble(const WalkEnsemble& e, CltOptions opt) {
    const RadialProfile& p = e.config.profile;
    const double t0 = limit_time(p);
    const double t = t0 * opt.t_scale;
    const RadialProfile law = limit_law(t, p.dim());
    const double ks = ks_distance(e.terminal_etas, [&law](double x) { return law.cdf_interp(x); });
    const double paths = static_cast<double>(e.terminal_etas.size());

    Verdict v;
    v.name = "clt";
    v.statistic = ks;
    v.threshold = opt.threshold;
    v.pass = ks < opt.threshold;
    v.seed = e.config.master_seed;
    v.details["N"] = static_cast<double>(e.config.steps);
    v.details["paths"] = paths;
    v.details["t"] = t;
    v.details["t_scale"] = opt.t_scale;
    v.details["limit_mass"] = law.total_mass();
    v.details["noise_floor"] = 1.36 / std::sqrt(paths);
    v.details["bias_allowance"] = opt.threshold - 1.36 / std::sqrt(paths);
    return v;
}

Verdict clt_check(const RadialProfile& p, long long N, long long paths, std::uint64_t seed, CltOptions opt) {
    if (N < 100) throw std::invalid_argument("clt_check needs N >= 100");
    if (paths < 10000) throw std::invalid_argument("clt_check needs paths >= 1e4");
    WalkConfig cfg{p, N, paths, Scaling::clt, seed};
    return clt_check_ensemble(run_walk(cfg, opt.threads), opt);
}

Verdict llt_check(const RadialProfile& p, const std::vector<long long>& Ns, LltOptions opt) {
    if (Ns.size() < 2) throw std::invalid_argument("llt_check needs at least two N values");
    if (opt.grid_points < 2) throw std::invalid_argument("llt_check needs at least two grid points");
    const Dimension n = p.dim();
    const double t = limit_time(p);
    const double t_ref = t * opt.t_scale;
    const double eta_hi = 2.0 * std::sqrt(t) + 2.0;
    std::vector<double> grid(opt.grid_points), ref(opt.grid_points);
    for (int i = 0; i < opt.grid_points; ++i) {
        grid[i] = eta_hi * i / (opt.grid_points - 1);
        ref[i] = psi_clt(t_ref, grid[i], n);
    }

    Verdict v;
    v.name = "llt";
    std::vector<double> xs, es;
    for (long long N : Ns) {
        const SpectralFunction spec = walk_spectrum(p, N);
        double e = 0.0;
        for (int i = 0; i < opt.grid_points; ++i) e = std::max(e, std::abs(fh_inverse(spec, grid[i]) - ref[i]));
        xs.push_back(static_cast<double>(N));
        es.push_back(e);
        v.details["E(" + std::to_string(N) + ")"] = e;
        v.details["lambda_max(" + std::to_string(N) + ")"] = spec.lambda_max();
    }
    bool monotone = true;
    for (std::size_t i = 1; i < es.size(); ++i)
        if (es[i] > 1.1 * es[i - 1]) monotone = false;
    bool finite = true;
    for (double e : es)
        if (!std::isfinite(e) || !(e > 0.0)) finite = false;
    const double slope = finite ? loglog_slope(xs, es) : std::numeric_limits<double>::quiet_NaN();
    double prefactor = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) prefactor = std::max(prefactor, es[i] * xs[i]);

    v.statistic = slope;
    v.threshold = -0.8;
    v.fitted_slope = slope;
    v.window = std::make_pair(-1.3, -0.8);
    v.pass = finite && slope <= -0.8 && monotone;
    v.details["t"] = t;
    v.details["t_scale"] = opt.t_scale;
    v.details["eta_grid_max"] = eta_hi;
    v.details["eta_grid_points"] = opt.grid_points;
    v.details["monotone"] = monotone ? 1.0 : 0.0;
    v.details["empirical_prefactor"] = prefactor;
    return v;
}

Verdict lln_check(const RadialProfile& p, const std::vector<long long>& Ns, long long paths, std::uint64_t seed,
                  LlnOptions opt) {
    if (Ns.empty()) throw std::invalid_argument("lln_check needs N values");
    Verdict v;
    v.name = "lln";
    v.seed = seed;
    std::vector<MeanRadius> mr;
    std::vector<double> xs, ms;
    for (long long N : Ns) {
        WalkConfig cfg{p, N, paths, opt.scaling, seed};
        const WalkEnsemble e = run_walk(cfg, opt.threads);
        mr.push_back(mean_radius(e));
        xs.push_back(static_cast<double>(N));
        ms.push_back(mr.back().mean);
        v.details["mean(" + std::to_string(N) + ")"] = mr.back().mean;
        v.details["se(" + std::to_string(N) + ")"] = mr.back().std_error;
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < mr.size(); ++i) {
        const double slack = 2.0 * std::hypot(mr[i].std_error, mr[i - 1].std_error);
        if (!(mr[i].mean < mr[i - 1].mean + slack)) decreasing = false;
    }
    const double single = mean_eta(p);
    const double ratio = single > 0.0 ? mr.back().mean / single : 0.0;
    v.statistic = ratio;
    v.threshold = 0.1;
    v.pass = decreasing && ratio < 0.1;
    if (ms.size() >= 2 && ms.front() > 0.0 && ms.back() > 0.0) {
        v.fitted_slope = loglog_slope(xs, ms);
        v.window = std::make_pair(-0.65, -0.35);
    }
    v.details["single_step_mean"] = single;
    v.details["decreasing"] = decreasing ? 1.0 : 0.0;
    v.details["paths"] = static_cast<double>(paths);
    v.notes["scaling"] = to_string(opt.scaling);
    v.notes["slope_status"] = "heuristic, not gated";
    return v;
}

Verdict variance_rate_check(const RadialProfile& p, const std::vector<long long>& Ns) {
    if (Ns.size() < 2) throw std::invalid_argument("variance_rate_check needs at least two N values");
    const double t = limit_time(p);
    Verdict v;
    v.name = "variance";
    std::vector<double> xs, errs;
    double prefactor = 0.0;
    for (long long N : Ns) {
        if (N < 1) throw std::invalid_argument("N must be >= 1");
        const double dN = static_cast<double>(N);
        const double vn = dN * variance_direct(scale_profile(p, 1.0 / std::sqrt(dN)));
        const double err = std::abs(vn - t);
        xs.push_back(dN);
        errs.push_back(err);
        prefactor = std::max(prefactor, err * dN);
        v.details["V(" + std::to_string(N) + ")"] = vn;
    }
    const double slope = loglog_slope(xs, errs);
    v.statistic = slope;
    v.threshold = -0.8;
    v.fitted_slope = slope;
    v.window = std::make_pair(-1.5, -0.8);
    v.pass = slope <= -0.8;
    v.details["t"] = t;
    v.details["empirical_prefactor"] = prefactor;
    return v;
}

namespace {

double diff_norm(const BallPoint& a, const BallPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

BallPoint random_point(int n, double rmax, RandomStream& rng) {
    std::vector<double> x(n);
    sample_direction(rng, x);
    const double r = rmax * uniform_open(rng);
    for (double& v : x) v *= r;
    return BallPoint(std::move(x));
}

Eigen::MatrixXd random_orthogonal(int n, RandomStream& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

BallPoint apply(const Eigen::MatrixXd& a, const BallPoint& x, bool transpose) {
    Eigen::Map<const Eigen::VectorXd> v(x.coords().data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd y = transpose ? Eigen::VectorXd(a.transpose() * v) : Eigen::VectorXd(a * v);
    return BallPoint(std::vector<double>(y.data(), y.data() + y.size()));
}

}  // namespace

Verdict gyro_property_suite(const std::vector<int>& dims, long long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (dims.empty()) throw std::invalid_argument("need at least one dimension");
    constexpr double kRmax = 0.9;
    std::map<std::string, double> worst{
        {"left_inverse", 0.0},       {"right_inverse", 0.0},        {"left_cancellation", 0.0},
        {"gyro_commutativity", 0.0}, {"gyration_norm", 0.0},        {"gyration_origin", 0.0},
        {"orthogonal_equivariance", 0.0}, {"translation_norm_identity", 0.0},
        {"translation_measure", 0.0}, {"translation_radial_symmetry", 0.0}, {"scalar_associativity", 0.0},
    };
    auto bump = [&](const char* key, double r) { worst[key] = std::max(worst[key], r); };
    double witness = 0.0;

    for (int nd : dims) {
        const Dimension n(nd);
        RandomStream rng(path_seed(seed, static_cast<std::uint64_t>(nd)));
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        for (long long i = 0; i < trials; ++i) {
            const BallPoint a = random_point(nd, kRmax, rng);
            const BallPoint b = random_point(nd, kRmax, rng);
            const BallPoint c = random_point(nd, kRmax, rng);
            const BallPoint zero = BallPoint::origin(n);

            bump("left_inverse", mobius_add(mobius_neg(a), a).norm());
            bump("right_inverse", mobius_add(a, mobius_neg(a)).norm());
            bump("left_cancellation", diff_norm(mobius_add(mobius_neg(a), mobius_add(a, b)), b));

            const BallPoint ab = mobius_add(a, b);
            bump("gyro_commutativity", diff_norm(ab, gyration(a, b, mobius_add(b, a))));
            bump("gyration_norm", std::abs(gyration(a, b, c).norm() - c.norm()));
            bump("gyration_origin", gyration(a, b, zero).norm());

            const Eigen::MatrixXd q = random_orthogonal(nd, rng);
            bump("orthogonal_equivariance",
                 diff_norm(apply(q, mobius_add(apply(q, a, true), b), false), mobius_add(a, apply(q, b, false))));

            const BallPoint tx = translate(a, b);
            const double ax = dot(a.span(), b.span());
            const double den = 1.0 - 2.0 * ax + b.norm2() * a.norm2();
            bump("translation_norm_identity",
                 std::abs((1.0 - tx.norm2()) - (1.0 - a.norm2()) * (1.0 - b.norm2()) / den));
            bump("translation_measure",
                 std::abs(translate_conformal_factor(a, b) / (1.0 - tx.norm2()) * (1.0 - b.norm2()) - 1.0));
            bump("translation_radial_symmetry", std::abs(tx.norm() - translate(b, a).norm()));

            const double l = coef(rng), m = coef(rng);
            bump("scalar_associativity",
                 diff_norm(mobius_add(mobius_scalar(l, c), mobius_scalar(m, c)), mobius_scalar(l + m, c)));

            const double k = 2.0 + static_cast<double>(i % 4);
            const double gap =
                diff_norm(mobius_scalar(1.0 / k, ab), mobius_add(mobius_scalar(1.0 / k, a), mobius_scalar(1.0 / k, b)));
            witness = std::max(witness, gap);
        }
    }

    Verdict v;
    v.name = "gyro_properties";
    v.seed = seed;
    double max_res = 0.0;
    for (const auto& [k, r] : worst) {
        v.details[k] = r;
        max_res = std::max(max_res, r);
    }
    v.statistic = max_res;
    v.threshold = 1e-12;
    v.details["non_distributivity_gap"] = witness;
    v.details["trials"] = static_cast<double>(trials);
    v.pass = max_res < 1e-12 && witness > 1e-3;
    std::ostringstream os;
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    v.notes["dims"] = os.str();
    v.notes["sampling"] = "direction uniform on the sphere, radius uniform on [0,0.9]; scalars uniform on [-1,1]";
    return v;
}

}  // namespace hyperwalk
