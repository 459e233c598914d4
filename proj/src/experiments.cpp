#include "modframe/experiments.hpp"

#include "modframe/analysis.hpp"
#include "modframe/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace modframe {

namespace {

std::vector<Index> support_of(const CVec& x) {
    std::vector<Index> out;
    for (Index i = 0; i < x.size(); ++i)
        if (x[i] != cplx(0.0, 0.0)) out.push_back(i);
    return out;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

RecoveryResult run_solver(SolverKind solver, const LinearOperator& A, const CVec& y, Index s) {
    return solver == SolverKind::Omp ? omp(A, y, s) : subspace_pursuit(A, y, s);
}

std::string join_list(const std::vector<double>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << fmt_g9(v[i]);
    return os.str();
}

std::string join_list(const std::vector<Index>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string join_list(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

// Aggregates of one Monte-Carlo cell.
struct CellStats {
    Index successes = 0;
    Index trials = 0;
    std::vector<double> nmse;
    double total_ms = 0.0;

    double success_rate() const { return trials ? double(successes) / double(trials) : 0.0; }
    double median_nmse() const { return median_of(nmse); }
    double mean_ms() const { return trials ? total_ms / double(trials) : 0.0; }
};

// One noiseless (or pre-noised) recovery trial against a known support.
void run_trial(CellStats& stats, SolverKind solver, const LinearOperator& A, const CVec& y,
               const CVec& x, const std::vector<Index>& true_support, Index s, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    bool success = false;
    double nm = 0.0;
    try {
        const RecoveryResult rec = run_solver(solver, A, y, s);
        success = rec.support.indices == true_support;
        nm = nmse_db(x, rec.xhat);
    } catch (const NumericalError&) {
        // A rank-deficient candidate set counts as a failed recovery.
        success = false;
        nm = 0.0;
    }
    if (timing) {
        const auto t1 = std::chrono::steady_clock::now();
        stats.total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    stats.trials += 1;
    stats.successes += success ? 1 : 0;
    stats.nmse.push_back(nm);
}

}  // namespace

std::string to_string(SolverKind kind) { return kind == SolverKind::Omp ? "omp" : "sp"; }

std::string to_string(OmegaKind kind) {
    switch (kind) {
        case OmegaKind::Contiguous: return "contiguous";
        case OmegaKind::Strided: return "strided";
        case OmegaKind::Random: return "random";
        case OmegaKind::Explicit: return "explicit";
    }
    return "?";
}

std::string to_string(PhaseMod kind) { return kind == PhaseMod::Golay ? "golay" : "none"; }

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    os << "experiment=" << experiment << " model=" << model << " n=" << n << " m=" << m
       << " s=" << s << " L=" << L << " trials=" << trials << " base_seed=" << base_seed
       << " solver=" << to_string(solver) << " basis=" << to_string(basis)
       << " diag=" << to_string(diag_kind) << " omega=" << to_string(omega)
       << " lambda=" << to_string(lambda);
    if (!snr_db.empty()) os << " snr_db=" << join_list(snr_db);
    if (!m_grid.empty()) os << " m_grid=" << join_list(m_grid);
    if (!s_grid.empty()) os << " s_grid=" << join_list(s_grid);
    if (!d_grid.empty()) os << " d_grid=" << join_list(d_grid);
    return os.str();
}

void ExperimentConfig::validate() const {
    if (n < 1 || m < 1 || s < 1) throw ConfigError("config: n, m, s must be positive");
    if (m > n) throw ConfigError("config: m must not exceed n");
    if (trials < 1) throw ConfigError("config: trials must be >= 1");
    for (Index v : m_grid)
        if (v < 1) throw ConfigError("config: m_grid values must be positive");
    for (Index v : s_grid)
        if (v < 1) throw ConfigError("config: s_grid values must be positive");
    for (int v : d_grid)
        if (v < 0) throw ConfigError("config: d_grid values must be non-negative");
}

CVec attc_channel(Index n) {
    if (n < 138)
        throw ConfigError("attc_channel: need n >= 138 to hold the last tap, got " +
                          std::to_string(n));
    CVec x = CVec::Zero(n);
    x[0] = 1.0;
    x[2] = 0.3162;
    x[17] = 0.1995;
    x[36] = 0.1296;
    x[75] = 0.1;
    x[137] = 0.1;
    return x;
}

CVec add_awgn(const CVec& y, double snr_db, std::uint64_t seed) {
    const double power = y.squaredNorm();
    if (power <= 0.0) throw ConfigError("add_awgn: zero signal");
    if (std::isinf(snr_db) && snr_db > 0) return y;
    const double sigma = std::sqrt(power / (double(y.size()) * std::pow(10.0, snr_db / 10.0)));
    CounterRng rng(seed);
    CVec out = y;
    for (Index i = 0; i < y.size(); ++i) out[i] += sigma * rng.next_cgauss();
    return out;
}

CVec random_sparse_signal(Index n, Index s, std::uint64_t seed) {
    if (s < 1 || s > n) throw ConfigError("random_sparse_signal: need 1 <= s <= n");
    CounterRng rng(seed);
    std::vector<Index> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), Index(0));
    for (Index i = 0; i < s; ++i) {
        const Index j = i + Index(rng.next_below(std::uint64_t(n - i)));
        std::swap(pool[size_t(i)], pool[size_t(j)]);
    }
    CVec x = CVec::Zero(n);
    const double amp = 1.0 / std::sqrt(double(s));
    for (Index i = 0; i < s; ++i) x[pool[size_t(i)]] = amp * rng.next_steinhaus();
    return x;
}

CsvTable run_ofdm_experiment(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.experiment = "ofdm";
    cfg.model = "ofdm";
    if (cfg.snr_db.empty()) cfg.snr_db = {0.0, 10.0, 20.0, 30.0};
    cfg.validate();
    const int d = ilog2(cfg.n);
    if (cfg.n % cfg.m != 0) throw ConfigError("ofdm: m must divide n");

    const CVec x = attc_channel(cfg.n);
    const std::vector<Index> true_support = support_of(x);

    const double papr_golay = papr(rudin_shapiro_pair(d).a);
    const double papr_random =
        papr(random_diagonal(SeqKind::Steinhaus, cfg.n, derive_seed(cfg.base_seed, kStreamPilot)));

    CsvTable table;
    table.comment = cfg.echo();
    table.header = {"experiment", "model",       "n",
                    "m",          "s",           "trials",
                    "base_seed",  "solver",      "snr_db",
                    "success_rate", "median_nmse_db", "papr_golay_pilot", "papr_random_pilot"};
    if (cfg.include_timing) table.header.push_back("mean_runtime_ms");

    for (size_t si = 0; si < cfg.snr_db.size(); ++si) {
        const double snr = cfg.snr_db[si];
        CellStats stats;
        for (Index t = 0; t < cfg.trials; ++t) {
            const std::uint64_t trial_seed = cfg.base_seed + std::uint64_t(t);
            const SensingModel model =
                ofdm_model(cfg.n, cfg.m, derive_seed(trial_seed, kStreamModel));
            const CVec y = add_awgn(model.A.forward(x), snr,
                                    derive_seed(trial_seed, kStreamNoise, std::uint64_t(si)));
            run_trial(stats, cfg.solver, model.A, y, x, true_support, cfg.s, cfg.include_timing);
        }
        std::vector<std::string> row = {cfg.experiment,
                                        cfg.model,
                                        std::to_string(cfg.n),
                                        std::to_string(cfg.m),
                                        std::to_string(cfg.s),
                                        std::to_string(cfg.trials),
                                        std::to_string(cfg.base_seed),
                                        to_string(cfg.solver),
                                        fmt_g9(snr),
                                        fmt_g9(stats.success_rate()),
                                        fmt_g9(stats.median_nmse()),
                                        fmt_g9(papr_golay),
                                        fmt_g9(papr_random)};
        if (cfg.include_timing) row.push_back(fmt_g9(stats.mean_ms()));
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable run_phase_transition(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.experiment = "phase-transition";
    if (cfg.m_grid.empty()) cfg.m_grid = {8, 16, 32, 64};
    if (cfg.s_grid.empty()) cfg.s_grid = {1, 2, 4, 8};
    cfg.m = *std::max_element(cfg.m_grid.begin(), cfg.m_grid.end());
    cfg.s = *std::max_element(cfg.s_grid.begin(), cfg.s_grid.end());
    cfg.validate();
    for (Index sv : cfg.s_grid)
        for (Index mv : cfg.m_grid)
            if (sv > mv)
                throw ConfigError("phase-transition: grid cell with s > m (s=" +
                                  std::to_string(sv) + ", m=" + std::to_string(mv) + ")");

    CsvTable table;
    table.comment = cfg.echo();
    table.header = {"experiment", "model",  "n",           "m",
                    "s",          "trials", "base_seed",   "solver",
                    "basis",      "lambda", "success_rate", "median_nmse_db"};
    if (cfg.include_timing) table.header.push_back("mean_runtime_ms");

    for (Index mv : cfg.m_grid) {
        for (Index sv : cfg.s_grid) {
            CellStats stats;
            for (Index t = 0; t < cfg.trials; ++t) {
                const std::uint64_t trial_seed = cfg.base_seed + std::uint64_t(t);
                ModelSpec spec;
                spec.id = cfg.model;
                spec.n = cfg.n;
                spec.m = mv;
                spec.L = cfg.L;
                spec.seed = derive_seed(trial_seed, kStreamModel);
                spec.psi = cfg.basis;
                spec.lambda = cfg.lambda;
                spec.diag_kind = cfg.diag_kind;
                spec.omega_kind = cfg.omega;
                spec.omega_indices = cfg.omega_indices;
                const SensingModel model = make_model(spec);
                const CVec x =
                    random_sparse_signal(cfg.n, sv, derive_seed(trial_seed, kStreamSignal));
                run_trial(stats, cfg.solver, model.A, model.A.forward(x), x, support_of(x), sv,
                          cfg.include_timing);
            }
            std::vector<std::string> row = {cfg.experiment,
                                            cfg.model,
                                            std::to_string(cfg.n),
                                            std::to_string(mv),
                                            std::to_string(sv),
                                            std::to_string(cfg.trials),
                                            std::to_string(cfg.base_seed),
                                            to_string(cfg.solver),
                                            to_string(cfg.basis),
                                            to_string(cfg.lambda),
                                            fmt_g9(stats.success_rate()),
                                            fmt_g9(stats.median_nmse())};
            if (cfg.include_timing) row.push_back(fmt_g9(stats.mean_ms()));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

CsvTable run_basis_compatibility(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.experiment = "basis-compat";
    cfg.model = "golay-conv";
    cfg.validate();
    ilog2(cfg.n);  // power-of-two check

    const std::vector<BasisKind> bases = {BasisKind::Identity, BasisKind::Fourier, BasisKind::Dct2,
                                          BasisKind::Haar};
    struct Scheme {
        const char* name;
        bool random_omega;
        PhaseMod lambda;
    };
    const std::vector<Scheme> schemes = {{"rr", true, PhaseMod::None},
                                         {"dr", false, PhaseMod::None},
                                         {"dr-golay", false, PhaseMod::Golay}};

    CsvTable table;
    table.comment = cfg.echo();
    table.header = {"experiment", "model",  "n",         "m",
                    "s",          "trials", "base_seed", "solver",
                    "basis",      "scheme", "success_rate", "median_nmse_db"};
    if (cfg.include_timing) table.header.push_back("mean_runtime_ms");

    for (BasisKind basis : bases) {
        for (const Scheme& scheme : schemes) {
            CellStats stats;
            for (Index t = 0; t < cfg.trials; ++t) {
                const std::uint64_t trial_seed = cfg.base_seed + std::uint64_t(t);
                const SubsampleSet omega =
                    scheme.random_omega
                        ? SubsampleSet::random_subset(cfg.m, cfg.n,
                                                      derive_seed(trial_seed, kStreamOmega))
                        : SubsampleSet::contiguous(cfg.m, cfg.n);
                ConvOptions opts;
                opts.lambda = scheme.lambda;
                opts.psi = basis;
                const SensingModel model =
                    golay_convolutional(omega, derive_seed(trial_seed, kStreamModel), opts);
                const CVec x =
                    random_sparse_signal(cfg.n, cfg.s, derive_seed(trial_seed, kStreamSignal));
                run_trial(stats, cfg.solver, model.A, model.A.forward(x), x, support_of(x), cfg.s,
                          cfg.include_timing);
            }
            std::vector<std::string> row = {cfg.experiment,
                                            cfg.model,
                                            std::to_string(cfg.n),
                                            std::to_string(cfg.m),
                                            std::to_string(cfg.s),
                                            std::to_string(cfg.trials),
                                            std::to_string(cfg.base_seed),
                                            to_string(cfg.solver),
                                            to_string(basis),
                                            scheme.name,
                                            fmt_g9(stats.success_rate()),
                                            fmt_g9(stats.median_nmse())};
            if (cfg.include_timing) row.push_back(fmt_g9(stats.mean_ms()));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

CsvTable run_coherence_report(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.experiment = "coherence";
    if (cfg.d_grid.empty()) cfg.d_grid = {3, 4, 5, 6, 7, 8, 9, 10};
    cfg.validate();

    const std::vector<BasisKind> bases = {BasisKind::Identity, BasisKind::Fourier, BasisKind::Dct2,
                                          BasisKind::BlockDct, BasisKind::Haar};
    Index max_n = 4096;
    for (int d : cfg.d_grid) max_n = std::max(max_n, Index(1) << d);

    CsvTable table;
    table.comment = cfg.echo();
    table.header = {"experiment", "d", "n", "basis", "mu", "bound", "pass"};
    for (int d : cfg.d_grid) {
        const GolayPair pair = rudin_shapiro_pair(d);
        for (BasisKind basis : bases) {
            if (basis == BasisKind::BlockDct && pair.n % 8 != 0) continue;
            const CoherenceReport rep = modulated_coherence(pair.a, basis, max_n);
            table.rows.push_back({cfg.experiment, std::to_string(d), std::to_string(pair.n),
                                  to_string(basis), fmt_g9(rep.mu),
                                  rep.bound ? fmt_g9(*rep.bound) : "nan",
                                  rep.passes ? "1" : "0"});
        }
    }
    return table;
}

CsvTable run_recover_once(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.experiment = "recover";
    cfg.validate();

    ModelSpec spec;
    spec.id = cfg.model;
    spec.n = cfg.n;
    spec.m = cfg.m;
    spec.L = cfg.L;
    spec.seed = derive_seed(cfg.base_seed, kStreamModel);
    spec.psi = cfg.basis;
    spec.lambda = cfg.lambda;
    spec.diag_kind = cfg.diag_kind;
    spec.omega_kind = cfg.omega;
    spec.omega_indices = cfg.omega_indices;
    const SensingModel model = make_model(spec);

    const CVec x = random_sparse_signal(cfg.n, cfg.s, derive_seed(cfg.base_seed, kStreamSignal));
    CVec y = model.A.forward(x);
    const double snr =
        cfg.snr_db.empty() ? std::numeric_limits<double>::infinity() : cfg.snr_db.front();
    y = add_awgn(y, snr, derive_seed(cfg.base_seed, kStreamNoise));
    const RecoveryResult rec = run_solver(cfg.solver, model.A, y, cfg.s);

    CsvTable table;
    table.comment = cfg.echo();
    table.header = {"experiment", "model",  "n",       "m",
                    "s",          "snr_db", "base_seed", "solver",
                    "success",    "nmse_db", "residual_norm", "iterations", "converged"};
    table.rows.push_back({cfg.experiment, cfg.model, std::to_string(cfg.n), std::to_string(cfg.m),
                          std::to_string(cfg.s), fmt_g9(snr), std::to_string(cfg.base_seed),
                          to_string(cfg.solver),
                          rec.support.indices == support_of(x) ? "1" : "0",
                          fmt_g9(nmse_db(x, rec.xhat)), fmt_g9(rec.residual_norm),
                          std::to_string(rec.iterations), rec.converged ? "1" : "0"});
    return table;
}

CsvTable run_ric(const ExperimentConfig& cfg_in, RicMethod method, Index num_supports) {
    ExperimentConfig cfg = cfg_in;
    cfg.experiment = "ric";
    cfg.validate();

    ModelSpec spec;
    spec.id = cfg.model;
    spec.n = cfg.n;
    spec.m = cfg.m;
    spec.L = cfg.L;
    spec.seed = derive_seed(cfg.base_seed, kStreamModel);
    spec.psi = cfg.basis;
    spec.lambda = cfg.lambda;
    spec.diag_kind = cfg.diag_kind;
    spec.omega_kind = cfg.omega;
    spec.omega_indices = cfg.omega_indices;
    const SensingModel model = make_model(spec);

    RicReport report;
    if (method == RicMethod::Exact) {
        report = exact_ric(materialize(model.A), cfg.s);
    } else {
        report = empirical_ric(model.A, cfg.s, num_supports,
                               derive_seed(cfg.base_seed, kStreamSignal));
    }

    CsvTable table;
    table.comment = cfg.echo();
    table.header = {"experiment", "model", "n", "m", "s",
                    "base_seed",  "method", "delta", "supports_evaluated"};
    table.rows.push_back({cfg.experiment, cfg.model, std::to_string(cfg.n), std::to_string(cfg.m),
                          std::to_string(cfg.s), std::to_string(cfg.base_seed),
                          method == RicMethod::Exact ? "exact" : "sampled", fmt_g9(report.delta),
                          std::to_string(report.supports_evaluated)});
    return table;
}

}  // namespace modframe
