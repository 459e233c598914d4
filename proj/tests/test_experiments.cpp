#include "modframe/experiments.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace modframe;

namespace {

double field(const CsvTable& t, size_t row, const std::string& name) {
    for (size_t c = 0; c < t.header.size(); ++c)
        if (t.header[c] == name) return std::stod(t.rows[row][c]);
    throw std::runtime_error("missing column " + name);
}

std::string sfield(const CsvTable& t, size_t row, const std::string& name) {
    for (size_t c = 0; c < t.header.size(); ++c)
        if (t.header[c] == name) return t.rows[row][c];
    throw std::runtime_error("missing column " + name);
}

}  // namespace

TEST_CASE("attc_channel places the six taps") {
    const CVec x = attc_channel(1024);
    const std::map<Index, double> taps = {{0, 1.0},    {2, 0.3162}, {17, 0.1995},
                                          {36, 0.1296}, {75, 0.1},   {137, 0.1}};
    Index nnz = 0;
    for (Index i = 0; i < x.size(); ++i) {
        if (x[i] != cplx(0, 0)) {
            ++nnz;
            REQUIRE(taps.count(i) == 1);
            REQUIRE(x[i].real() == doctest::Approx(taps.at(i)));
        }
    }
    CHECK(nnz == 6);
    CHECK_THROWS_AS(attc_channel(137), ConfigError);
    CHECK_NOTHROW(attc_channel(138));
}

TEST_CASE("add_awgn calibration and determinism") {
    CounterRng rng(131);
    const CVec y = oracles::random_cvec(16, rng);

    const double inf = std::numeric_limits<double>::infinity();
    CHECK((add_awgn(y, inf, 1) - y).norm() == 0.0);

    double ratio = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const CVec noisy = add_awgn(y, 0.0, std::uint64_t(t));
        ratio += (noisy - y).squaredNorm() / y.squaredNorm();
    }
    ratio /= trials;
    CHECK(ratio > 0.98);
    CHECK(ratio < 1.02);

    CHECK((add_awgn(y, 10.0, 42) - add_awgn(y, 10.0, 42)).norm() == 0.0);
    CHECK((add_awgn(y, 10.0, 42) - add_awgn(y, 10.0, 43)).norm() > 0.0);
}

TEST_CASE("random_sparse_signal is unit-norm, s-sparse, reproducible") {
    const CVec x = random_sparse_signal(64, 5, 7);
    Index nnz = 0;
    for (Index i = 0; i < 64; ++i)
        if (x[i] != cplx(0, 0)) ++nnz;
    CHECK(nnz == 5);
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((x - random_sparse_signal(64, 5, 7)).norm() == 0.0);
}

TEST_CASE("ofdm experiment emits one row per SNR with sane aggregates") {
    ExperimentConfig cfg;
    cfg.n = 256;
    cfg.m = 32;
    cfg.s = 6;
    cfg.trials = 25;
    cfg.snr_db = {10.0, 30.0};
    cfg.base_seed = 3;
    const CsvTable table = run_ofdm_experiment(cfg);
    REQUIRE(table.rows.size() == 2);
    CHECK(field(table, 0, "papr_golay_pilot") <= 2.0 + 1e-12);
    CHECK(field(table, 1, "success_rate") >= field(table, 0, "success_rate") - 0.12);
    CHECK(field(table, 1, "median_nmse_db") <= field(table, 0, "median_nmse_db") + 1e-9);
    for (size_t r = 0; r < 2; ++r) {
        CHECK(field(table, r, "success_rate") >= 0.0);
        CHECK(field(table, r, "success_rate") <= 1.0);
    }
}

TEST_CASE("random pilots lose to the Golay pilot almost always") {
    const Index n = 1024;
    const double golay = papr(rudin_shapiro_pair(10).a);
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        if (papr(random_diagonal(SeqKind::Steinhaus, n, seed)) > golay) ++wins;
    CHECK(wins >= 95);
}

TEST_CASE("phase transition: full sampling of singletons always succeeds") {
    ExperimentConfig cfg;
    cfg.model = "rd";
    cfg.n = 32;
    cfg.m = 32;
    cfg.trials = 40;
    cfg.m_grid = {32};
    cfg.s_grid = {1};
    const CsvTable table = run_phase_transition(cfg);
    REQUIRE(table.rows.size() == 1);
    CHECK(field(table, 0, "success_rate") == doctest::Approx(1.0));
}

TEST_CASE("phase transition success is monotone in m at fixed s") {
    ExperimentConfig cfg;
    cfg.model = "rd";
    cfg.n = 64;
    cfg.trials = 200;
    cfg.m_grid = {8, 16, 32};
    cfg.s_grid = {2};
    const CsvTable table = run_phase_transition(cfg);
    REQUIRE(table.rows.size() == 3);
    CHECK(field(table, 1, "success_rate") >= field(table, 0, "success_rate") - 0.03);
    CHECK(field(table, 2, "success_rate") >= field(table, 1, "success_rate") - 0.03);
}

TEST_CASE("demodulator transition tracks the dense Gaussian baseline") {
    const Index n = 256;
    const Index s = 4;
    const int trials = 150;

    ExperimentConfig cfg;
    cfg.model = "rd";
    cfg.n = n;
    cfg.trials = trials;
    cfg.s_grid = {s};
    cfg.m_grid = {4, 8, 16, 32, 64};  // the demodulator needs m | n
    const CsvTable rd_table = run_phase_transition(cfg);

    // Independent baseline: seeded dense Gaussian sensing, same solver.
    auto gaussian_rate = [&](Index m) {
        int ok = 0;
        for (int t = 0; t < trials; ++t) {
            CounterRng mrng(derive_seed(std::uint64_t(t) + 1, kStreamModel));
            const CMat G = oracles::random_cmat(m, n, mrng) / std::sqrt(double(m));
            const LinearOperator A = dense_op(G);
            const CVec x = random_sparse_signal(n, s, derive_seed(std::uint64_t(t) + 1, kStreamSignal));
            const RecoveryResult rec = subspace_pursuit(A, A.forward(x), s);
            std::vector<Index> truth;
            for (Index i = 0; i < n; ++i)
                if (x[i] != cplx(0, 0)) truth.push_back(i);
            if (rec.support.indices == truth) ++ok;
        }
        return double(ok) / double(trials);
    };

    // 50% crossing, linearly interpolated inside the bracketing interval.
    auto contour = [](const std::vector<std::pair<Index, double>>& curve) -> double {
        for (size_t i = 0; i < curve.size(); ++i) {
            if (curve[i].second >= 0.5) {
                if (i == 0) return double(curve[0].first);
                const double m1 = double(curve[i - 1].first);
                const double m2 = double(curve[i].first);
                const double r1 = curve[i - 1].second;
                const double r2 = curve[i].second;
                return m1 + (m2 - m1) * (0.5 - r1) / (r2 - r1);
            }
        }
        return double(curve.back().first);
    };

    std::vector<std::pair<Index, double>> rd_curve;
    for (size_t r = 0; r < rd_table.rows.size(); ++r)
        rd_curve.push_back({Index(field(rd_table, r, "m")), field(rd_table, r, "success_rate")});

    std::vector<std::pair<Index, double>> g_curve;
    for (Index m : cfg.m_grid) g_curve.push_back({m, gaussian_rate(m)});

    const double m_rd = contour(rd_curve);
    const double m_g = contour(g_curve);
    INFO("rd contour at m=", m_rd, ", gaussian contour at m=", m_g);
    CHECK(std::abs(m_rd - m_g) <= 0.25 * std::max(m_rd, m_g));
}

TEST_CASE("basis compatibility matrix orders the schemes as expected") {
    // At s = m/4 the contiguous window breaks Fourier compatibility hard
    // while the Golay phase modulation keeps it intact.
    ExperimentConfig cfg;
    cfg.n = 128;
    cfg.m = 32;
    cfg.s = 8;
    cfg.trials = 50;
    const CsvTable table = run_basis_compatibility(cfg);
    REQUIRE(table.rows.size() == 12);

    std::map<std::pair<std::string, std::string>, double> rate;
    for (size_t r = 0; r < table.rows.size(); ++r)
        rate[{sfield(table, r, "basis"), sfield(table, r, "scheme")}] =
            field(table, r, "success_rate");

    CHECK(rate[{"identity", "dr"}] > 0.9);
    CHECK(rate[{"identity", "dr-golay"}] > 0.9);
    CHECK(rate[{"fourier", "rr"}] > 0.9);
    CHECK(rate[{"fourier", "dr-golay"}] > rate[{"fourier", "dr"}] + 0.5);
}

TEST_CASE("coherence report rows all pass their bounds") {
    ExperimentConfig cfg;
    cfg.d_grid = {3, 4, 5, 6};
    const CsvTable table = run_coherence_report(cfg);
    REQUIRE(table.rows.size() == 4 * 5);
    for (size_t r = 0; r < table.rows.size(); ++r) {
        REQUIRE(sfield(table, r, "pass") == "1");
        const int d = int(field(table, r, "d"));
        const double mu = field(table, r, "mu");
        // CSV carries 9 significant digits; compare at that resolution.
        if (sfield(table, r, "basis") == "identity")
            REQUIRE(mu == doctest::Approx(std::pow(2.0, -d / 2.0)).epsilon(1e-8));
        if (sfield(table, r, "basis") == "fourier")
            REQUIRE(mu <= std::sqrt(2.0) * std::pow(2.0, -d / 2.0) + 1e-8);
    }
}

TEST_CASE("experiment output is a pure function of the config") {
    ExperimentConfig cfg;
    cfg.n = 256;
    cfg.m = 32;
    cfg.s = 6;
    cfg.trials = 5;
    cfg.snr_db = {0.0, 30.0};
    CHECK(run_ofdm_experiment(cfg).to_string() == run_ofdm_experiment(cfg).to_string());

    ExperimentConfig bc;
    bc.n = 64;
    bc.m = 16;
    bc.s = 2;
    bc.trials = 4;
    CHECK(run_basis_compatibility(bc).to_string() == run_basis_compatibility(bc).to_string());
}

TEST_CASE("csv text round-trips byte-identically") {
    ExperimentConfig cfg;
    cfg.n = 256;
    cfg.m = 32;
    cfg.s = 4;
    cfg.trials = 3;
    cfg.snr_db = {20.0};
    const std::string text = run_ofdm_experiment(cfg).to_string();
    CHECK(CsvTable::parse(text).to_string() == text);

    CHECK_THROWS_AS(CsvTable::parse("no comment line\n"), ConfigError);
}

TEST_CASE("config validation rejects bad grids") {
    ExperimentConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    ExperimentConfig pt;
    pt.model = "rd";
    pt.n = 64;
    pt.m_grid = {4};
    pt.s_grid = {8};
    CHECK_THROWS_AS(run_phase_transition(pt), ConfigError);
}

TEST_CASE("single-shot recover and ric runners emit one-row tables") {
    ExperimentConfig cfg;
    cfg.model = "rd";
    cfg.n = 64;
    cfg.m = 32;
    cfg.s = 3;
    cfg.base_seed = 11;
    const CsvTable rec = run_recover_once(cfg);
    REQUIRE(rec.rows.size() == 1);
    CHECK(sfield(rec, 0, "success") == "1");

    cfg.n = 16;
    cfg.m = 8;
    cfg.s = 2;
    const CsvTable ric = run_ric(cfg, RicMethod::Exact, 0);
    REQUIRE(ric.rows.size() == 1);
    CHECK(field(ric, 0, "delta") > 0.0);
    CHECK(field(ric, 0, "supports_evaluated") == doctest::Approx(120.0));  // C(16,2)
}
