// modframe: structured sensing models, sequence diagnostics, and seeded
// Monte-Carlo experiments, emitting CSV.

#include "modframe/analysis.hpp"
#include "modframe/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

namespace {

using namespace modframe;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inf" || item == "+inf")
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(std::stod(item));
    }
    return out;
}

std::vector<Index> parse_index_list(const std::string& text) {
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Index(std::stoll(item)));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path);
    os << text;
}

SolverKind solver_from_string(const std::string& s) {
    if (s == "omp") return SolverKind::Omp;
    if (s == "sp") return SolverKind::Sp;
    throw ConfigError("unknown solver: " + s);
}

OmegaKind omega_from_string(const std::string& s) {
    if (s == "contiguous") return OmegaKind::Contiguous;
    if (s == "strided") return OmegaKind::Strided;
    if (s == "random") return OmegaKind::Random;
    throw ConfigError("unknown omega kind: " + s);
}

PhaseMod lambda_from_string(const std::string& s) {
    if (s == "golay") return PhaseMod::Golay;
    if (s == "none") return PhaseMod::None;
    throw ConfigError("unknown lambda kind: " + s);
}

SeqKind seq_from_string(const std::string& s) {
    if (s == "rademacher") return SeqKind::Rademacher;
    if (s == "steinhaus") return SeqKind::Steinhaus;
    if (s == "gaussian") return SeqKind::Gaussian;
    throw ConfigError("unknown diagonal kind: " + s);
}

struct CliState {
    ExperimentConfig cfg;
    std::string model = "ofdm";
    std::string basis = "identity";
    std::string solver = "sp";
    std::string omega = "contiguous";
    std::string lambda = "golay";
    std::string diag = "rademacher";
    std::string snr_list;
    std::string m_grid_list;
    std::string s_grid_list;
    std::string d_grid_list;
    std::string omega_file;
    std::string out;
    bool timing = false;

    ExperimentConfig resolve() const {
        ExperimentConfig c = cfg;
        c.model = model;
        c.basis = basis_from_string(basis);
        c.solver = solver_from_string(solver);
        c.omega = omega_from_string(omega);
        c.lambda = lambda_from_string(lambda);
        c.diag_kind = seq_from_string(diag);
        c.include_timing = timing;
        if (!snr_list.empty()) c.snr_db = parse_double_list(snr_list);
        if (!m_grid_list.empty()) c.m_grid = parse_index_list(m_grid_list);
        if (!s_grid_list.empty()) c.s_grid = parse_index_list(s_grid_list);
        if (!d_grid_list.empty()) c.d_grid = parse_int_list(d_grid_list);
        if (!omega_file.empty()) {
            std::ifstream is(omega_file);
            if (!is) throw ConfigError("cannot open omega file: " + omega_file);
            c.omega = OmegaKind::Explicit;
            c.omega_indices.clear();
            long long v = 0;
            while (is >> v) c.omega_indices.push_back(Index(v));
        }
        return c;
    }
};

void add_shared_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--n", st.cfg.n, "signal dimension");
    cmd->add_option("--m", st.cfg.m, "number of measurements");
    cmd->add_option("--s", st.cfg.s, "sparsity level");
    cmd->add_option("--L", st.cfg.L, "number of blocks/channels (model dependent)");
    cmd->add_option("--model", st.model, "model id: rd|rp|cmux|asub|bdiag|golay-conv|ofdm");
    cmd->add_option("--basis", st.basis, "sparsifying basis kind");
    cmd->add_option("--seed", st.cfg.base_seed, "base seed");
    cmd->add_option("--trials", st.cfg.trials, "Monte-Carlo trials per grid point");
    cmd->add_option("--snr-db", st.snr_list, "comma list of SNRs in dB (inf = noiseless)");
    cmd->add_option("--solver", st.solver, "omp|sp");
    cmd->add_option("--omega", st.omega, "subsampler: contiguous|strided|random");
    cmd->add_option("--omega-file", st.omega_file, "file of subsampler indices, one per line");
    cmd->add_option("--lambda", st.lambda, "phase modulation: golay|none");
    cmd->add_option("--diag", st.diag, "random diagonal kind: rademacher|steinhaus|gaussian");
    cmd->add_flag("--timing", st.timing, "append a mean_runtime_ms column (non-reproducible)");
    cmd->add_option("--out", st.out, "output path (default stdout)");
}

int run_golay(int d, const std::string& emit, const std::string& out) {
    const GolayPair pair = rudin_shapiro_pair(d);
    std::ostringstream os;
    auto print_seq = [&](const ModulationSeq& s) {
        for (Index i = 0; i < s.size(); ++i) os << int(s.values[i].real()) << "\n";
    };
    if (emit == "a" || emit == "both") print_seq(pair.a);
    if (emit == "b" || emit == "both") print_seq(pair.b);
    if (emit != "a" && emit != "b" && emit != "both")
        throw ConfigError("golay: --emit must be a, b, or both");
    write_text(out, os.str());
    return 0;
}

int run_coherence_cmd(const std::string& lambda_kind, int d, const std::string& basis,
                      std::uint64_t seed, Index max_n, const std::string& out) {
    const Index n = Index(1) << d;
    ModulationSeq lam;
    if (lambda_kind == "golay")
        lam = rudin_shapiro_pair(d).a;
    else
        lam = random_diagonal(seq_from_string(lambda_kind), n, seed);
    const CoherenceReport rep = modulated_coherence(lam, basis_from_string(basis), max_n);

    CsvTable table;
    std::ostringstream cmt;
    cmt << "experiment=coherence lambda=" << lambda_kind << " d=" << d << " n=" << n
        << " basis=" << basis << " seed=" << seed;
    table.comment = cmt.str();
    table.header = {"d", "n", "basis", "mu", "bound", "pass"};
    table.rows.push_back({std::to_string(d), std::to_string(n), basis, fmt_g9(rep.mu),
                          rep.bound ? fmt_g9(*rep.bound) : "nan", rep.passes ? "1" : "0"});
    write_text(out, table.to_string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured compressed-sensing models, diagnostics, and experiments"};
    app.require_subcommand(1);

    // golay
    int golay_d = 10;
    std::string golay_emit = "a";
    std::string golay_out;
    auto* golay_cmd = app.add_subcommand("golay", "emit a Golay complementary sequence");
    golay_cmd->add_option("--d", golay_d, "length exponent, n = 2^d")->required();
    golay_cmd->add_option("--emit", golay_emit, "a|b|both");
    golay_cmd->add_option("--out", golay_out, "output path (default stdout)");

    // coherence
    std::string coh_lambda = "golay";
    int coh_d = 8;
    std::string coh_basis = "fourier";
    std::uint64_t coh_seed = 1;
    Index coh_max_n = 4096;
    std::string coh_out;
    auto* coh_cmd = app.add_subcommand("coherence", "coherence of a modulated basis vs its bound");
    coh_cmd->add_option("--lambda", coh_lambda, "golay|rademacher|steinhaus");
    coh_cmd->add_option("--d", coh_d, "length exponent, n = 2^d")->required();
    coh_cmd->add_option("--basis", coh_basis, "identity|fourier|dct2|block_dct|haar");
    coh_cmd->add_option("--seed", coh_seed, "seed for random lambda kinds");
    coh_cmd->add_option("--max-n", coh_max_n, "guard on the column scan cost");
    coh_cmd->add_option("--out", coh_out, "output path (default stdout)");

    // subcommands sharing the experiment config
    CliState ric_st, rec_st, pt_st, bc_st, ofdm_st;
    std::string ric_method = "exact";
    Index ric_supports = 500;

    auto* ric_cmd = app.add_subcommand("ric", "restricted isometry constant of a model");
    add_shared_options(ric_cmd, ric_st);
    ric_cmd->add_option("--method", ric_method, "exact|sampled");
    ric_cmd->add_option("--supports", ric_supports, "sampled supports for --method sampled");

    auto* rec_cmd = app.add_subcommand("recover", "single seeded recovery run");
    add_shared_options(rec_cmd, rec_st);

    auto* pt_cmd = app.add_subcommand("phase-transition", "success rate over an (m, s) grid");
    add_shared_options(pt_cmd, pt_st);
    pt_cmd->add_option("--m-grid", pt_st.m_grid_list, "comma list of m values");
    pt_cmd->add_option("--s-grid", pt_st.s_grid_list, "comma list of s values");

    auto* bc_cmd = app.add_subcommand("basis-compat",
                                      "scheme x basis success matrix for convolutional sensing");
    add_shared_options(bc_cmd, bc_st);

    auto* ofdm_cmd = app.add_subcommand("ofdm", "sparse channel estimation sweep over SNR");
    add_shared_options(ofdm_cmd, ofdm_st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (golay_cmd->parsed()) return run_golay(golay_d, golay_emit, golay_out);
        if (coh_cmd->parsed())
            return run_coherence_cmd(coh_lambda, coh_d, coh_basis, coh_seed, coh_max_n, coh_out);
        if (ric_cmd->parsed()) {
            if (ric_method != "exact" && ric_method != "sampled")
                throw modframe::ConfigError("ric: --method must be exact or sampled");
            const auto table = run_ric(ric_st.resolve(),
                                       ric_method == "exact" ? modframe::RicMethod::Exact
                                                             : modframe::RicMethod::Sampled,
                                       ric_supports);
            write_text(ric_st.out, table.to_string());
            return 0;
        }
        if (rec_cmd->parsed()) {
            write_text(rec_st.out, run_recover_once(rec_st.resolve()).to_string());
            return 0;
        }
        if (pt_cmd->parsed()) {
            write_text(pt_st.out, run_phase_transition(pt_st.resolve()).to_string());
            return 0;
        }
        if (bc_cmd->parsed()) {
            write_text(bc_st.out, run_basis_compatibility(bc_st.resolve()).to_string());
            return 0;
        }
        if (ofdm_cmd->parsed()) {
            write_text(ofdm_st.out, run_ofdm_experiment(ofdm_st.resolve()).to_string());
            return 0;
        }
    } catch (const modframe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const modframe::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
