#pragma once

#include "modframe/analysis.hpp"
#include "modframe/csv.hpp"
#include "modframe/models.hpp"
#include "modframe/recovery.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace modframe {

enum class SolverKind { Omp, Sp };

std::string to_string(SolverKind kind);
std::string to_string(OmegaKind kind);
std::string to_string(PhaseMod kind);

/// Declarative parameters for the Monte-Carlo studies. A result table is a
/// pure function of this struct (including base_seed): trial t draws its
/// randomness from streams keyed off base_seed + t, so any execution order
/// gives byte-identical CSV.
struct ExperimentConfig {
    std::string experiment;
    std::string model = "ofdm";
    Index n = 1024;
    Index m = 64;
    Index s = 6;
    Index L = 0;
    std::vector<double> snr_db;  // empty = noiseless; inf = no noise sentinel
    Index trials = 100;
    std::uint64_t base_seed = 1;
    SolverKind solver = SolverKind::Sp;
    BasisKind basis = BasisKind::Identity;
    SeqKind diag_kind = SeqKind::Rademacher;
    OmegaKind omega = OmegaKind::Contiguous;
    std::vector<Index> omega_indices;  // used when omega == OmegaKind::Explicit
    PhaseMod lambda = PhaseMod::Golay;
    std::vector<Index> m_grid;
    std::vector<Index> s_grid;
    std::vector<int> d_grid;
    // Wall-clock columns are opt-in: the default CSV is a pure function of
    // the config, so reruns are byte-identical.
    bool include_timing = false;

    std::string echo() const;  // the '#' comment line body
    void validate() const;     // throws ConfigError
};

/// Six-tap sparse test channel impulse response (ATTC / Grande Alliance
/// DTV ensemble E, static case). Requires n >= 138.
CVec attc_channel(Index n);

/// y plus circular complex Gaussian noise with per-entry variance
/// ||y||^2 / (len(y) * 10^(snr_db/10)). snr_db = +inf returns y unchanged.
CVec add_awgn(const CVec& y, double snr_db, std::uint64_t seed);

/// Random unit-norm s-sparse coefficient vector: uniform support,
/// unit-modulus random-phase values.
CVec random_sparse_signal(Index n, Index s, std::uint64_t seed);

/// Channel-estimation sweep over the SNR grid: exact-support rate and
/// median NMSE per SNR, plus the PAPR of the Golay pilot and of a seeded
/// random-phase pilot for contrast.
CsvTable run_ofdm_experiment(const ExperimentConfig& cfg);

/// Noiseless exact-support success rate over an (m, s) grid at fixed n.
CsvTable run_phase_transition(const ExperimentConfig& cfg);

/// Success-rate matrix over sparsifying basis x sampling scheme, where the
/// schemes are: rr (random subsampling + random circulant), dr
/// (deterministic subsampling + random circulant), and dr-golay (dr with
/// Golay phase pre-modulation).
CsvTable run_basis_compatibility(const ExperimentConfig& cfg);

/// Coherence of the modulated basis against its analytic bound, one row per
/// (d, basis) over the Rudin-Shapiro sequence of length 2^d.
CsvTable run_coherence_report(const ExperimentConfig& cfg);

/// One seeded recovery run; one-row table. Used by the `recover` subcommand.
CsvTable run_recover_once(const ExperimentConfig& cfg);

/// Restricted-isometry diagnostic for a model; one-row table. Exact method
/// materializes the model, sampled method draws `trials` random supports.
CsvTable run_ric(const ExperimentConfig& cfg, RicMethod method, Index num_supports);

}  // namespace modframe
