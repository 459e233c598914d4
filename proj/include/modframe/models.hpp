#pragma once

#include "modframe/frames.hpp"
#include "modframe/sequences.hpp"

#include <optional>
#include <string>

namespace modframe {

/// A sensing operator A (m x n) together with its three-factor
/// decomposition A = U * diag(xi) * B: tight frame, random diagonal, and
/// column-orthonormal basis factor. The factors are kept so diagnostics can
/// inspect them individually; A is their lazy composition.
struct SensingModel {
    LinearOperator A;
    UtfOperator utf;
    ModulationSeq diag;
    LinearOperator basis;
    std::string basis_desc;
    Index m = 0;
    Index n_tilde = 0;
    Index n = 0;
    std::string id;
};

/// Deterministic phase pre-modulation choices for the convolutional model.
enum class PhaseMod { None, Golay };

enum class PilotKind { Golay, RandomPhase };

struct RdOptions {
    SeqKind diag_kind = SeqKind::Rademacher;
    std::optional<CVec> diag_override;
    // Optional generalized tail: basis becomes F * diag(lambda) * Psi
    // instead of the frequency-interleaved DFT.
    std::optional<CVec> lambda;
    std::optional<BasisKind> psi;
};

struct ProbeOptions {
    std::optional<CVec> diag_override;
};

struct MuxOptions {
    SeqKind diag_kind = SeqKind::Rademacher;
    std::optional<CVec> diag_override;
    // Per-channel bases; empty means Fourier on every channel.
    std::vector<BasisKind> channel_bases;
};

struct SubsampledOptions {
    UnitaryBase base = UnitaryBase::Fourier;
    BasisKind psi = BasisKind::Identity;
    SeqKind diag_kind = SeqKind::Rademacher;
    std::optional<CVec> diag_override;
    Index block = 8;
};

struct ConvOptions {
    PhaseMod lambda = PhaseMod::Golay;
    BasisKind psi = BasisKind::Identity;
    SeqKind diag_kind = SeqKind::Rademacher;
    std::optional<CVec> diag_override;
    Index block = 8;
};

struct OfdmOptions {
    PilotKind pilot = PilotKind::Golay;
    std::optional<CVec> sigma_override;
    std::optional<CVec> pilot_override;
};

/// Block-sum frame over a sign-chipped frequency-interleaved DFT:
/// the integrate-and-dump acquisition model. n = m*q.
SensingModel random_demodulation(Index m, Index q, std::uint64_t seed, const RdOptions& opts = {});

/// Sum of L probed circulant blocks; probes are i.i.d. complex Gaussian.
/// Needs q <= m, m a power of two; maps n = q*L to m samples.
SensingModel random_probing(Index m, Index q, Index L, std::uint64_t seed,
                            const ProbeOptions& opts = {});

/// Folds L independently sign-modulated channels onto one m-sample block.
SensingModel compressive_multiplexing(Index m, Index L, std::uint64_t seed,
                                      const MuxOptions& opts = {});

/// Deterministically subsampled unitary with random sign modulation:
/// sqrt(n/m) R_Omega E D Psi.
SensingModel arbitrary_subsampled(const SubsampleSet& omega, std::uint64_t seed,
                                  const SubsampledOptions& opts = {});

/// Block-diagonal variant of arbitrary_subsampled: L independent q-point
/// blocks, each subsampled by the same Omega. m = |Omega|*L, n = q*L.
SensingModel block_diagonal_model(const SubsampleSet& omega, Index L, std::uint64_t seed,
                                  const SubsampledOptions& opts = {});

/// Subsampled random circulant with optional deterministic Golay phase
/// pre-modulation: sqrt(n/m) R_Omega F* D F Lambda Psi over n = omega.ambient.
SensingModel golay_convolutional(const SubsampleSet& omega, std::uint64_t seed,
                                 const ConvOptions& opts = {});

/// Channel-sounding model: block-sum frame over a sign-chipped circulant
/// whose spectrum is the pilot sequence (Golay by default). n = m*q.
SensingModel ofdm_model(Index n, Index m, std::uint64_t seed, const OfdmOptions& opts = {});

/// String identifiers accepted on the command line.
enum class OmegaKind { Contiguous, Strided, Random, Explicit };

struct ModelSpec {
    std::string id;  // rd | rp | cmux | asub | bdiag | golay-conv | ofdm
    Index n = 0;
    Index m = 0;
    Index L = 0;  // 0 = per-model default
    std::uint64_t seed = 0;
    BasisKind psi = BasisKind::Identity;
    PhaseMod lambda = PhaseMod::Golay;
    UnitaryBase base = UnitaryBase::Fourier;
    SeqKind diag_kind = SeqKind::Rademacher;
    OmegaKind omega_kind = OmegaKind::Contiguous;
    std::vector<Index> omega_indices;  // for OmegaKind::Explicit
    PilotKind pilot = PilotKind::Golay;
};

SensingModel make_model(const ModelSpec& spec);

}  // namespace modframe
