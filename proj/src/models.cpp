#include "modframe/models.hpp"

#include "modframe/rng.hpp"

#include <cmath>
#include <utility>

namespace modframe {

namespace {

// Sparsifying bases enter every model in synthesis form: a coefficient
// vector maps to the signal it represents.
LinearOperator synthesis_op(BasisKind kind, Index n, Index block = 8) {
    if (kind == BasisKind::Identity) return identity_op(n);
    return adjoint_op(orthobasis_op(kind, n, block));
}

ModulationSeq make_diag(SeqKind kind, Index n, std::uint64_t seed,
                        const std::optional<CVec>& override_values) {
    if (override_values) {
        if (override_values->size() != n)
            throw ConfigError("diag override: expected length " + std::to_string(n) + ", got " +
                              std::to_string(override_values->size()));
        return ModulationSeq{*override_values, kind, seed};
    }
    return random_diagonal(kind, n, seed);
}

void check_unimodular(const CVec& v, const char* what) {
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(std::abs(v[i]) - 1.0) > 1e-9)
            throw ConfigError(std::string(what) + ": sequence must be unimodular");
}

}  // namespace

SensingModel random_demodulation(Index m, Index q, std::uint64_t seed, const RdOptions& opts) {
    if (m < 1 || q < 1) throw ConfigError("random_demodulation: need m >= 1 and q >= 1");
    const Index n = m * q;
    SensingModel model;
    model.id = "rd";
    model.m = m;
    model.n_tilde = n;
    model.n = n;
    model.utf = utf_block_sum(m, q);
    model.diag = make_diag(opts.diag_kind, n, seed, opts.diag_override);

    if (opts.lambda || opts.psi) {
        CVec lam = opts.lambda ? *opts.lambda : CVec::Ones(n);
        if (lam.size() != n) throw ConfigError("random_demodulation: lambda length mismatch");
        check_unimodular(lam, "random_demodulation lambda");
        const BasisKind psi = opts.psi.value_or(BasisKind::Identity);
        model.basis = compose({orthobasis_op(BasisKind::Fourier, n), diagonal_op(std::move(lam)),
                               synthesis_op(psi, n)});
        model.basis_desc = "dft*diag(lambda)*" + to_string(psi) + "_synthesis";
    } else {
        model.basis = orthobasis_op(BasisKind::PermutedFourier, n);
        model.basis_desc = "interleaved_dft";
    }
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel random_probing(Index m, Index q, Index L, std::uint64_t seed,
                            const ProbeOptions& opts) {
    if (L < 1) throw ConfigError("random_probing: need L >= 1");
    if (q < 1 || q > m)
        throw ConfigError("random_probing: need 1 <= q <= m, got q=" + std::to_string(q) +
                          ", m=" + std::to_string(m));
    if (!is_pow2(m))
        throw ConfigError("random_probing: m must be a power of two, got " + std::to_string(m));
    const Index nt = m * L;
    const Index n = q * L;

    SensingModel model;
    model.id = "rp";
    model.m = m;
    model.n_tilde = nt;
    model.n = n;
    model.utf = utf_idft_concat(m, L);
    model.diag = make_diag(SeqKind::Gaussian, nt, seed, opts.diag_override);

    // I_L (x) F(:, 1:q): pad each length-q block to m, DFT; adjoint keeps
    // the first q outputs of the inverse.
    model.basis = LinearOperator{nt, n,
                                 [m, q, L](const CVec& v) -> CVec {
                                     CVec out(m * L);
                                     CVec padded = CVec::Zero(m);
                                     for (Index i = 0; i < L; ++i) {
                                         padded.head(q) = v.segment(i * q, q);
                                         out.segment(i * m, m) = fft_unitary(padded, false);
                                     }
                                     return out;
                                 },
                                 [m, q, L](const CVec& u) -> CVec {
                                     CVec out(q * L);
                                     for (Index i = 0; i < L; ++i) {
                                         const CVec t = fft_unitary(u.segment(i * m, m), true);
                                         out.segment(i * q, q) = t.head(q);
                                     }
                                     return out;
                                 }};
    model.basis_desc = "block_dft_first_q";
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel compressive_multiplexing(Index m, Index L, std::uint64_t seed,
                                      const MuxOptions& opts) {
    if (m < 1 || L < 1) throw ConfigError("compressive_multiplexing: need m >= 1 and L >= 1");
    std::vector<BasisKind> bases = opts.channel_bases;
    if (bases.empty()) bases.assign(size_t(L), BasisKind::Fourier);
    if (Index(bases.size()) != L)
        throw ConfigError("compressive_multiplexing: expected " + std::to_string(L) +
                          " channel bases, got " + std::to_string(bases.size()));
    for (BasisKind b : bases) orthobasis_apply(b, CVec::Zero(m));  // size validation
    const Index n = m * L;

    SensingModel model;
    model.id = "cmux";
    model.m = m;
    model.n_tilde = n;
    model.n = n;
    model.utf = utf_fold(m, L);
    model.diag = make_diag(opts.diag_kind, n, seed, opts.diag_override);
    model.basis = LinearOperator{n, n,
                                 [m, L, bases](const CVec& v) -> CVec {
                                     CVec out(m * L);
                                     for (Index i = 0; i < L; ++i)
                                         out.segment(i * m, m) =
                                             orthobasis_apply(bases[size_t(i)], v.segment(i * m, m));
                                     return out;
                                 },
                                 [m, L, bases](const CVec& u) -> CVec {
                                     CVec out(m * L);
                                     for (Index i = 0; i < L; ++i)
                                         out.segment(i * m, m) = orthobasis_apply(
                                             bases[size_t(i)], u.segment(i * m, m), true);
                                     return out;
                                 }};
    model.basis_desc = "blockwise_channel_transforms";
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel arbitrary_subsampled(const SubsampleSet& omega, std::uint64_t seed,
                                  const SubsampledOptions& opts) {
    const Index n = omega.ambient;
    const Index m = omega.count();
    if (m < 1) throw ConfigError("arbitrary_subsampled: empty subsample set");

    SensingModel model;
    model.id = "asub";
    model.m = m;
    model.n_tilde = n;
    model.n = n;
    model.utf = utf_partial_unitary(omega, opts.base);
    model.diag = make_diag(opts.diag_kind, n, seed, opts.diag_override);
    model.basis = synthesis_op(opts.psi, n, opts.block);
    model.basis_desc = to_string(opts.psi) + "_synthesis";
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel block_diagonal_model(const SubsampleSet& omega, Index L, std::uint64_t seed,
                                  const SubsampledOptions& opts) {
    if (L < 1) throw ConfigError("block_diagonal_model: need L >= 1");
    const Index q = omega.ambient;
    const Index p = omega.count();
    if (p < 1) throw ConfigError("block_diagonal_model: empty subsample set");
    const Index n = q * L;

    SensingModel model;
    model.id = "bdiag";
    model.m = p * L;
    model.n_tilde = n;
    model.n = n;
    model.utf = utf_block_partial(omega, L, opts.base);
    model.diag = make_diag(opts.diag_kind, n, seed, opts.diag_override);
    model.basis = synthesis_op(opts.psi, n, opts.block);
    model.basis_desc = to_string(opts.psi) + "_synthesis";
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel golay_convolutional(const SubsampleSet& omega, std::uint64_t seed,
                                 const ConvOptions& opts) {
    const Index n = omega.ambient;
    const Index m = omega.count();
    if (m < 1) throw ConfigError("golay_convolutional: empty subsample set");
    const int d = ilog2(n);  // throws for non-power-of-two n

    SensingModel model;
    model.id = "golay-conv";
    model.m = m;
    model.n_tilde = n;
    model.n = n;

    // sqrt(n/m) R_Omega F* is a tight frame (rows of a unitary matrix).
    LinearOperator idft = adjoint_op(orthobasis_op(BasisKind::Fourier, n));
    LinearOperator u_op = scaled_op(std::sqrt(double(n) / double(m)),
                                    compose({subsample_op(omega), std::move(idft)}));
    model.utf = UtfOperator{std::move(u_op), UtfKind::PartialUnitary, double(n) / double(m)};
    model.diag = make_diag(opts.diag_kind, n, seed, opts.diag_override);

    std::vector<LinearOperator> basis_factors;
    basis_factors.push_back(orthobasis_op(BasisKind::Fourier, n));
    std::string desc = "dft";
    if (opts.lambda == PhaseMod::Golay) {
        basis_factors.push_back(diagonal_op(rudin_shapiro_pair(d).a.values));
        desc += "*diag(golay)";
    }
    if (opts.psi != BasisKind::Identity) {
        basis_factors.push_back(synthesis_op(opts.psi, n, opts.block));
        desc += "*" + to_string(opts.psi) + "_synthesis";
    }
    model.basis = basis_factors.size() == 1 ? basis_factors[0] : compose(std::move(basis_factors));
    model.basis_desc = desc;
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel ofdm_model(Index n, Index m, std::uint64_t seed, const OfdmOptions& opts) {
    if (m < 1 || n < 1 || n % m != 0)
        throw ConfigError("ofdm_model: need m | n, got n=" + std::to_string(n) +
                          ", m=" + std::to_string(m));
    const int d = ilog2(n);
    const Index q = n / m;

    SensingModel model;
    model.id = "ofdm";
    model.m = m;
    model.n_tilde = n;
    model.n = n;
    model.utf = utf_block_sum(m, q);
    model.diag = make_diag(SeqKind::Rademacher, n, seed, opts.sigma_override);

    CVec pilot;
    if (opts.pilot_override) {
        pilot = *opts.pilot_override;
        if (pilot.size() != n) throw ConfigError("ofdm_model: pilot length mismatch");
    } else if (opts.pilot == PilotKind::Golay) {
        pilot = rudin_shapiro_pair(d).a.values;
    } else {
        pilot = random_diagonal(SeqKind::Steinhaus, n, derive_seed(seed, kStreamPilot)).values;
    }
    check_unimodular(pilot, "ofdm_model pilot");

    model.basis =
        compose({adjoint_op(orthobasis_op(BasisKind::Fourier, n)), diagonal_op(std::move(pilot)),
                 orthobasis_op(BasisKind::Fourier, n)});
    model.basis_desc = opts.pilot == PilotKind::Golay ? "idft*diag(golay)*dft"
                                                      : "idft*diag(random_phase)*dft";
    model.A = compose({model.utf.op, diagonal_op(model.diag.values), model.basis});
    return model;
}

SensingModel make_model(const ModelSpec& spec) {
    if (spec.n < 1 || spec.m < 1 || spec.m > spec.n)
        throw ConfigError("make_model: need 1 <= m <= n");
    const Index n = spec.n;
    const Index m = spec.m;

    auto make_omega = [&](Index count, Index ambient) -> SubsampleSet {
        switch (spec.omega_kind) {
            case OmegaKind::Contiguous: return SubsampleSet::contiguous(count, ambient);
            case OmegaKind::Strided: return SubsampleSet::strided(count, ambient);
            case OmegaKind::Random:
                return SubsampleSet::random_subset(count, ambient,
                                                   derive_seed(spec.seed, kStreamOmega));
            case OmegaKind::Explicit: return SubsampleSet(spec.omega_indices, ambient);
        }
        throw ConfigError("make_model: unknown omega kind");
    };

    if (spec.id == "rd") {
        if (n % m != 0) throw ConfigError("rd: m must divide n");
        RdOptions opts;
        opts.diag_kind = spec.diag_kind;
        if (spec.psi != BasisKind::Identity) opts.psi = spec.psi;
        return random_demodulation(m, n / m, spec.seed, opts);
    }
    if (spec.id == "rp") {
        const Index L = spec.L > 0 ? spec.L : (m > 0 && n % m == 0 ? n / m : 0);
        if (L < 1 || n % L != 0) throw ConfigError("rp: need L >= 1 with L | n");
        return random_probing(m, n / L, L, spec.seed);
    }
    if (spec.id == "cmux") {
        if (n % m != 0) throw ConfigError("cmux: m must divide n");
        const Index L = n / m;
        if (spec.L > 0 && spec.L != L)
            throw ConfigError("cmux: L is determined by n/m = " + std::to_string(L));
        MuxOptions opts;
        opts.diag_kind = spec.diag_kind;
        return compressive_multiplexing(m, L, spec.seed, opts);
    }
    if (spec.id == "asub") {
        SubsampledOptions opts;
        opts.base = spec.base;
        opts.psi = spec.psi;
        opts.diag_kind = spec.diag_kind;
        return arbitrary_subsampled(make_omega(m, n), spec.seed, opts);
    }
    if (spec.id == "bdiag") {
        const Index L = spec.L > 0 ? spec.L : 1;
        if (n % L != 0 || m % L != 0) throw ConfigError("bdiag: L must divide both n and m");
        SubsampledOptions opts;
        opts.base = spec.base;
        opts.psi = spec.psi;
        opts.diag_kind = spec.diag_kind;
        return block_diagonal_model(make_omega(m / L, n / L), L, spec.seed, opts);
    }
    if (spec.id == "golay-conv") {
        ConvOptions opts;
        opts.lambda = spec.lambda;
        opts.psi = spec.psi;
        opts.diag_kind = spec.diag_kind;
        return golay_convolutional(make_omega(m, n), spec.seed, opts);
    }
    if (spec.id == "ofdm") {
        OfdmOptions opts;
        opts.pilot = spec.pilot;
        return ofdm_model(n, m, spec.seed, opts);
    }
    throw ConfigError("make_model: unknown model id '" + spec.id + "'");
}

}  // namespace modframe
