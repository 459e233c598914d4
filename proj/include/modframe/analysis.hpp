#pragma once

#include "modframe/operators.hpp"
#include "modframe/sequences.hpp"

#include <optional>
#include <vector>

namespace modframe {

/// Largest entry magnitude of a matrix.
double coherence(const CMat& M);

struct CoherenceReport {
    double mu = 0.0;
    std::optional<double> bound;  // analytic bound when one applies
    Index n = 0;
    BasisKind basis = BasisKind::Identity;
    bool passes = false;  // mu <= bound + 1e-12; false when bound is absent
};

/// Coherence of F * diag(lambda) * T, where T is the synthesis (adjoint)
/// form of the named transform. Columns are generated through fast applies,
/// guarded by max_n. Analytic bounds attached:
///   identity            1/sqrt(n) (exact, any unimodular lambda)
///   fourier, haar       sqrt(2/n) (Golay lambda; haar needs Rudin-Shapiro)
///   dct2, block_dct     2/sqrt(n) (Golay lambda)
CoherenceReport modulated_coherence(const ModulationSeq& lambda, BasisKind psi,
                                    Index max_n = 4096, Index block = 8);

enum class RicMethod { Exact, Sampled };

struct RicReport {
    Index s = 0;
    double delta = 0.0;
    RicMethod method = RicMethod::Exact;
    Index supports_evaluated = 0;
    std::vector<Index> worst_support;
};

/// Restricted isometry constant of order s by exhaustive support
/// enumeration: the largest |eigenvalue - 1| of any s-column Gram.
/// Guarded by C(n, s) <= 1e6; beyond that use empirical_ric.
RicReport exact_ric(const CMat& M, Index s);

/// Same per-support eigenvalue computation over sampled supports; a lower
/// bound on the exact constant. When num_supports covers every support the
/// enumeration is exhaustive and the result equals exact_ric.
RicReport empirical_ric(const LinearOperator& A, Index s, Index num_supports, std::uint64_t seed);

}  // namespace modframe
