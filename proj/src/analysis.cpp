#include "modframe/analysis.hpp"

#include "modframe/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modframe {

namespace {

// C(n, s) capped at `cap` to avoid overflow.
double supports_count(Index n, Index s, double cap) {
    double c = 1.0;
    for (Index i = 0; i < s; ++i) {
        c *= double(n - i) / double(i + 1);
        if (c > cap) return cap + 1.0;
    }
    return c;
}

// Largest |eigenvalue - 1| of the Hermitian Gram of the given columns.
double gram_eig_dev(const CMat& gram) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(gram, Eigen::EigenvaluesOnly);
    const RVec& ev = eig.eigenvalues();
    return std::max(std::abs(ev.maxCoeff() - 1.0), std::abs(ev.minCoeff() - 1.0));
}

// Lexicographic support enumeration; visit returns through the callback.
template <typename F>
void for_each_support(Index n, Index s, F&& visit) {
    std::vector<Index> idx(static_cast<size_t>(s));
    std::iota(idx.begin(), idx.end(), Index(0));
    while (true) {
        visit(idx);
        Index i = s - 1;
        while (i >= 0 && idx[size_t(i)] == n - s + i) --i;
        if (i < 0) break;
        ++idx[size_t(i)];
        for (Index j = i + 1; j < s; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
    }
}

}  // namespace

double coherence(const CMat& M) {
    if (M.size() == 0) throw ConfigError("coherence: empty matrix");
    if (!M.allFinite()) throw ConfigError("coherence: matrix has non-finite entries");
    return M.cwiseAbs().maxCoeff();
}

CoherenceReport modulated_coherence(const ModulationSeq& lambda, BasisKind psi, Index max_n,
                                    Index block) {
    const Index n = lambda.size();
    if (n > max_n)
        throw ConfigError("modulated_coherence: n=" + std::to_string(n) + " exceeds max_n=" +
                          std::to_string(max_n) + "; raise max_n (--max-n on the CLI)");

    CoherenceReport report;
    report.n = n;
    report.basis = psi;

    // Column j of F * diag(lambda) * T, with T the synthesis form of psi.
    double mu = 0.0;
    CVec e = CVec::Zero(n);
    for (Index j = 0; j < n; ++j) {
        e[j] = 1.0;
        const CVec t = orthobasis_apply(psi, e, true, block);
        const CVec col = dft_any(lambda.values.cwiseProduct(t), false);
        mu = std::max(mu, col.cwiseAbs().maxCoeff());
        e[j] = 0.0;
    }
    report.mu = mu;

    const bool golay = lambda.kind == SeqKind::GolayA || lambda.kind == SeqKind::GolayB;
    bool unimodular = true;
    for (Index i = 0; i < n && unimodular; ++i)
        unimodular = std::abs(std::abs(lambda.values[i]) - 1.0) <= 1e-9;

    switch (psi) {
        case BasisKind::Identity:
            if (unimodular) report.bound = 1.0 / std::sqrt(double(n));
            break;
        case BasisKind::Fourier:
        case BasisKind::PermutedFourier:
            if (golay) report.bound = std::sqrt(2.0 / double(n));
            break;
        case BasisKind::Dct2:
        case BasisKind::BlockDct:
            if (golay) report.bound = 2.0 / std::sqrt(double(n));
            break;
        case BasisKind::Haar:
            // The Haar bound holds for Rudin-Shapiro sequences, which are the
            // only Golay kinds this library produces.
            if (golay) report.bound = std::sqrt(2.0 / double(n));
            break;
        case BasisKind::Hadamard:
            break;
    }
    report.passes = report.bound.has_value() && report.mu <= *report.bound + 1e-12;
    return report;
}

RicReport exact_ric(const CMat& M, Index s) {
    const Index n = M.cols();
    if (s < 1 || s > n) throw ConfigError("exact_ric: need 1 <= s <= n");
    const double total = supports_count(n, s, 1e6);
    if (total > 1e6)
        throw ConfigError("exact_ric: C(" + std::to_string(n) + ", " + std::to_string(s) +
                          ") exceeds 1e6 supports; use empirical_ric");

    // Full Gram only while the n x n table is cheap; otherwise gather the
    // s x s Gram per support straight from the columns.
    const bool full_gram = n <= 2048;
    CMat gram;
    if (full_gram) gram = M.adjoint() * M;

    RicReport report;
    report.s = s;
    report.method = RicMethod::Exact;
    CMat sub(s, s);
    for_each_support(n, s, [&](const std::vector<Index>& idx) {
        if (full_gram) {
            for (Index a = 0; a < s; ++a)
                for (Index b = 0; b < s; ++b) sub(a, b) = gram(idx[size_t(a)], idx[size_t(b)]);
        } else {
            for (Index a = 0; a < s; ++a)
                for (Index b = 0; b < s; ++b)
                    sub(a, b) = M.col(idx[size_t(a)]).dot(M.col(idx[size_t(b)]));
        }
        const double dev = gram_eig_dev(sub);
        if (dev > report.delta) {
            report.delta = dev;
            report.worst_support = idx;
        }
        ++report.supports_evaluated;
    });
    return report;
}

RicReport empirical_ric(const LinearOperator& A, Index s, Index num_supports,
                        std::uint64_t seed) {
    const Index n = A.cols;
    if (s < 1 || s > n) throw ConfigError("empirical_ric: need 1 <= s <= n");
    if (num_supports < 1) throw ConfigError("empirical_ric: need num_supports >= 1");

    // Columns fetched once when affordable; per-support applies otherwise.
    const bool precompute = A.rows * n <= (Index(1) << 22);
    CMat cols;
    if (precompute) cols = materialize(A, Index(1) << 22);
    auto column = [&](Index j) -> CVec {
        if (precompute) return cols.col(j);
        CVec e = CVec::Zero(n);
        e[j] = 1.0;
        return A.forward(e);
    };

    RicReport report;
    report.s = s;
    report.method = RicMethod::Sampled;

    CMat sub(A.rows, s);
    auto eval_support = [&](const std::vector<Index>& idx) {
        for (Index a = 0; a < s; ++a) sub.col(a) = column(idx[size_t(a)]);
        const double dev = gram_eig_dev(sub.adjoint() * sub);
        if (dev > report.delta) {
            report.delta = dev;
            report.worst_support = idx;
        }
        ++report.supports_evaluated;
    };

    const double total = supports_count(n, s, 1e18);
    if (double(num_supports) >= total) {
        // Requested sample covers everything: enumerate instead.
        for_each_support(n, s, eval_support);
        return report;
    }

    CounterRng rng(seed);
    std::vector<Index> pool(static_cast<size_t>(n));
    std::vector<Index> idx(static_cast<size_t>(s));
    for (Index t = 0; t < num_supports; ++t) {
        std::iota(pool.begin(), pool.end(), Index(0));
        for (Index i = 0; i < s; ++i) {
            const Index j = i + Index(rng.next_below(std::uint64_t(n - i)));
            std::swap(pool[size_t(i)], pool[size_t(j)]);
        }
        std::copy(pool.begin(), pool.begin() + s, idx.begin());
        std::sort(idx.begin(), idx.end());
        eval_support(idx);
    }
    return report;
}

}  // namespace modframe
