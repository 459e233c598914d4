#include "modframe/recovery.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace modframe {

namespace {

constexpr double kResidualTol = 1e-10;  // relative exact-fit threshold

// Column cache shared across the iterations of one solver run.
struct ColumnCache {
    const LinearOperator& A;
    std::unordered_map<Index, CVec> cols;

    const CVec& get(Index j) {
        auto it = cols.find(j);
        if (it != cols.end()) return it->second;
        CVec e = CVec::Zero(A.cols);
        e[j] = 1.0;
        return cols.emplace(j, A.forward(e)).first->second;
    }
};

CVec solve_on(ColumnCache& cache, const CVec& y, const std::vector<Index>& support) {
    const Index s = Index(support.size());
    CMat As(cache.A.rows, s);
    for (Index i = 0; i < s; ++i) As.col(i) = cache.get(support[size_t(i)]);
    Eigen::ColPivHouseholderQR<CMat> qr(As);
    const Index rank = qr.rank();
    if (rank < s)
        throw NumericalError("least squares on support: rank-deficient columns (numerical rank " +
                             std::to_string(rank) + " of " + std::to_string(s) + ")");
    return qr.solve(y);
}

CVec scatter(Index n, const std::vector<Index>& support, const CVec& z) {
    CVec x = CVec::Zero(n);
    for (size_t i = 0; i < support.size(); ++i) x[support[i]] = z[Index(i)];
    return x;
}

// Indices of the k largest magnitudes, ties broken toward the lowest index.
std::vector<Index> top_k(const CVec& c, Index k) {
    std::vector<Index> idx(size_t(c.size()));
    std::iota(idx.begin(), idx.end(), Index(0));
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](Index a, Index b) {
        const double xa = std::abs(c[a]);
        const double xb = std::abs(c[b]);
        if (xa != xb) return xa > xb;
        return a < b;
    });
    idx.resize(size_t(k));
    return idx;
}

RecoveryResult empty_result(Index n) {
    RecoveryResult res;
    res.xhat = CVec::Zero(n);
    res.support = SubsampleSet({}, n);
    res.residual_norm = 0.0;
    res.converged = true;
    return res;
}

}  // namespace

CVec lsq_on_support(const LinearOperator& A, const CVec& y, const SubsampleSet& S) {
    if (S.count() < 1) throw ConfigError("lsq_on_support: empty support");
    if (S.count() > A.rows) throw ConfigError("lsq_on_support: more atoms than measurements");
    if (S.ambient != A.cols) throw ConfigError("lsq_on_support: support ambient != operator cols");
    if (y.size() != A.rows) throw ConfigError("lsq_on_support: measurement length mismatch");
    ColumnCache cache{A, {}};
    return solve_on(cache, y, S.indices);
}

RecoveryResult omp(const LinearOperator& A, const CVec& y, Index s, int max_iter) {
    const Index n = A.cols;
    if (y.size() != A.rows) throw ConfigError("omp: measurement length mismatch");
    if (s < 1 || s > A.rows || s > n)
        throw ConfigError("omp: need 1 <= s <= min(rows, cols)");
    if (max_iter < 0) max_iter = int(s);

    const double ynorm = y.norm();
    if (ynorm == 0.0) return empty_result(n);

    ColumnCache cache{A, {}};
    std::vector<Index> support;
    std::vector<char> picked(size_t(n), 0);
    CVec residual = y;
    double res_norm = ynorm;
    int it = 0;
    bool hit_tol = false;

    while (it < max_iter && Index(support.size()) < s) {
        ++it;
        const CVec corr = A.adjoint(residual);
        Index best = -1;
        double best_mag = -1.0;
        for (Index j = 0; j < n; ++j) {
            if (picked[size_t(j)]) continue;
            const double mag = std::abs(corr[j]);
            if (mag > best_mag) {  // strict: ties keep the lowest index
                best_mag = mag;
                best = j;
            }
        }
        picked[size_t(best)] = 1;
        support.push_back(best);
        std::sort(support.begin(), support.end());

        const CVec z = solve_on(cache, y, support);
        const CVec xhat = scatter(n, support, z);
        residual = y - A.forward(xhat);
        res_norm = residual.norm();
        if (res_norm <= kResidualTol * ynorm) {
            hit_tol = true;
            break;
        }
    }

    RecoveryResult res;
    const CVec z = solve_on(cache, y, support);
    res.xhat = scatter(n, support, z);
    res.residual_norm = (y - A.forward(res.xhat)).norm();
    res.support = SubsampleSet(support, n);
    res.iterations = it;
    res.converged = hit_tol || Index(support.size()) == s;
    return res;
}

RecoveryResult subspace_pursuit(const LinearOperator& A, const CVec& y, Index s, int max_iter) {
    const Index n = A.cols;
    if (y.size() != A.rows) throw ConfigError("subspace_pursuit: measurement length mismatch");
    if (s < 1 || s > A.rows || s > n)
        throw ConfigError("subspace_pursuit: need 1 <= s <= min(rows, cols)");

    const double ynorm = y.norm();
    if (ynorm == 0.0) return empty_result(n);

    ColumnCache cache{A, {}};

    auto refit = [&](std::vector<Index> support) {
        std::sort(support.begin(), support.end());
        const CVec z = solve_on(cache, y, support);
        CVec xhat = scatter(n, support, z);
        CVec residual = y - A.forward(xhat);
        return std::tuple<std::vector<Index>, CVec, double>(std::move(support), std::move(xhat),
                                                            residual.norm());
    };

    auto [support, xhat, res_norm] = refit(top_k(A.adjoint(y), s));
    int iterations = 1;
    bool converged = res_norm <= kResidualTol * ynorm;

    while (!converged && iterations < max_iter) {
        const CVec corr = A.adjoint(y - A.forward(xhat));
        // Union with the strongest fresh correlations; capped so the interior
        // least squares stays overdetermined.
        std::vector<char> in_support(size_t(n), 0);
        for (Index j : support) in_support[size_t(j)] = 1;
        const Index budget = std::min(s, A.rows - Index(support.size()));
        std::vector<Index> merged = support;
        for (Index j : top_k(corr, std::min(Index(2) * s, n))) {
            if (Index(merged.size()) - Index(support.size()) >= budget) break;
            if (!in_support[size_t(j)]) merged.push_back(j);
        }

        std::sort(merged.begin(), merged.end());
        const CVec z = solve_on(cache, y, merged);
        std::vector<Index> pruned;
        for (Index i : top_k(z, s)) pruned.push_back(merged[size_t(i)]);

        auto [next_support, next_xhat, next_res] = refit(std::move(pruned));
        ++iterations;
        if (next_res < res_norm) {
            support = std::move(next_support);
            xhat = std::move(next_xhat);
            res_norm = next_res;
            if (res_norm <= kResidualTol * ynorm) converged = true;
        } else {
            converged = true;  // residual stopped decreasing
        }
    }

    RecoveryResult res;
    res.xhat = std::move(xhat);
    res.support = SubsampleSet(support, n);
    res.residual_norm = res_norm;
    res.iterations = iterations;
    res.converged = converged;
    return res;
}

double nmse_db(const CVec& x, const CVec& xhat) {
    if (x.size() != xhat.size()) throw ConfigError("nmse_db: length mismatch");
    const double ref = x.squaredNorm();
    if (ref == 0.0) throw ConfigError("nmse_db: zero reference signal");
    const double ratio = (x - xhat).squaredNorm() / ref;
    if (ratio <= 1e-30) return -300.0;
    return std::max(-300.0, 10.0 * std::log10(ratio));
}

}  // namespace modframe
