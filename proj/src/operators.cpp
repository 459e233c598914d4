#include "modframe/operators.hpp"

#include "modframe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <utility>

namespace modframe {

SubsampleSet::SubsampleSet(std::vector<Index> idx, Index n) : indices(std::move(idx)), ambient(n) {
    if (ambient < 1) throw ConfigError("SubsampleSet: ambient dimension must be positive");
    if (Index(indices.size()) > ambient)
        throw ConfigError("SubsampleSet: more indices than ambient dimension");
    Index prev = -1;
    for (Index i : indices) {
        if (i < 0 || i >= ambient)
            throw ConfigError("SubsampleSet: index " + std::to_string(i) + " outside [0, " +
                              std::to_string(ambient) + ")");
        if (i <= prev) throw ConfigError("SubsampleSet: indices must be strictly increasing");
        prev = i;
    }
}

SubsampleSet SubsampleSet::contiguous(Index m, Index n) {
    std::vector<Index> idx(static_cast<size_t>(m));
    std::iota(idx.begin(), idx.end(), Index(0));
    return SubsampleSet(std::move(idx), n);
}

SubsampleSet SubsampleSet::strided(Index m, Index n) {
    if (m < 1 || m > n) throw ConfigError("SubsampleSet::strided: need 1 <= m <= n");
    std::vector<Index> idx(static_cast<size_t>(m));
    for (Index i = 0; i < m; ++i) idx[size_t(i)] = (i * n) / m;
    return SubsampleSet(std::move(idx), n);
}

SubsampleSet SubsampleSet::random_subset(Index m, Index n, std::uint64_t seed) {
    if (m < 1 || m > n) throw ConfigError("SubsampleSet::random_subset: need 1 <= m <= n");
    std::vector<Index> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), Index(0));
    CounterRng rng(seed, kStreamOmega);
    for (Index i = 0; i < m; ++i) {
        const Index j = i + Index(rng.next_below(std::uint64_t(n - i)));
        std::swap(pool[size_t(i)], pool[size_t(j)]);
    }
    std::vector<Index> idx(pool.begin(), pool.begin() + m);
    std::sort(idx.begin(), idx.end());
    return SubsampleSet(std::move(idx), n);
}

CVec subsample_apply(const SubsampleSet& omega, const CVec& v, bool adjoint) {
    const Index m = omega.count();
    if (!adjoint) {
        if (v.size() != omega.ambient)
            throw ConfigError("subsample_apply: expected length " + std::to_string(omega.ambient) +
                              ", got " + std::to_string(v.size()));
        CVec out(m);
        for (Index i = 0; i < m; ++i) out[i] = v[omega.indices[size_t(i)]];
        return out;
    }
    if (v.size() != m)
        throw ConfigError("subsample_apply adjoint: expected length " + std::to_string(m) +
                          ", got " + std::to_string(v.size()));
    CVec out = CVec::Zero(omega.ambient);
    for (Index i = 0; i < m; ++i) out[omega.indices[size_t(i)]] = v[i];
    return out;
}

CVec LinearOperator::forward(const CVec& v) const {
    if (v.size() != cols)
        throw ConfigError("LinearOperator::forward: expected length " + std::to_string(cols) +
                          ", got " + std::to_string(v.size()));
    return fwd(v);
}

CVec LinearOperator::adjoint(const CVec& v) const {
    if (v.size() != rows)
        throw ConfigError("LinearOperator::adjoint: expected length " + std::to_string(rows) +
                          ", got " + std::to_string(v.size()));
    return adj(v);
}

LinearOperator identity_op(Index n) {
    if (n < 1) throw ConfigError("identity_op: dimension must be positive");
    auto pass = [](const CVec& v) { return v; };
    return LinearOperator{n, n, pass, pass};
}

LinearOperator diagonal_op(CVec d) {
    const Index n = d.size();
    if (n < 1) throw ConfigError("diagonal_op: dimension must be positive");
    auto dd = std::make_shared<const CVec>(std::move(d));
    return LinearOperator{
        n, n, [dd](const CVec& v) -> CVec { return dd->cwiseProduct(v); },
        [dd](const CVec& v) -> CVec { return dd->conjugate().cwiseProduct(v); }};
}

LinearOperator scaled_op(cplx scale, LinearOperator inner) {
    auto in = std::make_shared<const LinearOperator>(std::move(inner));
    return LinearOperator{
        in->rows, in->cols,
        [in, scale](const CVec& v) -> CVec { return scale * in->forward(v); },
        [in, scale](const CVec& v) -> CVec { return std::conj(scale) * in->adjoint(v); }};
}

LinearOperator adjoint_op(LinearOperator inner) {
    return LinearOperator{inner.cols, inner.rows, inner.adj, inner.fwd};
}

LinearOperator orthobasis_op(BasisKind kind, Index n, Index block) {
    // Construction-time validation: run the apply once on a zero vector so
    // that size errors surface here, not at first use.
    orthobasis_apply(kind, CVec::Zero(n), false, block);
    return LinearOperator{
        n, n,
        [kind, block](const CVec& v) { return orthobasis_apply(kind, v, false, block); },
        [kind, block](const CVec& v) { return orthobasis_apply(kind, v, true, block); }};
}

LinearOperator subsample_op(SubsampleSet omega) {
    auto om = std::make_shared<const SubsampleSet>(std::move(omega));
    return LinearOperator{om->count(), om->ambient,
                          [om](const CVec& v) { return subsample_apply(*om, v, false); },
                          [om](const CVec& v) { return subsample_apply(*om, v, true); }};
}

LinearOperator circulant_op(CVec r) {
    const Index n = r.size();
    if (!is_pow2(n))
        throw ConfigError("circulant_op: length must be a power of two, got " + std::to_string(n));
    auto rr = std::make_shared<const CVec>(std::move(r));
    // Adjoint of a circulant with first column r is the circulant generated
    // by conj(r) reversed around index 0.
    auto radj = std::make_shared<const CVec>([&] {
        CVec s(n);
        s[0] = std::conj((*rr)[0]);
        for (Index i = 1; i < n; ++i) s[i] = std::conj((*rr)[n - i]);
        return s;
    }());
    return LinearOperator{n, n, [rr](const CVec& v) { return circulant_apply(*rr, v); },
                          [radj](const CVec& v) { return circulant_apply(*radj, v); }};
}

LinearOperator dense_op(CMat M) {
    auto mm = std::make_shared<const CMat>(std::move(M));
    return LinearOperator{mm->rows(), mm->cols(),
                          [mm](const CVec& v) -> CVec { return (*mm) * v; },
                          [mm](const CVec& v) -> CVec { return mm->adjoint() * v; }};
}

LinearOperator compose(std::vector<LinearOperator> ops) {
    if (ops.empty()) throw ConfigError("compose: empty operator list");
    for (size_t i = 0; i + 1 < ops.size(); ++i) {
        if (ops[i].cols != ops[i + 1].rows)
            throw ConfigError("compose: ops[" + std::to_string(i) + "] (" +
                              std::to_string(ops[i].rows) + "x" + std::to_string(ops[i].cols) +
                              ") does not chain with ops[" + std::to_string(i + 1) + "] (" +
                              std::to_string(ops[i + 1].rows) + "x" +
                              std::to_string(ops[i + 1].cols) + ")");
    }
    const Index rows = ops.front().rows;
    const Index cols = ops.back().cols;
    auto chain = std::make_shared<const std::vector<LinearOperator>>(std::move(ops));
    return LinearOperator{rows, cols,
                          [chain](const CVec& v) {
                              CVec w = v;
                              for (auto it = chain->rbegin(); it != chain->rend(); ++it)
                                  w = it->forward(w);
                              return w;
                          },
                          [chain](const CVec& v) {
                              CVec w = v;
                              for (const auto& op : *chain) w = op.adjoint(w);
                              return w;
                          }};
}

CMat materialize(const LinearOperator& op, Index max_entries) {
    if (op.rows * op.cols > max_entries)
        throw ConfigError("materialize: " + std::to_string(op.rows * op.cols) +
                          " entries exceed max_entries=" + std::to_string(max_entries) +
                          "; pass a larger max_entries to override");
    CMat M(op.rows, op.cols);
    CVec e = CVec::Zero(op.cols);
    for (Index j = 0; j < op.cols; ++j) {
        e[j] = 1.0;
        M.col(j) = op.forward(e);
        e[j] = 0.0;
    }
    return M;
}

}  // namespace modframe
