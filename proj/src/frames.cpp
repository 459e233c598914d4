#include "modframe/frames.hpp"

#include <cmath>
#include <utility>

namespace modframe {

namespace {

BasisKind to_basis(UnitaryBase base) {
    return base == UnitaryBase::Fourier ? BasisKind::Fourier : BasisKind::Hadamard;
}

}  // namespace

UtfOperator utf_block_sum(Index m, Index q) {
    if (m < 1 || q < 1) throw ConfigError("utf_block_sum: need m >= 1 and q >= 1");
    const Index n = m * q;
    LinearOperator op{m, n,
                      [m, q](const CVec& v) -> CVec {
                          CVec out(m);
                          for (Index i = 0; i < m; ++i) out[i] = v.segment(i * q, q).sum();
                          return out;
                      },
                      [m, q](const CVec& u) -> CVec {
                          CVec out(m * q);
                          for (Index i = 0; i < m; ++i) out.segment(i * q, q).setConstant(u[i]);
                          return out;
                      }};
    return UtfOperator{std::move(op), UtfKind::BlockSum, double(q)};
}

UtfOperator utf_idft_concat(Index m, Index L) {
    if (L < 1) throw ConfigError("utf_idft_concat: need L >= 1");
    if (!is_pow2(m))
        throw ConfigError("utf_idft_concat: m must be a power of two, got " + std::to_string(m));
    LinearOperator op{m, m * L,
                      [m, L](const CVec& v) -> CVec {
                          CVec out = CVec::Zero(m);
                          for (Index i = 0; i < L; ++i)
                              out += fft_unitary(v.segment(i * m, m), true);
                          return out;
                      },
                      [m, L](const CVec& u) -> CVec {
                          const CVec f = fft_unitary(u, false);
                          CVec out(m * L);
                          for (Index i = 0; i < L; ++i) out.segment(i * m, m) = f;
                          return out;
                      }};
    return UtfOperator{std::move(op), UtfKind::IdftConcat, double(L)};
}

UtfOperator utf_fold(Index m, Index L) {
    if (m < 1 || L < 1) throw ConfigError("utf_fold: need m >= 1 and L >= 1");
    LinearOperator op{m, m * L,
                      [m, L](const CVec& v) -> CVec {
                          CVec out = CVec::Zero(m);
                          for (Index i = 0; i < L; ++i) out += v.segment(i * m, m);
                          return out;
                      },
                      [m, L](const CVec& u) -> CVec {
                          CVec out(m * L);
                          for (Index i = 0; i < L; ++i) out.segment(i * m, m) = u;
                          return out;
                      }};
    return UtfOperator{std::move(op), UtfKind::Fold, double(L)};
}

UtfOperator utf_block_partial(const SubsampleSet& omega, Index L, UnitaryBase base) {
    if (L < 1) throw ConfigError("utf_block_partial: need L >= 1");
    const Index q = omega.ambient;
    const Index p = omega.count();
    if (p < 1) throw ConfigError("utf_block_partial: empty subsample set");
    const BasisKind kind = to_basis(base);
    orthobasis_apply(kind, CVec::Zero(q));  // size validation up front
    const double scale = std::sqrt(double(q) / double(p));
    auto om = omega;
    LinearOperator op{p * L, q * L,
                      [om, L, q, p, kind, scale](const CVec& v) -> CVec {
                          CVec out(p * L);
                          for (Index i = 0; i < L; ++i) {
                              const CVec t = orthobasis_apply(kind, v.segment(i * q, q));
                              out.segment(i * p, p) = scale * subsample_apply(om, t);
                          }
                          return out;
                      },
                      [om, L, q, p, kind, scale](const CVec& u) -> CVec {
                          CVec out(q * L);
                          for (Index i = 0; i < L; ++i) {
                              const CVec z = subsample_apply(om, u.segment(i * p, p), true);
                              out.segment(i * q, q) = scale * orthobasis_apply(kind, z, true);
                          }
                          return out;
                      }};
    return UtfOperator{std::move(op), UtfKind::BlockPartial, double(q) / double(p)};
}

UtfOperator utf_partial_unitary(const SubsampleSet& omega, UnitaryBase base) {
    const Index n = omega.ambient;
    const Index m = omega.count();
    if (m < 1) throw ConfigError("utf_partial_unitary: empty subsample set");
    LinearOperator op =
        scaled_op(std::sqrt(double(n) / double(m)),
                  compose({subsample_op(omega), orthobasis_op(to_basis(base), n)}));
    return UtfOperator{std::move(op), UtfKind::PartialUnitary, double(n) / double(m)};
}

UtfOperator build_utf(UtfKind kind, const UtfParams& params) {
    switch (kind) {
        case UtfKind::BlockSum: return utf_block_sum(params.m, params.q);
        case UtfKind::IdftConcat: return utf_idft_concat(params.m, params.L);
        case UtfKind::Fold: return utf_fold(params.m, params.L);
        case UtfKind::BlockPartial: return utf_block_partial(params.omega, params.L, params.base);
        case UtfKind::PartialUnitary: return utf_partial_unitary(params.omega, params.base);
    }
    throw ConfigError("build_utf: unknown kind");
}

UtfCheck verify_utf(const LinearOperator& op, double tol) {
    const Index m = op.rows;
    const Index nt = op.cols;
    UtfCheck check;

    CVec e = CVec::Zero(nt);
    for (Index j = 0; j < nt; ++j) {
        e[j] = 1.0;
        const double dev = std::abs(op.forward(e).norm() - 1.0);
        check.max_column_norm_dev = std::max(check.max_column_norm_dev, dev);
        e[j] = 0.0;
    }

    // Row Gram: column k of V V* is forward(adjoint(e_k)); a tight frame has
    // V V* = (nt/m) I.
    const double inv_bound = double(m) / double(nt);
    CVec r = CVec::Zero(m);
    for (Index k = 0; k < m; ++k) {
        r[k] = 1.0;
        const CVec g = op.forward(op.adjoint(r));
        for (Index i = 0; i < m; ++i) {
            const double target = (i == k) ? 1.0 : 0.0;
            const double dev = std::abs(inv_bound * g[i] - target);
            check.max_row_gram_dev = std::max(check.max_row_gram_dev, dev);
        }
        r[k] = 0.0;
    }

    check.is_utf = check.max_column_norm_dev <= tol && check.max_row_gram_dev <= tol;
    return check;
}

}  // namespace modframe
