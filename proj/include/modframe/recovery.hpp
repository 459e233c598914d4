#pragma once

#include "modframe/operators.hpp"

namespace modframe {

/// Least-squares coefficients minimizing ||y - A_S z|| over the columns of
/// A indexed by S, via column-pivoted QR on the extracted columns.
/// Throws NumericalError (carrying the numerical rank) when A_S is
/// rank-deficient.
CVec lsq_on_support(const LinearOperator& A, const CVec& y, const SubsampleSet& S);

struct RecoveryResult {
    CVec xhat;
    SubsampleSet support;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;  // stopped by its own criterion, not the cap
};

/// Orthogonal matching pursuit: grow the support one atom at a time by the
/// largest |A* residual| (ties to the lowest index), least squares on the
/// grown support, stop at s atoms or residual below 1e-10 * ||y||.
RecoveryResult omp(const LinearOperator& A, const CVec& y, Index s, int max_iter = -1);

/// Subspace pursuit: keep an s-atom candidate set, each round union it with
/// the s strongest residual correlations, least squares, prune back to the
/// s largest coefficients, re-solve; accept a round only if the residual
/// decreases.
RecoveryResult subspace_pursuit(const LinearOperator& A, const CVec& y, Index s,
                                int max_iter = 50);

/// 10*log10(||x - xhat||^2 / ||x||^2), floored at -300 dB.
double nmse_db(const CVec& x, const CVec& xhat);

}  // namespace modframe
