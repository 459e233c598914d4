#pragma once

#include "modframe/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace modframe {

// ---------------------------------------------------------------------------
// Fast transforms
// ---------------------------------------------------------------------------

/// Unitary DFT, F_{jk} = n^{-1/2} exp(-2*pi*i*j*k/n), radix-2 only.
/// `inverse` applies F*. Throws ConfigError for non-power-of-two lengths.
CVec fft_unitary(const CVec& v, bool inverse = false);

/// Unitary DFT of any length: radix-2 fast path, direct O(n^2) evaluation
/// otherwise.
CVec dft_any(const CVec& v, bool inverse = false);

enum class BasisKind { Identity, Fourier, PermutedFourier, Hadamard, Dct2, BlockDct, Haar };

std::string to_string(BasisKind kind);
BasisKind basis_from_string(const std::string& name);

/// Applies one of the named orthonormal transforms (or its adjoint).
///
/// Conventions, all unitary:
///   Fourier          analysis DFT F; adjoint is F*. Power of two only.
///   PermutedFourier  F with columns reordered by frequency 0,+1,-1,...,n/2.
///                    Any even n (direct evaluation off the radix-2 grid).
///   Hadamard         normalized Walsh-Hadamard, H2 = [1 1; 1 -1]/sqrt(2)
///                    Sylvester ordering; self-adjoint. Power of two only.
///   Dct2             orthonormal DCT-II analysis; adjoint is DCT-III.
///   BlockDct         DCT-II applied per contiguous block of `block` samples.
///   Haar             full-depth orthonormal Haar analysis (averages first,
///                    then details coarse-to-fine); adjoint is the synthesis.
///                    Power of two only.
CVec orthobasis_apply(BasisKind kind, const CVec& v, bool adjoint = false, Index block = 8);

/// Circulant product H_r v (first column r) via sqrt(n) * F*((F r) .* (F v)).
CVec circulant_apply(const CVec& r, const CVec& v);

// ---------------------------------------------------------------------------
// Subsampling
// ---------------------------------------------------------------------------

/// A strictly increasing set of row indices inside an ambient dimension.
/// Validated once at construction; appliers never range-check again.
struct SubsampleSet {
    std::vector<Index> indices;
    Index ambient = 0;

    SubsampleSet() = default;
    SubsampleSet(std::vector<Index> idx, Index n);

    Index count() const { return Index(indices.size()); }

    static SubsampleSet contiguous(Index m, Index n);
    static SubsampleSet strided(Index m, Index n);
    /// Sorted uniform random m-subset of [0, n).
    static SubsampleSet random_subset(Index m, Index n, std::uint64_t seed);
};

/// Forward keeps entries at the set's indices; adjoint zero-fills back.
CVec subsample_apply(const SubsampleSet& omega, const CVec& v, bool adjoint = false);

// ---------------------------------------------------------------------------
// Linear operators
// ---------------------------------------------------------------------------

/// A matrix-free linear map: dimensions plus forward/adjoint closures.
/// Instances are immutable once built and cheap to copy (shared internals);
/// forward/adjoint are pure and safe to call concurrently.
struct LinearOperator {
    Index rows = 0;
    Index cols = 0;
    std::function<CVec(const CVec&)> fwd;
    std::function<CVec(const CVec&)> adj;

    CVec forward(const CVec& v) const;
    CVec adjoint(const CVec& v) const;
};

LinearOperator identity_op(Index n);
LinearOperator diagonal_op(CVec d);
LinearOperator scaled_op(cplx scale, LinearOperator inner);
LinearOperator adjoint_op(LinearOperator inner);
LinearOperator orthobasis_op(BasisKind kind, Index n, Index block = 8);
LinearOperator subsample_op(SubsampleSet omega);
LinearOperator circulant_op(CVec r);
/// Wraps a dense matrix (copied) as an operator.
LinearOperator dense_op(CMat M);

/// Product ops[0] * ops[1] * ... * ops[k-1], applied lazily right to left.
LinearOperator compose(std::vector<LinearOperator> ops);

/// Dense matrix of an operator, column j = forward(e_j).
/// Guarded by a soft entry limit; pass a larger max_entries to override.
CMat materialize(const LinearOperator& op, Index max_entries = Index(1) << 22);

}  // namespace modframe
