#pragma once

#include "modframe/operators.hpp"

namespace modframe {

enum class UnitaryBase { Fourier, Hadamard };

/// The structured unit-norm tight frames used as the left factor of every
/// sensing model. Kinds, with m rows and n_tilde = frame_bound * m columns:
///   BlockSum        I_m (x) 1_q^T : sums each length-q block to one sample.
///   IdftConcat      [F* F* ... F*]: sum of inverse DFTs of L blocks.
///   Fold            [I I ... I]   : elementwise sum of L length-m segments.
///   BlockPartial    sqrt(q/p) I_L (x) (R_Omega E): per-block subsampled
///                   unitary, E a q-point DFT or Hadamard.
///   PartialUnitary  sqrt(n/m) R_Omega E over the full dimension.
enum class UtfKind { BlockSum, IdftConcat, Fold, BlockPartial, PartialUnitary };

struct UtfOperator {
    LinearOperator op;
    UtfKind kind;
    double frame_bound = 1.0;  // n_tilde / m
};

UtfOperator utf_block_sum(Index m, Index q);
UtfOperator utf_idft_concat(Index m, Index L);
UtfOperator utf_fold(Index m, Index L);
UtfOperator utf_block_partial(const SubsampleSet& omega, Index L, UnitaryBase base = UnitaryBase::Fourier);
UtfOperator utf_partial_unitary(const SubsampleSet& omega, UnitaryBase base = UnitaryBase::Fourier);

/// Parameter bag for the kind-dispatched builder. Only the fields a given
/// kind reads need to be set.
struct UtfParams {
    Index m = 0;
    Index q = 0;
    Index L = 0;
    SubsampleSet omega;
    UnitaryBase base = UnitaryBase::Fourier;
};

UtfOperator build_utf(UtfKind kind, const UtfParams& params);

struct UtfCheck {
    bool is_utf = false;
    double max_column_norm_dev = 0.0;
    double max_row_gram_dev = 0.0;
};

/// Checks both tight-frame conditions: unit-norm columns, and row Gram of
/// the operator equal to (n_tilde/m) * I. Costs n_tilde forward applies for
/// the columns plus m adjoint+forward pairs for the Gram.
UtfCheck verify_utf(const LinearOperator& op, double tol = 1e-10);

}  // namespace modframe
