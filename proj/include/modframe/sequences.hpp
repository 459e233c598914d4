#pragma once

#include "modframe/types.hpp"

#include <cstdint>
#include <optional>

namespace modframe {

enum class SeqKind { Rademacher, Steinhaus, Gaussian, GolayA, GolayB };

std::string to_string(SeqKind kind);

/// A modulation sequence: the diagonal of a (random or deterministic)
/// modulation operator. Immutable after construction.
struct ModulationSeq {
    CVec values;
    SeqKind kind = SeqKind::Rademacher;
    std::optional<std::uint64_t> seed;

    Index size() const { return values.size(); }
};

/// I.i.d. zero-mean unit-variance entries of the requested kind; a pure
/// function of (kind, n, seed). Golay kinds are deterministic, use
/// rudin_shapiro_pair for those.
ModulationSeq random_diagonal(SeqKind kind, Index n, std::uint64_t seed);

struct GolayPair {
    ModulationSeq a;
    ModulationSeq b;
    Index n = 1;
};

/// Length 2^d Golay complementary pair via the Rudin-Shapiro doubling
/// a' = [a | b], b' = [a | -b] from the base a = b = [1].
GolayPair rudin_shapiro_pair(int d);

struct GolayCheck {
    bool ok = false;
    Index worst_k = 0;       // lag with the largest off-peak autocorrelation sum
    long long worst_sum = 0;
};

/// Exact integer check of complementarity: the aperiodic autocorrelations
/// of a and b must cancel at every nonzero lag (inputs must be bipolar).
GolayCheck verify_golay_pair(const ModulationSeq& a, const ModulationSeq& b);

/// |A(z)| on the 8n-point unit-circle grid z_j = exp(-2 pi i j / (8n)),
/// A the polynomial with coefficients a. Oversampled enough to localize the
/// maximum of the degree-(n-1) trigonometric polynomial |A|^2.
RVec golay_poly_grid(const ModulationSeq& a);

/// max_j |A(z_j)| over the grid above; for a Golay sequence this stays
/// within sqrt(2n).
double golay_poly_max(const ModulationSeq& a);

/// Peak-to-average power ratio of the time-domain pilot F* lambda.
/// Requires a unimodular sequence of power-of-two length.
double papr(const ModulationSeq& pilot);

}  // namespace modframe
