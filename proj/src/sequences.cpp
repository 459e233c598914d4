#include "modframe/sequences.hpp"

#include "modframe/operators.hpp"
#include "modframe/rng.hpp"

#include <cmath>
#include <vector>

namespace modframe {

namespace {

// Entries must be exactly +/-1 (real); returns them as integers.
std::vector<int> to_bipolar(const ModulationSeq& s, const char* what) {
    std::vector<int> out(size_t(s.size()));
    for (Index i = 0; i < s.size(); ++i) {
        const cplx v = s.values[i];
        if (std::abs(v.imag()) > 1e-12 || std::abs(std::abs(v.real()) - 1.0) > 1e-9)
            throw ConfigError(std::string(what) + ": entries must be bipolar (+1/-1)");
        out[size_t(i)] = v.real() > 0 ? 1 : -1;
    }
    return out;
}

}  // namespace

std::string to_string(SeqKind kind) {
    switch (kind) {
        case SeqKind::Rademacher: return "rademacher";
        case SeqKind::Steinhaus: return "steinhaus";
        case SeqKind::Gaussian: return "gaussian";
        case SeqKind::GolayA: return "golay_a";
        case SeqKind::GolayB: return "golay_b";
    }
    return "?";
}

ModulationSeq random_diagonal(SeqKind kind, Index n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("random_diagonal: length must be positive");
    if (kind == SeqKind::GolayA || kind == SeqKind::GolayB)
        throw ConfigError("random_diagonal: Golay kinds are deterministic, use rudin_shapiro_pair");
    CVec v(n);
    CounterRng rng(seed);
    switch (kind) {
        case SeqKind::Rademacher:
            for (Index i = 0; i < n; ++i) v[i] = rng.next_sign();
            break;
        case SeqKind::Steinhaus:
            for (Index i = 0; i < n; ++i) v[i] = rng.next_steinhaus();
            break;
        case SeqKind::Gaussian:
            for (Index i = 0; i < n; ++i) v[i] = rng.next_cgauss();
            break;
        default:
            break;
    }
    return ModulationSeq{std::move(v), kind, seed};
}

GolayPair rudin_shapiro_pair(int d) {
    if (d < 0 || d > 26) throw ConfigError("rudin_shapiro_pair: d must be in [0, 26]");
    std::vector<int> a{1};
    std::vector<int> b{1};
    for (int l = 0; l < d; ++l) {
        std::vector<int> a2 = a;
        a2.insert(a2.end(), b.begin(), b.end());
        std::vector<int> b2 = a;
        for (int x : b) b2.push_back(-x);
        a = std::move(a2);
        b = std::move(b2);
    }
    const Index n = Index(1) << d;
    CVec va(n), vb(n);
    for (Index i = 0; i < n; ++i) {
        va[i] = double(a[size_t(i)]);
        vb[i] = double(b[size_t(i)]);
    }
    return GolayPair{ModulationSeq{std::move(va), SeqKind::GolayA, std::nullopt},
                     ModulationSeq{std::move(vb), SeqKind::GolayB, std::nullopt}, n};
}

GolayCheck verify_golay_pair(const ModulationSeq& a, const ModulationSeq& b) {
    if (a.size() != b.size())
        throw ConfigError("verify_golay_pair: lengths differ (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
    const std::vector<int> ia = to_bipolar(a, "verify_golay_pair");
    const std::vector<int> ib = to_bipolar(b, "verify_golay_pair");
    const Index n = a.size();
    GolayCheck check;
    check.ok = true;
    for (Index k = 1; k < n; ++k) {
        long long sum = 0;
        for (Index j = 0; j + k < n; ++j) {
            sum += (long long)(ia[size_t(j)]) * ia[size_t(j + k)];
            sum += (long long)(ib[size_t(j)]) * ib[size_t(j + k)];
        }
        if (sum != 0) {
            check.ok = false;
            if (std::llabs(sum) > std::llabs(check.worst_sum)) {
                check.worst_k = k;
                check.worst_sum = sum;
            }
        }
    }
    return check;
}

RVec golay_poly_grid(const ModulationSeq& a) {
    to_bipolar(a, "golay_poly_grid");
    const Index n = a.size();
    const Index grid = 8 * n;
    if (is_pow2(grid)) {
        CVec pad = CVec::Zero(grid);
        pad.head(n) = a.values;
        const CVec f = std::sqrt(double(grid)) * fft_unitary(pad, false);
        return f.cwiseAbs();
    }
    // Off the radix-2 grid, evaluate the polynomial directly.
    RVec out(grid);
    for (Index j = 0; j < grid; ++j) {
        cplx acc = 0.0;
        for (Index k = 0; k < n; ++k)
            acc += a.values[k] * std::polar(1.0, -2.0 * kPi * double(j * k % grid) / double(grid));
        out[j] = std::abs(acc);
    }
    return out;
}

double golay_poly_max(const ModulationSeq& a) { return golay_poly_grid(a).maxCoeff(); }

double papr(const ModulationSeq& pilot) {
    const Index n = pilot.size();
    if (!is_pow2(n))
        throw ConfigError("papr: pilot length must be a power of two, got " + std::to_string(n));
    for (Index i = 0; i < n; ++i)
        if (std::abs(std::abs(pilot.values[i]) - 1.0) > 1e-9)
            throw ConfigError("papr: pilot must be unimodular");
    const CVec p = fft_unitary(pilot.values, true);
    const RVec power = p.cwiseAbs2();
    return power.maxCoeff() / power.mean();
}

}  // namespace modframe
