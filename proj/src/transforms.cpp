#include "modframe/operators.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace modframe {

namespace {

// exp(-2*pi*i*k/n) for k in [0, n/2); cached per size, append-only.
const std::vector<cplx>& twiddles(Index n) {
    static std::mutex mu;
    static std::map<Index, std::unique_ptr<const std::vector<cplx>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        auto t = std::make_unique<std::vector<cplx>>(size_t(n / 2));
        for (Index k = 0; k < n / 2; ++k)
            (*t)[size_t(k)] = std::polar(1.0, -2.0 * kPi * double(k) / double(n));
        slot = std::move(t);
    }
    return *slot;
}

// Unnormalized DFT for lengths the radix-2 kernel cannot take, O(n^2).
CVec dft_direct_unnorm(const CVec& v, bool inverse) {
    const Index n = v.size();
    std::vector<cplx> root(static_cast<size_t>(n));
    const double sgn = inverse ? 1.0 : -1.0;
    for (Index t = 0; t < n; ++t)
        root[size_t(t)] = std::polar(1.0, sgn * 2.0 * kPi * double(t) / double(n));
    CVec out(n);
    for (Index j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (Index k = 0; k < n; ++k) acc += v[k] * root[size_t((j * k) % n)];
        out[j] = acc;
    }
    return out;
}

// Unnormalized DFT of any length >= 1.
CVec dft_unnorm(const CVec& v, bool inverse) {
    const Index n = v.size();
    if (is_pow2(n)) return std::sqrt(double(n)) * fft_unitary(v, inverse);
    return dft_direct_unnorm(v, inverse);
}

CVec hadamard_apply(const CVec& v) {
    const Index n = v.size();
    CVec a = v;
    for (Index len = 1; len < n; len <<= 1) {
        for (Index i = 0; i < n; i += len << 1) {
            for (Index j = i; j < i + len; ++j) {
                const cplx x = a[j];
                const cplx y = a[j + len];
                a[j] = x + y;
                a[j + len] = x - y;
            }
        }
    }
    return a / std::sqrt(double(n));
}

// Column c of the frequency-interleaved DFT maps to row frequency:
// 0, +1, -1, +2, -2, ..., -(n/2-1), n/2 (taken modulo n).
Index interleaved_freq(Index c, Index n) {
    if (c == 0) return 0;
    if (c % 2 == 1) return (c + 1) / 2;
    return n - c / 2;
}

CVec permuted_fourier_apply(const CVec& v, bool adjoint) {
    const Index n = v.size();
    if (!adjoint) {
        CVec w = CVec::Zero(n);
        for (Index c = 0; c < n; ++c) w[interleaved_freq(c, n)] = v[c];
        return dft_unnorm(w, false) / std::sqrt(double(n));
    }
    const CVec u = dft_unnorm(v, true) / std::sqrt(double(n));
    CVec out(n);
    for (Index c = 0; c < n; ++c) out[c] = u[interleaved_freq(c, n)];
    return out;
}

// Orthonormal DCT-II analysis through one length-2n DFT:
//   S_k = (1/2) (t_k X_k + conj(t_k) X_{(2n-k) mod 2n}),  t_k = exp(-i pi k / (2n)),
// with X the unnormalized DFT of v zero-padded to 2n. Works for complex input.
CVec dct2_analysis(const CVec& v) {
    const Index n = v.size();
    if (n == 1) return v;
    CVec pad = CVec::Zero(2 * n);
    pad.head(n) = v;
    const CVec X = dft_unnorm(pad, false);
    CVec out(n);
    const double c0 = std::sqrt(1.0 / double(n));
    const double ck = std::sqrt(2.0 / double(n));
    out[0] = c0 * X[0];
    for (Index k = 1; k < n; ++k) {
        const cplx t = std::polar(1.0, -kPi * double(k) / double(2 * n));
        out[k] = ck * 0.5 * (t * X[k] + std::conj(t) * X[2 * n - k]);
    }
    return out;
}

// Adjoint (orthonormal DCT-III): transpose of the pipeline above.
CVec dct2_synthesis(const CVec& z) {
    const Index n = z.size();
    if (n == 1) return z;
    const double c0 = std::sqrt(1.0 / double(n));
    const double ck = std::sqrt(2.0 / double(n));
    CVec w = CVec::Zero(2 * n);
    w[0] = c0 * z[0];
    for (Index l = 1; l < n; ++l)
        w[l] = 0.5 * ck * std::polar(1.0, kPi * double(l) / double(2 * n)) * z[l];
    for (Index l = n + 1; l < 2 * n; ++l)
        w[l] = 0.5 * ck * std::polar(1.0, -kPi * double(2 * n - l) / double(2 * n)) * z[2 * n - l];
    const CVec u = dft_unnorm(w, true);
    return u.head(n);
}

CVec block_dct_apply(const CVec& v, bool adjoint, Index block) {
    const Index n = v.size();
    CVec out(n);
    for (Index i = 0; i < n; i += block) {
        const CVec seg = v.segment(i, block);
        out.segment(i, block) = adjoint ? dct2_synthesis(seg) : dct2_analysis(seg);
    }
    return out;
}

CVec haar_analysis(const CVec& v) {
    const Index n = v.size();
    CVec a = v;
    CVec out(n);
    const double c = 1.0 / std::sqrt(2.0);
    for (Index len = n; len > 1; len /= 2) {
        for (Index i = 0; i < len / 2; ++i) {
            const cplx x = a[2 * i];
            const cplx y = a[2 * i + 1];
            out[len / 2 + i] = (x - y) * c;
            a[i] = (x + y) * c;
        }
    }
    out[0] = a[0];
    return out;
}

CVec haar_synthesis(const CVec& z) {
    const Index n = z.size();
    CVec a(n);
    a[0] = z[0];
    const double c = 1.0 / std::sqrt(2.0);
    for (Index len = 2; len <= n; len *= 2) {
        for (Index i = len / 2; i-- > 0;) {
            const cplx avg = a[i];
            const cplx det = z[len / 2 + i];
            a[2 * i] = (avg + det) * c;
            a[2 * i + 1] = (avg - det) * c;
        }
    }
    return a;
}

void require_pow2(Index n, const char* what) {
    if (!is_pow2(n))
        throw ConfigError(std::string(what) + ": length must be a power of two, got " +
                          std::to_string(n));
}

}  // namespace

CVec fft_unitary(const CVec& v, bool inverse) {
    const Index n = v.size();
    require_pow2(n, "fft_unitary");
    CVec a = v;
    for (Index i = 1, j = 0; i < n; ++i) {
        Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& tw = twiddles(n);
    for (Index len = 2; len <= n; len <<= 1) {
        const Index half = len / 2;
        const Index step = n / len;
        for (Index i = 0; i < n; i += len) {
            for (Index k = 0; k < half; ++k) {
                cplx w = tw[size_t(k * step)];
                if (inverse) w = std::conj(w);
                const cplx u = a[i + k];
                const cplx t = a[i + k + half] * w;
                a[i + k] = u + t;
                a[i + k + half] = u - t;
            }
        }
    }
    return a / std::sqrt(double(n));
}

CVec dft_any(const CVec& v, bool inverse) {
    const Index n = v.size();
    if (n < 1) throw ConfigError("dft_any: empty input");
    return dft_unnorm(v, inverse) / std::sqrt(double(n));
}

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::Identity: return "identity";
        case BasisKind::Fourier: return "fourier";
        case BasisKind::PermutedFourier: return "permuted_fourier";
        case BasisKind::Hadamard: return "hadamard";
        case BasisKind::Dct2: return "dct2";
        case BasisKind::BlockDct: return "block_dct";
        case BasisKind::Haar: return "haar";
    }
    return "?";
}

BasisKind basis_from_string(const std::string& name) {
    if (name == "identity") return BasisKind::Identity;
    if (name == "fourier") return BasisKind::Fourier;
    if (name == "permuted_fourier") return BasisKind::PermutedFourier;
    if (name == "hadamard") return BasisKind::Hadamard;
    if (name == "dct2") return BasisKind::Dct2;
    if (name == "block_dct") return BasisKind::BlockDct;
    if (name == "haar") return BasisKind::Haar;
    throw ConfigError("unknown basis kind: " + name);
}

CVec orthobasis_apply(BasisKind kind, const CVec& v, bool adjoint, Index block) {
    const Index n = v.size();
    if (n < 1) throw ConfigError("orthobasis_apply: empty input");
    switch (kind) {
        case BasisKind::Identity:
            return v;
        case BasisKind::Fourier:
            require_pow2(n, "orthobasis_apply(fourier)");
            return fft_unitary(v, adjoint);
        case BasisKind::PermutedFourier:
            if (n % 2 != 0)
                throw ConfigError("orthobasis_apply(permuted_fourier): length must be even, got " +
                                  std::to_string(n));
            return permuted_fourier_apply(v, adjoint);
        case BasisKind::Hadamard:
            require_pow2(n, "orthobasis_apply(hadamard)");
            return hadamard_apply(v);  // real symmetric, self-adjoint
        case BasisKind::Dct2:
            return adjoint ? dct2_synthesis(v) : dct2_analysis(v);
        case BasisKind::BlockDct:
            if (block < 1 || n % block != 0)
                throw ConfigError("orthobasis_apply(block_dct): block size " +
                                  std::to_string(block) + " must divide length " +
                                  std::to_string(n));
            return block_dct_apply(v, adjoint, block);
        case BasisKind::Haar:
            require_pow2(n, "orthobasis_apply(haar)");
            return adjoint ? haar_synthesis(v) : haar_analysis(v);
    }
    throw ConfigError("orthobasis_apply: unknown kind");
}

CVec circulant_apply(const CVec& r, const CVec& v) {
    const Index n = r.size();
    if (v.size() != n)
        throw ConfigError("circulant_apply: generator length " + std::to_string(n) +
                          " != input length " + std::to_string(v.size()));
    require_pow2(n, "circulant_apply");
    const CVec fr = fft_unitary(r, false);
    const CVec fv = fft_unitary(v, false);
    return std::sqrt(double(n)) * fft_unitary(fr.cwiseProduct(fv), true);
}

}  // namespace modframe
