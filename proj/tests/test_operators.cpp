#include "modframe/operators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace modframe;

namespace {

double rel_adjoint_gap(const LinearOperator& op, CounterRng& rng) {
    const CVec u = oracles::random_cvec(op.cols, rng);
    const CVec v = oracles::random_cvec(op.rows, rng);
    const cplx lhs = op.forward(u).dot(v);  // Eigen dot conjugates the left side
    const cplx rhs = u.dot(op.adjoint(v));
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

CMat dense_of(BasisKind kind, Index n) {
    switch (kind) {
        case BasisKind::Identity: return CMat::Identity(n, n);
        case BasisKind::Fourier: return oracles::dense_dft(n);
        case BasisKind::PermutedFourier: return oracles::dense_permuted_dft(n);
        case BasisKind::Hadamard: return oracles::dense_hadamard(n);
        case BasisKind::Dct2: return oracles::dense_dct2(n);
        case BasisKind::BlockDct: return oracles::dense_block_dct(n, 8);
        case BasisKind::Haar: return oracles::dense_haar_synthesis(n).adjoint();
    }
    return {};
}

const std::vector<BasisKind> kAllKinds = {
    BasisKind::Identity, BasisKind::Fourier,  BasisKind::PermutedFourier, BasisKind::Hadamard,
    BasisKind::Dct2,     BasisKind::BlockDct, BasisKind::Haar};

bool kind_supports(BasisKind kind, Index n) {
    switch (kind) {
        case BasisKind::Identity:
        case BasisKind::Dct2: return true;
        case BasisKind::PermutedFourier: return n % 2 == 0;
        case BasisKind::BlockDct: return n % 8 == 0;
        default: return is_pow2(n);
    }
}

}  // namespace

TEST_CASE("fft_unitary matches its defining examples") {
    CVec e0(4);
    e0 << 1, 0, 0, 0;
    const CVec f0 = fft_unitary(e0);
    for (Index i = 0; i < 4; ++i) CHECK(std::abs(f0[i] - cplx(0.5, 0.0)) < 1e-14);

    CVec ones(4);
    ones << 1, 1, 1, 1;
    const CVec f1 = fft_unitary(ones);
    CHECK(std::abs(f1[0] - cplx(2.0, 0.0)) < 1e-14);
    for (Index i = 1; i < 4; ++i) CHECK(std::abs(f1[i]) < 1e-14);

    CounterRng rng(7);
    const CVec v = oracles::random_cvec(64, rng);
    CHECK(std::abs(fft_unitary(v).norm() - v.norm()) < 1e-12);
}

TEST_CASE("fft_unitary agrees with the dense DFT") {
    CounterRng rng(11);
    for (Index n : {2, 4, 8, 32, 128, 512}) {
        const CMat F = oracles::dense_dft(n);
        const CVec v = oracles::random_cvec(n, rng);
        CHECK((fft_unitary(v) - F * v).norm() < 1e-11);
        CHECK((fft_unitary(v, true) - F.adjoint() * v).norm() < 1e-11);
    }
}

TEST_CASE("fft_unitary rejects non-power-of-two lengths") {
    CHECK_THROWS_AS(fft_unitary(CVec::Zero(12)), ConfigError);
    CHECK_THROWS_AS(fft_unitary(CVec::Zero(3)), ConfigError);
}

TEST_CASE("dft_any matches the dense DFT off the radix-2 grid") {
    CounterRng rng(12);
    for (Index n : {3, 6, 12, 20}) {
        const CMat F = oracles::dense_dft(n);
        const CVec v = oracles::random_cvec(n, rng);
        CHECK((dft_any(v) - F * v).norm() < 1e-11);
        CHECK((dft_any(v, true) - F.adjoint() * v).norm() < 1e-11);
    }
}

TEST_CASE("orthobasis_apply matches the dense oracle of every kind") {
    CounterRng rng(13);
    for (BasisKind kind : kAllKinds) {
        for (Index n : {8, 16, 64}) {
            const CMat T = dense_of(kind, n);
            const CVec v = oracles::random_cvec(n, rng);
            CHECK((orthobasis_apply(kind, v) - T * v).norm() < 1e-11);
            CHECK((orthobasis_apply(kind, v, true) - T.adjoint() * v).norm() < 1e-11);
        }
    }
}

TEST_CASE("orthobasis_apply hand examples") {
    CVec e0(2);
    e0 << 1, 0;
    const CVec h = orthobasis_apply(BasisKind::Hadamard, e0);
    CHECK(std::abs(h[0] - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-14);
    CHECK(std::abs(h[1] - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-14);

    // The first DCT-II basis vector is the normalized constant.
    const Index n = 16;
    const CVec c = orthobasis_apply(BasisKind::Dct2, CVec::Constant(n, 1.0 / std::sqrt(double(n))));
    CHECK(std::abs(c[0] - cplx(1.0, 0.0)) < 1e-12);
    CHECK(c.tail(n - 1).norm() < 1e-12);

    CounterRng rng(17);
    const CVec v = oracles::random_cvec(8, rng);
    const CVec round = orthobasis_apply(BasisKind::Haar, orthobasis_apply(BasisKind::Haar, v), true);
    CHECK((round - v).norm() < 1e-12);
}

TEST_CASE("dct2 works for lengths off the radix-2 grid") {
    CounterRng rng(19);
    for (Index n : {3, 6, 12}) {
        const CMat C = oracles::dense_dct2(n);
        const CVec v = oracles::random_cvec(n, rng);
        CHECK((orthobasis_apply(BasisKind::Dct2, v) - C * v).norm() < 1e-11);
        CHECK((orthobasis_apply(BasisKind::Dct2, v, true) - C.adjoint() * v).norm() < 1e-11);
    }
}

TEST_CASE("orthobasis_apply rejects incompatible sizes") {
    CHECK_THROWS_AS(orthobasis_apply(BasisKind::Fourier, CVec::Zero(6)), ConfigError);
    CHECK_THROWS_AS(orthobasis_apply(BasisKind::Hadamard, CVec::Zero(12)), ConfigError);
    CHECK_THROWS_AS(orthobasis_apply(BasisKind::Haar, CVec::Zero(10)), ConfigError);
    CHECK_THROWS_AS(orthobasis_apply(BasisKind::PermutedFourier, CVec::Zero(7)), ConfigError);
    CHECK_THROWS_AS(orthobasis_apply(BasisKind::BlockDct, CVec::Zero(12)), ConfigError);
}

TEST_CASE("unitarity and round trip across sizes") {
    CounterRng rng(23);
    for (Index n = 2; n <= 1024; n *= 2) {
        for (BasisKind kind : kAllKinds) {
            if (!kind_supports(kind, n)) continue;
            for (int rep = 0; rep < 100; ++rep) {
                const CVec v = oracles::random_cvec(n, rng);
                const CVec t = orthobasis_apply(kind, v);
                REQUIRE(std::abs(t.norm() - v.norm()) < 1e-11 * std::max(1.0, v.norm()));
                REQUIRE((orthobasis_apply(kind, t, true) - v).norm() < 1e-11 * v.norm());
            }
        }
        const CVec v = oracles::random_cvec(n, rng);
        REQUIRE(std::abs(fft_unitary(v).norm() - v.norm()) < 1e-11 * v.norm());
    }
}

TEST_CASE("adjoint identity holds for every operator constructor") {
    CounterRng rng(29);
    const Index n = 16;
    std::vector<LinearOperator> ops;
    for (BasisKind kind : kAllKinds) ops.push_back(orthobasis_op(kind, n));
    ops.push_back(identity_op(n));
    ops.push_back(diagonal_op(oracles::random_cvec(n, rng)));
    ops.push_back(circulant_op(oracles::random_cvec(n, rng)));
    ops.push_back(subsample_op(SubsampleSet::strided(5, n)));
    ops.push_back(scaled_op(cplx(0.3, -1.2), orthobasis_op(BasisKind::Fourier, n)));
    ops.push_back(dense_op(oracles::random_cmat(7, n, rng)));
    ops.push_back(compose({subsample_op(SubsampleSet::contiguous(4, n)),
                           orthobasis_op(BasisKind::Fourier, n),
                           diagonal_op(oracles::random_cvec(n, rng))}));
    for (const auto& op : ops) {
        for (int rep = 0; rep < 20; ++rep) REQUIRE(rel_adjoint_gap(op, rng) < 1e-10);
    }
}

TEST_CASE("circulant_apply equals the dense circulant product") {
    CounterRng rng(31);
    for (Index n : {2, 4, 8, 16, 32}) {
        const CVec r = oracles::random_cvec(n, rng);
        const CVec v = oracles::random_cvec(n, rng);
        const CMat H = oracles::dense_circulant(r);
        CHECK((circulant_apply(r, v) - H * v).norm() < 1e-10 * v.norm());
    }

    // Generator e0 is the identity; e1 shifts down by one.
    const Index n = 8;
    CVec e0 = CVec::Zero(n), e1 = CVec::Zero(n);
    e0[0] = 1.0;
    e1[1] = 1.0;
    CounterRng rng2(37);
    const CVec v = oracles::random_cvec(n, rng2);
    CHECK((circulant_apply(e0, v) - v).norm() < 1e-12);
    const CVec shifted = circulant_apply(e1, v);
    for (Index i = 0; i < n; ++i) CHECK(std::abs(shifted[(i + 1) % n] - v[i]) < 1e-12);
}

TEST_CASE("circulant_apply length mismatch is an error") {
    CHECK_THROWS_AS(circulant_apply(CVec::Zero(8), CVec::Zero(4)), ConfigError);
}

TEST_CASE("subsample_apply selects and zero-fills") {
    SubsampleSet omega({0, 2}, 4);
    CVec v(4);
    v << cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0);
    const CVec kept = subsample_apply(omega, v);
    CHECK(kept.size() == 2);
    CHECK(kept[0] == cplx(1, 0));
    CHECK(kept[1] == cplx(3, 0));

    const CVec filled = subsample_apply(omega, kept, true);
    CHECK(filled.size() == 4);
    CHECK(filled[0] == cplx(1, 0));
    CHECK(filled[1] == cplx(0, 0));
    CHECK(filled[2] == cplx(3, 0));
    CHECK(filled[3] == cplx(0, 0));

    // Selection after zero-fill is the identity on the small space.
    CHECK((subsample_apply(omega, subsample_apply(omega, kept, true)) - kept).norm() == 0.0);
}

TEST_CASE("SubsampleSet validates at construction") {
    CHECK_THROWS_AS(SubsampleSet({0, 4}, 4), ConfigError);
    CHECK_THROWS_AS(SubsampleSet({2, 1}, 4), ConfigError);
    CHECK_THROWS_AS(SubsampleSet({1, 1}, 4), ConfigError);
    CHECK_THROWS_AS(SubsampleSet({-1, 1}, 4), ConfigError);
    CHECK_NOTHROW(SubsampleSet({0, 1, 3}, 4));
}

TEST_CASE("compose applies right to left and checks dimensions") {
    const Index n = 8;
    const LinearOperator f = orthobasis_op(BasisKind::Fourier, n);
    const LinearOperator finv = adjoint_op(f);
    CounterRng rng(41);
    const CVec v = oracles::random_cvec(n, rng);
    CHECK((compose({f, finv}).forward(v) - v).norm() < 1e-12 * v.norm());

    // Composition of diagonals is the diagonal of the elementwise product.
    const CVec d1 = oracles::random_cvec(n, rng);
    const CVec d2 = oracles::random_cvec(n, rng);
    const CVec got = compose({diagonal_op(d1), diagonal_op(d2)}).forward(v);
    CHECK((got - d1.cwiseProduct(d2).cwiseProduct(v)).norm() < 1e-13);

    CHECK_THROWS_WITH_AS(
        (void)compose({subsample_op(SubsampleSet::contiguous(2, 4)), identity_op(8)}),
        doctest::Contains("ops[0]"), ConfigError);
}

TEST_CASE("composed chains keep the adjoint identity") {
    CounterRng rng(43);
    const Index n = 16;
    const LinearOperator chain =
        compose({subsample_op(SubsampleSet::strided(6, n)), orthobasis_op(BasisKind::Haar, n),
                 diagonal_op(oracles::random_cvec(n, rng)),
                 adjoint_op(orthobasis_op(BasisKind::Fourier, n))});
    for (int rep = 0; rep < 50; ++rep) REQUIRE(rel_adjoint_gap(chain, rng) < 1e-10);
}

TEST_CASE("materialize reproduces known matrices and agrees with forward") {
    CHECK((materialize(identity_op(4)) - CMat::Identity(4, 4)).norm() == 0.0);

    const CMat F4 = materialize(orthobasis_op(BasisKind::Fourier, 4));
    CHECK(std::abs(F4(1, 1) - cplx(0.0, -0.5)) < 1e-14);

    CounterRng rng(47);
    const CVec r = oracles::random_cvec(8, rng);
    CHECK((materialize(circulant_op(r)) - oracles::dense_circulant(r)).norm() < 1e-10);

    const LinearOperator chain = compose({orthobasis_op(BasisKind::Hadamard, 8),
                                          diagonal_op(oracles::random_cvec(8, rng))});
    const CMat M = materialize(chain);
    for (int rep = 0; rep < 10; ++rep) {
        const CVec v = oracles::random_cvec(8, rng);
        REQUIRE((M * v - chain.forward(v)).norm() < 1e-10 * v.norm());
    }
}

TEST_CASE("materialize enforces its entry limit") {
    CHECK_THROWS_WITH_AS(materialize(identity_op(64), 100), doctest::Contains("max_entries"),
                         ConfigError);
}

TEST_CASE("applying a wrong-length vector is an error, never truncation") {
    const LinearOperator f = orthobasis_op(BasisKind::Fourier, 8);
    CHECK_THROWS_AS(f.forward(CVec::Zero(4)), ConfigError);
    CHECK_THROWS_AS(f.adjoint(CVec::Zero(16)), ConfigError);
    const LinearOperator r = subsample_op(SubsampleSet::contiguous(2, 8));
    CHECK_THROWS_AS(r.forward(CVec::Zero(2)), ConfigError);
    CHECK_THROWS_AS(r.adjoint(CVec::Zero(8)), ConfigError);
}
