#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlgames/linalg.hpp"
#include "nlgames/quantum.hpp"

using namespace nlgames;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = cplx(u(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v(u(), u());
            m.at(i, j) = v;
            m.at(j, i) = std::conj(v);
        }
    }
    return m;
}
}  // namespace

TEST_CASE("kron of identities is the identity") {
    const ComplexMatrix i4 = kron(identity2(), identity2());
    CHECK((i4 - ComplexMatrix::identity(4)).frobenius_norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kron(sigma_x, sigma_x) flips |00> to |11>") {
    const ComplexMatrix xx = kron(pauli_x(), pauli_x());
    const auto out = apply(xx, StateVector::basis(4, 0));
    CHECK(std::abs(out[3] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(out[0]) < 1e-15);
    CHECK(std::abs(out[1]) < 1e-15);
    CHECK(std::abs(out[2]) < 1e-15);
}

TEST_CASE("zz expectation on the Bell pair is +1") {
    CHECK(expectation(bell_phi_plus(), kron(pauli_z(), pauli_z())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("expectation basics") {
    CHECK(expectation(StateVector::basis(2, 0), pauli_z()) == doctest::Approx(1.0));
    CHECK(expectation(bell_phi_plus(), kron(pauli_x(), pauli_x())) == doctest::Approx(1.0));
    CHECK(expectation(ghz_state(), kron(kron(pauli_x(), pauli_x()), pauli_x())) == doctest::Approx(1.0));
}

TEST_CASE("expectation rejects bad input") {
    CHECK_THROWS(expectation(bell_phi_plus(), pauli_z()));  // dim mismatch
    ComplexMatrix bad(2, 2);
    bad.at(0, 1) = cplx(1.0, 0.0);  // not Hermitian
    CHECK_THROWS(expectation(StateVector::basis(2, 0), bad));
}

TEST_CASE("kron is associative and bilinear") {
    const ComplexMatrix a = pauli_x(), b = pauli_y(), c = pauli_z();
    CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).frobenius_norm() < 1e-12);
    CHECK((kron(a + b, c) - (kron(a, c) + kron(b, c))).frobenius_norm() < 1e-12);
    CHECK((kron(cplx(2.5, -1.0) * a, b) - cplx(2.5, -1.0) * kron(a, b)).frobenius_norm() < 1e-12);
}

TEST_CASE("pauli eigensystems") {
    const EigenSystem z = hermitian_eig(pauli_z());
    CHECK(z.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(z.vectors[0].amplitude(0)) == doctest::Approx(1.0));
    CHECK(std::abs(z.vectors[1].amplitude(1)) == doctest::Approx(1.0));

    const EigenSystem x = hermitian_eig(pauli_x());
    CHECK(x.values[0] == doctest::Approx(1.0));
    CHECK(x.values[1] == doctest::Approx(-1.0));
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(x.vectors[static_cast<size_t>(i)].amplitude(0)) == doctest::Approx(kInvSqrt2));
        CHECK(std::abs(x.vectors[static_cast<size_t>(i)].amplitude(1)) == doctest::Approx(kInvSqrt2));
    }
}

TEST_CASE("top eigenvalue of the unbiased CHSH operator at optimal angles") {
    // A0 = sigma_z, A1 = sigma_x, B0 = (z+x)/sqrt2, B1 = (z-x)/sqrt2.
    const ComplexMatrix b0 = cplx(kInvSqrt2, 0) * (pauli_z() + pauli_x());
    const ComplexMatrix b1 = cplx(kInvSqrt2, 0) * (pauli_z() - pauli_x());
    ComplexMatrix op(4, 4);
    op += cplx(0.25, 0) * kron(pauli_z(), b0);
    op += cplx(0.25, 0) * kron(pauli_z(), b1);
    op += cplx(0.25, 0) * kron(pauli_x(), b0);
    op -= cplx(0.25, 0) * kron(pauli_x(), b1);
    const EigenSystem es = hermitian_eig(op);
    CHECK(es.values.front() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4, 5, 8}) {
        const ComplexMatrix m = random_hermitian(n, rng);
        const EigenSystem es = hermitian_eig(m);
        REQUIRE(static_cast<int>(es.values.size()) == n);
        // residual ||M v - lambda v||
        for (int k = 0; k < n; ++k) {
            const auto mv = apply(m, es.vectors[static_cast<size_t>(k)]);
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                res += std::norm(mv[static_cast<size_t>(i)] -
                                 es.values[static_cast<size_t>(k)] *
                                     es.vectors[static_cast<size_t>(k)].amplitude(i));
            }
            CHECK(std::sqrt(res) < 1e-9);
        }
        // descending order
        for (size_t k = 1; k < es.values.size(); ++k) CHECK(es.values[k - 1] >= es.values[k]);
        // sum of lambda v v^dag reproduces the input
        ComplexMatrix rebuilt(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rebuilt.at(i, j) += es.values[static_cast<size_t>(k)] *
                                        es.vectors[static_cast<size_t>(k)].amplitude(i) *
                                        std::conj(es.vectors[static_cast<size_t>(k)].amplitude(j));
        CHECK((rebuilt - m).frobenius_norm() < 1e-9);
    }
}

TEST_CASE("identity expectation is 1 on random unit states") {
    std::mt19937_64 rng(21);
    auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    for (int dim : {2, 4, 8}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> amps(static_cast<size_t>(dim));
            for (cplx& a : amps) a = cplx(u(), u());
            const StateVector psi(std::move(amps), /*renormalize=*/true);
            CHECK(expectation(psi, ComplexMatrix::identity(dim)) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("state construction validates the norm") {
    CHECK_THROWS(StateVector({cplx(1.0, 0.0), cplx(1.0, 0.0)}));
    const StateVector renorm({cplx(1.0, 0.0), cplx(1.0, 0.0)}, /*renormalize=*/true);
    CHECK(std::abs(renorm.amplitude(0) - cplx(kInvSqrt2, 0)) < 1e-15);
}
