#pragma once

#include <complex>
#include <vector>

// Minimal dense complex linear algebra for the 2x2 .. 8x8 Hermitian
// operators this project works with. No attempt is made to be general
// beyond that.

namespace nlgames {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& at(int i, int j) const { return entries_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    bool is_hermitian(double tol = 1e-12) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
const ComplexMatrix& identity2();

// Normalized pure state. Construction rejects vectors whose norm deviates
// from 1 by more than 1e-12 unless renormalize is requested.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<cplx> amplitudes, bool renormalize = false);

    static StateVector basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amplitude(int i) const { return amps_[static_cast<size_t>(i)]; }

private:
    std::vector<cplx> amps_;
};

// Matrix-vector product op|psi>.
std::vector<cplx> apply(const ComplexMatrix& op, const StateVector& psi);

// <psi|op|psi> for Hermitian op; throws on dimension mismatch, on a
// non-Hermitian operator, or if the imaginary residue exceeds 1e-10.
double expectation(const StateVector& psi, const ComplexMatrix& op);

struct EigenSystem {
    std::vector<double> values;        // descending
    std::vector<StateVector> vectors;  // values[i] <-> vectors[i]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix, dim <= 8.
// Off-diagonal Frobenius tolerance 1e-12 (relative to the matrix scale),
// sweep cap 100; throws if the sweep cap is exhausted.
EigenSystem hermitian_eig(const ComplexMatrix& op);

}  // namespace nlgames
