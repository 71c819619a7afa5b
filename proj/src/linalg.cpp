#include "nlgames/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nlgames {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
    entries_.assign(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in +=");
    }
    for (size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in -=");
    }
    for (size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (cplx& e : entries_) e *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx scalar, ComplexMatrix m) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in *");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
    return c;
}

namespace {
ComplexMatrix make_pauli(int which) {
    ComplexMatrix m(2, 2);
    switch (which) {
        case 0:  // x
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case 1:  // y
            m.at(0, 1) = cplx(0.0, -1.0);
            m.at(1, 0) = cplx(0.0, 1.0);
            break;
        default:  // z
            m.at(0, 0) = 1.0;
            m.at(1, 1) = -1.0;
            break;
    }
    return m;
}
}  // namespace

const ComplexMatrix& pauli_x() { static const ComplexMatrix m = make_pauli(0); return m; }
const ComplexMatrix& pauli_y() { static const ComplexMatrix m = make_pauli(1); return m; }
const ComplexMatrix& pauli_z() { static const ComplexMatrix m = make_pauli(2); return m; }
const ComplexMatrix& identity2() { static const ComplexMatrix m = ComplexMatrix::identity(2); return m; }

StateVector::StateVector(std::vector<cplx> amplitudes, bool renormalize) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw std::invalid_argument("StateVector: empty amplitude list");
    double n2 = 0.0;
    for (const cplx& a : amps_) n2 += std::norm(a);
    if (renormalize) {
        if (n2 <= 0.0) throw std::invalid_argument("StateVector: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (cplx& a : amps_) a *= inv;
    } else if (std::abs(n2 - 1.0) > 1e-12) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
}

StateVector StateVector::basis(int dim, int index) {
    std::vector<cplx> a(static_cast<size_t>(dim), cplx(0.0, 0.0));
    a[static_cast<size_t>(index)] = 1.0;
    return StateVector(std::move(a));
}

std::vector<cplx> apply(const ComplexMatrix& op, const StateVector& psi) {
    if (op.cols() != psi.dim()) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<cplx> out(static_cast<size_t>(op.rows()), cplx(0.0, 0.0));
    for (int i = 0; i < op.rows(); ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < op.cols(); ++j) acc += op.at(i, j) * psi.amplitude(j);
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

double expectation(const StateVector& psi, const ComplexMatrix& op) {
    if (op.rows() != op.cols() || op.rows() != psi.dim()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    if (!op.is_hermitian(1e-12)) {
        throw std::invalid_argument("expectation: operator is not Hermitian");
    }
    const std::vector<cplx> v = apply(op, psi);
    cplx acc = 0.0;
    for (int i = 0; i < psi.dim(); ++i) acc += std::conj(psi.amplitude(i)) * v[static_cast<size_t>(i)];
    if (std::abs(acc.imag()) > 1e-10) {
        throw std::runtime_error("expectation: imaginary residue above tolerance");
    }
    return acc.real();
}

EigenSystem hermitian_eig(const ComplexMatrix& op) {
    const int n = op.rows();
    if (n != op.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    if (n > 8) throw std::invalid_argument("hermitian_eig: dimension above 8");
    if (!op.is_hermitian(1e-12)) throw std::invalid_argument("hermitian_eig: matrix not Hermitian");

    // Work on an exactly Hermitian copy.
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = cplx(op.at(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (op.at(i, j) + std::conj(op.at(j, i)));
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
    }
    ComplexMatrix vmat = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double tol = 1e-12 * scale;
    const int max_sweeps = 100;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a.at(i, j));
        return std::sqrt(s);
    };

    bool converged = (n == 1) || off_norm() <= tol;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double r = std::abs(apq);
                if (r <= tol / (n * n)) continue;

                const cplx phase = apq / r;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (app - aqq) / (2.0 * r);  // cot(2*theta)
                double t;
                if (tau == 0.0) {
                    t = 1.0;
                } else {
                    t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- A * U with U[p][p]=c, U[p][q]=-s*phase, U[q][p]=s*conj(phase), U[q][q]=c
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = c * akp + s * std::conj(phase) * akq;
                    a.at(k, q) = -s * phase * akp + c * akq;
                }
                // A <- U^H * A
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a.at(p, k);
                    const cplx aqk = a.at(q, k);
                    a.at(p, k) = c * apk + s * phase * aqk;
                    a.at(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                // V <- V * U
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = vmat.at(k, p);
                    const cplx vkq = vmat.at(k, q);
                    vmat.at(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    vmat.at(k, q) = -s * phase * vkp + c * vkq;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
            }
        }
        converged = off_norm() <= tol;
    }
    if (!converged) {
        throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a.at(i, i).real() > a.at(j, j).real(); });

    EigenSystem es;
    es.values.reserve(static_cast<size_t>(n));
    es.vectors.reserve(static_cast<size_t>(n));
    for (int idx : order) {
        es.values.push_back(a.at(idx, idx).real());
        std::vector<cplx> col(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) col[static_cast<size_t>(k)] = vmat.at(k, idx);
        es.vectors.emplace_back(std::move(col), /*renormalize=*/true);
    }
    return es;
}

}  // namespace nlgames
