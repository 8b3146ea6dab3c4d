#include "rsp/qmath.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace rsp {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw std::invalid_argument("ComplexMatrix dim must be 2 or 4, got " +
                                    std::to_string(dim));
    }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
    return e;
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cplx> entries) : dim_(dim) {
    check_dim(dim);
    if (static_cast<int>(entries.size()) != dim * dim) {
        throw std::invalid_argument("entry count must equal dim^2");
    }
    int k = 0;
    for (const cplx& e : entries) a_[k++] = e;
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int dim) { return ComplexMatrix(dim); }

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    check_same_dim(*this, rhs);
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const cplx aik = (*this)(i, k);
            for (int j = 0; j < dim_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    check_same_dim(*this, rhs);
    ComplexMatrix out(dim_);
    for (int k = 0; k < dim_ * dim_; ++k) out.a_[k] = a_[k] + rhs.a_[k];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    check_same_dim(*this, rhs);
    ComplexMatrix out(dim_);
    for (int k = 0; k < dim_ * dim_; ++k) out.a_[k] = a_[k] - rhs.a_[k];
    return out;
}

ComplexMatrix ComplexMatrix::scaled(cplx factor) const {
    ComplexMatrix out(dim_);
    for (int k = 0; k < dim_ * dim_; ++k) out.a_[k] = factor * a_[k];
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (int k = 0; k < dim_ * dim_; ++k) s += std::norm(a_[k]);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
    check_same_dim(*this, rhs);
    double m = 0.0;
    for (int k = 0; k < dim_ * dim_; ++k) m = std::max(m, std::abs(a_[k] - rhs.a_[k]));
    return m;
}

bool ComplexMatrix::is_unitary(double tol) const {
    return (adjoint() * (*this)).max_abs_diff(identity(dim_)) <= tol;
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& vec) const {
    if (static_cast<int>(vec.size()) != dim_) {
        throw std::invalid_argument("vector length must equal matrix dim");
    }
    std::vector<cplx> out(dim_, cplx{0.0, 0.0});
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * vec[j];
    return out;
}

const ComplexMatrix& sigma_x() {
    static const ComplexMatrix m(2, {0, 1, 1, 0});
    return m;
}

const ComplexMatrix& sigma_y() {
    static const ComplexMatrix m(2, {0, cplx{0, -1}, cplx{0, 1}, 0});
    return m;
}

const ComplexMatrix& sigma_z() {
    static const ComplexMatrix m(2, {1, 0, 0, -1});
    return m;
}

const ComplexMatrix& identity2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

const ComplexMatrix& identity4() {
    static const ComplexMatrix m = ComplexMatrix::identity(4);
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("kron expects two 2x2 factors");
    }
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix apply_to_spin(const ComplexMatrix& u, Spin spin) {
    return spin == Spin::A ? kron(u, identity2()) : kron(identity2(), u);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::string label)
    : m_(std::move(matrix)), label_(std::move(label)) {
    const double herm = m_.max_abs_diff(m_.adjoint());
    if (herm > 1e-12) {
        throw std::invalid_argument("density matrix not Hermitian (max dev " +
                                    std::to_string(herm) + ")");
    }
    const cplx tr = m_.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > 1e-12) {
        throw std::invalid_argument("density matrix trace != 1");
    }
    for (double ev : hermitian_eigenvalues(m_)) {
        if (ev < -1e-10) {
            throw std::invalid_argument("density matrix has eigenvalue " + std::to_string(ev));
        }
    }
}

DensityMatrix DensityMatrix::pure(const std::vector<cplx>& state, std::string label) {
    const int dim = static_cast<int>(state.size());
    double n2 = 0.0;
    for (const cplx& c : state) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > 1e-12) {
        throw std::invalid_argument("pure state not normalized");
    }
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = state[i] * std::conj(state[j]);
    return DensityMatrix(std::move(m), std::move(label));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(ComplexMatrix::identity(dim).scaled(1.0 / dim));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix partial_trace(const DensityMatrix& rho, Spin keep) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("partial_trace expects a 4x4 density matrix");
    }
    ComplexMatrix out(2);
    const ComplexMatrix& m = rho.matrix();
    // basis |ab>, index 2a + b: A is the slow index.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int t = 0; t < 2; ++t) {
                if (keep == Spin::A) {
                    out(i, j) += m(2 * i + t, 2 * j + t);
                } else {
                    out(i, j) += m(2 * t + i, 2 * t + j);
                }
            }
    return DensityMatrix(std::move(out), rho.label());
}

double fidelity(const DensityMatrix& rho, const std::vector<cplx>& pure_target) {
    if (static_cast<int>(pure_target.size()) != rho.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    double n2 = 0.0;
    for (const cplx& c : pure_target) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > 1e-10) {
        throw std::invalid_argument("fidelity: target not normalized");
    }
    cplx f = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            f += std::conj(pure_target[i]) * rho.matrix()(i, j) * pure_target[j];
    return f.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const ComplexMatrix diff = a.matrix() - b.matrix();
    double sum = 0.0;
    for (double ev : hermitian_eigenvalues(diff)) sum += std::abs(ev);
    return 0.5 * sum;
}

namespace {

PhaseMatch align_phase(const cplx* u, const cplx* v, int n, double tol) {
    int ref = 0;
    double best = 0.0;
    for (int k = 0; k < n; ++k) {
        if (std::abs(v[k]) > best) {
            best = std::abs(v[k]);
            ref = k;
        }
    }
    if (best < 1e-300) {
        throw std::invalid_argument("equal_up_to_global_phase: zero reference matrix");
    }
    cplx c = u[ref] / v[ref];
    const double mag = std::abs(c);
    c = (mag < 1e-300) ? cplx{1.0, 0.0} : c / mag;
    double maxerr = 0.0;
    for (int k = 0; k < n; ++k) maxerr = std::max(maxerr, std::abs(u[k] - c * v[k]));
    return PhaseMatch{maxerr <= tol, c};
}

}  // namespace

PhaseMatch equal_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v,
                                    double tol) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
    }
    const int n = u.dim() * u.dim();
    std::vector<cplx> ub(n), vb(n);
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < u.dim(); ++j) {
            ub[i * u.dim() + j] = u(i, j);
            vb[i * u.dim() + j] = v(i, j);
        }
    return align_phase(ub.data(), vb.data(), n, tol);
}

PhaseMatch equal_up_to_global_phase(const std::vector<cplx>& u, const std::vector<cplx>& v,
                                    double tol) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
    }
    return align_phase(u.data(), v.data(), static_cast<int>(u.size()), tol);
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("bloch_vector expects a 2x2 density matrix");
    }
    auto expect = [&rho](const ComplexMatrix& p) {
        const cplx t = (rho.matrix() * p).trace();
        if (std::abs(t.imag()) > 1e-12) {
            throw std::invalid_argument("bloch_vector: non-real Pauli expectation");
        }
        return t.real();
    };
    return BlochVector{expect(sigma_x()), expect(sigma_y()), expect(sigma_z())};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian eigensolver failed");
    }
    std::vector<double> evs(solver.eigenvalues().size());
    for (int i = 0; i < solver.eigenvalues().size(); ++i) evs[i] = solver.eigenvalues()(i);
    return evs;
}

}  // namespace rsp
