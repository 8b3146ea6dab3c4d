#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

// Dense complex linear algebra for one- and two-spin systems. Everything is
// 2x2 or 4x4 and immutable after construction; all functions are pure.

namespace rsp {

using cplx = std::complex<double>;

enum class Spin { A, B };

class ComplexMatrix {
  public:
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::initializer_list<cplx> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim);

    int dim() const { return dim_; }

    cplx& operator()(int row, int col) { return a_[row * dim_ + col]; }
    const cplx& operator()(int row, int col) const { return a_[row * dim_ + col]; }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix scaled(cplx factor) const;
    ComplexMatrix adjoint() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs_diff(const ComplexMatrix& rhs) const;
    bool is_unitary(double tol = 1e-12) const;

    std::vector<cplx> apply(const std::vector<cplx>& vec) const;

  private:
    int dim_;
    std::array<cplx, 16> a_{};
};

// Pauli matrices and the 2x2/4x4 identities.
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();
const ComplexMatrix& identity2();
const ComplexMatrix& identity4();

// Tensor product, a on the slow (spin A) index, b on the fast (spin B) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Embed a single-spin operator into the two-spin space.
ComplexMatrix apply_to_spin(const ComplexMatrix& u, Spin spin);

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

class DensityMatrix {
  public:
    // Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalue
    // floor -1e-10; throws std::invalid_argument on violation.
    explicit DensityMatrix(ComplexMatrix matrix, std::string label = {});

    static DensityMatrix pure(const std::vector<cplx>& state, std::string label = {});
    static DensityMatrix maximally_mixed(int dim);

    const ComplexMatrix& matrix() const { return m_; }
    const std::string& label() const { return label_; }
    int dim() const { return m_.dim(); }
    double purity() const;

  private:
    ComplexMatrix m_;
    std::string label_;
};

// Reduced state of the kept spin.
DensityMatrix partial_trace(const DensityMatrix& rho, Spin keep);

// <psi|rho|psi> for a normalized pure target.
double fidelity(const DensityMatrix& rho, const std::vector<cplx>& pure_target);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct PhaseMatch {
    bool equal = false;
    cplx phase{1.0, 0.0};
};

// Finds the unit phase c (referenced to the largest-magnitude entry of v)
// minimizing max|u - c v|; equal iff that max <= tol.
PhaseMatch equal_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v,
                                    double tol = 1e-12);
PhaseMatch equal_up_to_global_phase(const std::vector<cplx>& u, const std::vector<cplx>& v,
                                    double tol = 1e-12);

// (tr(rho sigma_x), tr(rho sigma_y), tr(rho sigma_z)).
BlochVector bloch_vector(const DensityMatrix& rho);

// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace rsp
