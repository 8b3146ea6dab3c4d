#include "rsp/tomography.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace rsp {

namespace {

const ComplexMatrix& pauli_1q(char label) {
    switch (label) {
        case 'I': return identity2();
        case 'X': return sigma_x();
        case 'Y': return sigma_y();
        case 'Z': return sigma_z();
    }
    throw std::invalid_argument("unknown Pauli label");
}

ComplexMatrix pauli_from_label(const std::string& label) {
    if (label.size() == 1) return pauli_1q(label[0]);
    return kron(pauli_1q(label[0]), pauli_1q(label[1]));
}

std::vector<std::string> pauli_labels(int n_qubits) {
    static const char axes[] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::string> labels;
    if (n_qubits == 1) {
        for (char a : axes) labels.push_back(std::string(1, a));
    } else {
        for (char a : axes)
            for (char b : axes) labels.push_back(std::string{a, b});
    }
    return labels;
}

}  // namespace

std::map<std::string, double> pauli_expectations(const DensityMatrix& rho, int n_qubits,
                                                 double readout_sigma, std::mt19937* rng) {
    if (n_qubits != 1 && n_qubits != 2) {
        throw std::invalid_argument("tomography supports 1 or 2 qubits");
    }
    if (rho.dim() != (1 << n_qubits)) {
        throw std::invalid_argument("density matrix dim does not match qubit count");
    }
    std::normal_distribution<double> noise(0.0, readout_sigma);
    std::map<std::string, double> out;
    for (const std::string& label : pauli_labels(n_qubits)) {
        double v = (rho.matrix() * pauli_from_label(label)).trace().real();
        if (readout_sigma > 0.0 && rng != nullptr && label.find_first_not_of('I') != std::string::npos) {
            v += noise(*rng);
        }
        out[label] = v;
    }
    return out;
}

TomographyRecord tomograph(const DensityMatrix& rho, int n_qubits) {
    auto expectations = pauli_expectations(rho, n_qubits, 0.0, nullptr);
    const int dim = 1 << n_qubits;
    ComplexMatrix sum(dim);
    for (const auto& [label, value] : expectations) {
        sum = sum + pauli_from_label(label).scaled(value);
    }
    return TomographyRecord{std::move(expectations),
                            DensityMatrix(sum.scaled(1.0 / dim), rho.label())};
}

double relative_error(const DensityMatrix& theory, const DensityMatrix& expt) {
    if (theory.dim() != expt.dim()) {
        throw std::invalid_argument("relative_error: dimension mismatch");
    }
    const double denom = theory.matrix().frobenius_norm();
    if (denom < 1e-300) {
        throw std::invalid_argument("relative_error: zero-norm theory matrix");
    }
    return (theory.matrix() - expt.matrix()).frobenius_norm() / denom;
}

double relative_error_deviation(const DensityMatrix& theory, const DensityMatrix& expt) {
    if (theory.dim() != expt.dim()) {
        throw std::invalid_argument("relative_error: dimension mismatch");
    }
    const ComplexMatrix id_part = ComplexMatrix::identity(theory.dim()).scaled(1.0 / theory.dim());
    const ComplexMatrix dev_theory = theory.matrix() - id_part;
    const ComplexMatrix dev_expt = expt.matrix() - id_part;
    const double denom = dev_theory.frobenius_norm();
    if (denom < 1e-300) {
        throw std::invalid_argument("relative_error: theory matrix has no deviation part");
    }
    return (dev_theory - dev_expt).frobenius_norm() / denom;
}

NmrSignal nmr_signal(const DensityMatrix& rho_b) {
    if (rho_b.dim() != 2) {
        throw std::invalid_argument("nmr_signal expects a single-spin state");
    }
    NmrSignal s;
    s.real_part = (rho_b.matrix() * sigma_x()).trace().real();
    s.imag_part = (rho_b.matrix() * sigma_y()).trace().real();
    // Y(pi/2) readout pulse turns z polarization into observable x coherence.
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix u(2, {r, -r, r, r});
    const ComplexMatrix rotated = u * rho_b.matrix() * u.adjoint();
    s.z_readout = (rotated * sigma_x()).trace().real();
    return s;
}

FitResult fit_sinusoid(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit_sinusoid: xs and ys lengths differ");
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("fit_sinusoid: need at least 3 points");
    }
    // y = p cos x + q sin x + c, solved by the normal equations
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (size_t k = 0; k < xs.size(); ++k) {
        const Eigen::Vector3d row(std::cos(xs[k]), std::sin(xs[k]), 1.0);
        ata += row * row.transpose();
        atb += row * ys[k];
    }
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(ata);
    if (!lu.isInvertible()) {
        throw std::invalid_argument("fit_sinusoid: singular normal matrix (collinear xs)");
    }
    const Eigen::Vector3d sol = lu.solve(atb);
    const double p = sol(0), q = sol(1), c = sol(2);

    FitResult fit;
    fit.amplitude = std::hypot(p, q);
    fit.phase_offset = (fit.amplitude > 0.0) ? std::atan2(-q, p) : 0.0;
    fit.baseline = c;
    double ss = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        const double model = p * std::cos(xs[k]) + q * std::sin(xs[k]) + c;
        ss += (ys[k] - model) * (ys[k] - model);
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(xs.size()));
    return fit;
}

}  // namespace rsp
