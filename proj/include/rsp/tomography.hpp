#pragma once

#include "rsp/qmath.hpp"

#include <map>
#include <random>
#include <span>
#include <string>

// Simulated readout: Pauli-expectation tomography, the Frobenius relative
// error metric, NMR-style signal extraction and sinusoid fitting.

namespace rsp {

struct TomographyRecord {
    std::map<std::string, double> expectations;  // "X", "ZZ", "IY", ...
    DensityMatrix reconstructed;
};

// Exact expectations tr(rho P) over the full Pauli basis and the linear
// reconstruction (sum <P> P) / 2^n.
TomographyRecord tomograph(const DensityMatrix& rho, int n_qubits);

// Expectations only, optionally perturbed by Gaussian readout noise
// (demonstration mode); exact when sigma == 0.
std::map<std::string, double> pauli_expectations(const DensityMatrix& rho, int n_qubits,
                                                 double readout_sigma = 0.0,
                                                 std::mt19937* rng = nullptr);

// ||theory - expt||_F / ||theory||_F
double relative_error(const DensityMatrix& theory, const DensityMatrix& expt);

// Same metric on the traceless deviation parts (rho - tr(rho) I / d).
double relative_error_deviation(const DensityMatrix& theory, const DensityMatrix& expt);

struct NmrSignal {
    double real_part = 0.0;  // <sigma_x>, phased so x is the real channel
    double imag_part = 0.0;  // <sigma_y>
    double z_readout = 0.0;  // via a simulated Y(pi/2) readout pulse
};

NmrSignal nmr_signal(const DensityMatrix& rho_b);

struct FitResult {
    double amplitude = 0.0;
    double phase_offset = 0.0;  // radians
    double baseline = 0.0;
    double rms_residual = 0.0;
};

// Least squares fit of y = a cos(x + delta) + c via the linearization
// y = p cos x + q sin x + c; throws on a singular normal matrix.
FitResult fit_sinusoid(std::span<const double> xs, std::span<const double> ys);

}  // namespace rsp
