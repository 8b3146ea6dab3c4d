#pragma once

#include "rsp/pulse.hpp"
#include "rsp/qmath.hpp"

// Closed-form protocol operators and the pulse sequences realizing them.
// Spin A (proton, Alice) is the slow tensor factor, spin B (carbon, Bob) the
// fast one; basis order |00>, |01>, |10>, |11>.

namespace rsp {

enum class TargetMode { Polar, Equatorial };

// The (theta, phi) pair naming the state to prepare. Polar targets fix
// phi = 0, equatorial targets fix theta = pi/2. Amplitudes are
// alpha = cos(theta/2) (real) and beta = sin(theta/2) e^{i phi}.
class QubitTarget {
  public:
    static QubitTarget polar(double theta);
    static QubitTarget equatorial(double phi);

    TargetMode mode() const { return mode_; }
    double theta() const { return theta_; }
    double phi() const { return phi_; }

    cplx alpha() const;
    cplx beta() const;

    // alpha|0> + beta|1>
    std::vector<cplx> state() const;
    // alpha|1> - conj(beta)|0>
    std::vector<cplx> orthogonal_state() const;

  private:
    QubitTarget(TargetMode mode, double theta, double phi)
        : mode_(mode), theta_(theta), phi_(phi) {}
    TargetMode mode_;
    double theta_;
    double phi_;
};

// The rotation taking |0> to the target state.
ComplexMatrix rotation_r(const QubitTarget& target);

// Conjugate transpose of rotation_r: maps |psi> -> |0>, |psi_perp> -> |1>.
ComplexMatrix r_plus_matrix(const QubitTarget& target);

// Pulse realization of r_plus on spin A. Polar: Ybar_A(theta). Equatorial:
// X_A(t1) Ybar_A(t2) X_A(t1) with t1 = atan(sin phi), t2 = 2 asin(cos phi / sqrt 2).
PulseSequence r_plus_sequence(const QubitTarget& target);

// Bob's correction for the mode: i sigma_y (polar) or sigma_z (equatorial).
ComplexMatrix u_correction(TargetMode mode);

struct SOperator {
    ComplexMatrix matrix{4};  // u on the A=|0> block, identity on A=|1>
    PulseSequence sequence;
};

SOperator s_operator(TargetMode mode);

struct EprNetwork {
    std::vector<ComplexMatrix> gate_list;  // N_A, H_A, CN(A=0 control) in order
    PulseSequence pulse_equivalent;        // the merged six-pulse sequence
};

EprNetwork epr_network();

// Individual gate pulse decompositions (N_A, H_A, CNOT) as published; the
// CNOT one is a CNOT only up to local corrections, see cnot_local_correction.
PulseSequence not_a_sequence();
PulseSequence hadamard_a_sequence();
PulseSequence cnot_sequence();

// compile(cnot_sequence()) == e^{-i 3pi/4} (sigma_z x sigma_z) CN (I x H) exactly.
ComplexMatrix cnot_local_correction_form();

// CN with empty-circle control: flips B iff A is |0>.
ComplexMatrix ideal_cnot_a0();
ComplexMatrix hadamard();

// (|01> - |10>)/sqrt(2)
std::vector<cplx> singlet_state();

}  // namespace rsp
