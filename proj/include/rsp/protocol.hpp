#pragma once

#include "rsp/gates.hpp"
#include "rsp/pulse.hpp"
#include "rsp/qmath.hpp"
#include "rsp/tomography.hpp"

#include <optional>
#include <vector>

// End-to-end RSP engine: pseudo-pure initialization, EPR preparation,
// Alice's rotated measurement, Bob recovery, relaxation noise and sweeps.

namespace rsp {

struct NoiseParams {
    double t1_a = 4.8;    // seconds, proton
    double t2_a = 0.2;
    double t1_b = 17.2;   // seconds, carbon
    double t2_b = 0.35;
    double j_coupling = 214.95;  // Hz
    bool enabled = false;

    // Throws std::invalid_argument unless all times are positive and
    // t2 <= 2 t1 per spin.
    void validate() const;
};

struct PseudoPureState {
    double epsilon = 1.0;
    DensityMatrix rho;  // (1 - eps) I/4 + eps |00><00|

    static PseudoPureState make(double epsilon);
};

enum class MeasurePath { ConditionalS, ProjectiveBranch };
enum class GateSource { PulseLevel, IdealGateLevel };

struct RunConfig {
    NoiseParams noise;
    MeasurePath path = MeasurePath::ConditionalS;
    GateSource source = GateSource::PulseLevel;
    double epsilon = 1.0;
    double rf_seconds_per_radian = 0.0;
    double pre_acquisition_delay = 0.0;  // seconds of extra relaxation before readout
};

struct RSPResult {
    QubitTarget target;
    DensityMatrix bob_state;
    BlochVector bob_bloch;
    double fidelity = 0.0;
    double delta = 0.0;       // Frobenius relative error vs the pure target
    double p_plus = 0.0;
    double p_minus = 0.0;
    MeasurePath path = MeasurePath::ConditionalS;
    bool noisy = false;
};

struct BranchMeasurement {
    double p_plus = 0.0;
    double p_minus = 0.0;
    // absent when the branch probability vanishes
    std::optional<DensityMatrix> bob_given_plus;
    std::optional<DensityMatrix> bob_given_minus;
};

// Computational-basis measurement of spin A: p_pm = tr((E_pm x I) rho) with
// renormalized conditional states of spin B.
BranchMeasurement measure_branches(const DensityMatrix& rho4);

// Per-spin amplitude damping composed with pure dephasing over dt. The
// dephasing rate is 1/T2' = 1/T2 - 1/(2 T1), clamped at zero, so the total
// transverse decay over dt is exp(-dt/T2).
DensityMatrix apply_relaxation(const DensityMatrix& rho4, double dt,
                               const NoiseParams& params);

// Pulse-by-pulse execution; relaxation runs over each pulse's duration when
// noise is enabled.
DensityMatrix apply_sequence(const DensityMatrix& rho4, const PulseSequence& seq,
                             const RunConfig& cfg);

RSPResult run_rsp(const QubitTarget& target, const RunConfig& cfg);

struct SweepPoint {
    int index = 0;
    double angle = 0.0;  // raw grid angle (polar theta or equatorial phi)
    RSPResult result;
    NmrSignal signal;
};

// Polar: theta_k = k pi/12, k = 0..24. Equatorial: phi_k = k pi/8, k = 0..16.
// n_points overrides the default grid size when positive.
std::vector<SweepPoint> run_sweep(TargetMode mode, const RunConfig& cfg, int n_points = 0);

}  // namespace rsp
