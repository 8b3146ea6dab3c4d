#include "rsp/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
}

ComplexMatrix kraus_conjugate(const ComplexMatrix& rho,
                              const std::vector<ComplexMatrix>& kraus, Spin spin) {
    ComplexMatrix out(4);
    for (const ComplexMatrix& k : kraus) {
        const ComplexMatrix k4 = apply_to_spin(k, spin);
        out = out + k4 * rho * k4.adjoint();
    }
    return out;
}

ComplexMatrix relax_one_spin(const ComplexMatrix& rho, double dt, double t1, double t2,
                             Spin spin) {
    // amplitude damping toward |0>
    const double gamma = 1.0 - std::exp(-dt / t1);
    const double sg = std::sqrt(gamma);
    const std::vector<ComplexMatrix> damp = {
        ComplexMatrix(2, {1, 0, 0, std::sqrt(1.0 - gamma)}),
        ComplexMatrix(2, {0, sg, 0, 0}),
    };
    // pure dephasing; rate clamped at zero for t2 = 2 t1
    const double rate = std::max(0.0, 1.0 / t2 - 0.5 / t1);
    const double p = 0.5 * (1.0 - std::exp(-dt * rate));
    const std::vector<ComplexMatrix> dephase = {
        identity2().scaled(std::sqrt(1.0 - p)),
        sigma_z().scaled(std::sqrt(p)),
    };
    return kraus_conjugate(kraus_conjugate(rho, damp, spin), dephase, spin);
}

DensityMatrix pure_00() {
    return DensityMatrix::pure({1, 0, 0, 0}, "|00>");
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
    return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.label());
}

PulseConfig pulse_config(const RunConfig& cfg) {
    return PulseConfig{cfg.noise.j_coupling, cfg.rf_seconds_per_radian};
}

// Rebuilds a sequence's durations under the run's J coupling and rf timing.
PulseSequence with_timing(const PulseSequence& seq, const PulseConfig& pc) {
    PulseSequence out;
    out.name = seq.name;
    for (const Pulse& p : seq.pulses) {
        out.pulses.push_back(p.kind == PulseKind::JCoupling
                                 ? Pulse::j_coupling(p.angle, pc)
                                 : Pulse::rf(p.axis, p.spin, p.angle, pc));
    }
    return out;
}

}  // namespace

void NoiseParams::validate() const {
    check_positive(t1_a, "t1_a");
    check_positive(t2_a, "t2_a");
    check_positive(t1_b, "t1_b");
    check_positive(t2_b, "t2_b");
    check_positive(j_coupling, "j_coupling");
    if (t2_a > 2.0 * t1_a + 1e-12 || t2_b > 2.0 * t1_b + 1e-12) {
        throw std::invalid_argument("unphysical relaxation times: need t2 <= 2 t1");
    }
}

PseudoPureState PseudoPureState::make(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    ComplexMatrix m = ComplexMatrix::identity(4).scaled((1.0 - epsilon) / 4.0);
    m(0, 0) += epsilon;
    return PseudoPureState{epsilon, DensityMatrix(std::move(m), "pseudo-pure")};
}

BranchMeasurement measure_branches(const DensityMatrix& rho4) {
    if (rho4.dim() != 4) {
        throw std::invalid_argument("measure_branches expects a 4x4 state");
    }
    const ComplexMatrix& m = rho4.matrix();
    BranchMeasurement out;
    out.p_plus = (m(0, 0) + m(1, 1)).real();   // A = |0> block
    out.p_minus = (m(2, 2) + m(3, 3)).real();  // A = |1> block
    auto block_state = [&m](int offset, double p) -> std::optional<DensityMatrix> {
        if (p < 1e-15) return std::nullopt;
        ComplexMatrix b(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b(i, j) = m(offset + i, offset + j) / p;
        return DensityMatrix(std::move(b));
    };
    out.bob_given_plus = block_state(0, out.p_plus);
    out.bob_given_minus = block_state(2, out.p_minus);
    return out;
}

DensityMatrix apply_relaxation(const DensityMatrix& rho4, double dt,
                               const NoiseParams& params) {
    if (dt < 0.0) {
        throw std::invalid_argument("relaxation interval must be nonnegative");
    }
    params.validate();
    if (rho4.dim() != 4) {
        throw std::invalid_argument("apply_relaxation expects a 4x4 state");
    }
    if (dt == 0.0) return rho4;
    ComplexMatrix m = relax_one_spin(rho4.matrix(), dt, params.t1_a, params.t2_a, Spin::A);
    m = relax_one_spin(m, dt, params.t1_b, params.t2_b, Spin::B);
    return DensityMatrix(std::move(m), rho4.label());
}

DensityMatrix apply_sequence(const DensityMatrix& rho4, const PulseSequence& seq,
                             const RunConfig& cfg) {
    DensityMatrix state = rho4;
    for (const Pulse& p : seq.pulses) {
        state = apply_unitary(state, pulse_unitary(p));
        if (cfg.noise.enabled && p.duration > 0.0) {
            state = apply_relaxation(state, p.duration, cfg.noise);
        }
    }
    return state;
}

RSPResult run_rsp(const QubitTarget& target, const RunConfig& cfg) {
    if (cfg.noise.enabled) cfg.noise.validate();
    const PulseConfig pc = pulse_config(cfg);

    DensityMatrix state =
        cfg.epsilon < 1.0 ? PseudoPureState::make(cfg.epsilon).rho : pure_00();

    // (1) EPR preparation
    if (cfg.source == GateSource::PulseLevel) {
        state = apply_sequence(state, with_timing(epr_network().pulse_equivalent, pc), cfg);
    } else {
        for (const ComplexMatrix& g : epr_network().gate_list) {
            state = apply_unitary(state, g);
        }
    }

    // (2) rotate Alice into the computational basis
    if (cfg.source == GateSource::PulseLevel) {
        state = apply_sequence(state, with_timing(r_plus_sequence(target), pc), cfg);
    } else {
        state = apply_unitary(state, apply_to_spin(r_plus_matrix(target), Spin::A));
    }

    const BranchMeasurement branches = measure_branches(state);

    // (3) Bob recovery
    DensityMatrix bob = DensityMatrix::maximally_mixed(2);
    if (cfg.path == MeasurePath::ConditionalS) {
        const SOperator s = s_operator(target.mode());
        if (cfg.source == GateSource::PulseLevel) {
            state = apply_sequence(state, with_timing(s.sequence, pc), cfg);
        } else {
            state = apply_unitary(state, s.matrix);
        }
        if (cfg.noise.enabled && cfg.pre_acquisition_delay > 0.0) {
            state = apply_relaxation(state, cfg.pre_acquisition_delay, cfg.noise);
        }
        bob = partial_trace(state, Spin::B);
    } else {
        // projective reading: both branches computed deterministically, Bob
        // applies U on the |0> outcome and nothing on |1>
        const ComplexMatrix u = u_correction(target.mode());
        ComplexMatrix mix(2);
        if (branches.bob_given_plus) {
            mix = mix + (u * branches.bob_given_plus->matrix() * u.adjoint())
                            .scaled(branches.p_plus);
        }
        if (branches.bob_given_minus) {
            mix = mix + branches.bob_given_minus->matrix().scaled(branches.p_minus);
        }
        bob = DensityMatrix(std::move(mix));
    }

    const std::vector<cplx> psi = target.state();
    RSPResult result{target,
                     bob,
                     bloch_vector(bob),
                     fidelity(bob, psi),
                     relative_error(DensityMatrix::pure(psi), bob),
                     branches.p_plus,
                     branches.p_minus,
                     cfg.path,
                     cfg.noise.enabled};
    return result;
}

std::vector<SweepPoint> run_sweep(TargetMode mode, const RunConfig& cfg, int n_points) {
    const bool polar = mode == TargetMode::Polar;
    const int count = n_points > 0 ? n_points : (polar ? 25 : 17);
    const double step = polar ? kPi / 12.0 : kPi / 8.0;
    std::vector<SweepPoint> points;
    points.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double angle = k * step;
        const QubitTarget target =
            polar ? QubitTarget::polar(angle) : QubitTarget::equatorial(angle);
        RSPResult result = run_rsp(target, cfg);
        NmrSignal signal = nmr_signal(result.bob_state);
        points.push_back(SweepPoint{k, angle, std::move(result), signal});
    }
    return points;
}

}  // namespace rsp
