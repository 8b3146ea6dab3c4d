#include "rsp/verify.hpp"

#include "rsp/gates.hpp"
#include "rsp/pulse.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

PulseSequence maybe_corrupt(PulseSequence seq, const VerifyOptions& opts) {
    if (opts.corrupt_j_convention) {
        for (Pulse& p : seq.pulses) {
            if (p.kind == PulseKind::JCoupling) p.angle = -p.angle;
        }
    }
    return seq;
}

IdentityCheck phase_check(std::string name, const ComplexMatrix& compiled,
                          const ComplexMatrix& reference) {
    const PhaseMatch match = equal_up_to_global_phase(compiled, reference, kTol);
    double maxerr = 0.0;
    const ComplexMatrix aligned = reference.scaled(match.phase);
    maxerr = compiled.max_abs_diff(aligned);
    return IdentityCheck{std::move(name), match.equal, maxerr, match.phase, {}};
}

IdentityCheck exact_check(std::string name, const ComplexMatrix& compiled,
                          const ComplexMatrix& reference) {
    const double maxerr = compiled.max_abs_diff(reference);
    return IdentityCheck{std::move(name), maxerr <= kTol, maxerr, cplx{1.0, 0.0}, {}};
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(const VerifyOptions& opts) {
    std::vector<IdentityCheck> checks;

    // EPR pair: the compiled merged six-pulse sequence on |00> vs the singlet
    {
        const auto compiled = compile(maybe_corrupt(epr_network().pulse_equivalent, opts));
        const std::vector<cplx> out = compiled.unitary.apply({1, 0, 0, 0});
        const PhaseMatch match = equal_up_to_global_phase(out, singlet_state(), kTol);
        double maxerr = 0.0;
        const auto ref = singlet_state();
        for (size_t k = 0; k < out.size(); ++k) {
            maxerr = std::max(maxerr, std::abs(out[k] - match.phase * ref[k]));
        }
        checks.push_back({"epr-sequence-singlet", match.equal, maxerr, match.phase, {}});
    }

    // ideal gate network N_A, H_A, CN on |00>
    {
        std::vector<cplx> state = {1, 0, 0, 0};
        for (const ComplexMatrix& g : epr_network().gate_list) state = g.apply(state);
        double maxerr = 0.0;
        const auto ref = singlet_state();
        for (size_t k = 0; k < state.size(); ++k) {
            maxerr = std::max(maxerr, std::abs(state[k] - ref[k]));
        }
        checks.push_back({"epr-ideal-network", maxerr <= kTol, maxerr, cplx{1.0, 0.0}, {}});
    }

    // Hadamard decomposition equals iH on spin A
    {
        const ComplexMatrix compiled = compile(hadamard_a_sequence()).unitary;
        const ComplexMatrix ref =
            apply_to_spin(hadamard().scaled(cplx{0.0, 1.0}), Spin::A);
        checks.push_back(exact_check("hadamard-sequence-iH", compiled, ref));
    }

    // R+ sequences against the closed-form matrices on both sweep grids
    {
        double worst = 0.0;
        bool ok = true;
        for (int k = 0; k < 25; ++k) {
            const QubitTarget t = QubitTarget::polar(k * kPi / 12.0);
            const ComplexMatrix c4 = compile(r_plus_sequence(t)).unitary;
            const ComplexMatrix ref = apply_to_spin(r_plus_matrix(t), Spin::A);
            const PhaseMatch m = equal_up_to_global_phase(c4, ref, kTol);
            worst = std::max(worst, c4.max_abs_diff(ref.scaled(m.phase)));
            ok = ok && m.equal;
        }
        checks.push_back({"r-plus-polar-grid-25", ok, worst, cplx{1.0, 0.0}, {}});
    }
    {
        double worst = 0.0;
        bool ok = true;
        for (int k = 0; k < 17; ++k) {
            const QubitTarget t = QubitTarget::equatorial(k * kPi / 8.0);
            const ComplexMatrix c4 = compile(r_plus_sequence(t)).unitary;
            const ComplexMatrix ref = apply_to_spin(r_plus_matrix(t), Spin::A);
            const PhaseMatch m = equal_up_to_global_phase(c4, ref, kTol);
            worst = std::max(worst, c4.max_abs_diff(ref.scaled(m.phase)));
            ok = ok && m.equal;
        }
        checks.push_back({"r-plus-equatorial-grid-17", ok, worst, cplx{1.0, 0.0}, {}});
    }

    // conditional S, polar: exact equality required
    {
        const SOperator s = s_operator(TargetMode::Polar);
        const ComplexMatrix compiled = compile(maybe_corrupt(s.sequence, opts)).unitary;
        checks.push_back(exact_check("s-polar-exact", compiled, s.matrix));
    }

    // conditional S, equatorial: equality up to the e^{-i pi/4} phase
    {
        const SOperator s = s_operator(TargetMode::Equatorial);
        const ComplexMatrix compiled = compile(maybe_corrupt(s.sequence, opts)).unitary;
        IdentityCheck c = phase_check("s-equatorial-phase", compiled, s.matrix);
        const cplx expected = std::exp(cplx{0.0, -kPi / 4.0});
        if (std::abs(c.phase - expected) > 1e-9) {
            c.passed = false;
            c.note = "phase differs from e^{-i pi/4}";
        }
        checks.push_back(std::move(c));
    }

    // literal CNOT decomposition vs CNOT with local corrections
    {
        const ComplexMatrix compiled = compile(maybe_corrupt(cnot_sequence(), opts)).unitary;
        checks.push_back(
            exact_check("cnot-local-correction", compiled, cnot_local_correction_form()));
    }

    // theta1/theta2 closed-form endpoints of the equatorial decomposition
    {
        const double t1_0 = std::atan(std::sin(0.0));
        const double t2_0 = 2.0 * std::asin(std::cos(0.0) / std::sqrt(2.0));
        const double t1_90 = std::atan(std::sin(kPi / 2.0));
        const double t2_90 = 2.0 * std::asin(std::cos(kPi / 2.0) / std::sqrt(2.0));
        const double err = std::max({std::abs(t1_0), std::abs(t2_0 - kPi / 2.0),
                                     std::abs(t1_90 - kPi / 4.0), std::abs(t2_90)});
        checks.push_back({"theta12-endpoints", err <= kTol, err, cplx{1.0, 0.0}, {}});
    }

    return checks;
}

bool all_passed(const std::vector<IdentityCheck>& checks) {
    for (const IdentityCheck& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::string format_report(const std::vector<IdentityCheck>& checks) {
    std::ostringstream os;
    for (const IdentityCheck& c : checks) {
        os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  max_error=";
        os.precision(3);
        os << std::scientific << c.max_error;
        os << "  phase=(" << c.phase.real() << "," << c.phase.imag() << ")";
        if (!c.note.empty()) os << "  " << c.note;
        os << '\n';
    }
    os << (all_passed(checks) ? "all identities hold" : "identity failures present") << '\n';
    return os.str();
}

}  // namespace rsp
