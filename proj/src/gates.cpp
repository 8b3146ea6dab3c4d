#include "rsp/gates.hpp"

#include <cmath>
#include <numbers>

namespace rsp {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

// All published sequences, as DSL text in time order (the textbook operator
// products read right to left).
constexpr const char* kEprText =
    "# EPR pair from |00>, merged six-pulse form\n"
    "X A pi/2\n"
    "Ybar A pi\n"
    "Xbar B pi/2\n"
    "Y B pi/2\n"
    "J AB pi\n"
    "Ybar B pi/2\n";

constexpr const char* kNotAText = "X A pi\n";

constexpr const char* kHadamardAText =
    "Xbar A pi\n"
    "Ybar A pi/2\n";

constexpr const char* kCnotText =
    "J AB pi\n"
    "Z A pi/2\n"
    "Z B pi/2\n"
    "Ybar B pi/2\n";

constexpr const char* kSPolarText =
    "Xbar B pi/2\n"
    "J AB pi\n"
    "X B pi/2\n"
    "Ybar B pi/2\n";

constexpr const char* kSEquatorialText =
    "J AB pi\n"
    "Y B pi/2\n"
    "X B pi/2\n"
    "Ybar B pi/2\n"
    "Y A pi/2\n"
    "Xbar A pi/2\n"
    "Ybar A pi/2\n";

PulseSequence named(const char* text, std::string name) {
    PulseSequence seq = parse_sequence(text);
    seq.name = std::move(name);
    return seq;
}

}  // namespace

QubitTarget QubitTarget::polar(double theta) {
    return QubitTarget(TargetMode::Polar, wrap_angle(theta), 0.0);
}

QubitTarget QubitTarget::equatorial(double phi) {
    return QubitTarget(TargetMode::Equatorial, kPi / 2.0, wrap_angle(phi));
}

cplx QubitTarget::alpha() const { return std::cos(theta_ / 2.0); }

cplx QubitTarget::beta() const {
    return std::sin(theta_ / 2.0) * std::exp(cplx{0.0, phi_});
}

std::vector<cplx> QubitTarget::state() const { return {alpha(), beta()}; }

std::vector<cplx> QubitTarget::orthogonal_state() const {
    return {-std::conj(beta()), alpha()};
}

ComplexMatrix rotation_r(const QubitTarget& target) {
    const double c = std::cos(target.theta() / 2.0);
    const double s = std::sin(target.theta() / 2.0);
    const cplx eip = std::exp(cplx{0.0, target.phi()});
    return ComplexMatrix(2, {c, -s * std::conj(eip), s * eip, c});
}

ComplexMatrix r_plus_matrix(const QubitTarget& target) {
    return rotation_r(target).adjoint();
}

PulseSequence r_plus_sequence(const QubitTarget& target) {
    PulseSequence seq;
    if (target.mode() == TargetMode::Polar) {
        seq.name = "r_plus_polar";
        seq.pulses.push_back(Pulse::rf(Axis::Y, Spin::A, -target.theta()));
    } else {
        // theta2 keeps the asin sign so the compiled product matches the
        // closed-form matrix for cos(phi) of either sign
        const double t1 = std::atan(std::sin(target.phi()));
        const double t2 = 2.0 * std::asin(std::cos(target.phi()) / std::sqrt(2.0));
        seq.name = "r_plus_equatorial";
        seq.pulses.push_back(Pulse::rf(Axis::X, Spin::A, t1));
        seq.pulses.push_back(Pulse::rf(Axis::Y, Spin::A, -t2));
        seq.pulses.push_back(Pulse::rf(Axis::X, Spin::A, t1));
    }
    return seq;
}

ComplexMatrix u_correction(TargetMode mode) {
    if (mode == TargetMode::Polar) {
        return sigma_y().scaled(cplx{0.0, 1.0});  // i sigma_y
    }
    return sigma_z();
}

SOperator s_operator(TargetMode mode) {
    SOperator s;
    const ComplexMatrix e_plus(2, {1, 0, 0, 0});
    const ComplexMatrix e_minus(2, {0, 0, 0, 1});
    s.matrix = kron(e_plus, u_correction(mode)) + kron(e_minus, identity2());
    s.sequence = mode == TargetMode::Polar ? named(kSPolarText, "s_polar")
                                           : named(kSEquatorialText, "s_equatorial");
    return s;
}

EprNetwork epr_network() {
    EprNetwork net;
    net.gate_list = {apply_to_spin(sigma_x(), Spin::A), apply_to_spin(hadamard(), Spin::A),
                     ideal_cnot_a0()};
    net.pulse_equivalent = named(kEprText, "epr");
    return net;
}

PulseSequence not_a_sequence() { return named(kNotAText, "not_a"); }

PulseSequence hadamard_a_sequence() { return named(kHadamardAText, "hadamard_a"); }

PulseSequence cnot_sequence() { return named(kCnotText, "cnot"); }

ComplexMatrix cnot_local_correction_form() {
    const cplx phase = std::exp(cplx{0.0, -3.0 * kPi / 4.0});
    return kron(sigma_z(), sigma_z()).scaled(phase) * ideal_cnot_a0() *
           apply_to_spin(hadamard(), Spin::B);
}

ComplexMatrix ideal_cnot_a0() {
    ComplexMatrix m(4);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(2, 2) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

ComplexMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, {r, r, r, -r});
}

std::vector<cplx> singlet_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return {0.0, r, -r, 0.0};
}

}  // namespace rsp
