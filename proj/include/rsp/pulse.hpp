#pragma once

#include "rsp/qmath.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Line-oriented pulse program DSL and its compiler to exact 4x4 unitaries.
//
// Grammar (UTF-8, one pulse per line):
//     <axis-token> <target> <angle>
// axis-token in {X, Y, Z, Xbar, Ybar, Zbar, J}, target in {A, B, AB},
// angle a pi-expression (decimal literals, `pi`, and + - * /; no variables).
// `#` starts a comment; blank lines are ignored. `Xbar t a` == `X t -a`.
//
// Files are written in TIME order: the first line is the first pulse applied.
// The paper-order rendering (right-to-left product notation) is display only.

namespace rsp {

enum class Axis { X, Y, Z };
enum class PulseKind { Rf, JCoupling };

struct PulseConfig {
    double j_coupling_hz = 214.95;
    // Hard rf pulses are instantaneous by default; set this to charge them
    // a duration proportional to |angle|.
    double rf_seconds_per_radian = 0.0;
};

struct Pulse {
    PulseKind kind = PulseKind::Rf;
    Spin spin = Spin::A;   // Rf only; JCoupling always addresses the AB pair
    Axis axis = Axis::X;   // Rf only
    double angle = 0.0;    // radians, signed; barred pulses carry negative angles
    double duration = 0.0; // seconds

    static Pulse rf(Axis axis, Spin spin, double angle, const PulseConfig& cfg = {});
    static Pulse j_coupling(double angle, const PulseConfig& cfg = {});
};

struct PulseSequence {
    std::vector<Pulse> pulses;  // time order, first applied first
    std::string name;

    double total_duration() const;
};

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    int line;
    int column;
};

struct LexError : ParseError {
    using ParseError::ParseError;
};
struct UnitError : ParseError {
    using ParseError::ParseError;
};
struct TargetError : ParseError {
    using ParseError::ParseError;
};

PulseSequence parse_sequence(std::string_view text, const PulseConfig& cfg = {});

// Evaluates a pi-expression on its own (used by the CLI for angle flags).
double parse_angle(std::string_view text);

enum class Notation { TimeOrder, PaperOrder };

// TimeOrder output round-trips through parse_sequence exactly; PaperOrder
// reproduces the right-to-left product notation on a single line.
std::string format_sequence(const PulseSequence& seq, Notation notation);

// Renders an angle as a rational multiple of pi when within 1e-12 of one,
// full-precision decimal otherwise.
std::string format_angle(double angle);

struct CompiledSequence {
    ComplexMatrix unitary{4};
    double duration = 0.0;
};

// Product of per-pulse unitaries in time order (later pulses on the left).
CompiledSequence compile(const PulseSequence& seq);

// Rf: exp(-i angle sigma_axis / 2) embedded on its spin.
// JCoupling: exp(-i angle (sigma_z x sigma_z) / 4).
ComplexMatrix pulse_unitary(const Pulse& p);

PulseSequence concat(const PulseSequence& first, const PulseSequence& then);

}  // namespace rsp
