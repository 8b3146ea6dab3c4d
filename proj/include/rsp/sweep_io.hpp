#pragma once

#include "rsp/protocol.hpp"
#include "rsp/tomography.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// Serialization for sweep output (CSV and JSON) and the key = value run
// configuration file.

namespace rsp {

struct SweepRecord {
    int index = 0;
    double angle = 0.0;        // radians
    std::string angle_label;   // e.g. "5*pi/12", for human diffing
    double real_signal = 0.0;
    double imag_signal = 0.0;
    double z_readout = 0.0;
    double fidelity = 0.0;
    double delta = 0.0;
    double p_plus = 0.0;
};

SweepRecord to_record(const SweepPoint& point);

// Full-precision decimal rendering (shortest round-trip); parses back
// bit-for-bit.
std::string render_double(double v);

std::string to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> from_csv(const std::string& text);

struct SweepMetadata {
    TargetMode mode = TargetMode::Polar;
    NoiseParams noise;
    bool noise_enabled = false;
    double epsilon = 1.0;
    std::string norm_choice = "frobenius";
    std::string conventions =
        "X(t)=exp(-i t sx/2), Y(t)=exp(-i t sy/2), Z(t)=exp(-i t sz/2), "
        "J(t)=exp(-i t szsz/4); A slow factor, basis |00>,|01>,|10>,|11>";
    FitResult real_fit;
    FitResult imag_fit;
};

std::string to_json(const std::vector<SweepRecord>& records, const SweepMetadata& meta);

// Sinusoid fit of one sweep channel with phase_offset reported relative to
// the channel's nominal quadrature (0 for cosine-shaped channels, -pi/2 for
// sine-shaped ones); an ideal run therefore fits offset 0. Zero-amplitude
// channels report offset 0.
FitResult channel_fit(std::span<const double> xs, std::span<const double> ys,
                      double nominal_phase);

// key = value configuration file; `#` comments and blank lines ignored.
// Keys: noise (on/off), t1_a, t2_a, t1_b, t2_b, j_coupling, epsilon,
// rf_seconds_per_radian, pre_acquisition_delay, polar_points,
// equatorial_points. Unknown keys are an error.
struct FileConfig {
    RunConfig run;
    int polar_points = 0;       // 0 = default grid
    int equatorial_points = 0;
};

FileConfig parse_config(const std::string& text);
FileConfig load_config(const std::string& path);

}  // namespace rsp
