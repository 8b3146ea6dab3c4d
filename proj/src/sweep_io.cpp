#include "rsp/sweep_io.hpp"

#include "rsp/pulse.hpp"

#include <json.hpp>

#include <charconv>
#include <numbers>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsp {

namespace {

const char* kCsvHeader =
    "index,angle,angle_label,real_signal,imag_signal,z_readout,fidelity,delta,p_plus";

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad numeric field '" + s + "'");
    }
    return v;
}

nlohmann::json fit_json(const FitResult& f) {
    return {{"amplitude", f.amplitude},
            {"phase_offset", f.phase_offset},
            {"baseline", f.baseline},
            {"rms_residual", f.rms_residual}};
}

}  // namespace

SweepRecord to_record(const SweepPoint& point) {
    SweepRecord r;
    r.index = point.index;
    r.angle = point.angle;
    r.angle_label = format_angle(point.angle);
    r.real_signal = point.signal.real_part;
    r.imag_signal = point.signal.imag_part;
    r.z_readout = point.signal.z_readout;
    r.fidelity = point.result.fidelity;
    r.delta = point.result.delta;
    r.p_plus = point.result.p_plus;
    return r;
}

std::string render_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<SweepRecord>& records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const SweepRecord& r : records) {
        out += std::to_string(r.index);
        out += ',';
        out += render_double(r.angle);
        out += ',';
        out += csv_quote(r.angle_label);
        for (double v : {r.real_signal, r.imag_signal, r.z_readout, r.fidelity, r.delta,
                         r.p_plus}) {
            out += ',';
            out += render_double(v);
        }
        out += '\n';
    }
    return out;
}

std::vector<SweepRecord> from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw std::invalid_argument("missing or unexpected CSV header");
    }
    std::vector<SweepRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9) {
            throw std::invalid_argument("expected 9 CSV fields, got " +
                                        std::to_string(f.size()));
        }
        SweepRecord r;
        r.index = static_cast<int>(parse_double(f[0]));
        r.angle = parse_double(f[1]);
        r.angle_label = f[2];
        r.real_signal = parse_double(f[3]);
        r.imag_signal = parse_double(f[4]);
        r.z_readout = parse_double(f[5]);
        r.fidelity = parse_double(f[6]);
        r.delta = parse_double(f[7]);
        r.p_plus = parse_double(f[8]);
        records.push_back(std::move(r));
    }
    return records;
}

std::string to_json(const std::vector<SweepRecord>& records, const SweepMetadata& meta) {
    nlohmann::json j;
    j["metadata"] = {
        {"mode", meta.mode == TargetMode::Polar ? "polar" : "equatorial"},
        {"noise_enabled", meta.noise_enabled},
        {"j_coupling_hz", meta.noise.j_coupling},
        {"t1_a_s", meta.noise.t1_a},
        {"t2_a_s", meta.noise.t2_a},
        {"t1_b_s", meta.noise.t1_b},
        {"t2_b_s", meta.noise.t2_b},
        {"epsilon", meta.epsilon},
        {"norm_choice", meta.norm_choice},
        {"conventions", meta.conventions},
        {"real_signal_fit", fit_json(meta.real_fit)},
        {"imag_signal_fit", fit_json(meta.imag_fit)},
    };
    j["records"] = nlohmann::json::array();
    for (const SweepRecord& r : records) {
        j["records"].push_back({{"index", r.index},
                                {"angle", r.angle},
                                {"angle_label", r.angle_label},
                                {"real_signal", r.real_signal},
                                {"imag_signal", r.imag_signal},
                                {"z_readout", r.z_readout},
                                {"fidelity", r.fidelity},
                                {"delta", r.delta},
                                {"p_plus", r.p_plus}});
    }
    return j.dump(2);
}

FitResult channel_fit(std::span<const double> xs, std::span<const double> ys,
                      double nominal_phase) {
    FitResult fit = fit_sinusoid(xs, ys);
    if (fit.amplitude < 1e-9) {
        fit.phase_offset = 0.0;
        return fit;
    }
    double offset = fit.phase_offset - nominal_phase;
    while (offset > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
    while (offset <= -std::numbers::pi) offset += 2.0 * std::numbers::pi;
    fit.phase_offset = offset;
    return fit;
}

FileConfig parse_config(const std::string& text) {
    FileConfig cfg;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const size_t eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        auto trim = [](std::string& s) {
            const size_t b = s.find_first_not_of(" \t\r");
            const size_t e = s.find_last_not_of(" \t\r");
            s = (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
        };
        trim(key);
        if (key.empty()) continue;
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        std::string value = line.substr(eq + 1);
        trim(value);

        if (key == "noise") {
            if (value == "on")
                cfg.run.noise.enabled = true;
            else if (value == "off")
                cfg.run.noise.enabled = false;
            else
                throw std::invalid_argument("config: noise must be on or off");
        } else if (key == "t1_a") {
            cfg.run.noise.t1_a = parse_double(value);
        } else if (key == "t2_a") {
            cfg.run.noise.t2_a = parse_double(value);
        } else if (key == "t1_b") {
            cfg.run.noise.t1_b = parse_double(value);
        } else if (key == "t2_b") {
            cfg.run.noise.t2_b = parse_double(value);
        } else if (key == "j_coupling") {
            cfg.run.noise.j_coupling = parse_double(value);
        } else if (key == "epsilon") {
            cfg.run.epsilon = parse_double(value);
        } else if (key == "rf_seconds_per_radian") {
            cfg.run.rf_seconds_per_radian = parse_double(value);
        } else if (key == "pre_acquisition_delay") {
            cfg.run.pre_acquisition_delay = parse_double(value);
        } else if (key == "polar_points") {
            cfg.polar_points = static_cast<int>(parse_double(value));
        } else if (key == "equatorial_points") {
            cfg.equatorial_points = static_cast<int>(parse_double(value));
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace rsp
