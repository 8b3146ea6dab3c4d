// rsplab: remote-state-preparation simulation lab for the two-spin NMR
// protocol. Subcommands: verify, rsp, sweep, tomo, compile.

#include "rsp/gates.hpp"
#include "rsp/protocol.hpp"
#include "rsp/pulse.hpp"
#include "rsp/sweep_io.hpp"
#include "rsp/tomography.hpp"
#include "rsp/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ModeArgs {
    bool polar = false;
    bool equatorial = false;
    std::string theta;
    std::string phi;
};

rsp::QubitTarget resolve_target(const ModeArgs& args) {
    if (args.polar == args.equatorial) {
        throw CLI::ValidationError("choose exactly one of --polar / --equatorial");
    }
    if (args.polar) {
        if (args.theta.empty()) throw CLI::ValidationError("--polar requires --theta");
        return rsp::QubitTarget::polar(rsp::parse_angle(args.theta));
    }
    if (args.phi.empty()) throw CLI::ValidationError("--equatorial requires --phi");
    return rsp::QubitTarget::equatorial(rsp::parse_angle(args.phi));
}

void add_mode_options(CLI::App* cmd, ModeArgs& args) {
    cmd->add_flag("--polar", args.polar, "polar-circle target (phi = 0)");
    cmd->add_flag("--equatorial", args.equatorial, "equatorial target (theta = pi/2)");
    cmd->add_option("--theta", args.theta, "polar angle, pi-expression (e.g. pi/3)");
    cmd->add_option("--phi", args.phi, "equatorial phase, pi-expression");
}

void print_matrix(std::ostream& os, const rsp::ComplexMatrix& m) {
    os.precision(15);
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            const rsp::cplx v = m(i, j);
            os << "  (" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
        }
        os << '\n';
    }
}

nlohmann::json matrix_json(const rsp::ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.dim(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

int cmd_verify(bool corrupt) {
    const auto checks = rsp::run_identity_suite({corrupt});
    std::cout << rsp::format_report(checks);
    return rsp::all_passed(checks) ? kExitOk : kExitVerifyFailure;
}

int cmd_rsp(const ModeArgs& mode, const rsp::FileConfig& file_cfg, bool noise,
            bool projective, bool ideal) {
    const rsp::QubitTarget target = resolve_target(mode);
    rsp::RunConfig cfg = file_cfg.run;
    if (noise) cfg.noise.enabled = true;
    cfg.path = projective ? rsp::MeasurePath::ProjectiveBranch
                          : rsp::MeasurePath::ConditionalS;
    cfg.source = ideal ? rsp::GateSource::IdealGateLevel : rsp::GateSource::PulseLevel;

    const rsp::RSPResult r = rsp::run_rsp(target, cfg);
    std::cout.precision(15);
    std::cout << "target: "
              << (target.mode() == rsp::TargetMode::Polar ? "polar theta=" : "equatorial phi=")
              << (target.mode() == rsp::TargetMode::Polar ? target.theta() : target.phi())
              << '\n';
    std::cout << "bloch: (" << r.bob_bloch.x << ", " << r.bob_bloch.y << ", " << r.bob_bloch.z
              << ")\n";
    std::cout << "fidelity: " << r.fidelity << '\n';
    std::cout << "delta: " << r.delta << '\n';
    if (cfg.epsilon < 1.0) {
        std::cout << "delta_deviation: "
                  << rsp::relative_error_deviation(
                         rsp::DensityMatrix::pure(target.state()), r.bob_state)
                  << '\n';
    }
    std::cout << "branch_probs: (" << r.p_plus << ", " << r.p_minus << ")\n";
    return kExitOk;
}

int cmd_sweep(bool polar, bool equatorial, const rsp::FileConfig& file_cfg, bool noise,
              const std::string& output, const std::string& format) {
    if (polar == equatorial) {
        throw CLI::ValidationError("choose exactly one of --polar / --equatorial");
    }
    const rsp::TargetMode mode = polar ? rsp::TargetMode::Polar : rsp::TargetMode::Equatorial;
    rsp::RunConfig cfg = file_cfg.run;
    if (noise) cfg.noise.enabled = true;
    const int n_points = polar ? file_cfg.polar_points : file_cfg.equatorial_points;

    const auto points = rsp::run_sweep(mode, cfg, n_points);
    std::vector<rsp::SweepRecord> records;
    std::vector<double> xs, re, im;
    for (const auto& p : points) {
        records.push_back(rsp::to_record(p));
        xs.push_back(p.angle);
        re.push_back(p.signal.real_part);
        im.push_back(p.signal.imag_part);
    }

    rsp::SweepMetadata meta;
    meta.mode = mode;
    meta.noise = cfg.noise;
    meta.noise_enabled = cfg.noise.enabled;
    meta.epsilon = cfg.epsilon;
    // nominal quadratures: polar real channel is sin(theta), equatorial
    // imag channel is sin(phi); the others are cosines
    const double half_pi = std::numbers::pi / 2.0;
    meta.real_fit = rsp::channel_fit(xs, re, polar ? -half_pi : 0.0);
    meta.imag_fit = rsp::channel_fit(xs, im, polar ? 0.0 : -half_pi);

    const std::string body =
        format == "json" ? rsp::to_json(records, meta) : rsp::to_csv(records);
    if (output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out || !(out << body) || !out.flush()) {
            std::cerr << "error: cannot write " << output << '\n';
            return kExitIo;
        }
        std::cout << records.size() << " records written to " << output << '\n';
        std::cout.precision(15);
        std::cout << "real-signal fit: amplitude=" << meta.real_fit.amplitude
                  << " phase=" << meta.real_fit.phase_offset
                  << " baseline=" << meta.real_fit.baseline << '\n';
    }
    return kExitOk;
}

int cmd_tomo(const ModeArgs& mode, const rsp::FileConfig& file_cfg, bool noise, double sigma,
             unsigned seed) {
    const rsp::QubitTarget target = resolve_target(mode);
    rsp::RunConfig cfg = file_cfg.run;
    if (noise) cfg.noise.enabled = true;
    const rsp::RSPResult r = rsp::run_rsp(target, cfg);

    nlohmann::json j;
    std::mt19937 rng(seed);
    j["expectations"] =
        rsp::pauli_expectations(r.bob_state, 1, sigma, sigma > 0.0 ? &rng : nullptr);
    const rsp::TomographyRecord rec = rsp::tomograph(r.bob_state, 1);
    j["reconstructed"] = matrix_json(rec.reconstructed.matrix());
    j["reconstruction_error"] =
        rec.reconstructed.matrix().max_abs_diff(r.bob_state.matrix());
    j["delta_vs_target"] =
        rsp::relative_error(rsp::DensityMatrix::pure(target.state()), r.bob_state);
    if (cfg.epsilon < 1.0) {
        j["delta_deviation_vs_target"] = rsp::relative_error_deviation(
            rsp::DensityMatrix::pure(target.state()), r.bob_state);
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_compile(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << '\n';
        return kExitIo;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const rsp::PulseSequence seq = rsp::parse_sequence(buf.str());
    const rsp::CompiledSequence c = rsp::compile(seq);
    if (format == "json") {
        nlohmann::json j;
        j["pulses"] = seq.pulses.size();
        j["duration_s"] = c.duration;
        j["unitary"] = matrix_json(c.unitary);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << seq.pulses.size() << " pulses, duration " << c.duration << " s\n";
        std::cout << "paper order: " << rsp::format_sequence(seq, rsp::Notation::PaperOrder)
                  << '\n';
        print_matrix(std::cout, c.unitary);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NMR remote state preparation simulation lab"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")
        ->configurable(false);

    auto* verify = app.add_subcommand("verify", "check all pulse/operator identities");
    bool corrupt = false;
    verify->add_flag("--corrupt-j-convention", corrupt,
                     "test fixture: negate J angles (must fail)")
        ->group("");

    auto* rsp_cmd = app.add_subcommand("rsp", "run one RSP execution");
    ModeArgs rsp_mode;
    add_mode_options(rsp_cmd, rsp_mode);
    bool rsp_noise = false, rsp_projective = false, rsp_ideal = false;
    rsp_cmd->add_flag("--noise", rsp_noise, "enable T1/T2 relaxation");
    rsp_cmd->add_flag("--projective", rsp_projective,
                      "projective two-branch path instead of conditional S");
    rsp_cmd->add_flag("--ideal-gates", rsp_ideal, "ideal gate matrices instead of pulses");

    auto* sweep = app.add_subcommand("sweep", "run a polar or equatorial sweep");
    bool sw_polar = false, sw_equatorial = false, sw_noise = false;
    std::string sw_output, sw_format = "csv";
    sweep->add_flag("--polar", sw_polar, "25-point polar sweep");
    sweep->add_flag("--equatorial", sw_equatorial, "17-point equatorial sweep");
    sweep->add_flag("--noise", sw_noise, "enable T1/T2 relaxation");
    sweep->add_option("--output,-o", sw_output, "output path (default stdout)");
    sweep->add_option("--format", sw_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* tomo = app.add_subcommand("tomo", "tomograph Bob's prepared state");
    ModeArgs tomo_mode;
    add_mode_options(tomo, tomo_mode);
    bool tomo_noise = false;
    double tomo_sigma = 0.0;
    unsigned tomo_seed = 20260823;
    tomo->add_flag("--noise", tomo_noise, "enable T1/T2 relaxation");
    tomo->add_option("--readout-sigma", tomo_sigma, "Gaussian readout noise (demo)");
    tomo->add_option("--seed", tomo_seed, "readout noise seed");

    auto* comp = app.add_subcommand("compile", "compile a pulse file to a unitary");
    std::string comp_path, comp_format = "text";
    comp->add_option("file", comp_path, "pulse program (DSL, time order)")->required();
    comp->add_option("--format", comp_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        rsp::FileConfig file_cfg;
        if (!config_path.empty()) file_cfg = rsp::load_config(config_path);

        if (verify->parsed()) return cmd_verify(corrupt);
        if (rsp_cmd->parsed())
            return cmd_rsp(rsp_mode, file_cfg, rsp_noise, rsp_projective, rsp_ideal);
        if (sweep->parsed())
            return cmd_sweep(sw_polar, sw_equatorial, file_cfg, sw_noise, sw_output, sw_format);
        if (tomo->parsed())
            return cmd_tomo(tomo_mode, file_cfg, tomo_noise, tomo_sigma, tomo_seed);
        if (comp->parsed()) return cmd_compile(comp_path, comp_format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const rsp::ParseError& e) {
        std::cerr << "error: line " << e.line << ", column " << e.column << ": " << e.what()
                  << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
