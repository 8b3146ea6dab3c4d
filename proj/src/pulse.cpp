#include "rsp/pulse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace rsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxAngle = 4.0 * kPi;

void check_angle(double angle) {
    if (!std::isfinite(angle) || std::abs(angle) > kMaxAngle) {
        throw std::invalid_argument("pulse angle out of range (|angle| <= 4*pi)");
    }
}

// --- pi-expression evaluator -------------------------------------------------

struct ExprToken {
    enum Kind { Number, Pi, Plus, Minus, Star, Slash, End } kind;
    double value = 0.0;
    int column = 0;
};

std::vector<ExprToken> lex_expr(std::string_view text, int line, int col0) {
    std::vector<ExprToken> toks;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const int col = col0 + static_cast<int>(i);
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '+') {
            toks.push_back({ExprToken::Plus, 0.0, col});
            ++i;
        } else if (c == '-') {
            toks.push_back({ExprToken::Minus, 0.0, col});
            ++i;
        } else if (c == '*') {
            toks.push_back({ExprToken::Star, 0.0, col});
            ++i;
        } else if (c == '/') {
            toks.push_back({ExprToken::Slash, 0.0, col});
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
                    text[j] == 'e' || text[j] == 'E' ||
                    ((text[j] == '+' || text[j] == '-') && j > i &&
                     (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
                ++j;
            }
            double v = 0.0;
            const auto res = std::from_chars(text.data() + i, text.data() + j, v);
            if (res.ec != std::errc{} || res.ptr != text.data() + j) {
                throw LexError("bad numeric literal", line, col);
            }
            toks.push_back({ExprToken::Number, v, col});
            i = j;
        } else if (c == 'p' && i + 1 < text.size() && text[i + 1] == 'i') {
            toks.push_back({ExprToken::Pi, kPi, col});
            i += 2;
        } else {
            throw LexError(std::string("unexpected character '") + c + "' in angle", line, col);
        }
    }
    toks.push_back({ExprToken::End, 0.0, col0 + static_cast<int>(text.size())});
    return toks;
}

class ExprParser {
  public:
    ExprParser(std::vector<ExprToken> toks, int line) : toks_(std::move(toks)), line_(line) {}

    double parse() {
        const double v = expr();
        if (peek().kind != ExprToken::End) {
            throw LexError("trailing tokens in angle expression", line_, peek().column);
        }
        return v;
    }

  private:
    const ExprToken& peek() const { return toks_[pos_]; }
    ExprToken take() { return toks_[pos_++]; }

    double expr() {
        double v = term();
        while (peek().kind == ExprToken::Plus || peek().kind == ExprToken::Minus) {
            if (take().kind == ExprToken::Plus)
                v += term();
            else
                v -= term();
        }
        return v;
    }

    double term() {
        double v = factor();
        while (peek().kind == ExprToken::Star || peek().kind == ExprToken::Slash) {
            if (take().kind == ExprToken::Star)
                v *= factor();
            else
                v /= factor();
        }
        return v;
    }

    double factor() {
        bool neg = false;
        while (peek().kind == ExprToken::Minus || peek().kind == ExprToken::Plus) {
            if (take().kind == ExprToken::Minus) neg = !neg;
        }
        const ExprToken t = take();
        if (t.kind != ExprToken::Number && t.kind != ExprToken::Pi) {
            throw LexError("expected number or pi", line_, t.column);
        }
        return neg ? -t.value : t.value;
    }

    std::vector<ExprToken> toks_;
    size_t pos_ = 0;
    int line_;
};

double eval_angle(std::string_view text, int line, int col0) {
    auto toks = lex_expr(text, line, col0);
    if (toks.size() == 1) {
        throw LexError("missing angle", line, col0);
    }
    return ExprParser(std::move(toks), line).parse();
}

std::string shortest_decimal(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

Pulse Pulse::rf(Axis axis, Spin spin, double angle, const PulseConfig& cfg) {
    check_angle(angle);
    Pulse p;
    p.kind = PulseKind::Rf;
    p.axis = axis;
    p.spin = spin;
    p.angle = angle;
    p.duration = cfg.rf_seconds_per_radian * std::abs(angle);
    return p;
}

Pulse Pulse::j_coupling(double angle, const PulseConfig& cfg) {
    check_angle(angle);
    if (cfg.j_coupling_hz <= 0.0) {
        throw std::invalid_argument("J coupling must be positive");
    }
    Pulse p;
    p.kind = PulseKind::JCoupling;
    p.angle = angle;
    p.duration = std::abs(angle) / (2.0 * kPi * cfg.j_coupling_hz);
    return p;
}

double PulseSequence::total_duration() const {
    double t = 0.0;
    for (const Pulse& p : pulses) t += p.duration;
    return t;
}

double parse_angle(std::string_view text) { return eval_angle(text, 1, 1); }

PulseSequence parse_sequence(std::string_view text, const PulseConfig& cfg) {
    PulseSequence seq;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }

        // split first two tokens; the remainder is the angle expression
        size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        };
        auto word = [&]() -> std::pair<std::string_view, int> {
            skip_ws();
            const size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            return {line.substr(start, i - start), static_cast<int>(start) + 1};
        };

        const auto [axis_tok, axis_col] = word();
        if (axis_tok.empty()) continue;  // blank or comment-only line

        bool bar = false;
        bool is_j = false;
        Axis axis = Axis::X;
        if (axis_tok == "J") {
            is_j = true;
        } else if (axis_tok == "X" || axis_tok == "Xbar") {
            axis = Axis::X;
            bar = axis_tok == "Xbar";
        } else if (axis_tok == "Y" || axis_tok == "Ybar") {
            axis = Axis::Y;
            bar = axis_tok == "Ybar";
        } else if (axis_tok == "Z" || axis_tok == "Zbar") {
            axis = Axis::Z;
            bar = axis_tok == "Zbar";
        } else {
            throw LexError("unknown pulse token '" + std::string(axis_tok) + "'", line_no,
                           axis_col);
        }

        const auto [target_tok, target_col] = word();
        if (target_tok.empty()) {
            throw LexError("missing target", line_no, static_cast<int>(line.size()) + 1);
        }
        Spin spin = Spin::A;
        if (is_j) {
            if (target_tok != "AB") {
                throw TargetError("J pulses address the AB pair, got '" +
                                      std::string(target_tok) + "'",
                                  line_no, target_col);
            }
        } else if (target_tok == "A") {
            spin = Spin::A;
        } else if (target_tok == "B") {
            spin = Spin::B;
        } else {
            throw TargetError("rf target must be A or B, got '" + std::string(target_tok) + "'",
                              line_no, target_col);
        }

        skip_ws();
        const int angle_col = static_cast<int>(i) + 1;
        double angle = eval_angle(line.substr(i), line_no, angle_col);
        if (bar) angle = -angle;
        if (!std::isfinite(angle) || std::abs(angle) > kMaxAngle) {
            throw UnitError("angle out of range (|angle| <= 4*pi)", line_no, angle_col);
        }

        seq.pulses.push_back(is_j ? Pulse::j_coupling(angle, cfg)
                                  : Pulse::rf(axis, spin, angle, cfg));
    }
    return seq;
}

std::string format_angle(double angle) {
    if (angle == 0.0) return "0";
    // rational multiple of pi, accepted only if reparsing is bit-exact
    for (int q = 1; q <= 48; ++q) {
        const double p_real = angle * q / kPi;
        const long p = std::lround(p_real);
        if (p == 0 || std::abs(p_real - static_cast<double>(p)) * kPi / q > 1e-12) continue;
        const long g = std::gcd(std::abs(p), static_cast<long>(q));
        const long pn = p / g, qn = q / g;
        std::string s;
        if (pn == 1)
            s = "pi";
        else if (pn == -1)
            s = "-pi";
        else
            s = std::to_string(pn) + "*pi";
        if (qn != 1) s += "/" + std::to_string(qn);
        if (parse_angle(s) == angle) return s;
    }
    return shortest_decimal(angle);
}

namespace {

std::string pulse_token(const Pulse& p, bool barred) {
    if (p.kind == PulseKind::JCoupling) return "J";
    std::string t;
    switch (p.axis) {
        case Axis::X: t = "X"; break;
        case Axis::Y: t = "Y"; break;
        case Axis::Z: t = "Z"; break;
    }
    if (barred) t += "bar";
    return t;
}

std::string pulse_text(const Pulse& p) {
    // negative rf angles render with the bar token; J angles stay signed
    const bool bar = p.kind == PulseKind::Rf && p.angle < 0.0;
    const double a = bar ? -p.angle : p.angle;
    const std::string target =
        p.kind == PulseKind::JCoupling ? "AB" : (p.spin == Spin::A ? "A" : "B");
    return pulse_token(p, bar) + " " + target + " " + format_angle(a);
}

}  // namespace

std::string format_sequence(const PulseSequence& seq, Notation notation) {
    std::string out;
    if (notation == Notation::TimeOrder) {
        for (const Pulse& p : seq.pulses) {
            out += pulse_text(p);
            out += '\n';
        }
    } else {
        for (auto it = seq.pulses.rbegin(); it != seq.pulses.rend(); ++it) {
            if (!out.empty()) out += " · ";
            out += pulse_text(*it);
        }
    }
    return out;
}

ComplexMatrix pulse_unitary(const Pulse& p) {
    if (p.kind == PulseKind::JCoupling) {
        // exp(-i angle (sigma_z x sigma_z) / 4), diagonal in the product basis
        const cplx same = std::exp(cplx{0.0, -p.angle / 4.0});
        const cplx diff = std::exp(cplx{0.0, p.angle / 4.0});
        ComplexMatrix u(4);
        u(0, 0) = same;
        u(1, 1) = diff;
        u(2, 2) = diff;
        u(3, 3) = same;
        return u;
    }
    const double c = std::cos(p.angle / 2.0);
    const double s = std::sin(p.angle / 2.0);
    const ComplexMatrix* sigma = nullptr;
    switch (p.axis) {
        case Axis::X: sigma = &sigma_x(); break;
        case Axis::Y: sigma = &sigma_y(); break;
        case Axis::Z: sigma = &sigma_z(); break;
    }
    const ComplexMatrix u2 =
        identity2().scaled(c) + sigma->scaled(cplx{0.0, -s});
    return apply_to_spin(u2, p.spin);
}

CompiledSequence compile(const PulseSequence& seq) {
    CompiledSequence out;
    out.unitary = ComplexMatrix::identity(4);
    for (const Pulse& p : seq.pulses) {
        out.unitary = pulse_unitary(p) * out.unitary;
        out.duration += p.duration;
    }
    return out;
}

PulseSequence concat(const PulseSequence& first, const PulseSequence& then) {
    PulseSequence out = first;
    out.pulses.insert(out.pulses.end(), then.pulses.begin(), then.pulses.end());
    out.name = first.name.empty() ? then.name : first.name + "+" + then.name;
    return out;
}

}  // namespace rsp
