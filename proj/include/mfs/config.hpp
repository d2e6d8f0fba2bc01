#pragma once

// Flat key/value problem configuration.
//
//   document   := { line }
//   line       := [ key '=' value ] [ '#' comment ]
//   key        := R | alpha | rho | N | boundary.kind | boundary.kernel
//               | boundary.P_radius | boundary.P_angle | boundary.expression
//   angle      := number [ 'deg' ] | [ number [ '*' ] ] 'pi' [ '/' number ]
//   expression := [ sign ] term { sign term }
//   term       := number [ '*' trig ] | trig | number '*' 'pi' | 'pi'
//   trig       := ( 'cos' | 'sin' ) '(' [ integer [ '*' ] ] 'theta' ')'
//
// boundary.kind is `pulse` (needs kernel, P_radius, P_angle) or `analytic`
// (needs expression).  Kernels: `exp_sqrt` for e^{-αr}/√r, `gauss` for e^{-r²}.

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mfs/errors.hpp"
#include "mfs/problem.hpp"

namespace mfs {

/// One c·cos(kθ), c·sin(kθ) or constant term.
struct TrigTerm {
    enum Kind { Constant, Cos, Sin } kind = Constant;
    int k = 0;
    double coef = 0;
};

namespace detail {

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class Lexer {
public:
    Lexer(std::string text, int line) : s_(std::move(text)), line_(line) {}

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() {
        skip();
        return pos_ >= s_.size();
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(const std::string& w) {
        skip();
        if (s_.compare(pos_, w.size(), w) != 0) return false;
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
        pos_ = end;
        return true;
    }
    bool at_number() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }
    double number() {
        skip();
        const char* b = s_.data() + pos_;
        double v = 0;
        const auto [p, ec] = std::from_chars(b, s_.data() + s_.size(), v);
        if (ec != std::errc() || p == b) fail("expected a number");
        pos_ += static_cast<std::size_t>(p - b);
        return v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(line_, msg + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    int line_;
};

}  // namespace detail

/// Parses an angle such as `1.0472`, `60 deg`, `pi/3`, `2*pi/3`.
inline double parse_angle(const std::string& text, int line = 0) {
    using boost::math::constants::pi;
    detail::Lexer lx(text, line);
    double v = 1;
    bool has_number = false;
    if (lx.at_number()) {
        v = lx.number();
        has_number = true;
    }
    if (lx.accept_word("deg")) {
        if (!has_number) lx.fail("degree value needs a number");
        v *= pi<double>() / 180;
    } else {
        const bool star = lx.accept('*');
        if (lx.accept_word("pi")) {
            v *= pi<double>();
            if (lx.accept('/')) v /= lx.number();
        } else if (star || !has_number) {
            lx.fail("malformed angle");
        }
    }
    if (!lx.eof()) lx.fail("trailing characters in angle");
    return v;
}

/// Parses the analytic boundary expression into trigonometric terms.
inline std::vector<TrigTerm> parse_expression(const std::string& text, int line = 0) {
    using boost::math::constants::pi;
    detail::Lexer lx(text, line);
    std::vector<TrigTerm> terms;
    if (lx.eof()) lx.fail("empty expression");
    bool first = true;
    while (!lx.eof()) {
        double sign = 1;
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            sign = -1;
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        first = false;
        TrigTerm t;
        double coef = 1;
        bool has_number = false;
        if (lx.at_number()) {
            coef = lx.number();
            has_number = true;
            if (!lx.accept('*')) {
                t.coef = sign * coef;
                terms.push_back(t);
                continue;
            }
        }
        if (lx.accept_word("pi")) {
            t.coef = sign * coef * pi<double>();
            terms.push_back(t);
            continue;
        }
        if (lx.accept_word("cos")) {
            t.kind = TrigTerm::Cos;
        } else if (lx.accept_word("sin")) {
            t.kind = TrigTerm::Sin;
        } else {
            lx.fail(has_number ? "expected cos, sin or pi after '*'" : "expected a term");
        }
        lx.expect('(');
        t.k = 1;
        if (lx.at_number()) {
            const double k = lx.number();
            if (k != std::floor(k) || k < 0) lx.fail("frequency must be a non-negative integer");
            t.k = static_cast<int>(k);
            lx.accept('*');
        }
        if (!lx.accept_word("theta")) lx.fail("expected 'theta'");
        lx.expect(')');
        t.coef = sign * coef;
        terms.push_back(t);
    }
    return terms;
}

inline double eval_terms(const std::vector<TrigTerm>& terms, double theta) {
    double s = 0;
    for (const auto& t : terms) {
        switch (t.kind) {
            case TrigTerm::Constant: s += t.coef; break;
            case TrigTerm::Cos: s += t.coef * std::cos(t.k * theta); break;
            case TrigTerm::Sin: s += t.coef * std::sin(t.k * theta); break;
        }
    }
    return s;
}

inline AnalyticBoundary analytic_boundary(const std::string& expression, int line = 0) {
    auto terms = parse_expression(expression, line);
    return {[terms](double th) { return eval_terms(terms, th); }, expression};
}

struct ProblemConfig {
    ProblemSpec spec;
    std::map<std::string, std::string> values;
};

/// Parses a configuration document and builds a validated ProblemSpec.
inline ProblemConfig parse_config(const std::string& text) {
    static const std::vector<std::string> known = {"R", "alpha", "rho", "N", "boundary.kind", "boundary.kernel",
                                                   "boundary.P_radius", "boundary.P_angle", "boundary.expression"};
    std::map<std::string, std::string> kv;
    std::map<std::string, int> at;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
        const std::string key = detail::trim(body.substr(0, eq));
        const std::string value = detail::trim(body.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(line, "unknown key '" + key + "'");
        if (kv.count(key)) throw ConfigError(line, "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(line, "empty value for key '" + key + "'");
        kv[key] = value;
        at[key] = line;
    }

    auto need = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError(0, "missing key '" + key + "'");
        return it->second;
    };
    auto num = [&](const std::string& key) {
        const std::string& v = need(key);
        detail::Lexer lx(v, at[key]);
        const bool neg = lx.accept('-');
        double x = lx.number();
        if (!lx.eof()) throw ConfigError(at[key], "key '" + key + "': expected a number, got '" + v + "'");
        return neg ? -x : x;
    };

    const double R = num("R"), alpha = num("alpha"), rho = num("rho");
    const double Nv = num("N");
    if (Nv != std::floor(Nv)) throw ConfigError(at["N"], "key 'N': expected an integer");
    const std::string kind = need("boundary.kind");
    BoundaryData bd;
    if (kind == "pulse") {
        const std::string kernel = need("boundary.kernel");
        PulseKernel k;
        if (kernel == "exp_sqrt") {
            k = exp_sqrt_kernel(alpha);
        } else if (kernel == "gauss") {
            k = gaussian_kernel();
        } else {
            throw ConfigError(at["boundary.kernel"], "key 'boundary.kernel': unknown kernel '" + kernel +
                                                         "' (expected exp_sqrt or gauss)");
        }
        const double pr = num("boundary.P_radius");
        const double pa = parse_angle(need("boundary.P_angle"), at["boundary.P_angle"]);
        bd = PulseBoundary{k, std::polar(pr, pa)};
    } else if (kind == "analytic") {
        bd = analytic_boundary(need("boundary.expression"), at["boundary.expression"]);
    } else {
        throw ConfigError(at["boundary.kind"], "key 'boundary.kind': expected pulse or analytic, got '" + kind + "'");
    }
    ProblemConfig cfg;
    cfg.values = kv;
    try {
        cfg.spec = make_problem(R, alpha, rho, static_cast<int>(Nv), std::move(bd));
    } catch (const ValidationError& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

inline ProblemConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(0, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

}  // namespace mfs
