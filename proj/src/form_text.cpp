#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "starcong/canonical.hpp"
#include "starcong/errors.hpp"

namespace starcong {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_literal(std::string_view text, const char* why) {
    throw InvalidInput("invalid complex literal '" + std::string(text) + "': " + why);
}

// Parses an optionally signed decimal at the start of s. An empty magnitude
// (a bare sign, as in "-i") yields 1 when allow_unit is set.
double parse_signed(std::string_view text, std::string_view& s, bool allow_unit) {
    double sign = 1.0;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        sign = s.front() == '-' ? -1.0 : 1.0;
        s.remove_prefix(1);
    }
    if (allow_unit && !s.empty() && s.front() == 'i') return sign;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data()) bad_literal(text, "expected a number");
    if (!std::isfinite(v)) bad_literal(text, "non-finite value");
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return sign * v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

}  // namespace

std::string format_real(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
    const double re = z.real(), im = z.imag();
    if (im == 0.0) return format_real(re);
    if (re == 0.0) return format_real(im) + "i";
    return format_real(re) + (im < 0.0 ? "-" : "+") + format_real(std::abs(im)) + "i";
}

Complex parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) bad_literal(text, "empty");
    const double first = parse_signed(text, s, true);
    if (s.empty()) return {first, 0.0};
    if (s == "i") return {0.0, first};
    if (s.front() != '+' && s.front() != '-') bad_literal(text, "unexpected trailing characters");
    const double second = parse_signed(text, s, true);
    if (s != "i") bad_literal(text, "imaginary part must end in 'i'");
    return {first, second};
}

std::string format_form(const CanonicalForm& f) {
    switch (f.family()) {
        case Family::Zero: return "zero";
        case Family::UnitDirectZero:
            return "udz(" + format_complex(f.as<form::UnitDirectZero>().lambda) + ")";
        case Family::UnitPair: {
            const auto& p = f.as<form::UnitPair>();
            return "pair(" + format_complex(p.mu) + "," + format_complex(p.nu) + ")";
        }
        case Family::Hyperbolic:
            return "hyp(" + format_complex(f.as<form::Hyperbolic>().sigma) + ")";
        case Family::DeltaTau: return "delta(" + format_complex(f.as<form::DeltaTau>().tau) + ")";
    }
    return "?";
}

CanonicalForm parse_form(std::string_view text) {
    const std::string_view s = trim(text);
    if (s == "zero") return CanonicalForm::zero();
    const auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
        throw InvalidInput("invalid canonical form '" + std::string(text) + "'");
    const std::string_view name = trim(s.substr(0, open));
    const auto args = split(s.substr(open + 1, s.size() - open - 2), ',');

    auto arity = [&](std::size_t n) {
        if (args.size() != n)
            throw InvalidInput("canonical form '" + std::string(name) + "' takes " +
                               std::to_string(n) + " parameter(s)");
    };
    if (name == "udz") {
        arity(1);
        return CanonicalForm::unit_direct_zero(parse_complex(args[0]));
    }
    if (name == "pair") {
        arity(2);
        return CanonicalForm::unit_pair(parse_complex(args[0]), parse_complex(args[1]));
    }
    if (name == "hyp") {
        arity(1);
        return CanonicalForm::hyperbolic(parse_complex(args[0]));
    }
    if (name == "delta") {
        arity(1);
        return CanonicalForm::delta_tau(parse_complex(args[0]));
    }
    throw InvalidInput("unknown canonical family '" + std::string(name) + "'");
}

Mat2 parse_matrix(std::string_view text) {
    const auto rows = split(trim(text), ';');
    if (rows.size() != 2) throw InvalidInput("matrix must have two rows separated by ';'");
    Mat2 m;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto cols = split(rows[i], ',');
        if (cols.size() != 2) throw InvalidInput("matrix rows must have two entries separated by ','");
        for (std::size_t j = 0; j < 2; ++j) m(i, j) = parse_complex(cols[j]);
    }
    return m;
}

std::string format_matrix(const Mat2& m) {
    return format_complex(m(0, 0)) + "," + format_complex(m(0, 1)) + ";" + format_complex(m(1, 0)) +
           "," + format_complex(m(1, 1));
}

std::ostream& operator<<(std::ostream& os, const CanonicalForm& f) { return os << format_form(f); }

}  // namespace starcong
