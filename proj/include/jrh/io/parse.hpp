#pragma once
#include "jrh/errors.hpp"
#include "jrh/numeric/big.hpp"

#include <cctype>
#include <complex>
#include <string>
#include <vector>

namespace jrh {

namespace detail {

/// Exact value of one unsigned term: "p/q", "12", "0.75" or "1e-5".
inline Rational parse_term(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational p = parse_term(s.substr(0, slash)), q = parse_term(s.substr(slash + 1));
        if (q == 0) throw InvalidInput("zero denominator in '" + s + "'");
        return p / q;
    }
    size_t i = 0;
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            any = true;
            if (seen_dot) --scale;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any) throw InvalidInput("malformed number '" + s + "'");
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw InvalidInput("malformed number '" + s + "'");
        std::string ex = s.substr(i + 1);
        if (ex.empty()) throw InvalidInput("malformed exponent in '" + s + "'");
        size_t pos = 0;
        long e = 0;
        try {
            e = std::stol(ex, &pos);
        } catch (const std::exception&) {
            throw InvalidInput("malformed exponent in '" + s + "'");
        }
        if (pos != ex.size() || e > 100000 || e < -100000) throw InvalidInput("malformed exponent in '" + s + "'");
        scale += e;
    }
    // a leading zero would make the integer constructor read octal
    size_t nz = digits.find_first_not_of('0');
    BigInt m(nz == std::string::npos ? std::string("0") : digits.substr(nz));
    BigInt ten = 10;
    BigInt p = boost::multiprecision::pow(ten, static_cast<unsigned>(scale < 0 ? -scale : scale));
    return scale >= 0 ? Rational(m * p) : Rational(m, p);
}

}  // namespace detail

/// Exact rational from a decimal expression such as "-0.7", "-7/10",
/// "-70+1e-5" or "-70+1e-5+1e-10": signed terms added left to right.
inline Rational parse_rational(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw InvalidInput("empty number");
    Rational total = 0;
    size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw InvalidInput("malformed number '" + in + "'");
        }
        size_t j = i;
        // a sign right after an exponent marker belongs to the exponent
        while (j < s.size() && !((s[j] == '+' || s[j] == '-') && j > i && s[j - 1] != 'e' && s[j - 1] != 'E')) ++j;
        Rational t = detail::parse_term(s.substr(i, j - i));
        total += sign > 0 ? t : Rational(-t);
        i = j;
        first = false;
    }
    return total;
}

/// Canonical text of a rational: "p/q" or "p".
inline std::string rational_text(const Rational& q) { return q.str(); }

/// "re,im" or "re" as a complex double.
inline std::complex<double> parse_point(const std::string& s) {
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InvalidInput("malformed point '" + s + "', expected re,im");
    }
}

/// Comma separated list of doubles.
inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    size_t i = 0;
    while (i <= s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        std::string tok = s.substr(i, j - i);
        if (!tok.empty()) {
            try {
                size_t pos = 0;
                out.push_back(std::stod(tok, &pos));
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw InvalidInput("malformed number '" + tok + "' in list");
            }
        }
        i = j + 1;
    }
    return out;
}

}  // namespace jrh
