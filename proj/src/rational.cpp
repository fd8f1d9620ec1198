#include "kcross/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace kcross {

BigInt choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

namespace {

BigInt parse_integer(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("malformed number: " + text);
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw std::invalid_argument("malformed number: " + text);
        }
    }
    BigInt value(text[0] == '+' ? text.substr(1) : text);
    return value;
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (frac.empty()) return Rational(parse_integer(whole));
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt w = parse_integer(whole);
        BigInt f = parse_integer(frac);
        if (negative) f = -f;
        return Rational(w * scale + f, scale);
    }
    return Rational(parse_integer(text));
}

std::string to_fraction_string(const Rational& q) {
    std::ostringstream out;
    out << numerator_of(q);
    if (denominator_of(q) != 1) out << '/' << denominator_of(q);
    return out.str();
}

std::string to_decimal_string(const Rational& q, int digits) {
    BigInt num = numerator_of(q);
    BigInt den = denominator_of(q);
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    BigInt whole = num / den;
    BigInt rest = num % den;
    std::ostringstream out;
    out << sign << whole;
    if (digits > 0) {
        out << '.';
        for (int i = 0; i < digits; ++i) {
            rest *= 10;
            out << (rest / den);
            rest %= den;
        }
    }
    return out.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational dyadic_floor(const Rational& q) {
    if (q <= 0) throw std::invalid_argument("dyadic_floor requires a positive value");
    Rational p = 1;
    if (q >= 1) return p;
    while (p > q) p /= 2;
    return p;
}

} // namespace kcross
