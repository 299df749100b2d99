#include "eg/rational.hpp"

#include "eg/error.hpp"

#include <algorithm>
#include <cctype>

namespace eg {

namespace {

[[noreturn]] void bad_number(std::string_view text) {
    throw Error(ErrorCode::syntax, "not a number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// GMP reads a leading zero as a base prefix; feed it canonical digits only
Int int_from_digits(std::string_view digits) {
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return Int(0);
    return Int{std::string(digits.substr(first))};
}

Int pow10(unsigned long exp) {
    return boost::multiprecision::pow(Int(10), static_cast<unsigned>(exp));
}

} // namespace

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::invariant: return "invariant";
    case ErrorCode::missing_edge: return "missing-edge";
    case ErrorCode::identical_labels: return "identical-labels";
    case ErrorCode::unknown_label: return "unknown-label";
    case ErrorCode::unknown_state: return "unknown-state";
    case ErrorCode::unknown_treatment: return "unknown-treatment";
    case ErrorCode::unknown_covariate: return "unknown-covariate";
    case ErrorCode::incomplete_graph: return "incomplete-graph";
    case ErrorCode::invalid_epsilon: return "invalid-epsilon";
    case ErrorCode::degenerate_stratum: return "degenerate-stratum";
    case ErrorCode::zero_cell: return "zero-cell";
    case ErrorCode::zero_propensity: return "zero-propensity";
    case ErrorCode::size_cap: return "size-cap";
    case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

Rat rat_from_string(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (rest.empty()) bad_number(text);

    Rat value;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        std::string_view num = rest.substr(0, slash);
        std::string_view den = rest.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad_number(text);
        Int d = int_from_digits(den);
        if (d == 0) throw Error(ErrorCode::syntax, "zero denominator in '" + std::string(text) + "'");
        value = Rat(int_from_digits(num), d);
    } else {
        std::string_view mantissa = rest;
        long exponent = 0;
        if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = rest.substr(0, e);
            std::string_view exp_part = rest.substr(e + 1);
            bool exp_neg = false;
            if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
                exp_neg = exp_part.front() == '-';
                exp_part.remove_prefix(1);
            }
            if (!all_digits(exp_part) || exp_part.size() > 6) bad_number(text);
            exponent = std::stol(std::string(exp_part));
            if (exp_neg) exponent = -exponent;
        }
        std::string_view whole = mantissa;
        std::string_view frac;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            whole = mantissa.substr(0, dot);
            frac = mantissa.substr(dot + 1);
        }
        if (whole.empty() && frac.empty()) bad_number(text);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            bad_number(text);
        std::string digits = std::string(whole) + std::string(frac);
        if (digits.empty()) bad_number(text);
        value = Rat(int_from_digits(digits), pow10(frac.size()));
        if (exponent > 0) value *= pow10(static_cast<unsigned long>(exponent));
        if (exponent < 0) value /= pow10(static_cast<unsigned long>(-exponent));
    }
    return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& value) {
    Int num = boost::multiprecision::numerator(value);
    Int den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string rat_to_decimal(const Rat& value, int digits) {
    bool negative = value < 0;
    Rat scaled = boost::multiprecision::abs(value) * pow10(static_cast<unsigned long>(digits));
    // round half away from zero, then lay out the digit string
    Int units = Int(scaled + Rat(1, 2));
    std::string body = units.str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    if (digits > 0) body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    if (negative && units != 0) body.insert(0, "-");
    return body;
}

std::string rat_display(const Rat& value, int digits) {
    return rat_to_string(value) + " (~" + rat_to_decimal(value, digits) + ")";
}

} // namespace eg
