#include "rollpack/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rollpack {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rational(std::string_view text) {
    // trim surrounding whitespace
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rat value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        Int n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("rational with zero denominator: " + std::string(text));
        value = rat(n, d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ipart = text.substr(0, dot);
        std::string_view fpart = text.substr(dot + 1);
        if (ipart.empty()) ipart = "0";
        if (!all_digits(ipart) || !all_digits(fpart))
            throw std::invalid_argument("malformed decimal literal: " + std::string(text));
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fpart.size());
        Int n = Int(std::string(ipart), 10) * scale + Int(std::string(fpart), 10);
        value = rat(n, scale);
    } else {
        if (!all_digits(text))
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        value = Rat(Int(std::string(text), 10));
    }
    if (negative) value = -value;
    return value;
}

std::string to_string(const Rat& r) {
    return r.get_str();
}

double to_double(const Rat& r) {
    return r.get_d();
}

Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

}  // namespace rollpack
