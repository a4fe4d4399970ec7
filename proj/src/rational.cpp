#include "odo/rational.hpp"

#include <stdexcept>

namespace odo {

Integer pow_int(unsigned long base, unsigned long exponent) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

Rational inv_pow(unsigned long base, unsigned long exponent) {
    Rational q(Integer(1), pow_int(base, exponent));
    q.canonicalize();
    return q;
}

Rational pow(const Rational& x, unsigned long exponent) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), exponent);
    // x is canonical, so num/den stay coprime.
    return Rational(num, den);
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Integer floor_div(const Integer& a, const Integer& m) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return q;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::size_t bit_length(const Integer& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

}  // namespace odo
