#include "qcas/rational.hpp"

#include <cctype>

namespace qcas {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string t = s;
    // validate shape: [-]digits[/digits]
    size_t i = 0;
    if (t[i] == '-' || t[i] == '+') ++i;
    size_t digits = 0;
    while (i < t.size() && isdigit((unsigned char)t[i])) { ++i; ++digits; }
    if (digits == 0) throw std::invalid_argument("bad rational literal: " + s);
    if (i < t.size()) {
        if (t[i] != '/') throw std::invalid_argument("bad rational literal: " + s);
        ++i;
        size_t den = 0;
        while (i < t.size() && isdigit((unsigned char)t[i])) { ++i; ++den; }
        if (den == 0 || i != t.size()) throw std::invalid_argument("bad rational literal: " + s);
    }
    Rat x(t);
    if (x.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    x.canonicalize();
    return x;
}

std::string rat_to_string(const Rat& x) {
    Rat y = x;
    y.canonicalize();
    return y.get_str();
}

Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? (unsigned long)(-e) : (unsigned long)e;
    if (inv && x == 0) throw std::invalid_argument("0 cannot be raised to a negative power");
    Rat num, den;
    mpz_pow_ui(num.get_num_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(num.get_den_mpz_t(), x.get_den_mpz_t(), k);
    num.canonicalize();
    if (inv) return Rat(1) / num;
    return num;
}

}  // namespace qcas
