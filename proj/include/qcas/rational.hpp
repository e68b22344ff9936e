#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qcas {

// All arithmetic in the workbench is exact: arbitrary-precision rationals
// backed by GMP. No floating point anywhere.
using Rat = mpq_class;
using Int = mpz_class;

// Errors carry a category used by the CLI to pick an exit code.
struct QcasError : std::runtime_error {
    std::string category;
    QcasError(std::string cat, const std::string& msg)
        : std::runtime_error(msg), category(std::move(cat)) {}
};

inline QcasError validation_error(const std::string& msg) { return QcasError("validation", msg); }
inline QcasError usage_error(const std::string& msg) { return QcasError("usage", msg); }

// "p" or "p/q" with optional leading '-'; canonicalized, q > 0.
Rat rat_from_string(const std::string& s);

// Lowest terms, q > 0, "p" when q == 1, "p/q" otherwise.
std::string rat_to_string(const Rat& x);

// x^e for integer e (e < 0 requires x != 0).
Rat rat_pow(const Rat& x, long e);

inline Rat binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

// gmpxx has no long long constructors; this platform's long is 64-bit
static_assert(sizeof(long) == sizeof(long long));
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }
inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }

}  // namespace qcas
