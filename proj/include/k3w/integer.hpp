#pragma once

// Arbitrary-precision integer helpers and the library-wide error type.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace k3w {

using Integer = mpz_class;

enum class Errc {
    InvalidArgument,
    NotAUnit,
    CongruenceFailure,
    SquareDiscriminant,
    NotInLattice,
    MixedLattices,
    NegativeDimension,
    SquareInput,
    DegenerateEquation,
    ThresholdUnreachable,
    NoValidMu,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Least nonnegative residue of a mod m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Sign of a + b*sqrt(d) for non-square d > 0.
int surd_sign(const Integer& a, const Integer& b, const Integer& d);

std::string to_string(const Integer& n);
Integer parse_integer(const std::string& text);

// Throws InvalidArgument when n does not fit.
std::int64_t to_int64(const Integer& n);
bool fits_int64(const Integer& n);

}  // namespace k3w
