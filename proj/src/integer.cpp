#include "k3w/integer.hpp"

namespace k3w {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NotAUnit: return "NotAUnit";
        case Errc::CongruenceFailure: return "CongruenceFailure";
        case Errc::SquareDiscriminant: return "SquareDiscriminant";
        case Errc::NotInLattice: return "NotInLattice";
        case Errc::MixedLattices: return "MixedLattices";
        case Errc::NegativeDimension: return "NegativeDimension";
        case Errc::SquareInput: return "SquareInput";
        case Errc::DegenerateEquation: return "DegenerateEquation";
        case Errc::ThresholdUnreachable: return "ThresholdUnreachable";
        case Errc::NoValidMu: return "NoValidMu";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

Integer isqrt(const Integer& n) {
    if (n < 0) {
        throw Error(Errc::InvalidArgument, "isqrt of negative number");
    }
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

int surd_sign(const Integer& a, const Integer& b, const Integer& d) {
    const int sa = sgn(a);
    const int sb = sgn(b);
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // Opposite signs: the larger of a^2 and d*b^2 wins.
    const Integer lhs = a * a;
    const Integer rhs = d * b * b;
    return lhs > rhs ? sa : sb;
}

std::string to_string(const Integer& n) { return n.get_str(10); }

Integer parse_integer(const std::string& text) {
    Integer r;
    if (text.empty() || r.set_str(text, 10) != 0) {
        throw Error(Errc::InvalidArgument, "not an integer: '" + text + "'");
    }
    return r;
}

bool fits_int64(const Integer& n) {
    return n >= Integer(INT64_MIN) && n <= Integer(INT64_MAX);
}

std::int64_t to_int64(const Integer& n) {
    if (!n.fits_slong_p()) {
        throw Error(Errc::InvalidArgument, "integer too large: " + to_string(n));
    }
    return n.get_si();
}

}  // namespace k3w
