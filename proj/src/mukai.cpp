#include "k3w/mukai.hpp"

namespace k3w {

MukaiVector polarization_vector(const LatticeConfig& cfg, const Integer& r, const Integer& s) {
    return MukaiVector{r, cfg.H(), s};
}

Integer pairing(const MukaiVector& v, const MukaiVector& w) {
    return inner(v.c1, w.c1) - (v.r0 * w.s0 + v.s0 * w.r0);
}

MukaiVector tensorize(const MukaiVector& v, const Divisor& D) {
    Integer half_square = inner(D, D);
    // N(S) is even, so the division is exact.
    mpz_divexact_ui(half_square.get_mpz_t(), half_square.get_mpz_t(), 2);
    return MukaiVector{v.r0, v.c1 + v.r0 * D, v.s0 + v.r0 * half_square + inner(D, v.c1)};
}

MukaiVector reflect(const MukaiVector& v) { return MukaiVector{v.s0, v.c1, v.r0}; }

bool is_primitive(const MukaiVector& v) {
    const auto coords = v.c1.basis_coordinates();
    Integer g = gcd(v.r0, v.s0);
    g = gcd(g, coords[0]);
    g = gcd(g, coords[1]);
    return g == 1;
}

MukaiSquare mukai_square_target(std::int64_t g, const Integer& r, const Integer& s) {
    const Integer n = Integer(g) - r * s;
    if (n < 0) {
        throw Error(Errc::NegativeDimension, "g=" + std::to_string(g) + " < rs=" + to_string(r * s));
    }
    const Integer square = 2 * (n - 1);
    return MukaiSquare{square, square + 2, n};
}

std::ostream& operator<<(std::ostream& os, const MukaiVector& v) {
    return os << "(" << v.r0 << ", " << v.c1 << ", " << v.s0 << ")";
}

}  // namespace k3w
