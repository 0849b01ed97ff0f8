#pragma once

// Algebraic part Z + N(S) + Z of the Mukai lattice.

#include <ostream>

#include "k3w/lattice.hpp"

namespace k3w {

struct MukaiVector {
    Integer r0;
    Divisor c1;
    Integer s0;

    bool operator==(const MukaiVector& other) const {
        return r0 == other.r0 && c1 == other.c1 && s0 == other.s0;
    }
    bool operator!=(const MukaiVector& other) const { return !(*this == other); }
};

// (r, H, s)
MukaiVector polarization_vector(const LatticeConfig& cfg, const Integer& r, const Integer& s);

// (v,w) = c1(v).c1(w) - (r0(v) s0(w) + s0(v) r0(w))
Integer pairing(const MukaiVector& v, const MukaiVector& w);

// Twist by a line bundle: T_D(r, c, s) = (r, c + rD, s + r D^2/2 + D.c).
MukaiVector tensorize(const MukaiVector& v, const Divisor& D);

// delta(r, c, s) = (s, c, r)
MukaiVector reflect(const MukaiVector& v);

bool is_primitive(const MukaiVector& v);

struct MukaiSquare {
    Integer square;          // v^2 = 2(g-1-rs)
    Integer dimension;       // v^2 + 2
    Integer hilbert_length;  // n = g - rs
};

// Throws NegativeDimension when g < rs.
MukaiSquare mukai_square_target(std::int64_t g, const Integer& r, const Integer& s);

std::ostream& operator<<(std::ostream& os, const MukaiVector& v);

}  // namespace k3w
