#pragma once

// Beauville-Bogomolov form on the sublattice N(S) + Zf of H^2(S[n], Z),
// where f is orthogonal to H^2(S, Z) and f^2 = -2(n-1).

#include "k3w/lattice.hpp"

namespace k3w {

struct FamilyQuery;
struct VerificationReport;
struct Witness;

struct HilbertClass {
    Divisor F_part;
    Integer f_coeff;  // coefficient of f
    Integer n;        // length of the subschemes, n >= 1

    // h_1 = F + eps f with eps = 0 for n = 1 and eps = 1 otherwise.
    static HilbertClass canonical(const Divisor& F, const Integer& n);
};

Integer f_square(const Integer& n);

// q(h) = F^2 - 2(n-1) c^2
Integer bb_square(const HilbertClass& h);

// b(h, H) = F.H
Integer bb_pair_with_H(const HilbertClass& h);

struct BbValues {
    Integer eps;
    Integer q;
    Integer b;
};

BbValues bb_values(const Witness& w);

// Appends "bb_square" and "bb_pairing" checks.
void record_bb_checks(const Witness& w, const FamilyQuery& query, VerificationReport& report);

// q(h_1) = +-2r (+-2s for the tilde family) and b(h_1, H) = r mu y mod 2g-2.
bool verify_bb_corollary(const Witness& w, const FamilyQuery& query);

}  // namespace k3w
