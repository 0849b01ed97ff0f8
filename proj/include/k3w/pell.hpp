#pragma once

// Pell-type equations u^2 - d w^2 = N with linear residue constraints.
//
// Class representatives come from the continued-fraction (PQa / LMM)
// method, so the cost does not depend on the size of the fundamental unit.
// The unit acts on (u, w) mod M as an invertible 2x2 matrix; exhausting its
// period decides whether a constrained solution exists at all.

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "k3w/integer.hpp"

namespace k3w {

struct PellSolution {
    Integer u;
    Integer w;

    bool operator==(const PellSolution& o) const { return u == o.u && w == o.w; }
    bool operator!=(const PellSolution& o) const { return !(*this == o); }
};

// Canonical order: by |w|, then u.
bool canonical_less(const PellSolution& a, const PellSolution& b);
void canonical_sort(std::vector<PellSolution>& sols);

struct FundamentalUnit {
    Integer d;
    Integer u0;
    Integer w0;
};

// a*u + b*w = c (mod modulus)
struct Congruence {
    Integer modulus;
    Integer a;
    Integer b;
    Integer c;

    bool holds(const PellSolution& s) const;
};

struct PellProblem {
    Integer d;
    Integer N;
    std::vector<Congruence> constraints;
    // Affine substitution recovering the caller's variables:
    // x = (u - offset) / scale, y = w / scale.
    Integer offset = 0;
    Integer scale = 1;

    // Throws SquareInput / DegenerateEquation / InvalidArgument.
    void validate() const;
    Integer residual(const PellSolution& s) const { return s.u * s.u - d * s.w * s.w - N; }
    bool constraints_hold(const PellSolution& s) const;
    bool satisfies(const PellSolution& s) const { return residual(s) == 0 && constraints_hold(s); }
    // Lcm of the constraint moduli (1 when unconstrained).
    Integer modulus() const;
    Integer derived_x(const PellSolution& s) const;
    Integer derived_y(const PellSolution& s) const;
};

// Minimal u0^2 - d w0^2 = 1 from the period of the continued fraction of sqrt(d).
FundamentalUnit fundamental_unit(const Integer& d);

// Minimal solution of u^2 - d w^2 = -1, if the period of sqrt(d) is odd.
std::optional<PellSolution> negative_unit(const Integer& d);

// Length of the period of the continued fraction of sqrt(d).
std::size_t sqrt_period_length(const Integer& d);

// Largest w a class representative can need (the classical bound).
Integer class_bound(const Integer& d, const Integer& N, const FundamentalUnit& unit);

// One solution per solution class (LMM). N != 0.
std::vector<PellSolution> class_representatives(const Integer& d, const Integer& N);

// All (u, w) with 0 <= w <= class_bound, both signs of u, canonical order.
std::vector<PellSolution> solve_bounded(const Integer& d, const Integer& N);

// Multiply u + w sqrt(d) by the unit (direction +1) or its inverse (-1).
PellSolution orbit_step(const PellSolution& s, const FundamentalUnit& unit, int direction);
PellSolution orbit_power(const PellSolution& s, const FundamentalUnit& unit, std::int64_t k);

// Order of the unit's action on (Z/modulus)^2.
std::uint64_t unit_period(const FundamentalUnit& unit, const Integer& modulus);

struct ResidueCertificate {
    Integer modulus;           // lcm of constraint moduli
    std::uint64_t period = 1;  // order of the unit action mod modulus
    std::size_t seeds = 0;     // sign images of class representatives examined
    bool empty = false;        // no seed hits the constraints within one period
};

// Orbit of `seed` under the unit: seed * unit^k satisfies the constraints
// exactly when k mod period is one of `offsets`.
struct ConstrainedClass {
    PellSolution seed;
    std::vector<std::uint64_t> offsets;
};

struct ConstrainedSearch {
    FundamentalUnit unit;
    ResidueCertificate certificate;
    std::vector<ConstrainedClass> classes;  // only seeds with at least one offset
};

ConstrainedSearch search_constrained(const PellProblem& problem);

struct ConstrainedSolutions {
    std::vector<PellSolution> solutions;  // canonical order
    ResidueCertificate certificate;
};

// Constrained solutions seed * unit^k with |k| <= search_depth.
ConstrainedSolutions solve_constrained(const PellProblem& problem, int search_depth);

struct PushResult {
    PellSolution solution;
    std::int64_t steps = 0;   // unit steps walked
    bool sign_flipped = false; // started from (-u, -w)
    int direction = 0;         // orbit direction walked (+1 / -1), 0 if none
};

// Walk the orbit towards u -> -infinity until derived_x <= x_threshold with
// the constraints holding and w != 0. At most max_periods * period steps.
// Throws ThresholdUnreachable.
PushResult push_negative(const PellSolution& start, const PellProblem& problem,
                         const Integer& x_threshold, const FundamentalUnit& unit,
                         int max_periods = 64);
PushResult push_negative(const PellSolution& start, const PellProblem& problem,
                         const Integer& x_threshold, int max_periods = 64);

std::ostream& operator<<(std::ostream& os, const PellSolution& s);

}  // namespace k3w
