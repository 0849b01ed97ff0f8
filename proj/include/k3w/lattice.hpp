#pragma once

// Rank-2 Picard lattice of a polarized K3 surface.
//
// N(S) is described by the genus g (H^2 = 2g-2), the discriminant d
// (det N(S) = -d) and a unit mu mod 2g-2 with mu^2 = d mod 4(g-1).
// With G orthogonal to H and G^2 = -(2g-2)d every class is written
//
//     D = (x H + y G) / (2g-2),   x = mu y  (mod 2g-2),
//
// and stored by its integer coordinates (x, y). The intersection form is
// D.E = (x_D x_E - d y_D y_E) / (2g-2).

#include <array>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include "k3w/integer.hpp"

namespace k3w {

class Divisor;

// Immutable, cheaply copyable handle; copies share state.
class LatticeConfig {
public:
    // Validates (g, d, mu). Throws NotAUnit / CongruenceFailure /
    // InvalidArgument. A perfect-square d is accepted and flagged.
    static LatticeConfig make(std::int64_t g, const Integer& d, std::int64_t mu);

    std::int64_t genus() const { return state_->g; }
    const Integer& discriminant() const { return state_->d; }
    std::int64_t mu() const { return state_->mu; }
    // 2g-2 = H^2, also the modulus of the integrality congruence.
    std::int64_t h_square() const { return 2 * state_->g - 2; }
    bool square_discriminant() const { return state_->square; }

    // Gram matrix of the integral basis {H, (mu H + G)/(2g-2)}.
    std::array<std::array<Integer, 2>, 2> gram() const;

    Divisor H() const;
    Divisor G() const;
    Divisor zero() const;

    // Integral basis element (mu H + G)/(2g-2).
    Divisor second_basis() const;

    // Divisor with H.D = 1, witnessing gamma(H) = 1.
    Divisor unit_degree_divisor() const;

    // Two handles describe the same lattice.
    bool same_as(const LatticeConfig& other) const;

    // All mu in [0, 2g-2) that are units with mu^2 = d mod 4(g-1).
    static std::vector<std::int64_t> unit_square_roots(std::int64_t g, const Integer& d);

private:
    struct State {
        std::int64_t g;
        Integer d;
        std::int64_t mu;
        bool square;
    };
    explicit LatticeConfig(std::shared_ptr<const State> s) : state_(std::move(s)) {}
    std::shared_ptr<const State> state_;
};

LatticeConfig make_lattice(std::int64_t g, const Integer& d, std::int64_t mu);

class Divisor {
public:
    const Integer& x() const { return x_; }
    const Integer& y() const { return y_; }
    const LatticeConfig& lattice() const { return cfg_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }

    Divisor operator+(const Divisor& other) const;
    Divisor operator-(const Divisor& other) const;
    Divisor operator-() const;
    friend Divisor operator*(const Integer& k, const Divisor& d);

    // Coordinates (alpha, beta) in the integral basis {H, (mu H + G)/(2g-2)}.
    std::array<Integer, 2> basis_coordinates() const;

    bool operator==(const Divisor& other) const;
    bool operator!=(const Divisor& other) const { return !(*this == other); }

private:
    friend class LatticeConfig;
    friend Divisor divisor(const LatticeConfig&, const Integer&, const Integer&);
    Divisor(LatticeConfig cfg, Integer x, Integer y)
        : cfg_(std::move(cfg)), x_(std::move(x)), y_(std::move(y)) {}

    LatticeConfig cfg_;
    Integer x_;
    Integer y_;
};

// Throws NotInLattice unless x = mu y (mod 2g-2).
Divisor divisor(const LatticeConfig& cfg, const Integer& x, const Integer& y);

// Intersection number. Throws MixedLattices.
Integer inner(const Divisor& a, const Divisor& b);

// D.H, which is the x coordinate.
const Integer& dot_H(const Divisor& a);

// Gram determinant of the integral basis; equals -d.
Integer det_check(const LatticeConfig& cfg);

std::ostream& operator<<(std::ostream& os, const Divisor& d);

}  // namespace k3w
