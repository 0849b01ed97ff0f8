#include "k3w/lattice.hpp"

#include <numeric>

namespace k3w {

LatticeConfig LatticeConfig::make(std::int64_t g, const Integer& d, std::int64_t mu) {
    if (g < 3) {
        throw Error(Errc::InvalidArgument, "genus must be >= 3, got " + std::to_string(g));
    }
    if (d < 1) {
        throw Error(Errc::InvalidArgument, "d must be positive, got " + to_string(d));
    }
    const std::int64_t m = 2 * g - 2;
    const std::int64_t mu_norm = mod_floor(mu, m);
    if (std::gcd(mu_norm, m) != 1) {
        throw Error(Errc::NotAUnit, "mu=" + std::to_string(mu) + " is not a unit mod " +
                                        std::to_string(m));
    }
    const Integer four_g1 = Integer(2 * m);
    if (mod_floor(Integer(mu_norm) * mu_norm - d, four_g1) != 0) {
        throw Error(Errc::CongruenceFailure, "mu^2 != d mod " + to_string(four_g1) +
                                                 " (mu=" + std::to_string(mu) +
                                                 ", d=" + to_string(d) + ")");
    }
    auto state = std::make_shared<const State>(State{g, d, mu_norm, is_perfect_square(d)});
    return LatticeConfig(std::move(state));
}

LatticeConfig make_lattice(std::int64_t g, const Integer& d, std::int64_t mu) {
    return LatticeConfig::make(g, d, mu);
}

std::vector<std::int64_t> LatticeConfig::unit_square_roots(std::int64_t g, const Integer& d) {
    std::vector<std::int64_t> roots;
    if (g < 3) return roots;
    const std::int64_t m = 2 * g - 2;
    const std::int64_t dm = to_int64(mod_floor(d, Integer(2 * m)));
    for (std::int64_t mu = 1; mu < m; ++mu) {
        if (std::gcd(mu, m) != 1) continue;
        if (mod_floor(mu * mu - dm, 2 * m) == 0) roots.push_back(mu);
    }
    return roots;
}

std::array<std::array<Integer, 2>, 2> LatticeConfig::gram() const {
    const Divisor e1 = H();
    const Divisor e2 = second_basis();
    return {{{inner(e1, e1), inner(e1, e2)}, {inner(e2, e1), inner(e2, e2)}}};
}

Divisor LatticeConfig::H() const { return Divisor(*this, Integer(h_square()), Integer(0)); }

Divisor LatticeConfig::G() const { return Divisor(*this, Integer(0), Integer(h_square())); }

Divisor LatticeConfig::zero() const { return Divisor(*this, Integer(0), Integer(0)); }

Divisor LatticeConfig::second_basis() const { return Divisor(*this, Integer(mu()), Integer(1)); }

Divisor LatticeConfig::unit_degree_divisor() const {
    Integer inv;
    const Integer mu_z(mu());
    const Integer m(h_square());
    mpz_invert(inv.get_mpz_t(), mu_z.get_mpz_t(), m.get_mpz_t());
    return Divisor(*this, Integer(1), inv);
}

bool LatticeConfig::same_as(const LatticeConfig& other) const {
    if (state_ == other.state_) return true;
    return state_->g == other.state_->g && state_->mu == other.state_->mu &&
           state_->d == other.state_->d;
}

Divisor divisor(const LatticeConfig& cfg, const Integer& x, const Integer& y) {
    if (mod_floor(x - cfg.mu() * y, Integer(cfg.h_square())) != 0) {
        throw Error(Errc::NotInLattice, "x=" + to_string(x) + " is not mu*y mod " +
                                            std::to_string(cfg.h_square()) +
                                            " for y=" + to_string(y));
    }
    return Divisor(cfg, x, y);
}

namespace {

void require_same(const Divisor& a, const Divisor& b) {
    if (!a.lattice().same_as(b.lattice())) {
        throw Error(Errc::MixedLattices, "divisors belong to different lattices");
    }
}

}  // namespace

Divisor Divisor::operator+(const Divisor& other) const {
    require_same(*this, other);
    return Divisor(cfg_, x_ + other.x_, y_ + other.y_);
}

Divisor Divisor::operator-(const Divisor& other) const {
    require_same(*this, other);
    return Divisor(cfg_, x_ - other.x_, y_ - other.y_);
}

Divisor Divisor::operator-() const { return Divisor(cfg_, -x_, -y_); }

Divisor operator*(const Integer& k, const Divisor& d) { return Divisor(d.cfg_, k * d.x_, k * d.y_); }

std::array<Integer, 2> Divisor::basis_coordinates() const {
    Integer alpha = x_ - cfg_.mu() * y_;
    mpz_divexact_ui(alpha.get_mpz_t(), alpha.get_mpz_t(), static_cast<unsigned long>(cfg_.h_square()));
    return {alpha, y_};
}

bool Divisor::operator==(const Divisor& other) const {
    return cfg_.same_as(other.cfg_) && x_ == other.x_ && y_ == other.y_;
}

Integer inner(const Divisor& a, const Divisor& b) {
    require_same(a, b);
    Integer num = a.x() * b.x() - a.lattice().discriminant() * a.y() * b.y();
    const Integer m(a.lattice().h_square());
    if (!mpz_divisible_p(num.get_mpz_t(), m.get_mpz_t())) {
        // Unreachable for divisors built through divisor().
        throw Error(Errc::NotInLattice, "non-integral intersection number");
    }
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
    return num;
}

const Integer& dot_H(const Divisor& a) { return a.x(); }

Integer det_check(const LatticeConfig& cfg) {
    const auto g = cfg.gram();
    return g[0][0] * g[1][1] - g[0][1] * g[1][0];
}

std::ostream& operator<<(std::ostream& os, const Divisor& d) {
    return os << "(" << d.x() << "H + " << d.y() << "G)/" << d.lattice().h_square();
}

}  // namespace k3w
