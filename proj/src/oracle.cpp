#include "k3w/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>
#include <numeric>

namespace k3w::oracle {

namespace {

Integer from_u128(unsigned __int128 v) {
    Integer out(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    out <<= 64;
    out += Integer(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return out;
}

void require_nonsquare(std::int64_t d) {
    if (d < 2) throw Error(Errc::SquareInput, "d must be >= 2");
    if (is_perfect_square(Integer(d))) throw Error(Errc::SquareInput, "d is a perfect square");
}

// Bit w % m is set when d w^2 + 1 is a square mod m.
struct ResidueSieve {
    std::uint64_t m;
    std::vector<bool> ok;
    std::uint64_t pos = 0;
    ResidueSieve(std::uint64_t mod, std::int64_t d) : m(mod), ok(mod) {
        std::vector<bool> square(mod);
        for (std::uint64_t k = 0; k < mod; ++k) square[k * k % mod] = true;
        const auto dm = static_cast<std::uint64_t>(d) % mod;
        for (std::uint64_t w = 0; w < mod; ++w) ok[w] = square[(dm * (w * w % mod) + 1) % mod];
    }
    bool advance() {
        if (++pos == m) pos = 0;
        return ok[pos];
    }
};

}  // namespace

std::optional<std::pair<Integer, Integer>> brute_force_unit_upto(std::int64_t d, std::uint64_t w_limit) {
    using u128 = unsigned __int128;
    require_nonsquare(d);
    ResidueSieve s64(64, d), s63(63, d), s65(65, d), s11(11, d);
    for (std::uint64_t w = 1; w <= w_limit; ++w) {
        // Evaluate every sieve so their positions stay in step with w.
        const bool a = s64.advance(), b = s63.advance(), c = s65.advance(), e = s11.advance();
        if (!(a && b && c && e)) continue;
        const u128 target = static_cast<u128>(d) * w * w + 1;
        auto u = static_cast<u128>(std::sqrt(static_cast<long double>(target)));
        while (u * u > target) --u;
        while ((u + 1) * (u + 1) <= target) ++u;
        if (u * u == target) return std::pair{from_u128(u), Integer(static_cast<unsigned long>(w))};
    }
    return std::nullopt;
}

std::pair<Integer, Integer> brute_force_unit(std::int64_t d) {
    return *brute_force_unit_upto(d, std::numeric_limits<std::uint64_t>::max());
}

std::pair<Integer, Integer> chakravala_unit(std::int64_t d) {
    require_nonsquare(d);
    const Integer D(d);
    Integer a = isqrt(D);
    if ((a + 1) * (a + 1) - D < D - a * a) a += 1;
    Integer b = 1;
    Integer k = a * a - D;
    const std::int64_t root = to_int64(isqrt(D));
    while (k != 1) {
        const Integer ak = abs(k);
        // m > 0 with k | a + b m, minimising |m^2 - d|.
        Integer best_m = 0;
        Integer best = -1;
        for (std::int64_t m = 1; m <= 2 * root + to_int64(ak) + 1; ++m) {
            if ((a + b * m) % ak != 0) continue;
            const Integer gap = abs(Integer(m * m - d));
            if (best < 0 || gap < best) {
                best = gap;
                best_m = m;
            }
        }
        const Integer na = (a * best_m + D * b) / ak;
        const Integer nb = (a + b * best_m) / ak;
        k = (best_m * best_m - D) / k;
        a = abs(na);
        b = abs(nb);
    }
    return {a, b};
}

std::set<std::pair<std::int64_t, std::int64_t>> brute_force_solutions(std::int64_t d, std::int64_t N,
                                                                      std::int64_t box) {
    std::set<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t w = -box; w <= box; ++w) {
        const std::int64_t sq = N + d * w * w;
        if (sq < 0) continue;
        auto u = static_cast<std::int64_t>(std::sqrt(static_cast<double>(sq)));
        while (u * u > sq) --u;
        while ((u + 1) * (u + 1) <= sq) ++u;
        if (u * u != sq || u > box) continue;
        out.emplace(u, w);
        out.emplace(-u, w);
    }
    return out;
}

LatticeConfig random_lattice(std::mt19937_64& rng, std::int64_t g, std::int64_t max_t) {
    const std::int64_t m = 2 * g - 2;
    std::uniform_int_distribution<std::int64_t> mu_dist(0, m - 1);
    std::int64_t mu = 0;
    do {
        mu = mu_dist(rng);
    } while (std::gcd(mu, m) != 1);
    std::uniform_int_distribution<std::int64_t> t_dist(0, max_t);
    const std::int64_t d = mu * mu + 2 * m * t_dist(rng);
    return make_lattice(g, Integer(d), mu);
}

Divisor random_divisor(std::mt19937_64& rng, const LatticeConfig& cfg, std::int64_t bound) {
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    const Integer y(dist(rng));
    const Integer x = cfg.mu() * y + Integer(dist(rng)) * cfg.h_square();
    return divisor(cfg, x, y);
}

}  // namespace k3w::oracle
