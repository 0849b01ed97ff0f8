#include <doctest.h>

#include <random>

#include "k3w/mukai.hpp"
#include "k3w/oracle.hpp"
#include "support.hpp"

using namespace k3w;

TEST_CASE("Mukai pairing") {
    const LatticeConfig g5 = make_lattice(5, 17, 1);
    const MukaiVector v = polarization_vector(g5, 2, 2);
    CHECK(pairing(v, v) == 0);

    CHECK(pairing(MukaiVector{0, g5.zero(), 1}, MukaiVector{1, g5.zero(), 0}) == -1);

    const LatticeConfig g6 = make_lattice(6, 1, 1);
    const MukaiVector v6 = polarization_vector(g6, 2, 2);
    CHECK(pairing(v6, v6) == 2);
}

TEST_CASE("tensorize produces the d = 17 type witnesses") {
    const LatticeConfig cfg = make_lattice(5, 17, 1);
    const MukaiVector v = polarization_vector(cfg, 2, 2);

    const Divisor plus = divisor(cfg, 1, 1);
    const MukaiVector tp = tensorize(v, plus);
    CHECK(tp.r0 == 2);
    CHECK(tp.c1 == cfg.H() + 2 * plus);
    CHECK(tp.s0 == 1);

    const Divisor minus = divisor(cfg, -7, 1);
    const MukaiVector tm = tensorize(v, minus);
    CHECK(tm.c1 == cfg.H() + 2 * minus);
    CHECK(tm.s0 == -1);

    CHECK(tensorize(v, cfg.zero()) == v);
}

TEST_CASE("reflection swaps rank and s") {
    const LatticeConfig cfg = make_lattice(5, 17, 1);
    const MukaiVector v{2, cfg.H(), 1};
    const MukaiVector swapped = reflect(v);
    CHECK(swapped.r0 == 1);
    CHECK(swapped.s0 == 2);
    CHECK(swapped.c1 == cfg.H());
    const MukaiVector fixed{3, cfg.H(), 3};
    CHECK(reflect(fixed) == fixed);
}

TEST_CASE("primitivity") {
    const LatticeConfig cfg = make_lattice(5, 17, 1);
    for (long r = 1; r <= 6; ++r) {
        for (long s = -6; s <= 6; ++s) {
            CHECK(is_primitive(polarization_vector(cfg, r, s)));
        }
    }
    CHECK_FALSE(is_primitive(MukaiVector{2, 2 * cfg.H(), 2}));
    CHECK(is_primitive(MukaiVector{0, cfg.zero(), 1}));
    // (mu H + G)/(2g-2) is a basis vector: primitive even with r = s = 0.
    CHECK(is_primitive(MukaiVector{0, cfg.second_basis(), 0}));
    CHECK_FALSE(is_primitive(MukaiVector{0, 3 * cfg.second_basis(), 6}));
}

TEST_CASE("mukai_square_target") {
    const MukaiSquare a = mukai_square_target(5, 2, 2);
    CHECK(a.square == 0);
    CHECK(a.dimension == 2);
    CHECK(a.hilbert_length == 1);

    const MukaiSquare b = mukai_square_target(6, 2, 2);
    CHECK(b.square == 2);
    CHECK(b.dimension == 4);
    CHECK(b.hilbert_length == 2);

    for (long r = 1; r <= 4; ++r) {
        for (long s = 1; s <= 4; ++s) {
            CHECK(mukai_square_target(r * s + 1, r, s).square == 0);
        }
    }
    CHECK(error_of([] { mukai_square_target(5, 2, 3); }) == Errc::NegativeDimension);
}

TEST_CASE("property: T_D and delta are isometries, T_D T_E = T_{D+E}") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> small(-30, 30);
    for (std::int64_t g : {3, 5, 8, 13}) {
        for (int i = 0; i < 300; ++i) {
            const LatticeConfig cfg = oracle::random_lattice(rng, g);
            const MukaiVector v{small(rng), oracle::random_divisor(rng, cfg), small(rng)};
            const MukaiVector w{small(rng), oracle::random_divisor(rng, cfg), small(rng)};
            const Divisor D = oracle::random_divisor(rng, cfg);
            const Divisor E = oracle::random_divisor(rng, cfg);
            REQUIRE(pairing(tensorize(v, D), tensorize(w, D)) == pairing(v, w));
            REQUIRE(pairing(reflect(v), reflect(w)) == pairing(v, w));
            REQUIRE(tensorize(tensorize(v, E), D) == tensorize(v, D + E));
            REQUIRE(reflect(reflect(v)) == v);
            REQUIRE(tensorize(tensorize(v, D), -D) == v);
        }
    }
}

TEST_CASE("property: twisted s-component is +-1 exactly on the Pell equation") {
    std::mt19937_64 rng(12);
    int hits = 0;
    for (int i = 0; i < 4000; ++i) {
        const std::int64_t g = std::uniform_int_distribution<std::int64_t>(3, 8)(rng);
        const LatticeConfig cfg = oracle::random_lattice(rng, g, 6);
        const long r = std::uniform_int_distribution<long>(1, 3)(rng);
        const long s = std::uniform_int_distribution<long>(1, 3)(rng);
        const Divisor D = oracle::random_divisor(rng, cfg, 3);
        const MukaiVector t = tensorize(polarization_vector(cfg, r, s), D);
        for (int sign : {1, -1}) {
            const Integer u = r * D.x() + 2 * (g - 1);
            const Integer w = r * D.y();
            const Integer rhs = Integer(4 * (g - 1)) * (sign * r - r * s + g - 1);
            const bool on_equation = u * u - cfg.discriminant() * w * w == rhs;
            REQUIRE(on_equation == (t.s0 == sign));
            hits += on_equation;
        }
    }
    CHECK(hits > 0);
}
