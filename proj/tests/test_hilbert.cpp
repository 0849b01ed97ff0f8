#include <doctest.h>

#include <random>

#include "k3w/family.hpp"
#include "k3w/hilbert.hpp"
#include "k3w/oracle.hpp"
#include "support.hpp"

using namespace k3w;

TEST_CASE("canonical class and f^2") {
    const LatticeConfig cfg = make_lattice(5, 17, 1);
    CHECK(HilbertClass::canonical(cfg.H(), 1).f_coeff == 0);
    CHECK(HilbertClass::canonical(cfg.H(), 3).f_coeff == 1);
    CHECK(f_square(1) == 0);
    CHECK(f_square(2) == -2);
    CHECK(f_square(5) == -8);
    CHECK(error_of([&] { HilbertClass::canonical(cfg.H(), 0); }) == Errc::InvalidArgument);
}

TEST_CASE("g = 5, r = s = 2: q = +-4 on S itself") {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
        const Witness w = *member(FamilyQuery{5, 2, 2, sign, false}, 17).witness;
        const BbValues bb = bb_values(w);
        CHECK(bb.eps == 0);
        CHECK(bb.q == 4 * sign_value(sign));
        CHECK(bb.q == inner(w.F, w.F));
        CHECK(bb.b == dot_H(w.F));
        CHECK(verify_bb_corollary(w, w.query));
    }
}

TEST_CASE("g = 6, r = s = 2: F^2 = 6 and q = 4") {
    const FamilyQuery q{6, 2, 2, Sign::Plus, false};
    const auto ws = enumerate(q, 300);
    REQUIRE_FALSE(ws.empty());
    for (const auto& w : ws) {
        CHECK(inner(w.F, w.F) == 6);
        const BbValues bb = bb_values(w);
        CHECK(bb.eps == 1);
        CHECK(bb.q == 4);
        CHECK(verify_bb_corollary(w, q));
    }
}

TEST_CASE("q is quadratic and b ignores f") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coeff(-9, 9);
    for (int i = 0; i < 500; ++i) {
        const LatticeConfig cfg = oracle::random_lattice(rng, 7);
        const Divisor F = oracle::random_divisor(rng, cfg);
        const Integer n = std::uniform_int_distribution<long>(1, 6)(rng);
        const HilbertClass h{F, coeff(rng), n};
        const long a = coeff(rng);
        const HilbertClass ah{a * F, a * h.f_coeff, n};
        REQUIRE(bb_square(ah) == a * a * bb_square(h));
        REQUIRE(bb_square(h) == inner(F, F) + f_square(n) * h.f_coeff * h.f_coeff);
        REQUIRE(bb_pair_with_H(HilbertClass{F, h.f_coeff + 1, n}) == bb_pair_with_H(h));
    }
}

TEST_CASE("corrupted F fails the corollary") {
    Witness w = *member(FamilyQuery{5, 2, 2, Sign::Plus, false}, 17).witness;
    w.F = w.F + w.D.lattice().H();
    CHECK_FALSE(verify_bb_corollary(w, w.query));
    VerificationReport rep;
    record_bb_checks(w, w.query, rep);
    CHECK_FALSE(rep.all_passed());
}
