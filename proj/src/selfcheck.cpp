#include "k3w/selfcheck.hpp"

#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "k3w/family.hpp"
#include "k3w/oracle.hpp"

namespace k3w {

namespace {

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void expect(bool ok, const std::function<std::string()>& describe) {
        ++result_.cases;
        if (!ok && result_.passed) {
            result_.passed = false;
            result_.message = describe();
        }
    }

    SuiteResult run(const std::function<void(Suite&)>& body) {
        try {
            body(*this);
        } catch (const std::exception& e) {
            result_.passed = false;
            result_.message = std::string("exception: ") + e.what();
        }
        return result_;
    }

private:
    SuiteResult result_;
};

std::string str(const Divisor& d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

std::int64_t pick_genus(std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::int64_t>(3, 20)(rng);
}

MukaiVector random_vector(std::mt19937_64& rng, const LatticeConfig& cfg) {
    std::uniform_int_distribution<long> dist(-20, 20);
    return MukaiVector{Integer(dist(rng)), oracle::random_divisor(rng, cfg, 20), Integer(dist(rng))};
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    const std::size_t n = opts.iterations;
    std::vector<SuiteResult> out;

    out.push_back(Suite("lattice_determinant").run([&](Suite& s) {
        for (std::size_t i = 0; i < n; ++i) {
            const LatticeConfig cfg = oracle::random_lattice(rng, pick_genus(rng));
            s.expect(det_check(cfg) == -cfg.discriminant(), [&] {
                return "det != -d for d=" + to_string(cfg.discriminant());
            });
        }
    }));

    out.push_back(Suite("even_lattice_and_gamma").run([&](Suite& s) {
        for (std::size_t i = 0; i < n; ++i) {
            const LatticeConfig cfg = oracle::random_lattice(rng, pick_genus(rng));
            const Divisor D = oracle::random_divisor(rng, cfg);
            s.expect(mpz_even_p(inner(D, D).get_mpz_t()) != 0, [&] { return "odd square for " + str(D); });
            s.expect(dot_H(cfg.unit_degree_divisor()) == 1, [] { return "gamma(H) != 1"; });
        }
    }));

    out.push_back(Suite("bilinear_symmetric").run([&](Suite& s) {
        for (std::size_t i = 0; i < n; ++i) {
            const LatticeConfig cfg = oracle::random_lattice(rng, pick_genus(rng));
            const Divisor a = oracle::random_divisor(rng, cfg);
            const Divisor b = oracle::random_divisor(rng, cfg);
            const Divisor c = oracle::random_divisor(rng, cfg);
            s.expect(inner(a, b) == inner(b, a), [&] { return "asymmetric at " + str(a); });
            s.expect(inner(a + b, c) == inner(a, c) + inner(b, c), [&] { return "not additive at " + str(a); });
        }
    }));

    out.push_back(Suite("mukai_isometries").run([&](Suite& s) {
        for (std::size_t i = 0; i < n; ++i) {
            const LatticeConfig cfg = oracle::random_lattice(rng, pick_genus(rng));
            const MukaiVector v = random_vector(rng, cfg);
            const MukaiVector w = random_vector(rng, cfg);
            const Divisor D = oracle::random_divisor(rng, cfg, 20);
            const Divisor E = oracle::random_divisor(rng, cfg, 20);
            Integer vw = pairing(v, w);
            if (opts.inject_fault) vw += 1;
            s.expect(pairing(tensorize(v, D), tensorize(w, D)) == vw, [] { return "T_D not an isometry"; });
            s.expect(pairing(reflect(v), reflect(w)) == vw, [] { return "delta not an isometry"; });
            s.expect(tensorize(tensorize(v, E), D) == tensorize(v, D + E), [] { return "T_D T_E != T_{D+E}"; });
            s.expect(reflect(reflect(v)) == v, [] { return "delta not an involution"; });
        }
    }));

    out.push_back(Suite("fundamental_unit_brute_force").run([&](Suite& s) {
        for (std::int64_t d = 2; d <= 100; ++d) {
            if (is_perfect_square(Integer(d))) continue;
            const FundamentalUnit u = fundamental_unit(Integer(d));
            const auto bf = oracle::brute_force_unit(d);
            s.expect(u.u0 == bf.first && u.w0 == bf.second,
                     [&] { return "unit mismatch at d=" + std::to_string(d); });
        }
    }));

    out.push_back(Suite("solve_bounded_brute_force").run([&](Suite& s) {
        const std::int64_t box = 200;
        for (std::int64_t d = 2; d <= 40; ++d) {
            if (is_perfect_square(Integer(d))) continue;
            const FundamentalUnit unit = fundamental_unit(Integer(d));
            for (std::int64_t N = -30; N <= 30; ++N) {
                if (N == 0) continue;
                std::set<std::pair<std::int64_t, std::int64_t>> got;
                for (const auto& rep : solve_bounded(Integer(d), Integer(N))) {
                    for (const PellSolution& img : {PellSolution{rep.u, rep.w}, PellSolution{-rep.u, -rep.w},
                                                    PellSolution{rep.u, -rep.w}, PellSolution{-rep.u, rep.w}}) {
                        for (int k = -4; k <= 4; ++k) {
                            const PellSolution p = orbit_power(img, unit, k);
                            if (abs(p.u) <= box && abs(p.w) <= box) got.emplace(p.u.get_si(), p.w.get_si());
                        }
                    }
                }
                s.expect(got == oracle::brute_force_solutions(d, N, box), [&] {
                    return "solution sets differ at d=" + std::to_string(d) + ", N=" + std::to_string(N);
                });
            }
        }
    }));

    out.push_back(Suite("orbit_preserves_constraints").run([&](Suite& s) {
        for (std::size_t i = 0; i < n / 10 + 1; ++i) {
            const FamilyQuery q{5, 2, 2, i % 2 ? Sign::Plus : Sign::Minus, false};
            const Integer d(17 + 16 * static_cast<long>(i % 12));
            const auto mus = LatticeConfig::unit_square_roots(q.g, d);
            if (is_perfect_square(d) || mus.empty()) continue;
            const PellProblem p = pell_problem(q, d, mus.front());
            const ConstrainedSearch cs = search_constrained(p);
            for (const auto& cls : cs.classes) {
                PellSolution cur = orbit_power(cls.seed, cs.unit, static_cast<std::int64_t>(cls.offsets.front()));
                for (int rep = 0; rep < 3; ++rep) {
                    s.expect(p.satisfies(cur), [&] { return "constraint lost at d=" + to_string(d); });
                    cur = orbit_power(cur, cs.unit, static_cast<std::int64_t>(cs.certificate.period));
                }
            }
        }
    }));

    out.push_back(Suite("type_vector_matches_pell").run([&](Suite& s) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t g = std::uniform_int_distribution<std::int64_t>(3, 12)(rng);
            const LatticeConfig cfg = oracle::random_lattice(rng, g, 40);
            const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
            const std::int64_t sv = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
            const Divisor D = oracle::random_divisor(rng, cfg, 6);
            const MukaiVector t = tensorize(MukaiVector{Integer(r), cfg.H(), Integer(sv)}, D);
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                const Integer u = r * D.x() + 2 * (g - 1);
                const Integer w = r * D.y();
                const Integer rhs = Integer(4 * (g - 1)) * (sign_value(sign) * r - r * sv + g - 1);
                const bool pell = u * u - cfg.discriminant() * w * w == rhs;
                s.expect(pell == (t.s0 == sign_value(sign)), [&] { return "type/Pell mismatch at " + str(D); });
            }
        }
    }));

    out.push_back(Suite("witness_identities").run([&](Suite& s) {
        for (std::int64_t g = 3; g <= 7; ++g) {
            for (std::int64_t r = 1; r <= 3; ++r) {
                for (std::int64_t sv = 1; sv <= 3; ++sv) {
                    if (g <= r * sv) continue;
                    for (Sign sign : {Sign::Plus, Sign::Minus}) {
                        const FamilyQuery q{g, r, sv, sign, false};
                        SearchOptions so;
                        so.threads = 1;
                        for (const Witness& w : enumerate(q, 200, so)) {
                            Witness probe = w;
                            if (opts.inject_fault) {
                                probe.F = probe.F + w.D.lattice().H();
                            }
                            const VerificationReport rep = verify_witness(probe, q);
                            s.expect(rep.all_passed(), [&] {
                                return "witness d=" + to_string(w.d) + " failed " + rep.failed().front();
                            });
                            s.expect(verify_bb_corollary(probe, q),
                                     [&] { return "BB corollary failed at d=" + to_string(w.d); });
                        }
                    }
                }
            }
        }
    }));

    return out;
}

}  // namespace k3w
