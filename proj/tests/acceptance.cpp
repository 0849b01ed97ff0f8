// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.
// Every identity is recomputed here from the raw (d, mu, x, y) of each witness
// rather than trusted from the library's own verification report.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "k3w/family.hpp"
#include "k3w/hilbert.hpp"
#include "k3w/lattice.hpp"
#include "k3w/mukai.hpp"
#include "k3w/oracle.hpp"
#include "k3w/pell.hpp"

using namespace k3w;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

// Collects the first few failures and a running count.
class Tally {
public:
    void fail(const std::string& what) {
        ++failures_;
        if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
    }
    void pass() { ++cases_; }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream os;
        os << summary << ", " << cases_ << " cases";
        if (failures_) os << ", " << failures_ << " failures: " << first_;
        return Outcome{failures_ == 0, os.str()};
    }
    void expect(bool ok, const std::string& what) { ok ? pass() : fail(what); }

private:
    std::size_t cases_ = 0;
    std::size_t failures_ = 0;
    std::string first_;
};

std::string describe(const Witness& w) {
    std::ostringstream os;
    const FamilyQuery& q = w.query;
    os << "g=" << q.g << " r=" << q.r << " s=" << q.s << (q.tilde ? " tilde" : "") << " "
       << sign_name(q.sign) << " d=" << w.d << " x=" << w.x << " y=" << w.y;
    return os.str();
}

// Witnesses over g = 3..12, r, s = 1..4, g > rs, both signs, both families.
const std::vector<Witness>& sweep() {
    static const std::vector<Witness> all = [] {
        std::vector<Witness> out;
        for (std::int64_t g = 3; g <= 12; ++g) {
            for (std::int64_t r = 1; r <= 4; ++r) {
                for (std::int64_t s = 1; s <= 4; ++s) {
                    if (g <= r * s) continue;
                    for (bool tilde : {false, true}) {
                        for (Sign sign : {Sign::Plus, Sign::Minus}) {
                            const auto ws = enumerate(FamilyQuery{g, r, s, sign, tilde}, 2000);
                            out.insert(out.end(), ws.begin(), ws.end());
                        }
                    }
                }
            }
        }
        return out;
    }();
    return all;
}

struct Raw {
    Integer m;   // 2g - 2
    Integer Fx;  // F = (Fx H + Fy G)/(2g-2)
    Integer Fy;
    Integer F2;
    Integer D2;
    int sigma;
    std::int64_t lead;
    std::int64_t other;
};

Raw raw_of(const Witness& w) {
    const FamilyQuery& q = w.query;
    Raw r;
    r.m = 2 * q.g - 2;
    r.lead = q.tilde ? q.s : q.r;
    r.other = q.tilde ? q.r : q.s;
    r.sigma = q.sign == Sign::Plus ? 1 : -1;
    r.Fx = r.m + r.lead * w.x;
    r.Fy = r.lead * w.y;
    r.F2 = (r.Fx * r.Fx - w.d * r.Fy * r.Fy) / r.m;
    r.D2 = (w.x * w.x - w.d * w.y * w.y) / r.m;
    return r;
}

Outcome ac1() {
    const std::set<long> expected{17, 33, 41, 57, 73, 89, 113, 129, 161, 177};
    std::set<long> found;
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
        for (const auto& w : enumerate(FamilyQuery{5, 2, 2, sign, false}, 180)) {
            if (w.report.all_passed()) found.insert(to_int64(w.d));
        }
    }
    std::ostringstream os;
    os << "found {";
    bool first = true;
    for (long d : found) {
        os << (first ? "" : ", ") << d;
        first = false;
    }
    os << "}";
    bool contains = true;
    for (long d : expected) {
        if (!found.count(d)) {
            contains = false;
            os << ", missing " << d;
        }
    }
    return Outcome{contains, os.str()};
}

Outcome ac2() {
    Tally t;
    for (const Witness& w : sweep()) {
        const Raw r = raw_of(w);
        const FamilyQuery& q = w.query;
        const std::string id = describe(w);
        t.expect(mod_floor(w.x - w.mu * w.y, r.m) == 0, id + ": x != mu y");
        t.expect(r.F2 == r.m + r.lead * (2 * r.sigma - 2 * r.other), id + ": F^2");
        t.expect(mod_floor(r.Fx - r.lead * w.mu * w.y, r.m) == 0, id + ": F.H");
        // Third component of T_D(lead, H, other) computed by hand.
        const Integer third = r.other + r.lead * r.D2 / 2 + w.x;
        t.expect(third == r.sigma, id + ": twisted vector");
        const LatticeConfig cfg = make_lattice(q.g, w.d, w.mu);
        const MukaiVector v = tensorize(polarization_vector(cfg, r.lead, r.other), divisor(cfg, w.x, w.y));
        t.expect(v.r0 == r.lead && v.c1 == divisor(cfg, r.Fx, r.Fy) && v.s0 == r.sigma,
                 id + ": tensorize");
        const Integer u = r.lead * w.x + 2 * (q.g - 1);
        const Integer wv = r.lead * w.y;
        const Integer N = 4 * (q.g - 1) * Integer(r.sigma * r.lead - q.r * q.s + q.g - 1);
        t.expect(u * u - w.d * wv * wv - N == 0, id + ": pell residual");
        t.expect(w.report.all_passed(), id + ": report");
    }
    std::ostringstream os;
    os << sweep().size() << " witnesses";
    return t.outcome(os.str());
}

Outcome ac3() {
    Tally t;
    for (const Witness& w : sweep()) {
        const Raw r = raw_of(w);
        const Integer n = w.query.g - w.query.r * w.query.s;
        const Integer eps = n == 1 ? 0 : 1;
        const Integer q = r.F2 - 2 * (n - 1) * eps * eps;
        t.expect(q == 2 * r.sigma * r.lead, describe(w) + ": q(h1)");
        t.expect(bb_values(w).q == q, describe(w) + ": bb_values");
    }
    return t.outcome("q(h1) = +-2 lead");
}

Outcome ac4() {
    Tally t;
    for (const Witness& w : sweep()) {
        if (!w.query.isotropic()) continue;
        const Raw r = raw_of(w);
        t.expect(r.F2 == 2 * r.sigma * r.lead, describe(w) + ": F^2");
        t.expect(mod_floor(r.Fx, Integer(r.lead)) == 0, describe(w) + ": F.H mod lead");
    }
    return t.outcome("g = rs + 1");
}

// Expansion of the class representatives: sign images, then orbit steps in both
// directions, at least 3 steps and then until the orbit has left the box for
// good. `max_steps` caps the walk for the 3-step comparison.
std::set<std::pair<std::int64_t, std::int64_t>> expand(std::int64_t d, std::int64_t N, std::int64_t box,
                                                       int max_steps) {
    const FundamentalUnit e = fundamental_unit(d);
    std::set<std::pair<std::int64_t, std::int64_t>> got;
    auto in_box = [&](const PellSolution& p) { return abs(p.u) <= box && abs(p.w) <= box; };
    for (const PellSolution& s0 : solve_bounded(d, N)) {
        for (const PellSolution& s : {s0, PellSolution{-s0.u, -s0.w}, PellSolution{s0.u, -s0.w},
                                      PellSolution{-s0.u, s0.w}}) {
            for (int dir : {1, -1}) {
                PellSolution p = s;
                for (int k = 0; k <= max_steps && (k <= 3 || abs(p.u) <= box || abs(p.w) <= box); ++k) {
                    if (in_box(p)) got.insert({to_int64(p.u), to_int64(p.w)});
                    p = orbit_step(p, e, dir);
                }
            }
        }
    }
    return got;
}

Outcome ac5() {
    Tally t;
    const std::int64_t box = 500;
    std::size_t short_units = 0;
    for (std::int64_t d = 2; d <= 120; ++d) {
        if (is_perfect_square(Integer(d))) continue;
        for (std::int64_t N = -64; N <= 64; ++N) {
            if (N == 0) continue;
            const auto brute = oracle::brute_force_solutions(d, N, box);
            const auto full = expand(d, N, box, 1000);
            const auto three = expand(d, N, box, 3);
            std::ostringstream id;
            id << "d=" << d << " N=" << N;
            t.expect(full == brute, id.str());
            // Three steps never produce anything outside the brute-force set; they
            // fall short only when the unit is small enough for the box to hold
            // more than three steps of one orbit.
            t.expect(std::includes(brute.begin(), brute.end(), three.begin(), three.end()),
                     id.str() + ": 3-step set not contained");
            short_units += three != brute;
        }
    }
    std::ostringstream os;
    os << "d <= 120, |N| <= 64, box 500; " << short_units
       << " pairs need more than 3 steps to fill the box";
    return t.outcome(os.str());
}

Outcome ac6() {
    Tally t;
    // Scanning w one by one is exhaustive up to this bound (a few seconds per d).
    // Beyond it the scan still proves w0 > bound, and the chakravala method,
    // which shares nothing with the continued-fraction code, supplies the value.
    const std::uint64_t scan_limit = 300000000;
    std::size_t scanned = 0;
    std::size_t beyond = 0;
    for (std::int64_t d = 2; d <= 200; ++d) {
        if (is_perfect_square(Integer(d))) continue;
        const FundamentalUnit e = fundamental_unit(d);
        const std::string id = "d=" + std::to_string(d);
        t.expect(e.u0 * e.u0 - d * e.w0 * e.w0 == 1, id + ": not a unit");
        const auto cv = oracle::chakravala_unit(d);
        t.expect(e.u0 == cv.first && e.w0 == cv.second, id + ": chakravala");
        const auto bf = oracle::brute_force_unit_upto(d, scan_limit);
        if (bf) {
            ++scanned;
            t.expect(e.u0 == bf->first && e.w0 == bf->second, id + ": brute force");
        } else {
            ++beyond;
            t.expect(e.w0 > scan_limit, id + ": scan found nothing below w0");
        }
    }
    auto spot = [&](long d, long u, long w) {
        const FundamentalUnit e = fundamental_unit(d);
        t.expect(e.u0 == u && e.w0 == w, "spot d=" + std::to_string(d));
    };
    spot(2, 3, 2);
    spot(5, 9, 4);
    spot(17, 33, 8);
    std::ostringstream os;
    os << "d <= 200; " << scanned << " matched by exhaustive scan, " << beyond
       << " with w0 > " << scan_limit << " matched by chakravala";
    return t.outcome(os.str());
}

Outcome ac7() {
    Tally t;
    std::mt19937_64 rng(7007);
    std::uniform_int_distribution<long> comp(-1000, 1000);
    for (std::int64_t g : {3, 5, 8}) {
        for (int i = 0; i < 1000; ++i) {
            const LatticeConfig cfg = oracle::random_lattice(rng, g);
            const MukaiVector v{comp(rng), oracle::random_divisor(rng, cfg), comp(rng)};
            const MukaiVector w{comp(rng), oracle::random_divisor(rng, cfg), comp(rng)};
            const Divisor D = oracle::random_divisor(rng, cfg);
            const Divisor E = oracle::random_divisor(rng, cfg);
            const std::string id = "g=" + std::to_string(g) + " #" + std::to_string(i);
            // Pairing recomputed from coordinates.
            auto pair = [&](const MukaiVector& a, const MukaiVector& b) {
                const Integer c = (a.c1.x() * b.c1.x() - cfg.discriminant() * a.c1.y() * b.c1.y()) /
                                  cfg.h_square();
                return Integer(c - (a.r0 * b.s0 + a.s0 * b.r0));
            };
            t.expect(pair(v, w) == pairing(v, w), id + ": pairing");
            t.expect(pair(tensorize(v, D), tensorize(w, D)) == pair(v, w), id + ": T_D isometry");
            t.expect(pair(reflect(v), reflect(w)) == pair(v, w), id + ": delta isometry");
            t.expect(tensorize(tensorize(v, E), D) == tensorize(v, D + E), id + ": T_D T_E");
            t.expect(reflect(reflect(v)) == v, id + ": delta involution");
        }
    }
    return t.outcome("g in {3, 5, 8}");
}

Outcome ac8() {
    Tally t;
    const FamilyQuery q{5, 2, 2, Sign::Plus, false};
    const auto chain = witness_chain(q, 17, 1, 10);
    t.expect(chain.size() >= 10, "chain has " + std::to_string(chain.size()) + " witnesses");
    std::set<std::pair<Integer, Integer>> seen;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Witness& w = chain[i];
        const Witness again = make_witness(q, w.d, w.mu, w.x, w.y, w.x_threshold);
        const Raw r = raw_of(w);
        const Integer u = 2 * w.x + 8;
        const Integer wv = 2 * w.y;
        t.expect(again.report.all_passed() && u * u - 17 * wv * wv == 32 && r.F2 == 4 &&
                     mod_floor(w.x - w.y, Integer(8)) == 0,
                 describe(w));
        t.expect(seen.insert({w.x, w.y}).second, describe(w) + ": repeated");
        if (i > 0) t.expect(w.x < chain[i - 1].x, describe(w) + ": x not decreasing");
    }
    t.expect(infinitude(5, 2, 2).infinite, "infinitude");
    return t.outcome(std::to_string(chain.size()) + " witnesses");
}

Outcome ac9() {
    Tally t;
    std::mt19937_64 rng(9009);
    std::uniform_int_distribution<std::int64_t> genus(3, 40);
    for (int i = 0; i < 500; ++i) {
        const LatticeConfig cfg = oracle::random_lattice(rng, genus(rng), 5000);
        const auto gm = cfg.gram();
        const Integer m = cfg.h_square();
        const Integer mu = cfg.mu();
        const Integer c = (mu * mu - cfg.discriminant()) / m;
        const Integer det = m * c - mu * mu;
        t.expect(det == -cfg.discriminant() && det_check(cfg) == det &&
                     gm[0][0] == m && gm[0][1] == mu && gm[1][1] == c,
                 "lattice #" + std::to_string(i));
    }
    for (int i = 0; i < 1000; ++i) {
        const LatticeConfig cfg = oracle::random_lattice(rng, genus(rng), 5000);
        const Divisor D = oracle::random_divisor(rng, cfg, 1000);
        const Integer num = D.x() * D.x() - cfg.discriminant() * D.y() * D.y();
        t.expect(mod_floor(num, cfg.h_square()) == 0 && mod_floor(num / cfg.h_square(), Integer(2)) == 0 &&
                     inner(D, D) == num / cfg.h_square(),
                 "divisor #" + std::to_string(i));
    }
    return t.outcome("500 lattices, 1000 divisors");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 d-list reproduction", ac1},
        {"AC2 witness identities", ac2},
        {"AC3 Beauville-Bogomolov values", ac3},
        {"AC4 isotropic specialization", ac4},
        {"AC5 Pell solver vs brute force", ac5},
        {"AC6 fundamental units", ac6},
        {"AC7 Mukai isometries", ac7},
        {"AC8 infinite orbit of witnesses", ac8},
        {"AC9 lattice determinant and evenness", ac9},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += !o.passed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
