#include "k3w/pell.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <utility>

namespace k3w {

namespace {

// Continued fraction of (P0 + sqrt(D)) / Q0 with Q0 | P0^2 - D, carrying the
// convergent numerators A, denominators B and G = Q0 A - P0 B.
class PQa {
public:
    PQa(const Integer& D, const Integer& P0, const Integer& Q0)
        : D_(D), root_(isqrt(D)), P_(P0), Q_(Q0), G_prev2_(-P0), G_prev_(Q0) {}

    // Advances from index i to i+1.
    void step() {
        Integer a;
        const Integer num = P_ + root_;
        if (Q_ > 0) {
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q_.get_mpz_t());
        } else {
            const Integer absq = -Q_;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), absq.get_mpz_t());
            a = -(a + 1);
        }
        advance(A_prev2_, A_prev_, a);
        advance(B_prev2_, B_prev_, a);
        advance(G_prev2_, G_prev_, a);
        const Integer P_next = a * Q_ - P_;
        Integer Q_next = D_ - P_next * P_next;
        mpz_divexact(Q_next.get_mpz_t(), Q_next.get_mpz_t(), Q_.get_mpz_t());
        P_ = P_next;
        Q_ = Q_next;
        last_a_ = a;
    }

    const Integer& P() const { return P_; }
    const Integer& Q() const { return Q_; }
    const Integer& a() const { return last_a_; }
    const Integer& A() const { return A_prev_; }
    const Integer& B() const { return B_prev_; }
    const Integer& G() const { return G_prev_; }

private:
    static void advance(Integer& prev2, Integer& prev, const Integer& a) {
        Integer next = a * prev + prev2;
        prev2 = std::move(prev);
        prev = std::move(next);
    }

    Integer D_;
    Integer root_;
    Integer P_;
    Integer Q_;
    Integer A_prev2_ = 0, A_prev_ = 1;
    Integer B_prev2_ = 1, B_prev_ = 0;
    Integer G_prev2_, G_prev_;
    Integer last_a_ = 0;
};

void require_nonsquare(const Integer& d) {
    if (d < 2 || is_perfect_square(d)) {
        throw Error(Errc::SquareInput, "d=" + to_string(d) + " must be a non-square >= 2");
    }
}

struct Period {
    std::size_t length;
    PellSolution convergent;  // (p_{L-1}, q_{L-1}), norm (-1)^L
};

Period sqrt_period(const Integer& d) {
    require_nonsquare(d);
    PQa cf(d, Integer(0), Integer(1));
    std::size_t i = 0;
    do {
        cf.step();
        ++i;
    } while (cf.Q() != 1);
    return Period{i, PellSolution{cf.A(), cf.B()}};
}

PellSolution mul(const PellSolution& s, const Integer& u0, const Integer& w0, const Integer& d) {
    return PellSolution{s.u * u0 + d * s.w * w0, s.u * w0 + s.w * u0};
}

Integer abs_value(const Integer& n) { return n < 0 ? Integer(-n) : n; }

std::array<PellSolution, 4> sign_images(const PellSolution& s) {
    return {PellSolution{s.u, s.w}, PellSolution{-s.u, -s.w}, PellSolution{s.u, -s.w},
            PellSolution{-s.u, s.w}};
}

void sort_unique(std::vector<PellSolution>& v) {
    canonical_sort(v);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::uint64_t residue(const Integer& n, std::uint64_t m) {
    return static_cast<std::uint64_t>(mod_floor(n, Integer(static_cast<unsigned long>(m))).get_ui());
}

std::uint64_t checked_modulus(const Integer& M) {
    if (M < 1 || M > Integer(static_cast<unsigned long>(1) << 62)) {
        throw Error(Errc::InvalidArgument, "constraint modulus out of range: " + to_string(M));
    }
    return static_cast<std::uint64_t>(M.get_ui());
}

using Mat = std::array<std::uint64_t, 4>;

Mat mat_mul(const Mat& x, const Mat& y, std::uint64_t m) {
    auto mm = [m](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    return {(mm(x[0], y[0]) + mm(x[1], y[2])) % m, (mm(x[0], y[1]) + mm(x[1], y[3])) % m,
            (mm(x[2], y[0]) + mm(x[3], y[2])) % m, (mm(x[2], y[1]) + mm(x[3], y[3])) % m};
}

// Constraint reduced to machine words: a*u + b*w - c = 0 mod m.
struct SmallCongruence {
    std::uint64_t m, a, b, c;
    bool holds(std::uint64_t u, std::uint64_t w) const {
        const unsigned __int128 lhs = static_cast<unsigned __int128>(a) * (u % m) +
                                      static_cast<unsigned __int128>(b) * (w % m);
        return static_cast<std::uint64_t>(lhs % m) == c;
    }
};

}  // namespace

bool canonical_less(const PellSolution& a, const PellSolution& b) {
    const int c = mpz_cmpabs(a.w.get_mpz_t(), b.w.get_mpz_t());
    if (c != 0) return c < 0;
    if (a.u != b.u) return a.u < b.u;
    return a.w < b.w;
}

void canonical_sort(std::vector<PellSolution>& sols) {
    std::sort(sols.begin(), sols.end(), canonical_less);
}

bool Congruence::holds(const PellSolution& s) const {
    return mod_floor(a * s.u + b * s.w - c, modulus) == 0;
}

void PellProblem::validate() const {
    require_nonsquare(d);
    if (N == 0) {
        throw Error(Errc::DegenerateEquation, "right-hand side must be nonzero");
    }
    if (scale < 1) {
        throw Error(Errc::InvalidArgument, "scale must be positive");
    }
    for (const auto& c : constraints) {
        if (c.modulus < 1) {
            throw Error(Errc::InvalidArgument, "constraint modulus must be positive");
        }
    }
}

bool PellProblem::constraints_hold(const PellSolution& s) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const Congruence& c) { return c.holds(s); });
}

Integer PellProblem::modulus() const {
    Integer m = 1;
    for (const auto& c : constraints) m = lcm(m, c.modulus);
    return m;
}

Integer PellProblem::derived_x(const PellSolution& s) const {
    Integer x = s.u - offset;
    mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), scale.get_mpz_t());
    return x;
}

Integer PellProblem::derived_y(const PellSolution& s) const {
    Integer y;
    mpz_fdiv_q(y.get_mpz_t(), s.w.get_mpz_t(), scale.get_mpz_t());
    return y;
}

std::size_t sqrt_period_length(const Integer& d) { return sqrt_period(d).length; }

FundamentalUnit fundamental_unit(const Integer& d) {
    const Period p = sqrt_period(d);
    const auto& [u, w] = p.convergent;
    if (p.length % 2 == 0) return FundamentalUnit{d, u, w};
    // Odd period: the convergent has norm -1; its square is the unit.
    return FundamentalUnit{d, u * u + d * w * w, 2 * u * w};
}

std::optional<PellSolution> negative_unit(const Integer& d) {
    const Period p = sqrt_period(d);
    if (p.length % 2 == 0) return std::nullopt;
    return p.convergent;
}

Integer class_bound(const Integer& d, const Integer& N, const FundamentalUnit& unit) {
    Integer num = N > 0 ? Integer(N * (unit.u0 - 1)) : Integer(-N * (unit.u0 + 1));
    Integer q;
    const Integer den = 2 * d;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return isqrt(q);
}

std::vector<PellSolution> class_representatives(const Integer& d, const Integer& N) {
    require_nonsquare(d);
    if (N == 0) throw Error(Errc::DegenerateEquation, "right-hand side must be nonzero");
    const std::optional<PellSolution> minus_one = negative_unit(d);
    const Integer absN = abs_value(N);

    std::vector<PellSolution> reps;
    for (Integer f = 1; f * f <= absN; ++f) {
        const Integer f2 = f * f;
        if (!mpz_divisible_p(N.get_mpz_t(), f2.get_mpz_t())) continue;
        Integer m;
        mpz_divexact(m.get_mpz_t(), N.get_mpz_t(), f2.get_mpz_t());
        const Integer am = abs_value(m);
        // z in (-|m|/2, |m|/2]
        const Integer am1 = am - 1;
        Integer lo;
        mpz_fdiv_q_2exp(lo.get_mpz_t(), am1.get_mpz_t(), 1);
        lo = -lo;
        Integer hi;
        mpz_fdiv_q_2exp(hi.get_mpz_t(), am.get_mpz_t(), 1);
        for (Integer z = lo; z <= hi; ++z) {
            if (mod_floor(z * z - d, am) != 0) continue;
            PQa cf(d, z, am);
            std::set<std::pair<Integer, Integer>> seen;
            std::optional<PellSolution> found;
            while (seen.emplace(cf.P(), cf.Q()).second) {
                cf.step();
                if (cf.Q() == 1 || cf.Q() == -1) {
                    found = PellSolution{cf.G(), cf.B()};
                    break;
                }
            }
            if (!found) continue;
            const Integer norm = found->u * found->u - d * found->w * found->w;
            PellSolution sol;
            if (norm == m) {
                sol = *found;
            } else if (norm == -m && minus_one) {
                sol = mul(*found, minus_one->u, minus_one->w, d);
            } else {
                continue;
            }
            reps.push_back(PellSolution{f * sol.u, f * sol.w});
        }
    }
    sort_unique(reps);
    return reps;
}

PellSolution orbit_step(const PellSolution& s, const FundamentalUnit& unit, int direction) {
    if (direction >= 0) return mul(s, unit.u0, unit.w0, unit.d);
    return mul(s, unit.u0, Integer(-unit.w0), unit.d);
}

PellSolution orbit_power(const PellSolution& s, const FundamentalUnit& unit, std::int64_t k) {
    PellSolution base{unit.u0, k >= 0 ? unit.w0 : Integer(-unit.w0)};
    std::uint64_t e = k >= 0 ? static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(-k);
    PellSolution acc = s;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base.u, base.w, unit.d);
        e >>= 1;
        if (e > 0) base = mul(base, base.u, base.w, unit.d);
    }
    return acc;
}

std::vector<PellSolution> solve_bounded(const Integer& d, const Integer& N) {
    const FundamentalUnit unit = fundamental_unit(d);
    const Integer bound = class_bound(d, N, unit);
    std::vector<PellSolution> out;
    for (const auto& rep : class_representatives(d, N)) {
        for (const auto& image : sign_images(rep)) {
            // Slide to the element of the orbit with least |w|.
            PellSolution cur = image;
            for (int dir : {1, -1}) {
                for (;;) {
                    PellSolution next = orbit_step(cur, unit, dir);
                    if (mpz_cmpabs(next.w.get_mpz_t(), cur.w.get_mpz_t()) >= 0) break;
                    cur = std::move(next);
                }
            }
            for (std::int64_t k = -3; k <= 3; ++k) {
                PellSolution s = orbit_power(cur, unit, k);
                if (s.w >= 0 && s.w <= bound) out.push_back(std::move(s));
            }
        }
    }
    sort_unique(out);
    return out;
}

std::uint64_t unit_period(const FundamentalUnit& unit, const Integer& modulus) {
    const std::uint64_t m = checked_modulus(modulus);
    if (m == 1) return 1;
    const Mat a{residue(unit.u0, m), residue(unit.d * unit.w0, m), residue(unit.w0, m),
                residue(unit.u0, m)};
    const Mat id{1 % m, 0, 0, 1 % m};
    Mat cur = a;
    std::uint64_t k = 1;
    // The unit matrix has determinant 1, so it lies in SL2(Z/m), whose
    // exponent is far below m^3.
    const std::uint64_t limit = m * m * m + 1;
    while (cur != id) {
        cur = mat_mul(cur, a, m);
        if (++k > limit) {
            throw Error(Errc::InvalidArgument, "unit period not found mod " + to_string(modulus));
        }
    }
    return k;
}

ConstrainedSearch search_constrained(const PellProblem& problem) {
    problem.validate();
    ConstrainedSearch out;
    out.unit = fundamental_unit(problem.d);
    const Integer M = problem.modulus();
    const std::uint64_t m = checked_modulus(M);
    out.certificate.modulus = M;
    out.certificate.period = unit_period(out.unit, M);

    std::vector<SmallCongruence> small;
    for (const auto& c : problem.constraints) {
        const std::uint64_t cm = checked_modulus(c.modulus);
        small.push_back(SmallCongruence{cm, residue(c.a, cm), residue(c.b, cm), residue(c.c, cm)});
    }

    std::vector<PellSolution> seeds;
    for (const auto& rep : class_representatives(problem.d, problem.N)) {
        for (const auto& image : sign_images(rep)) seeds.push_back(image);
    }
    sort_unique(seeds);
    out.certificate.seeds = seeds.size();

    const std::uint64_t a00 = residue(out.unit.u0, m);
    const std::uint64_t a01 = residue(out.unit.d * out.unit.w0, m);
    const std::uint64_t a10 = residue(out.unit.w0, m);
    for (const auto& seed : seeds) {
        ConstrainedClass cls{seed, {}};
        std::uint64_t u = residue(seed.u, m);
        std::uint64_t w = residue(seed.w, m);
        for (std::uint64_t k = 0; k < out.certificate.period; ++k) {
            if (std::all_of(small.begin(), small.end(),
                            [&](const SmallCongruence& c) { return c.holds(u, w); })) {
                cls.offsets.push_back(k);
            }
            const auto nu = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(a00) * u + static_cast<unsigned __int128>(a01) * w) % m);
            const auto nw = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(a10) * u + static_cast<unsigned __int128>(a00) * w) % m);
            u = nu;
            w = nw;
        }
        if (!cls.offsets.empty()) out.classes.push_back(std::move(cls));
    }
    out.certificate.empty = out.classes.empty();
    return out;
}

ConstrainedSolutions solve_constrained(const PellProblem& problem, int search_depth) {
    if (search_depth < 0) throw Error(Errc::InvalidArgument, "search depth must be >= 0");
    const ConstrainedSearch search = search_constrained(problem);
    ConstrainedSolutions out{{}, search.certificate};
    const auto period = static_cast<std::int64_t>(search.certificate.period);
    for (const auto& cls : search.classes) {
        for (std::uint64_t off : cls.offsets) {
            // Smallest k = off (mod period) with k >= -search_depth.
            std::int64_t k = static_cast<std::int64_t>(off);
            k -= ((k + search_depth) / period) * period;
            for (; k <= search_depth; k += period) {
                out.solutions.push_back(orbit_power(cls.seed, search.unit, k));
            }
        }
    }
    sort_unique(out.solutions);
    return out;
}

PushResult push_negative(const PellSolution& start, const PellProblem& problem,
                         const Integer& x_threshold, const FundamentalUnit& unit,
                         int max_periods) {
    problem.validate();
    if (!problem.satisfies(start)) {
        throw Error(Errc::InvalidArgument, "start does not satisfy the constrained equation");
    }
    auto accept = [&](const PellSolution& s) {
        return s.w != 0 && problem.constraints_hold(s) && problem.derived_x(s) <= x_threshold;
    };
    if (accept(start)) return PushResult{start, 0, false, 0};

    PushResult result{start, 0, false, 0};
    int direction = 0;
    if (surd_sign(start.u, start.w, problem.d) < 0) {
        direction = 1;
    } else if (surd_sign(start.u, Integer(-start.w), problem.d) < 0) {
        direction = -1;
    } else {
        // u stays positive on this orbit; the opposite orbit is usable only
        // when it satisfies the constraints too.
        const PellSolution flipped{-start.u, -start.w};
        if (!problem.constraints_hold(flipped)) {
            throw Error(Errc::ThresholdUnreachable,
                        "u > 0 on the whole orbit and (-u,-w) violates the constraints");
        }
        result.solution = flipped;
        result.sign_flipped = true;
        result.direction = 1;
        if (accept(flipped)) return result;
        direction = 1;
    }
    result.direction = direction;

    const std::uint64_t period = unit_period(unit, problem.modulus());
    const std::uint64_t max_steps = period * static_cast<std::uint64_t>(std::max(max_periods, 1));
    for (std::uint64_t i = 0; i < max_steps; ++i) {
        result.solution = orbit_step(result.solution, unit, direction);
        ++result.steps;
        if (accept(result.solution)) return result;
    }
    throw Error(Errc::ThresholdUnreachable,
                "threshold not reached within " + std::to_string(max_steps) + " steps");
}

PushResult push_negative(const PellSolution& start, const PellProblem& problem,
                         const Integer& x_threshold, int max_periods) {
    return push_negative(start, problem, x_threshold, fundamental_unit(problem.d), max_periods);
}

std::ostream& operator<<(std::ostream& os, const PellSolution& s) {
    return os << "(" << s.u << ", " << s.w << ")";
}

}  // namespace k3w
