#include "k3w/family.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace k3w {

const char* sign_name(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

const char* mu_status_name(MuStatus s) {
    switch (s) {
        case MuStatus::Witnessed: return "witnessed";
        case MuStatus::NoSolution: return "no_solution";
        case MuStatus::ThresholdUnreachable: return "threshold_unreachable";
        case MuStatus::Degenerate: return "degenerate";
    }
    return "unknown";
}

void FamilyQuery::validate() const {
    if (g < 3) throw Error(Errc::InvalidArgument, "g must be >= 3");
    if (r < 1 || s < 1) throw Error(Errc::InvalidArgument, "r and s must be >= 1");
    if (g < r * s) {
        throw Error(Errc::InvalidArgument, "g=" + std::to_string(g) + " < rs=" + std::to_string(r * s));
    }
}

Integer pell_rhs(const FamilyQuery& q) {
    return Integer(4 * (q.g - 1)) * (sign_value(q.sign) * q.lead() - q.r * q.s + q.g - 1);
}

PellProblem pell_problem(const FamilyQuery& q, const Integer& d, std::int64_t mu) {
    const Integer lead(q.lead());
    const Integer m(2 * q.g - 2);
    const Integer offset(2 * (q.g - 1));
    PellProblem p;
    p.d = d;
    p.N = pell_rhs(q);
    p.offset = offset;
    p.scale = lead;
    // u = offset (mod lead), w = 0 (mod lead): x and y are integers.
    p.constraints.push_back(Congruence{lead, 1, 0, offset});
    p.constraints.push_back(Congruence{lead, 0, 1, 0});
    // lead(x - mu y) = u - offset - mu w = 0 (mod lead (2g-2)).
    p.constraints.push_back(Congruence{lead * m, 1, Integer(-mu), offset});
    return p;
}

Integer default_x_threshold(std::int64_t g, std::int64_t lead) {
    const std::int64_t k = std::max<std::int64_t>(lead - 1, 1);
    // x < -(2g-2)/k - 1  <=>  x <= ceil(-(2g-2)/k - 1) - 1
    return Integer(-((2 * g - 2) / k) - 2);
}

void VerificationReport::add(std::string name, bool passed, std::string computed,
                             std::string expected) {
    checks.push_back(Check{std::move(name), passed, std::move(computed), std::move(expected)});
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::vector<std::string> VerificationReport::failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (!c.passed) out.push_back(c.name);
    }
    return out;
}

VerificationReport verify_witness(const Witness& w, const FamilyQuery& q) {
    VerificationReport rep;
    const LatticeConfig& cfg = w.D.lattice();
    const Integer m(cfg.h_square());
    const Integer lead(q.lead());
    const Integer other(q.other());
    const int sign = sign_value(q.sign);
    const Divisor H = cfg.H();

    const Integer u = lead * w.x + 2 * (q.g - 1);
    const Integer wv = lead * w.y;
    const Integer residual = u * u - w.d * wv * wv - pell_rhs(q);
    rep.add("pell_residual", residual == 0, to_string(residual), "0");

    const Integer cong = mod_floor(w.x - w.mu * w.y, m);
    rep.add("congruence", cong == 0, to_string(cong), "0");

    const bool f_def = w.F == H + lead * w.D;
    rep.add("f_definition", f_def, f_def ? "F = H + lead D" : "F != H + lead D", "F = H + lead D");

    const Integer f2 = inner(w.F, w.F);
    const Integer f2_expected = m + lead * (2 * sign - 2 * other);
    rep.add("f_square", f2 == f2_expected, to_string(f2), to_string(f2_expected));

    const Integer fh = mod_floor(inner(w.F, H), m);
    const Integer fh_expected = mod_floor(lead * w.mu * w.y, m);
    rep.add("f_dot_h", fh == fh_expected, to_string(fh), to_string(fh_expected));

    const Integer& dh = dot_H(w.D);
    rep.add("d_dot_h_threshold", dh <= w.x_threshold, to_string(dh), "<= " + to_string(w.x_threshold));

    const MukaiVector v{lead, H, other};
    const MukaiVector twisted = tensorize(v, w.D);
    const MukaiVector target{lead, w.F, Integer(sign)};
    rep.add("type_vector", twisted == target, to_string(twisted.s0), std::to_string(sign));

    const bool prim = is_primitive(MukaiVector{Integer(q.r), H, Integer(q.s)});
    rep.add("primitive", prim, prim ? "true" : "false", "true");

    record_bb_checks(w, q, rep);

    if (q.isotropic()) {
        const Integer iso_expected = Integer(2 * sign) * lead;
        rep.add("isotropic_square", f2 == iso_expected, to_string(f2), to_string(iso_expected));
        const Integer fh_lead = mod_floor(inner(w.F, H), lead);
        rep.add("isotropic_dot_h", fh_lead == 0, to_string(fh_lead), "0");
    }
    return rep;
}

Witness make_witness(const FamilyQuery& q, const Integer& d, std::int64_t mu, const Integer& x,
                     const Integer& y, const Integer& x_threshold) {
    const LatticeConfig cfg = make_lattice(q.g, d, mu);
    const Divisor D = divisor(cfg, x, y);
    const Divisor F = cfg.H() + Integer(q.lead()) * D;
    Witness w{q, d, cfg.mu(), x, y, D, F, x_threshold, {}};
    w.report = verify_witness(w, q);
    return w;
}

namespace {

void require_positive_length(const FamilyQuery& q) {
    q.validate();
    if (q.hilbert_length() < 1) {
        throw Error(Errc::InvalidArgument, "g = rs gives S[0]; need g >= rs + 1");
    }
}

Integer threshold_for(const FamilyQuery& q, const SearchOptions& opts) {
    return opts.x_threshold ? *opts.x_threshold : default_x_threshold(q.g, q.lead());
}

// Orbit offset closest to zero representing `off` modulo `period`.
std::int64_t centered(std::uint64_t off, std::uint64_t period) {
    return off * 2 <= period ? static_cast<std::int64_t>(off)
                             : static_cast<std::int64_t>(off) - static_cast<std::int64_t>(period);
}

struct Pushed {
    PushResult push;
    FundamentalUnit unit;
};

// First constrained solution, in canonical class order, that reaches the
// threshold. The search itself is returned through `search`.
std::optional<Pushed> find_pushed(const PellProblem& problem, const ConstrainedSearch& search,
                                  const Integer& threshold, int depth) {
    for (const auto& cls : search.classes) {
        for (std::uint64_t off : cls.offsets) {
            const PellSolution start =
                orbit_power(cls.seed, search.unit, centered(off, search.certificate.period));
            try {
                return Pushed{push_negative(start, problem, threshold, search.unit, depth), search.unit};
            } catch (const Error& e) {
                if (e.code() != Errc::ThresholdUnreachable) throw;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

MemberResult member(const FamilyQuery& q, const Integer& d, const SearchOptions& opts) {
    require_positive_length(q);
    if (d < 1) throw Error(Errc::InvalidArgument, "d must be positive");
    if (is_perfect_square(d)) {
        throw Error(Errc::SquareDiscriminant, "d=" + to_string(d) + " is a perfect square");
    }
    const std::vector<std::int64_t> mus = LatticeConfig::unit_square_roots(q.g, d);
    if (mus.empty()) {
        throw Error(Errc::NoValidMu, "no unit mu with mu^2 = " + to_string(d) + " mod " +
                                         std::to_string(4 * (q.g - 1)));
    }
    const Integer threshold = threshold_for(q, opts);

    MemberResult out{d, {}, std::nullopt, false};
    for (std::int64_t mu : mus) {
        if (pell_rhs(q) == 0) {
            out.per_mu.push_back(MuOutcome{mu, MuStatus::Degenerate,
                                           "right-hand side is 0: only y = 0 solves", {}});
            continue;
        }
        const PellProblem problem = pell_problem(q, d, mu);
        const ConstrainedSearch search = search_constrained(problem);
        if (search.certificate.empty) {
            out.per_mu.push_back(MuOutcome{mu, MuStatus::NoSolution,
                                           "no constrained solution in one residue period",
                                           search.certificate});
            continue;
        }
        // A nonempty constrained orbit always contains points with w != 0.
        out.in_family = true;
        const auto pushed = find_pushed(problem, search, threshold, opts.search_depth);
        if (!pushed) {
            out.per_mu.push_back(MuOutcome{mu, MuStatus::ThresholdUnreachable,
                                           "every constrained orbit keeps D.H > " + to_string(threshold),
                                           search.certificate});
            continue;
        }
        out.per_mu.push_back(MuOutcome{mu, MuStatus::Witnessed, "", search.certificate});
        if (!out.witness) {
            const PellSolution& sol = pushed->push.solution;
            out.witness = make_witness(q, d, mu, problem.derived_x(sol), problem.derived_y(sol), threshold);
        }
    }
    return out;
}

namespace {

template <typename Fn>
void parallel_for(std::int64_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<MemberResult> enumerate_members(const FamilyQuery& q, std::int64_t d_max,
                                            const SearchOptions& opts) {
    require_positive_length(q);
    if (d_max < 1) throw Error(Errc::InvalidArgument, "d_max must be >= 1");
    std::vector<std::optional<MemberResult>> slots(static_cast<std::size_t>(d_max));
    parallel_for(d_max, opts.threads, [&](std::int64_t i) {
        const Integer d(i + 1);
        if (is_perfect_square(d)) return;
        if (LatticeConfig::unit_square_roots(q.g, d).empty()) return;
        MemberResult res = member(q, d, opts);
        if (res.in_family) slots[static_cast<std::size_t>(i)] = std::move(res);
    });
    std::vector<MemberResult> out;
    for (auto& s : slots) {
        if (s) out.push_back(std::move(*s));
    }
    return out;
}

std::vector<Witness> enumerate(const FamilyQuery& q, std::int64_t d_max, const SearchOptions& opts) {
    std::vector<Witness> out;
    for (auto& m : enumerate_members(q, d_max, opts)) {
        if (m.witness) out.push_back(std::move(*m.witness));
    }
    return out;
}

std::set<Integer> enumerate_direct(const FamilyQuery& q, std::int64_t xy_bound) {
    q.validate();
    if (xy_bound < 1) throw Error(Errc::InvalidArgument, "xy_bound must be >= 1");
    const std::int64_t lead = q.lead();
    const std::int64_t m = 2 * q.g - 2;
    const std::int64_t rhs = to_int64(pell_rhs(q));
    std::set<Integer> out;
    for (std::int64_t y = -xy_bound; y <= xy_bound; ++y) {
        if (y == 0) continue;
        const std::int64_t den = lead * lead * y * y;
        for (std::int64_t x = -xy_bound; x <= xy_bound; ++x) {
            const std::int64_t u = lead * x + 2 * (q.g - 1);
            const std::int64_t num = u * u - rhs;
            if (num <= 0 || num % den != 0) continue;
            const Integer d(num / den);
            if (is_perfect_square(d)) continue;
            for (std::int64_t mu : LatticeConfig::unit_square_roots(q.g, d)) {
                if (mod_floor(x - mu * y, m) == 0) {
                    out.insert(d);
                    break;
                }
            }
        }
    }
    return out;
}

std::vector<Witness> witness_chain(const FamilyQuery& q, const Integer& d, std::int64_t mu,
                                   std::size_t count, const SearchOptions& opts) {
    require_positive_length(q);
    const Integer threshold = threshold_for(q, opts);
    const PellProblem problem = pell_problem(q, d, mu);
    const ConstrainedSearch search = search_constrained(problem);
    std::vector<Witness> out;
    if (count == 0 || search.certificate.empty) return out;
    const auto pushed = find_pushed(problem, search, threshold, opts.search_depth);
    if (!pushed) return out;

    PellSolution cur = pushed->push.solution;
    int direction = pushed->push.direction;
    if (direction == 0) {
        direction = surd_sign(cur.u, cur.w, d) < 0 ? 1 : -1;
    }
    auto emit = [&](const PellSolution& s) {
        out.push_back(make_witness(q, d, mu, problem.derived_x(s), problem.derived_y(s), threshold));
    };
    emit(cur);
    const std::uint64_t limit =
        search.certificate.period * static_cast<std::uint64_t>(std::max(opts.search_depth, 1)) * count;
    for (std::uint64_t i = 0; i < limit && out.size() < count; ++i) {
        cur = orbit_step(cur, pushed->unit, direction);
        if (cur.w != 0 && problem.constraints_hold(cur) && problem.derived_x(cur) <= threshold) {
            emit(cur);
        }
    }
    return out;
}

Infinitude infinitude(std::int64_t g, std::int64_t r, std::int64_t s) {
    if (g < 3 || r < 1 || s < 1) throw Error(Errc::InvalidArgument, "need g >= 3 and r, s >= 1");
    std::string reason;
    auto note = [&](bool holds, const char* what) {
        if (!holds) return;
        if (!reason.empty()) reason += ", ";
        reason += what;
    };
    note((g - 1) % r == 0, "r|g-1");
    note((g - 1) % s == 0, "s|g-1");
    note(2 % r == 0, "r|2");
    note(2 % s == 0, "s|2");
    if (reason.empty()) return Infinitude{false, "inconclusive"};
    return Infinitude{true, reason};
}

}  // namespace k3w
