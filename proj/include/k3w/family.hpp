#pragma once

// Determinant families D_+-, ~D_+- and their certified witnesses.
//
// For v = (r, H, s) a divisor D = (xH + yG)/(2g-2) twists v to
// (r, H + rD, +-1) exactly when
//
//     (r x + 2(g-1))^2 - d (r y)^2 = 4(g-1)(+-r - rs + g - 1),  x = mu y mod 2g-2.
//
// The tilde family swaps the roles of r and s (F~ = H + s D~).

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3w/hilbert.hpp"
#include "k3w/mukai.hpp"
#include "k3w/pell.hpp"

namespace k3w {

enum class Sign { Plus = 1, Minus = -1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }
const char* sign_name(Sign s);  // "plus" / "minus"

struct FamilyQuery {
    std::int64_t g = 5;
    std::int64_t r = 2;
    std::int64_t s = 2;
    Sign sign = Sign::Plus;
    bool tilde = false;

    // Rank of the twisted vector: r, or s for the tilde family.
    std::int64_t lead() const { return tilde ? s : r; }
    std::int64_t other() const { return tilde ? r : s; }
    std::int64_t hilbert_length() const { return g - r * s; }
    bool isotropic() const { return g == r * s + 1; }

    // Throws InvalidArgument unless g >= 3, r, s >= 1 and g >= rs.
    void validate() const;
};

// 4(g-1)(+-lead - rs + g - 1)
Integer pell_rhs(const FamilyQuery& q);

// u = lead x + 2(g-1), w = lead y, with the integrality and lattice congruences.
PellProblem pell_problem(const FamilyQuery& q, const Integer& d, std::int64_t mu);

// Largest x with (H + (lead-1)D).H < 0 and a unit of margin:
// x < -(2g-2)/max(lead-1, 1) - 1.
Integer default_x_threshold(std::int64_t g, std::int64_t lead);

struct Check {
    std::string name;
    bool passed = false;
    std::string computed;
    std::string expected;

    bool operator==(const Check&) const = default;
};

struct VerificationReport {
    std::vector<Check> checks;

    void add(std::string name, bool passed, std::string computed, std::string expected);
    bool all_passed() const;
    const Check* find(const std::string& name) const;
    std::vector<std::string> failed() const;

    bool operator==(const VerificationReport&) const = default;
};

struct Witness {
    FamilyQuery query;
    Integer d;
    std::int64_t mu;
    Integer x;
    Integer y;
    Divisor D;
    Divisor F;
    Integer x_threshold;
    VerificationReport report;
};

// Builds D and F from (x, y) and runs verify_witness. Throws NotInLattice.
Witness make_witness(const FamilyQuery& q, const Integer& d, std::int64_t mu, const Integer& x,
                     const Integer& y, const Integer& x_threshold);

// Recomputes every identity from scratch:
//   pell_residual, congruence, f_square, f_dot_h, d_dot_h_threshold,
//   type_vector, primitive, bb_square, bb_pairing, and for g = rs+1
//   isotropic_square, isotropic_dot_h.
VerificationReport verify_witness(const Witness& w, const FamilyQuery& q);

struct SearchOptions {
    int search_depth = 64;                // unit periods walked by push_negative
    std::optional<Integer> x_threshold;   // default_x_threshold when unset
    unsigned threads = 0;                 // 0: hardware concurrency
};

enum class MuStatus { Witnessed, NoSolution, ThresholdUnreachable, Degenerate };
const char* mu_status_name(MuStatus s);

struct MuOutcome {
    std::int64_t mu;
    MuStatus status;
    std::string detail;
    ResidueCertificate certificate;
};

struct MemberResult {
    Integer d;
    std::vector<MuOutcome> per_mu;
    std::optional<Witness> witness;  // from the first mu that succeeds
    // True when a constrained solution with y != 0 exists for some mu,
    // whether or not the D.H threshold was reached.
    bool in_family = false;
};

// Throws SquareDiscriminant, NoValidMu, InvalidArgument.
MemberResult member(const FamilyQuery& q, const Integer& d, const SearchOptions& opts = {});

// Certified witnesses for all non-square d <= d_max, ascending d.
// Throws InvalidArgument for g = rs.
std::vector<Witness> enumerate(const FamilyQuery& q, std::int64_t d_max,
                               const SearchOptions& opts = {});

// Every d <= d_max for which member() reports in_family, whether or not a
// certified witness exists.
std::vector<MemberResult> enumerate_members(const FamilyQuery& q, std::int64_t d_max,
                                            const SearchOptions& opts = {});

// d values given by the closed formula over |x|, |y| <= xy_bound, y != 0.
std::set<Integer> enumerate_direct(const FamilyQuery& q, std::int64_t xy_bound);

// Successive certified witnesses along the orbit, x strictly decreasing.
std::vector<Witness> witness_chain(const FamilyQuery& q, const Integer& d, std::int64_t mu,
                                   std::size_t count, const SearchOptions& opts = {});

struct Infinitude {
    bool infinite;
    std::string reason;  // "r|g-1", "s|g-1", "r|2", "s|2" or "inconclusive"
};

Infinitude infinitude(std::int64_t g, std::int64_t r, std::int64_t s);

}  // namespace k3w
