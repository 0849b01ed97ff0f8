#include "k3w/hilbert.hpp"

#include "k3w/family.hpp"

namespace k3w {

HilbertClass HilbertClass::canonical(const Divisor& F, const Integer& n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "Hilbert scheme length must be >= 1");
    return HilbertClass{F, Integer(n == 1 ? 0 : 1), n};
}

Integer f_square(const Integer& n) { return -2 * (n - 1); }

Integer bb_square(const HilbertClass& h) {
    return inner(h.F_part, h.F_part) + f_square(h.n) * h.f_coeff * h.f_coeff;
}

Integer bb_pair_with_H(const HilbertClass& h) { return inner(h.F_part, h.F_part.lattice().H()); }

BbValues bb_values(const Witness& w) {
    const HilbertClass h = HilbertClass::canonical(w.F, Integer(w.query.hilbert_length()));
    return BbValues{h.f_coeff, bb_square(h), bb_pair_with_H(h)};
}

void record_bb_checks(const Witness& w, const FamilyQuery& query, VerificationReport& report) {
    const HilbertClass h = HilbertClass::canonical(w.F, Integer(query.hilbert_length()));
    const Integer q = bb_square(h);
    const Integer q_expected = Integer(2 * sign_value(query.sign)) * query.lead();
    report.add("bb_square", q == q_expected, to_string(q), to_string(q_expected));

    const Integer m(2 * query.g - 2);
    const Integer b = mod_floor(bb_pair_with_H(h), m);
    const Integer b_expected = mod_floor(query.lead() * w.mu * w.y, m);
    report.add("bb_pairing", b == b_expected, to_string(b), to_string(b_expected));
}

bool verify_bb_corollary(const Witness& w, const FamilyQuery& query) {
    VerificationReport rep;
    record_bb_checks(w, query, rep);
    return rep.all_passed();
}

}  // namespace k3w
