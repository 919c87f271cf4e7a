#include "polytors/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace polytors {

DifferentialProblem differential_problem(const RunDecomposition& dec, u32 alpha,
                                         bool multiples_only) {
    const DigitRun& run = dec.run(alpha);
    const u64 p = dec.p;
    const u128 scale = checked_pow(p, dec.valuation);

    DifferentialProblem prob;
    prob.p = p;
    prob.multiples_only = multiples_only;
    prob.binom_top = narrow(scale * (static_cast<u128>(run.above) + checked_pow(p, run.hi + 1)));
    prob.target_exponent = dec.valuation + run.hi + 1;

    const u128 cap = checked_pow(p, dec.valuation + run.lo);
    const u128 shifted_below = scale * run.below;
    if (cap < shifted_below + 1)
        throw std::logic_error("source bound underflow; decomposition invariants violated");
    prob.source_bound = narrow(cap - 1 - shifted_below);
    return prob;
}

u32 carry_valuation(u64 top, u64 lower, u64 p) {
    if (lower > top)
        throw std::domain_error("carry_valuation requires lower <= top");
    if (p < 2 || !is_prime(p))
        throw std::invalid_argument("base must be prime");
    u64 other = top - lower;
    u32 carries = 0;
    u64 carry = 0;
    while (lower > 0 || other > 0 || carry > 0) {
        const u64 s = lower % p + other % p + carry;
        carry = s >= p ? 1 : 0;
        carries += static_cast<u32>(carry);
        lower /= p;
        other /= p;
    }
    return carries;
}

MinValuation min_valuation(const DifferentialProblem& prob) {
    MinValuation mv;
    const u64 step = prob.multiples_only ? prob.p : 1;
    for (u64 s = step; s <= prob.source_bound; s += step) {
        const u32 v = carry_valuation(prob.binom_top, s, prob.p);
        if (!mv.min || v < *mv.min) {
            mv.min = v;
            mv.argmin.assign(1, s);
        } else if (v == *mv.min) {
            mv.argmin.push_back(s);
        }
    }
    return mv;
}

u32 oracle_exponent(const DifferentialProblem& prob) {
    const MinValuation mv = min_valuation(prob);
    if (!mv.min) return prob.target_exponent;
    return std::min(prob.target_exponent, *mv.min);
}

std::string to_string(RunCheck c) {
    switch (c) {
        case RunCheck::agreed: return "agreed";
        case RunCheck::omitted_consistent: return "omitted-consistent";
        case RunCheck::open_question: return "open-question";
        case RunCheck::mismatch: return "mismatch";
    }
    throw std::logic_error("bad run check");
}

bool VerificationReport::has_mismatch() const {
    return std::any_of(runs.begin(), runs.end(),
                       [](const RunReport& r) { return r.check == RunCheck::mismatch; });
}

bool VerificationReport::has_open_question() const {
    return std::any_of(runs.begin(), runs.end(),
                       [](const RunReport& r) { return r.check == RunCheck::open_question; });
}

bool VerificationReport::passes() const {
    if (has_mismatch()) return false;
    return !(strict && has_open_question());
}

namespace {

/// The minimizer family t * p^{m+lo-1}, 1 <= t <= p-1, intersected with the
/// admissible set; must always land inside argmin.
bool argmin_contains_expected(const RunReport& r) {
    if (r.valuation + r.lo == 0) return true;  // no integral candidates
    const u64 base = checked_pow(r.p, r.valuation + r.lo - 1);
    for (u64 t = 1; t <= r.p - 1; ++t) {
        const u64 cand = checked_mul(t, base);
        if (cand > r.problem.source_bound) continue;
        if (r.problem.multiples_only && cand % r.p != 0) continue;
        if (!std::binary_search(r.argmin.begin(), r.argmin.end(), cand)) return false;
    }
    return true;
}

} // namespace

VerificationReport verify(u64 l, u64 p, bool strict) {
    const RunDecomposition dec = decompose(l, p);

    VerificationReport report;
    report.l = l;
    report.p = p;
    report.strict = strict;

    for (u32 alpha = 1; alpha <= dec.run_count(); ++alpha) {
        const DigitRun& run = dec.run(alpha);
        RunReport r;
        r.l = l;
        r.p = p;
        r.alpha = alpha;
        r.hi = run.hi;
        r.lo = run.lo;
        r.valuation = dec.valuation;
        r.mu = run.hi - run.lo + 2;
        r.omitted = dec.valuation == 0 && alpha == dec.run_count();
        r.problem = differential_problem(dec, alpha, /*multiples_only=*/true);
        r.degree = narrow(static_cast<u128>(2) * r.problem.binom_top - 2);

        const MinValuation mv = min_valuation(r.problem);
        r.v_min = mv.min;
        r.argmin = mv.argmin;
        r.oracle_exp = oracle_exponent(r.problem);
        r.admissible_empty = !mv.min.has_value();
        r.argmin_contains_expected = argmin_contains_expected(r);

        std::ostringstream note;
        if (!r.omitted) {
            if (r.oracle_exp == r.mu && r.argmin_contains_expected) {
                r.check = RunCheck::agreed;
                note << "cokernel exponent " << r.oracle_exp << " matches";
            } else if (r.oracle_exp != r.mu) {
                r.check = RunCheck::mismatch;
                note << "table exponent " << r.mu << " vs cokernel exponent " << r.oracle_exp;
            } else {
                r.check = RunCheck::mismatch;
                note << "expected minimizers missing from argmin";
            }
        } else if (r.lo == 0) {
            // Collapse signature: no admissible source and the candidate
            // degree equals 2l, the free generator's degree.
            if (r.admissible_empty && r.problem.source_bound == 0 && r.degree == 2 * l) {
                r.check = RunCheck::omitted_consistent;
                note << "withheld final run reaches digit 0: candidate degree " << r.degree
                     << " equals 2l; class is the reduction of the free generator";
            } else {
                r.check = RunCheck::mismatch;
                note << "withheld final run lacks the expected collapse signature";
            }
        } else {
            r.check = RunCheck::open_question;
            note << "withheld final run stops above digit 0 (lo = " << r.lo
                 << "): cokernel computation yields exponent " << r.oracle_exp << " in degree "
                 << r.degree << " while the torsion table withholds the summand; "
                 << "recorded as a known ambiguity";
        }
        r.note = note.str();
        report.runs.push_back(std::move(r));
    }
    return report;
}

} // namespace polytors
