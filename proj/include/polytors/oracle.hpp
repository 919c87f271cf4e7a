#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytors/common.hpp"
#include "polytors/digits.hpp"

namespace polytors {

/// One cokernel computation for a run: the target class has order
/// p^target_exponent, and each admissible source hits it with coefficient
/// C(binom_top, s), so the surviving exponent is
/// min(target_exponent, min_s v_p(C(binom_top, s))).
///
/// Admissible source positions s run over 1..source_bound, restricted to
/// multiples of p when multiples_only is set (the spectral-sequence grading
/// only provides sources in column 2ps).
struct DifferentialProblem {
    u64 p = 2;
    u64 binom_top = 0;        ///< p^m * (above + p^{hi+1}); v_p of this is target_exponent
    u64 source_bound = 0;     ///< p^{m+lo} - 1 - p^m * below
    u32 target_exponent = 0;  ///< m + hi + 1
    bool multiples_only = true;
};

/// Problem instance for run alpha (1-based) of a decomposition.
DifferentialProblem differential_problem(const RunDecomposition& dec, u32 alpha,
                                         bool multiples_only = true);

/// v_p(C(top, lower)): the number of carries when adding lower and
/// top - lower in base p. Requires lower <= top.
u32 carry_valuation(u64 top, u64 lower, u64 p);

struct MinValuation {
    std::optional<u32> min;   ///< nullopt when the admissible set is empty
    std::vector<u64> argmin;  ///< all minimizers, ascending
};

/// Minimum of carry_valuation(binom_top, s, p) over admissible s.
MinValuation min_valuation(const DifferentialProblem& prob);

/// Exponent of the cyclic cokernel: min(target_exponent, v_min), or
/// target_exponent when no source is admissible.
u32 oracle_exponent(const DifferentialProblem& prob);

enum class RunCheck {
    agreed,             ///< oracle exponent equals the table exponent mu
    omitted_consistent, ///< withheld final run with lo = 0: collapse signature holds
    open_question,      ///< withheld final run with lo > 0: oracle output recorded
    mismatch,           ///< disagreement in a covered case
};

std::string to_string(RunCheck c);

/// Everything the verifier derived for one run.
struct RunReport {
    u64 l = 0;
    u64 p = 2;
    u32 alpha = 1;
    u32 hi = 0, lo = 0;
    u32 valuation = 0;          ///< m
    u32 mu = 2;                 ///< table exponent hi - lo + 2
    u64 degree = 0;             ///< n = 2 degree of the candidate class
    bool omitted = false;
    DifferentialProblem problem;
    std::optional<u32> v_min;
    std::vector<u64> argmin;
    u32 oracle_exp = 0;
    bool admissible_empty = true;
    bool argmin_contains_expected = true;
    RunCheck check = RunCheck::agreed;
    std::string note;
};

/// Comparison of the digit-run torsion table against the cokernel oracle
/// for a single (l, p).
struct VerificationReport {
    u64 l = 0;
    u64 p = 2;
    bool strict = false;
    std::vector<RunReport> runs;  ///< alpha ascending

    bool has_mismatch() const;
    bool has_open_question() const;
    /// Mismatches always fail; open questions fail only under strict.
    bool passes() const;
};

VerificationReport verify(u64 l, u64 p, bool strict);

} // namespace polytors
