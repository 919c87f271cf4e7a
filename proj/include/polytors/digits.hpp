#pragma once

#include <cstddef>
#include <vector>

#include "polytors/common.hpp"

namespace polytors {

/// Largest prime base the library accepts. Relevant primes never exceed
/// l + 1, and l is capped by configuration, so this is not a restriction
/// in practice; it keeps every derived quantity inside checked 64-bit range.
inline constexpr u64 kMaxBase = 1'000'000;

/// Deterministic primality test (trial division; exact for all 64-bit inputs).
bool is_prime(u64 n);

/// All primes <= limit, ascending (sieve).
std::vector<u64> primes_up_to(u64 limit);

/// Base-p expansion of a nonnegative integer, least significant digit first.
/// Empty digit vector iff value == 0; the leading digit is nonzero otherwise.
struct BasePExpansion {
    u64 p = 2;
    u64 value = 0;
    std::vector<u64> digits;

    /// Digit at position nu (0 for positions beyond the expansion).
    u64 digit(std::size_t nu) const noexcept {
        return nu < digits.size() ? digits[nu] : 0;
    }

    /// Recomputes sum a_nu * p^nu; equals value by construction.
    u64 reconstruct() const;
};

/// Expansion of `value` in prime base `p`. Rejects non-prime or oversized p.
BasePExpansion expand(u64 value, u64 p);

/// One maximal block of digits equal to p-1 in the expansion of the
/// p-free part q, together with the three digit-block values it cuts q into:
///
///   q = above + (p^{hi+1} - p^{lo}) + below,      with_run = q - below.
struct DigitRun {
    u32 hi = 0;        ///< most significant position of the run
    u32 lo = 0;        ///< least significant position of the run
    u64 above = 0;     ///< value of the digits strictly above the run
    u64 with_run = 0;  ///< value of the digits at positions >= lo
    u64 below = 0;     ///< value of the digits strictly below the run

    u32 length() const noexcept { return hi - lo + 1; }
};

/// l = p^valuation * coprime with p not dividing coprime, plus the maximal
/// (p-1)-runs of coprime's base-p digits, most significant run first.
/// Successive runs satisfy runs[a].lo >= runs[a+1].hi + 2.
struct RunDecomposition {
    u64 p = 2;
    u64 l = 1;
    u32 valuation = 0;   ///< exponent of p in l
    u64 coprime = 1;     ///< l / p^valuation
    BasePExpansion coprime_digits;
    std::vector<DigitRun> runs;

    std::size_t run_count() const noexcept { return runs.size(); }

    /// Run by 1-based index (index 1 = most significant run).
    const DigitRun& run(u32 alpha) const;
};

/// Run decomposition of l >= 1 in prime base p. A decomposition with no runs
/// is legal and means "no higher p-torsion".
RunDecomposition decompose(u64 l, u64 p);

/// Exactly the primes whose decomposition of l has at least one run,
/// ascending. Complete: a run needs a digit p-1 <= q <= l, so p <= l + 1.
std::vector<u64> relevant_primes(u64 l);

} // namespace polytors
