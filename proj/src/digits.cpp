#include "polytors/digits.hpp"

#include <algorithm>

namespace polytors {

bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (u64 d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

u64 BasePExpansion::reconstruct() const {
    u128 acc = 0, pw = 1;
    for (u64 d : digits) {
        acc += pw * d;
        pw *= p;
    }
    return narrow(acc);
}

static void require_base(u64 p) {
    if (p > kMaxBase)
        throw std::invalid_argument("base " + std::to_string(p) + " exceeds the supported range");
    if (!is_prime(p))
        throw std::invalid_argument("base " + std::to_string(p) + " is not prime");
}

BasePExpansion expand(u64 value, u64 p) {
    require_base(p);
    BasePExpansion e;
    e.p = p;
    e.value = value;
    while (value > 0) {
        e.digits.push_back(value % p);
        value /= p;
    }
    return e;
}

const DigitRun& RunDecomposition::run(u32 alpha) const {
    if (alpha < 1 || alpha > runs.size())
        throw std::domain_error("run index " + std::to_string(alpha) + " out of range (r = " +
                                std::to_string(runs.size()) + ")");
    return runs[alpha - 1];
}

RunDecomposition decompose(u64 l, u64 p) {
    require_base(p);
    if (l == 0)
        throw std::domain_error("l must be positive (l = 0 is the classical configuration space)");

    RunDecomposition dec;
    dec.p = p;
    dec.l = l;
    dec.valuation = 0;
    dec.coprime = l;
    while (dec.coprime % p == 0) {
        dec.coprime /= p;
        ++dec.valuation;
    }
    dec.coprime_digits = expand(dec.coprime, p);

    const auto& a = dec.coprime_digits.digits;
    const std::size_t nd = a.size();

    // Suffix values: tail[nu] = value of the digits at positions >= nu.
    std::vector<u64> tail(nd + 1, 0);
    {
        u128 pw = 1;
        for (std::size_t nu = 0; nu < nd; ++nu) pw *= p;  // p^nd
        for (std::size_t nu = nd; nu-- > 0;) {
            pw /= p;
            tail[nu] = narrow(static_cast<u128>(tail[nu + 1]) + pw * a[nu]);
        }
    }

    // Maximal blocks of digit p-1, scanned from the top; a block ending at
    // position 0 is legal (the boundary condition is vacuous there).
    std::size_t nu = nd;
    while (nu-- > 0) {
        if (a[nu] != p - 1) continue;
        const u32 hi = static_cast<u32>(nu);
        while (nu > 0 && a[nu - 1] == p - 1) --nu;
        const u32 lo = static_cast<u32>(nu);
        DigitRun run;
        run.hi = hi;
        run.lo = lo;
        run.above = tail[hi + 1];
        run.with_run = tail[lo];
        run.below = dec.coprime - run.with_run;
        dec.runs.push_back(run);
        if (nu == 0) break;
    }
    return dec;
}

std::vector<u64> relevant_primes(u64 l) {
    if (l == 0)
        throw std::domain_error("l must be positive");
    // Completeness needs every prime <= l + 1, so l beyond the base cap
    // cannot be served.
    if (l > kMaxBase)
        throw std::invalid_argument("l = " + std::to_string(l) +
                                    " exceeds the supported range (relevant primes may pass " +
                                    std::to_string(kMaxBase) + ")");
    std::vector<u64> out;
    for (u64 p : primes_up_to(checked_add(l, 1))) {
        if (!decompose(l, p).runs.empty()) out.push_back(p);
    }
    return out;
}

} // namespace polytors
