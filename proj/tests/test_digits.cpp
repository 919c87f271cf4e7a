#include <doctest.h>

#include "polytors/digits.hpp"

using namespace polytors;

TEST_CASE("expand: basic expansions") {
    auto e = expand(5, 2);
    CHECK(e.digits == std::vector<u64>{1, 0, 1});
    CHECK(e.reconstruct() == 5);

    CHECK(expand(0, 3).digits.empty());
    CHECK(expand(0, 3).reconstruct() == 0);

    auto f = expand(19, 3);
    CHECK(f.digits == std::vector<u64>{1, 0, 2});
    CHECK(f.reconstruct() == 19);
}

TEST_CASE("expand: invalid bases rejected") {
    CHECK_THROWS_AS(expand(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(expand(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(expand(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(expand(5, kMaxBase + 7), std::invalid_argument);
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(97));
    CHECK(is_prime(999983));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(1000001));  // 101 * 9901
}

TEST_CASE("decompose: worked examples") {
    SUBCASE("l = 10, p = 2") {
        auto d = decompose(10, 2);
        CHECK(d.valuation == 1);
        CHECK(d.coprime == 5);
        REQUIRE(d.run_count() == 2);
        CHECK(d.run(1).hi == 2);
        CHECK(d.run(1).lo == 2);
        CHECK(d.run(2).hi == 0);
        CHECK(d.run(2).lo == 0);
        CHECK(d.run(1).above == 0);
        CHECK(d.run(2).above == 4);
        CHECK(d.run(1).with_run == 4);
        CHECK(d.run(2).with_run == 5);
        CHECK(d.run(1).below == 1);
        CHECK(d.run(2).below == 0);
    }
    SUBCASE("l = 6, p = 3") {
        auto d = decompose(6, 3);
        CHECK(d.valuation == 1);
        CHECK(d.coprime == 2);
        REQUIRE(d.run_count() == 1);
        CHECK(d.run(1).hi == 0);
        CHECK(d.run(1).lo == 0);
        CHECK(d.run(1).above == 0);
        CHECK(d.run(1).with_run == 2);
        CHECK(d.run(1).below == 0);
    }
    SUBCASE("l = 3, p = 5: no runs") {
        auto d = decompose(3, 5);
        CHECK(d.valuation == 0);
        CHECK(d.coprime == 3);
        CHECK(d.run_count() == 0);
    }
}

TEST_CASE("decompose: errors") {
    CHECK_THROWS_AS(decompose(0, 2), std::domain_error);
    CHECK_THROWS_AS(decompose(10, 6), std::invalid_argument);
    auto d = decompose(10, 2);
    CHECK_THROWS_AS(d.run(0), std::domain_error);
    CHECK_THROWS_AS(d.run(3), std::domain_error);
}

TEST_CASE("relevant_primes: worked examples") {
    CHECK(relevant_primes(1) == std::vector<u64>{2});
    CHECK(relevant_primes(6) == std::vector<u64>{2, 3, 7});
    CHECK(relevant_primes(4) == std::vector<u64>{2, 5});
}

TEST_CASE("relevant_primes: characterization p <= l+1 and r >= 1") {
    for (u64 l = 1; l <= 200; ++l) {
        auto rel = relevant_primes(l);
        std::size_t idx = 0;
        for (u64 p : primes_up_to(l + 1)) {
            const bool expected = !decompose(l, p).runs.empty();
            const bool listed = idx < rel.size() && rel[idx] == p;
            CHECK(listed == expected);
            if (listed) ++idx;
        }
        CHECK(idx == rel.size());
    }
}

namespace {

u64 pw(u64 p, u32 e) { return checked_pow(p, e); }

void check_invariants(const RunDecomposition& d) {
    // l = p^m * q with p not dividing q, lowest digit nonzero
    CHECK(d.l == checked_mul(pw(d.p, d.valuation), d.coprime));
    CHECK(d.coprime % d.p != 0);
    if (d.coprime > 0) CHECK(d.coprime_digits.digit(0) != 0);
    CHECK(d.coprime_digits.reconstruct() == d.coprime);

    const auto& digs = d.coprime_digits;
    for (std::size_t a = 0; a < d.run_count(); ++a) {
        const DigitRun& r = d.runs[a];
        CHECK(r.hi >= r.lo);
        // run digits all p-1, boundary digits differ (maximality)
        for (u32 nu = r.lo; nu <= r.hi; ++nu) CHECK(digs.digit(nu) == d.p - 1);
        CHECK(digs.digit(r.hi + 1) != d.p - 1);
        if (r.lo > 0) CHECK(digs.digit(r.lo - 1) != d.p - 1);
        // ordering: most significant first, gap of at least 2
        if (a + 1 < d.run_count()) CHECK(r.lo >= d.runs[a + 1].hi + 2);
        // reconstruction and the closed form for with_run
        CHECK(d.coprime == r.above + (pw(d.p, r.hi + 1) - pw(d.p, r.lo)) + r.below);
        CHECK(r.with_run == r.above + pw(d.p, r.hi + 1) - pw(d.p, r.lo));
    }
    // every digit equal to p-1 lies in exactly one run
    std::size_t covered = 0;
    for (const auto& r : d.runs) covered += r.hi - r.lo + 1;
    std::size_t count = 0;
    for (std::size_t nu = 0; nu < digs.digits.size(); ++nu)
        if (digs.digits[nu] == d.p - 1) ++count;
    CHECK(covered == count);
    // p = 2 chaining: with_run(alpha) = above(alpha+1), last with_run = q
    if (d.p == 2 && d.run_count() > 0) {
        for (std::size_t a = 0; a + 1 < d.run_count(); ++a)
            CHECK(d.runs[a].with_run == d.runs[a + 1].above);
        CHECK(d.runs.back().with_run == d.coprime);
    }
}

} // namespace

TEST_CASE("decompose: structural invariants over a sweep") {
    const auto primes = primes_up_to(97);
    for (u64 l = 1; l <= 3000; ++l)
        for (u64 p : primes) check_invariants(decompose(l, p));
    // a few larger spot checks near the cap
    for (u64 l : {100000ull, 999999ull, 1000000ull})
        for (u64 p : {2ull, 3ull, 5ull, 999983ull}) check_invariants(decompose(l, p));
}

TEST_CASE("round trip: q reconstruction from every run, l <= 1e5, p <= 97") {
    const auto primes = primes_up_to(97);
    u64 failures = 0, runs = 0;
    for (u64 l = 1; l <= 100000; ++l) {
        for (u64 p : primes) {
            const auto d = decompose(l, p);
            for (const auto& r : d.runs) {
                ++runs;
                const u64 rebuilt =
                    r.above + (checked_pow(p, r.hi + 1) - checked_pow(p, r.lo)) + r.below;
                if (rebuilt != d.coprime || r.with_run != rebuilt - r.below) ++failures;
            }
        }
    }
    CHECK(failures == 0);
    CHECK(runs > 1000000);  // the sweep actually exercised the invariant
}

TEST_CASE("relevant_primes: rejects l beyond the base cap") {
    CHECK_THROWS_AS(relevant_primes(kMaxBase + 1), std::invalid_argument);
    CHECK_NOTHROW(relevant_primes(kMaxBase));
}
