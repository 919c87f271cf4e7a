#include <doctest.h>

#include "polytors/arnold.hpp"
#include "polytors/torsion.hpp"

using namespace polytors;

namespace {

std::array<u64, 5> finite_orders(const ArnoldRow& row) {
    std::array<u64, 5> out{};
    for (int c = 0; c < 5; ++c) out[c] = row.orders[c].is_infinite ? 0 : row.orders[c].order;
    return out;
}

} // namespace

TEST_CASE("a_over_b") {
    CHECK(a_over_b(2, 2) == 1);
    CHECK(a_over_b(6, 2) == 3);
    CHECK(a_over_b(17, 1) == 17);
    CHECK(a_over_b(12, 18) == 2);
    CHECK_THROWS_AS(a_over_b(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(a_over_b(3, 0), std::invalid_argument);
}

TEST_CASE("table_orders: worked rows") {
    {
        auto row = table_orders(1, 8);
        CHECK(row.orders[0].is_infinite);
        CHECK(finite_orders(row) == std::array<u64, 5>{0, 3, 1, 2, 1});
        CHECK(row.k_min == 8);
        CHECK(row.k_max == 9);
    }
    {
        auto row = table_orders(1, 100);
        CHECK(row.orders[0].is_infinite);
        CHECK(finite_orders(row) == std::array<u64, 5>{0, 3, 1, 2, 3});
        CHECK(row.bracket == 4);
        CHECK_FALSE(row.k_max.has_value());
    }
    for (u64 l : {1ull, 2ull, 7ull, 40ull}) {
        auto row = table_orders(l, 2 * l + 2);
        CHECK(row.orders[0].is_infinite);
        CHECK(finite_orders(row) == std::array<u64, 5>{0, 1, 1, 1, 1});
    }
}

TEST_CASE("table_orders: bracket boundaries and errors") {
    CHECK_THROWS_AS(table_orders(1, 3), std::domain_error);  // k < 2l+2
    CHECK(table_orders(1, 4).bracket == 0);
    CHECK(table_orders(1, 5).bracket == 0);  // odd k shares the row of k-1
    CHECK(table_orders(1, 11).bracket == 3);
    CHECK(table_orders(1, 12).bracket == 4);
    CHECK(table_orders(1, 13).bracket == 4);
    CHECK(table_orders_stable(1) == table_orders(1, 1u << 20));
}

TEST_CASE("table rows are monotone: each finite order divides the next bracket's") {
    for (u64 l = 1; l <= 400; ++l) {
        auto rows = full_table(l);
        for (int b = 0; b + 1 < 5; ++b) {
            for (int c = 0; c < 5; ++c) {
                const auto& cur = rows[b].orders[c];
                const auto& nxt = rows[b + 1].orders[c];
                if (cur.is_infinite) {
                    CHECK(nxt.is_infinite);
                } else {
                    REQUIRE_FALSE(nxt.is_infinite);
                    CHECK(nxt.order % cur.order == 0);
                }
            }
        }
    }
}

namespace {

u32 valuation_of(u64 n, u64 p) {
    u32 e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return e;
}

} // namespace

// Concordance between the order table and the digit-run torsion summands,
// both directions, over l <= 500. The converse direction scans the full
// summand list (withheld entries included): the table's odd-prime squares at
// column 2l+2 / 2l+4 are produced exactly by withheld final runs.
TEST_CASE("table vs summands: concordance on the five-column window") {
    for (u64 l = 1; l <= 500; ++l) {
        const auto rows = full_table(l);
        const auto all = all_higher_torsion(l, 2);

        for (const auto& s : all) {
            if (s.degree < 2 * l + 2 || s.degree > 2 * l + 5) continue;
            const int col = static_cast<int>(s.degree - (2 * l + 1));
            const int b = bracket_for_k(l, s.least_k);
            REQUIRE_FALSE(rows[b].orders[col].is_infinite);
            // p-part of the order in the least_k bracket matches the summand
            CHECK(valuation_of(rows[b].orders[col].order, s.p) == s.exponent);
            // the order first appears exactly at the bracket start
            CHECK(s.least_k == rows[b].k_min);
            if (b > 0) CHECK(valuation_of(rows[b - 1].orders[col].order, s.p) == 0);
        }

        // converse: exponent >= 2 p-parts of stable orders are all predicted
        for (int col = 1; col < 5; ++col) {
            u64 order = rows[4].orders[col].order;
            for (u64 p = 2; p * p <= order; ++p) {
                if (order % p != 0) continue;
                const u32 e = valuation_of(order, p);
                while (order % p == 0) order /= p;
                if (e < 2) continue;
                bool predicted = false;
                for (const auto& s : all)
                    predicted |= s.p == p && s.exponent == e &&
                                 s.degree == 2 * l + 1 + static_cast<u64>(col);
                CHECK_MESSAGE(predicted, "l=", l, " col=", col, " p=", p, " e=", e);
            }
        }
    }
}
