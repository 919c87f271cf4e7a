#include "polytors/arnold.hpp"

#include <numeric>

namespace polytors {

u64 a_over_b(u64 a, u64 b) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("a/b notation requires positive integers");
    return a / std::gcd(a, b);
}

int bracket_for_k(u64 l, u64 k) {
    const u64 first = checked_add(checked_mul(2, l), 2);
    if (k < first)
        throw std::domain_error("k = " + std::to_string(k) + " is below the first bracket k >= " +
                                std::to_string(first) + " (contractible range)");
    const u64 b = (k - first) / 2;
    return b >= 4 ? 4 : static_cast<int>(b);
}

static ArnoldRow row_for_bracket(u64 l, int bracket) {
    ArnoldRow row;
    row.l = l;
    row.bracket = bracket;
    row.k_min = 2 * l + 2 + 2 * static_cast<u64>(bracket);
    if (bracket < 4) row.k_max = row.k_min + 1;

    const auto inf = CyclicOrder::infinite();
    const auto one = CyclicOrder::cyclic(1);
    row.orders = {inf, one, one, one, one};

    // Column orders switch on bracket by bracket, exactly one new column per
    // row except the j = 2l+4 column, which grows once more in bracket 3.
    if (bracket >= 1) row.orders[1] = CyclicOrder::cyclic(l + 2);
    if (bracket >= 2) {
        row.orders[2] = CyclicOrder::cyclic(a_over_b(2, l + 1));
        row.orders[3] = CyclicOrder::cyclic(a_over_b(l + 3, 2));
    }
    if (bracket >= 3)
        row.orders[3] = CyclicOrder::cyclic(checked_mul(a_over_b(l + 3, 2), a_over_b(2, l + 1)));
    if (bracket == 3) row.orders[4] = CyclicOrder::cyclic(a_over_b(3, l + 1));
    if (bracket >= 4) row.orders[4] = CyclicOrder::cyclic(a_over_b(6, l + 1));
    return row;
}

ArnoldRow table_orders(u64 l, u64 k) {
    if (l == 0) throw std::domain_error("l must be positive");
    return row_for_bracket(l, bracket_for_k(l, k));
}

ArnoldRow table_orders_stable(u64 l) {
    if (l == 0) throw std::domain_error("l must be positive");
    return row_for_bracket(l, 4);
}

std::array<ArnoldRow, 5> full_table(u64 l) {
    if (l == 0) throw std::domain_error("l must be positive");
    return {row_for_bracket(l, 0), row_for_bracket(l, 1), row_for_bracket(l, 2),
            row_for_bracket(l, 3), row_for_bracket(l, 4)};
}

} // namespace polytors
