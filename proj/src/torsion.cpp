#include "polytors/torsion.hpp"

#include <algorithm>
#include <sstream>

#include "polytors/arnold.hpp"

namespace polytors {

namespace {

void require_n(u32 n) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
}

/// p^valuation * (above + p^{hi+1}) for one run; the quantity whose doubling
/// (scaled by n-1) gives degree + 2 and whose n-fold gives least_k.
u64 run_core(const RunDecomposition& dec, const DigitRun& run) {
    const u128 scale = checked_pow(dec.p, dec.valuation);
    const u128 inner = static_cast<u128>(run.above) + checked_pow(dec.p, run.hi + 1);
    return narrow(scale * inner);
}

TorsionSummand make_summand(const RunDecomposition& dec, u32 n, u32 alpha) {
    const DigitRun& run = dec.run(alpha);
    TorsionSummand s;
    s.p = dec.p;
    s.alpha = alpha;
    s.exponent = run.hi - run.lo + 2;
    const u64 core = run_core(dec, run);
    s.degree = narrow(static_cast<u128>(2) * (n - 1) * core - 2);
    s.least_k = checked_mul(n, core);
    s.omitted = dec.valuation == 0 && alpha == dec.run_count();
    if (s.omitted) {
        std::ostringstream os;
        os << "p = " << dec.p << " does not divide l: the candidate class of the final run is "
           << "withheld";
        if (run.lo == 0)
            os << " (it reaches digit 0, so it is the mod-p reduction of the free generator in "
               << "degree 2l, not torsion)";
        else
            os << " (the run stops above digit 0; whether this class is torsion is a recorded "
               << "open question)";
        s.omit_reason = os.str();
    }
    return s;
}

} // namespace

std::vector<TorsionSummand> higher_torsion(u64 l, u32 n, u64 p) {
    require_n(n);
    const RunDecomposition dec = decompose(l, p);
    std::vector<TorsionSummand> out;
    out.reserve(dec.run_count());
    // Degrees decrease strictly with the run index, so reversed run order is
    // ascending degree order.
    for (u32 alpha = static_cast<u32>(dec.run_count()); alpha >= 1; --alpha)
        out.push_back(make_summand(dec, n, alpha));
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i - 1].degree >= out[i].degree)
            throw std::logic_error("run degrees not strictly decreasing");
    return out;
}

std::vector<TorsionSummand> all_higher_torsion(u64 l, u32 n) {
    require_n(n);
    std::vector<TorsionSummand> out;
    for (u64 p : relevant_primes(l)) {
        auto part = higher_torsion(l, n, p);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::stable_sort(out.begin(), out.end(), [](const TorsionSummand& a, const TorsionSummand& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.p < b.p;
    });
    return out;
}

std::vector<TorsionSummand> asserted_summands(const std::vector<TorsionSummand>& all) {
    std::vector<TorsionSummand> out;
    for (const auto& s : all)
        if (!s.omitted) out.push_back(s);
    return out;
}

namespace {

/// Monomial x^a (x) Q_1^t(iota), optionally under the Bockstein, with degree
/// and weight accumulated by iterating the generator rules.
WeightedClass build_class(const RunDecomposition& dec, u32 n, u64 x_exponent, u32 q1_iterations,
                          bool bockstein) {
    const u64 p = dec.p;
    u128 deg = 2 * static_cast<u128>(n) - 3;  // deg iota
    u128 wt = n;                              // w(iota)
    for (u32 t = 0; t < q1_iterations; ++t) {
        deg = deg * p + (p - 1);
        wt = wt * p;
    }
    if (bockstein) deg -= 1;
    deg += static_cast<u128>(x_exponent) * (2 * n - 2);  // x^a contributes a * deg x
    wt += static_cast<u128>(x_exponent) * n;             // and a * w(x)

    WeightedClass c;
    std::ostringstream os;
    os << "x^" << x_exponent << " \xE2\x8A\x97 ";  // ⊗
    if (bockstein) os << "\xCE\xB2";               // β
    os << "Q_1^" << q1_iterations << "(\xCE\xB9)"; // ι
    c.description = os.str();
    c.degree = narrow(deg);
    c.weight = narrow(wt);
    return c;
}

} // namespace

WeightedClass bockstein_source(const RunDecomposition& dec, u32 n, u32 alpha) {
    require_n(n);
    const DigitRun& run = dec.run(alpha);
    const u64 scale = checked_pow(dec.p, dec.valuation);
    return build_class(dec, n, checked_mul(scale, run.above), dec.valuation + run.hi + 1, false);
}

WeightedClass bockstein_target(const RunDecomposition& dec, u32 n, u32 alpha) {
    require_n(n);
    const DigitRun& run = dec.run(alpha);
    const u64 scale = checked_pow(dec.p, dec.valuation);
    return build_class(dec, n, checked_mul(scale, run.with_run), dec.valuation + run.lo, true);
}

u64 least_k_via_weight(u64 l, u32 n, u64 p, u32 alpha) {
    return bockstein_target(decompose(l, p), n, alpha).weight;
}

namespace {

u64 free_generator_degree(u64 l, u32 n) {
    // deg(x^l (x) iota) = (2n-2) l + 2n-3
    return narrow(static_cast<u128>(2 * n - 2) * l + (2 * n - 3));
}

void add_summands(GradedGroup& g, const std::vector<TorsionSummand>& summands,
                  std::optional<u64> k_gate) {
    for (const auto& s : summands) {
        if (s.omitted) continue;
        if (k_gate && s.least_k > *k_gate) continue;
        if (s.degree > g.max_degree) continue;
        g.at(s.degree).group.add_torsion(s.p, s.exponent);
        g.at(s.degree).status = Status::partial_up_to_order_p;
    }
}

} // namespace

GradedGroup homology_of_w(u64 l, u32 n, std::optional<u64> p, u64 max_degree) {
    require_n(n);
    if (l == 0) throw std::domain_error("l must be positive");

    GradedGroup g(n, l, std::nullopt, max_degree);
    g.provenance = "stable space; all higher torsion listed, elementary torsion undetermined";
    g.at(0) = {FinAbGroup::free_of_rank(1), Status::complete};

    if (n == 2) {
        // Degrees 1..2l vanish; everything above is known up to elementary torsion.
        for (u64 d = 1; d <= max_degree; ++d)
            g.at(d).status = d <= 2 * l ? Status::complete : Status::partial_up_to_order_p;
    }

    const u64 free_deg = free_generator_degree(l, n);
    if (free_deg <= max_degree) {
        g.at(free_deg).group.free_rank = 1;
        g.at(free_deg).status = Status::partial_up_to_order_p;
        if (n > 2) g.provenance += "; free generator degree derived from deg x, deg iota";
    }

    add_summands(g, p ? higher_torsion(l, n, *p) : all_higher_torsion(l, n), std::nullopt);
    return g;
}

GradedGroup homology_of_p(u64 k, u32 n, u64 l, u64 max_degree) {
    require_n(n);
    if (l == 0) throw std::domain_error("l must be positive");
    if (k == 0) throw std::domain_error("k must be positive");

    const u64 contractible_below = checked_mul(n, checked_add(l, 1));
    if (k < contractible_below) {
        GradedGroup g(n, l, k, max_degree);
        g.provenance = "contractible: k < n(l+1)";
        for (u64 d = 0; d <= max_degree; ++d) g.at(d) = {FinAbGroup::trivial(), Status::complete};
        g.at(0) = {FinAbGroup::free_of_rank(1), Status::complete};
        return g;
    }

    GradedGroup g(n, l, k, max_degree);
    g.provenance = "torsion gated by least_k";
    g.at(0) = {FinAbGroup::free_of_rank(1), Status::complete};

    if (n == 2) {
        for (u64 d = 1; d <= max_degree && d <= 2 * l; ++d)
            g.at(d) = {FinAbGroup::trivial(), Status::complete};
        for (u64 d = 2 * l + 1; d <= max_degree; ++d)
            g.at(d).status = Status::partial_up_to_order_p;
        if (2 * l + 1 <= max_degree)
            g.at(2 * l + 1).group.free_rank = 1;
        add_summands(g, all_higher_torsion(l, 2), k);

        // Degrees 2l+1..2l+5 are known exactly from the order table; merging
        // consistency-checks them against the gated predictions.
        GradedGroup table(n, l, k, max_degree);
        table.provenance = "order table rows";
        const ArnoldRow row = table_orders(l, k);
        for (int c = 0; c < 5; ++c) {
            const u64 d = 2 * l + 1 + static_cast<u64>(c);
            if (d > max_degree) break;
            const CyclicOrder& ord = row.orders[c];
            table.at(d).group =
                ord.is_infinite ? FinAbGroup::free_of_rank(1) : FinAbGroup::cyclic(ord.order);
            table.at(d).status = Status::complete;
        }
        return merge(g, table);
    }

    // n > 2: only the gated summand degrees are asserted (up to elementary
    // torsion); no vanishing range and no free class at finite k.
    add_summands(g, all_higher_torsion(l, n), k);
    return g;
}

} // namespace polytors
