#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytors/common.hpp"
#include "polytors/digits.hpp"
#include "polytors/graded.hpp"

namespace polytors {

/// One predicted direct summand Z/p^exponent of H_degree(W^l(S^{2n-2}); Z),
/// appearing in H_degree(P_{k,n}^l; Z) exactly from k = least_k on.
///
/// `omitted` marks the final run of a decomposition with p coprime to l:
/// the torsion table withholds that summand (when the run reaches digit 0
/// its class is the mod-p reduction of the free generator, not torsion).
/// Withheld entries are kept in the output so the verifier can probe them.
struct TorsionSummand {
    u64 p = 2;
    u32 alpha = 1;       ///< 1-based run index, most significant run first
    u64 degree = 0;      ///< homological degree d_{n,alpha}
    u32 exponent = 2;    ///< mu_alpha = hi - lo + 2 >= 2
    u64 least_k = 0;     ///< n * p^m * (above + p^{hi+1})
    bool omitted = false;
    std::string omit_reason;

    u64 order() const { return checked_pow(p, exponent); }
};

/// All higher p-torsion of H_*(W^l(S^{2n-2}); Z): one entry per run of
/// decompose(l, p), sorted by degree (ascending). Empty when there are no
/// runs. Withheld entries carry omitted = true; the asserted torsion is the
/// non-omitted sublist.
std::vector<TorsionSummand> higher_torsion(u64 l, u32 n, u64 p);

/// Union of higher_torsion over relevant_primes(l), sorted by (degree, p).
std::vector<TorsionSummand> all_higher_torsion(u64 l, u32 n);

/// Non-omitted sublist, order preserved.
std::vector<TorsionSummand> asserted_summands(const std::vector<TorsionSummand>& all);

/// A monomial class x^a (x) [beta] Q_1^t(iota) with its degree and weight,
/// built from the generator data deg x = 2n-2, deg iota = 2n-3,
/// w(x) = w(iota) = n, deg Q_1(y) = p*deg(y) + p-1, w(Q_1(y)) = p*w(y);
/// the Bockstein lowers degree by 1 and keeps the weight.
struct WeightedClass {
    std::string description;
    u64 degree = 0;
    u64 weight = 0;
};

/// The two classes paired by the undetermined Bockstein for run alpha:
/// source  x^{p^m u} (x) Q_1^{m+hi+1}(iota)        (degree d+1)
/// target  x^{p^m v} (x) beta Q_1^{m+lo}(iota)     (degree d, weight d+2 at n=2)
WeightedClass bockstein_source(const RunDecomposition& dec, u32 n, u32 alpha);
WeightedClass bockstein_target(const RunDecomposition& dec, u32 n, u32 alpha);

/// Least k at which run alpha's summand appears, derived from the weight
/// filtration (weight of the Bockstein target class). Independent of the
/// degree-based least_k stored in TorsionSummand; the two must agree.
u64 least_k_via_weight(u64 l, u32 n, u64 p, u32 alpha);

/// Homology of the stable space W^l(S^{2n-2}) up to max_degree.
/// Degree 0 carries Z; the free generator sits in degree (2n-2)l + 2n-3;
/// non-omitted summands contribute their torsion. For n = 2 degrees 1..2l
/// vanish (complete); higher degrees are partial. For n > 2 only the listed
/// degrees are asserted, the rest stay unknown. An optional prime restricts
/// the torsion to that prime.
GradedGroup homology_of_w(u64 l, u32 n, std::optional<u64> p, u64 max_degree);

/// Homology of P_{k,n}^l up to max_degree. Contractible (C^k) when
/// k < n(l+1). For n = 2 the order table rows for degrees 2l+2..2l+5 are
/// merged with the k-gated summand predictions (consistency-checked);
/// throws consistency_error on contradiction.
GradedGroup homology_of_p(u64 k, u32 n, u64 l, u64 max_degree);

} // namespace polytors
