#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polytors/common.hpp"

namespace polytors {

/// How much of a degree's group is actually known.
enum class Status {
    complete,              ///< the group is known exactly
    partial_up_to_order_p, ///< free part and all higher torsion known;
                           ///< elementary (order exactly p) torsion undetermined
    unknown,               ///< nothing asserted
};

std::string to_string(Status s);
Status status_from_string(const std::string& s);

/// Finitely generated abelian group in prime-power form:
/// Z^free_rank + sum of Z/p^e summands. Torsion is a multiset of (p, e)
/// pairs kept sorted by (p, e); exponents are >= 1.
struct FinAbGroup {
    u64 free_rank = 0;
    std::vector<std::pair<u64, u32>> torsion;

    static FinAbGroup trivial() { return {}; }
    static FinAbGroup free_of_rank(u64 r) { return {r, {}}; }
    /// Cyclic group of the given order (factorized); order 1 is trivial.
    static FinAbGroup cyclic(u64 order);

    void add_torsion(u64 p, u32 e);
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    /// Group order; nullopt when infinite.
    std::optional<u64> order() const;
    bool is_cyclic() const;
    /// Multiset containment: every summand of `sub` occurs here at least
    /// as often, and free ranks are compatible.
    bool contains(const FinAbGroup& sub) const;

    bool operator==(const FinAbGroup&) const = default;
};

struct DegreeEntry {
    FinAbGroup group;
    Status status = Status::unknown;

    bool operator==(const DegreeEntry&) const = default;
};

/// Homology groups graded by degree, with per-degree knowledge status.
/// Entry d of `groups` describes degree d; every degree 0..max_degree is
/// present. k == nullopt means the stable space (k = infinity).
struct GradedGroup {
    u32 n = 2;
    u64 l = 0;
    std::optional<u64> k;
    u64 max_degree = 0;
    std::string provenance;  ///< free-form generation note; not serialized
    std::vector<DegreeEntry> groups;

    GradedGroup() = default;
    GradedGroup(u32 n_, u64 l_, std::optional<u64> k_, u64 max_degree_)
        : n(n_), l(l_), k(k_), max_degree(max_degree_), groups(max_degree_ + 1) {}

    DegreeEntry& at(u64 degree) { return groups.at(degree); }
    const DegreeEntry& at(u64 degree) const { return groups.at(degree); }
};

/// Per-degree union of knowledge. Requires equal (n, l, k). Complete beats
/// partial when consistent; throws consistency_error when a complete degree
/// contradicts a known summand or two complete degrees disagree.
GradedGroup merge(const GradedGroup& a, const GradedGroup& b);

enum class Format { text, markdown, json };

/// Group as text, e.g. "Z ⊕ Z/4", "0".
std::string render(const FinAbGroup& g);
/// Degree entry with status decoration.
std::string render(const DegreeEntry& e);
/// Whole graded group in the requested format.
std::string render(const GradedGroup& g, Format format);

/// Fixed serialization schema:
/// {"n":..,"l":..,"k":..|"inf","groups":[{"degree":d,"free_rank":r,
///  "torsion":[[p,e],...],"status":"complete|partial|unknown"}]}
nlohmann::ordered_json to_json(const GradedGroup& g);
GradedGroup graded_group_from_json(const nlohmann::json& j);

} // namespace polytors
