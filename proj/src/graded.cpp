#include "polytors/graded.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace polytors {

std::string to_string(Status s) {
    switch (s) {
        case Status::complete: return "complete";
        case Status::partial_up_to_order_p: return "partial";
        case Status::unknown: return "unknown";
    }
    throw std::logic_error("bad status");
}

Status status_from_string(const std::string& s) {
    if (s == "complete") return Status::complete;
    if (s == "partial") return Status::partial_up_to_order_p;
    if (s == "unknown") return Status::unknown;
    throw std::invalid_argument("unrecognized status '" + s + "'");
}

FinAbGroup FinAbGroup::cyclic(u64 order) {
    if (order == 0) throw std::invalid_argument("cyclic group order must be >= 1");
    FinAbGroup g;
    for (u64 d = 2; d * d <= order; ++d) {
        if (order % d != 0) continue;
        u32 e = 0;
        while (order % d == 0) { order /= d; ++e; }
        g.torsion.emplace_back(d, e);
    }
    if (order > 1) g.torsion.emplace_back(order, 1);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

void FinAbGroup::add_torsion(u64 p, u32 e) {
    if (e == 0) throw std::invalid_argument("torsion exponent must be >= 1");
    auto it = std::lower_bound(torsion.begin(), torsion.end(), std::make_pair(p, e));
    torsion.insert(it, {p, e});
}

std::optional<u64> FinAbGroup::order() const {
    if (free_rank > 0) return std::nullopt;
    u64 n = 1;
    for (const auto& [p, e] : torsion) n = checked_mul(n, checked_pow(p, e));
    return n;
}

bool FinAbGroup::is_cyclic() const {
    if (free_rank >= 2) return false;
    if (free_rank == 1) return torsion.empty();
    for (std::size_t i = 1; i < torsion.size(); ++i)
        if (torsion[i].first == torsion[i - 1].first) return false;
    return true;
}

bool FinAbGroup::contains(const FinAbGroup& sub) const {
    if (sub.free_rank > free_rank) return false;
    std::map<std::pair<u64, u32>, int> counts;
    for (const auto& t : torsion) ++counts[t];
    for (const auto& t : sub.torsion)
        if (--counts[t] < 0) return false;
    return true;
}

static std::vector<std::pair<u64, u32>>
multiset_max(const std::vector<std::pair<u64, u32>>& a, const std::vector<std::pair<u64, u32>>& b) {
    std::map<std::pair<u64, u32>, int> counts;
    for (const auto& t : a) ++counts[t];
    std::map<std::pair<u64, u32>, int> cb;
    for (const auto& t : b) ++cb[t];
    for (const auto& [t, c] : cb) counts[t] = std::max(counts[t], c);
    std::vector<std::pair<u64, u32>> out;
    for (const auto& [t, c] : counts)
        for (int i = 0; i < c; ++i) out.push_back(t);
    return out;
}

std::string render(const FinAbGroup& g) {
    if (g.is_trivial()) return "0";
    std::string out;
    auto append = [&out](const std::string& part) {
        if (!out.empty()) out += " \xE2\x8A\x95 ";  // " ⊕ "
        out += part;
    };
    if (g.free_rank == 1) append("Z");
    else if (g.free_rank > 1) append("Z^" + std::to_string(g.free_rank));
    for (const auto& [p, e] : g.torsion) append("Z/" + std::to_string(checked_pow(p, e)));
    return out;
}

std::string render(const DegreeEntry& e) {
    switch (e.status) {
        case Status::complete: return render(e.group);
        case Status::partial_up_to_order_p:
            return "\xE2\x8A\x87 " + render(e.group) + ", plus undetermined elementary p-torsion";
        case Status::unknown: return "unknown";
    }
    throw std::logic_error("bad status");
}

static DegreeEntry merge_entry(u64 degree, const DegreeEntry& x, const DegreeEntry& y) {
    if (x.status == Status::unknown) return y;
    if (y.status == Status::unknown) return x;
    if (x.status == Status::complete && y.status == Status::complete) {
        if (!(x.group == y.group))
            throw consistency_error(degree, render(x.group), render(y.group));
        return x;
    }
    if (x.status == Status::complete || y.status == Status::complete) {
        const DegreeEntry& full = x.status == Status::complete ? x : y;
        const DegreeEntry& part = x.status == Status::complete ? y : x;
        if (!full.group.contains(part.group))
            throw consistency_error(degree, render(full.group), render(part.group));
        return full;
    }
    DegreeEntry out;
    out.status = Status::partial_up_to_order_p;
    out.group.free_rank = std::max(x.group.free_rank, y.group.free_rank);
    out.group.torsion = multiset_max(x.group.torsion, y.group.torsion);
    return out;
}

GradedGroup merge(const GradedGroup& a, const GradedGroup& b) {
    if (a.n != b.n || a.l != b.l || a.k != b.k)
        throw std::invalid_argument("merge requires matching (n, l, k)");
    GradedGroup out(a.n, a.l, a.k, std::max(a.max_degree, b.max_degree));
    out.provenance = a.provenance.empty() ? b.provenance : a.provenance;
    for (u64 d = 0; d <= out.max_degree; ++d) {
        const bool in_a = d <= a.max_degree;
        const bool in_b = d <= b.max_degree;
        if (in_a && in_b) out.at(d) = merge_entry(d, a.at(d), b.at(d));
        else out.at(d) = in_a ? a.at(d) : b.at(d);
    }
    return out;
}

static std::string space_name(const GradedGroup& g) {
    std::ostringstream os;
    if (g.k) os << "P_{" << *g.k << "," << g.n << "}^" << g.l;
    else os << "W^" << g.l << "(S^" << 2 * g.n - 2 << ")";
    return os.str();
}

static std::string degree_line(u64 lo, u64 hi, const DegreeEntry& e) {
    std::string label = "H_" + std::to_string(lo);
    if (hi != lo) label += "..H_" + std::to_string(hi);
    const std::string body = render(e);
    if (e.status == Status::partial_up_to_order_p) return label + " " + body;
    return label + " = " + body;
}

std::string render(const GradedGroup& g, Format format) {
    if (format == Format::json) return to_json(g).dump(2) + "\n";

    std::ostringstream os;
    if (format == Format::markdown) {
        os << "### H_*(" << space_name(g) << "; Z), degrees 0.." << g.max_degree << "\n\n";
        os << "| degree | group | status |\n|---|---|---|\n";
        for (u64 d = 0; d <= g.max_degree; ++d)
            os << "| " << d << " | " << render(g.at(d)) << " | " << to_string(g.at(d).status)
               << " |\n";
        return os.str();
    }

    os << "H_*(" << space_name(g) << "; Z), degrees 0.." << g.max_degree << "\n";
    u64 d = 0;
    while (d <= g.max_degree) {
        u64 hi = d;
        while (hi + 1 <= g.max_degree && g.at(hi + 1) == g.at(d)) ++hi;
        os << degree_line(d, hi, g.at(d)) << "\n";
        d = hi + 1;
    }
    return os.str();
}

nlohmann::ordered_json to_json(const GradedGroup& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n;
    j["l"] = g.l;
    if (g.k) j["k"] = *g.k;
    else j["k"] = "inf";
    auto groups = nlohmann::ordered_json::array();
    for (u64 d = 0; d <= g.max_degree; ++d) {
        const DegreeEntry& e = g.at(d);
        nlohmann::ordered_json item;
        item["degree"] = d;
        item["free_rank"] = e.group.free_rank;
        auto torsion = nlohmann::ordered_json::array();
        for (const auto& [p, exp] : e.group.torsion)
            torsion.push_back(nlohmann::ordered_json::array({p, exp}));
        item["torsion"] = torsion;
        item["status"] = to_string(e.status);
        groups.push_back(item);
    }
    j["groups"] = groups;
    return j;
}

GradedGroup graded_group_from_json(const nlohmann::json& j) {
    std::optional<u64> k;
    if (j.at("k").is_string()) {
        if (j.at("k").get<std::string>() != "inf")
            throw std::invalid_argument("k must be an integer or \"inf\"");
    } else {
        k = j.at("k").get<u64>();
    }
    u64 max_degree = 0;
    for (const auto& item : j.at("groups"))
        max_degree = std::max(max_degree, item.at("degree").get<u64>());

    GradedGroup g(j.at("n").get<u32>(), j.at("l").get<u64>(), k, max_degree);
    for (const auto& item : j.at("groups")) {
        DegreeEntry e;
        e.group.free_rank = item.at("free_rank").get<u64>();
        for (const auto& t : item.at("torsion"))
            e.group.add_torsion(t.at(0).get<u64>(), t.at(1).get<u32>());
        e.status = status_from_string(item.at("status").get<std::string>());
        g.at(item.at("degree").get<u64>()) = e;
    }
    return g;
}

} // namespace polytors
