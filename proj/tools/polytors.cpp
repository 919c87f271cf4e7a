// polytors: exact integral homology of the spaces P_{k,n}^l of monic degree-k
// complex polynomials with at most l n-fold roots.
//
// Subcommands: homology, torsion, table, verify. Results go to stdout,
// diagnostics to stderr. Exit codes: 0 success, 1 usage error, 2 internal
// consistency error, 3 strict-mode discrepancy.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polytors/arnold.hpp"
#include "polytors/digits.hpp"
#include "polytors/graded.hpp"
#include "polytors/oracle.hpp"
#include "polytors/torsion.hpp"

namespace {

using namespace polytors;
using nlohmann::ordered_json;

constexpr u64 kDefaultMaxL = 1'000'000;
constexpr u64 kMaxDegreeCap = 500'000;

struct Range {
    u64 lo = 0;
    u64 hi = 0;
};

u64 parse_u64(const std::string& s) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

Range parse_range(const std::string& s) {
    const auto dots = s.find("..");
    Range r;
    if (dots == std::string::npos) {
        r.lo = r.hi = parse_u64(s);
    } else {
        r.lo = parse_u64(s.substr(0, dots));
        r.hi = parse_u64(s.substr(dots + 2));
    }
    if (r.lo > r.hi) throw std::invalid_argument("empty range '" + s + "'");
    return r;
}

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "md") return Format::markdown;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + s + "'");
}

u64 max_l_cap() {
    if (const char* env = std::getenv("POLYTORS_MAX_L")) {
        return parse_u64(env);
    }
    return kDefaultMaxL;
}

void check_l(u64 l, u64 cap) {
    if (l == 0)
        throw std::invalid_argument(
            "l = 0 is the classical configuration space of distinct points and is out of scope; "
            "use l >= 1");
    if (l > cap)
        throw std::invalid_argument("l exceeds the configured cap " + std::to_string(cap) +
                                    " (override with POLYTORS_MAX_L)");
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + output_path + "'");
    out << text;
}

// ---------------------------------------------------------------- torsion --

std::string summand_group(const TorsionSummand& s) {
    return "Z/" + std::to_string(s.order());
}

std::string render_torsion_text(u64 l, u32 n, const std::vector<TorsionSummand>& summands) {
    std::ostringstream os;
    os << "higher torsion summands for l = " << l << ", n = " << n << "\n";
    if (summands.empty()) {
        os << "(none)\n";
        return os.str();
    }
    for (const auto& s : summands) {
        os << "p=" << s.p << " alpha=" << s.alpha << ": ";
        if (s.omitted)
            os << "withheld candidate " << summand_group(s) << " in degree " << s.degree
               << ", k >= " << s.least_k << " (" << s.omit_reason << ")";
        else
            os << summand_group(s) << " in degree " << s.degree << ", appears for k >= "
               << s.least_k;
        os << "\n";
    }
    return os.str();
}

std::string render_torsion_md(u64 l, u32 n, const std::vector<TorsionSummand>& summands) {
    std::ostringstream os;
    os << "### higher torsion summands, l = " << l << ", n = " << n << "\n\n";
    os << "| p | alpha | degree | summand | least k | withheld |\n|---|---|---|---|---|---|\n";
    for (const auto& s : summands)
        os << "| " << s.p << " | " << s.alpha << " | " << s.degree << " | " << summand_group(s)
           << " | " << s.least_k << " | " << (s.omitted ? "yes" : "no") << " |\n";
    return os.str();
}

ordered_json torsion_json(u64 l, u32 n, const std::vector<TorsionSummand>& summands) {
    ordered_json j;
    j["l"] = l;
    j["n"] = n;
    auto arr = ordered_json::array();
    for (const auto& s : summands) {
        ordered_json item;
        item["p"] = s.p;
        item["alpha"] = s.alpha;
        item["degree"] = s.degree;
        item["exponent"] = s.exponent;
        item["order"] = s.order();
        item["least_k"] = s.least_k;
        item["omitted"] = s.omitted;
        if (s.omitted) item["omit_reason"] = s.omit_reason;
        arr.push_back(item);
    }
    j["summands"] = arr;
    return j;
}

// ------------------------------------------------------------------ table --

std::string order_cell(const CyclicOrder& o) {
    return o.is_infinite ? "inf" : std::to_string(o.order);
}

std::string row_label(const ArnoldRow& row) {
    if (row.k_max) return std::to_string(row.k_min) + ", " + std::to_string(*row.k_max);
    return ">= " + std::to_string(row.k_min);
}

std::string render_table_text(u64 l) {
    const auto rows = full_table(l);
    std::vector<std::string> labels;
    std::size_t label_w = std::string("k \\ j").size();
    for (const auto& row : rows) {
        labels.push_back(row_label(row));
        label_w = std::max(label_w, labels.back().size());
    }
    std::size_t cell_w = 3;
    for (const auto& row : rows)
        for (const auto& o : row.orders) cell_w = std::max(cell_w, order_cell(o).size());
    for (int c = 0; c < 5; ++c)
        cell_w = std::max(cell_w, std::to_string(2 * l + 1 + c).size());

    auto pad = [](const std::string& s, std::size_t w) {
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };

    std::ostringstream os;
    os << "orders of H_j(P_{k,2}^" << l << "; Z), j = " << 2 * l + 1 << ".." << 2 * l + 5 << "\n";
    os << pad("k \\ j", label_w);
    for (int c = 0; c < 5; ++c) os << "  " << pad(std::to_string(2 * l + 1 + c), cell_w);
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << pad(labels[i], label_w);
        for (const auto& o : rows[i].orders) os << "  " << pad(order_cell(o), cell_w);
        os << "\n";
    }
    return os.str();
}

std::string render_table_md(u64 l) {
    const auto rows = full_table(l);
    std::ostringstream os;
    os << "### orders of H_j(P_{k,2}^" << l << "; Z)\n\n";
    os << "| k \\\\ j |";
    for (int c = 0; c < 5; ++c) os << " " << 2 * l + 1 + c << " |";
    os << "\n|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        os << "| " << row_label(row) << " |";
        for (const auto& o : row.orders) os << " " << order_cell(o) << " |";
        os << "\n";
    }
    return os.str();
}

ordered_json table_json(u64 l) {
    ordered_json j;
    j["l"] = l;
    auto cols = ordered_json::array();
    for (int c = 0; c < 5; ++c) cols.push_back(2 * l + 1 + c);
    j["columns"] = cols;
    auto arr = ordered_json::array();
    for (const auto& row : full_table(l)) {
        ordered_json item;
        item["k_min"] = row.k_min;
        if (row.k_max) item["k_max"] = *row.k_max;
        else item["k_max"] = nullptr;
        item["stable"] = !row.k_max.has_value();
        auto orders = ordered_json::array();
        for (const auto& o : row.orders) {
            if (o.is_infinite) orders.push_back("inf");
            else orders.push_back(o.order);
        }
        item["orders"] = orders;
        arr.push_back(item);
    }
    j["rows"] = arr;
    return j;
}

// ----------------------------------------------------------------- verify --

struct SweepResult {
    Range l_range, p_range;
    bool strict = false;
    u64 decompositions = 0;
    u64 runs = 0;
    u64 agreed_m_positive = 0;
    u64 agreed_m_zero = 0;
    u64 omitted_consistent = 0;
    u64 open_questions = 0;
    u64 mismatches = 0;
    std::vector<RunReport> flagged;  ///< open questions and mismatches, sorted

    int exit_code() const {
        if (mismatches > 0) return 2;
        if (strict && open_questions > 0) return 3;
        return 0;
    }
};

SweepResult run_sweep(Range l_range, Range p_range, bool strict, unsigned jobs) {
    const std::vector<u64> primes = [&] {
        std::vector<u64> out;
        for (u64 p : primes_up_to(p_range.hi))
            if (p >= p_range.lo) out.push_back(p);
        return out;
    }();

    const u64 total = l_range.hi - l_range.lo + 1;
    if (jobs == 0) jobs = 1;
    jobs = static_cast<unsigned>(std::min<u64>(jobs, total));

    std::vector<std::vector<VerificationReport>> partial(jobs);
    auto worker = [&](unsigned w) {
        for (u64 l = l_range.lo + w; l <= l_range.hi; l += jobs) {
            for (u64 p : primes) partial[w].push_back(verify(l, p, strict));
        }
    };
    std::vector<std::thread> threads;
    for (unsigned w = 1; w < jobs; ++w) threads.emplace_back(worker, w);
    worker(0);
    for (auto& t : threads) t.join();

    std::vector<VerificationReport> reports;
    for (auto& chunk : partial)
        for (auto& rep : chunk) reports.push_back(std::move(rep));
    std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        return a.l != b.l ? a.l < b.l : a.p < b.p;
    });

    SweepResult res;
    res.l_range = l_range;
    res.p_range = p_range;
    res.strict = strict;
    for (const auto& rep : reports) {
        ++res.decompositions;
        for (const auto& r : rep.runs) {
            ++res.runs;
            switch (r.check) {
                case RunCheck::agreed:
                    ++(r.valuation >= 1 ? res.agreed_m_positive : res.agreed_m_zero);
                    break;
                case RunCheck::omitted_consistent: ++res.omitted_consistent; break;
                case RunCheck::open_question:
                    ++res.open_questions;
                    res.flagged.push_back(r);
                    break;
                case RunCheck::mismatch:
                    ++res.mismatches;
                    res.flagged.push_back(r);
                    break;
            }
        }
    }
    return res;
}

std::string verify_result_word(const SweepResult& res) {
    if (res.mismatches > 0) return "FAIL";
    if (res.strict && res.open_questions > 0) return "STRICT-DISCREPANCY";
    return "PASS";
}

std::string render_verify_text(const SweepResult& res) {
    std::ostringstream os;
    os << "verify: l in [" << res.l_range.lo << ", " << res.l_range.hi << "], p in ["
       << res.p_range.lo << ", " << res.p_range.hi << "], strict = "
       << (res.strict ? "on" : "off") << "\n";
    os << "decompositions checked: " << res.decompositions << "\n";
    os << "runs checked: " << res.runs << "\n";
    if (res.mismatches == 0) {
        os << "all m >= 1 runs agree (" << res.agreed_m_positive << " runs)\n";
        os << "all m = 0 non-final runs agree (" << res.agreed_m_zero << " runs)\n";
        os << "all withheld final runs reaching digit 0 are consistent ("
           << res.omitted_consistent << " runs)\n";
    } else {
        os << "MISMATCHES: " << res.mismatches << " (see stderr)\n";
        os << "agreed m >= 1 runs: " << res.agreed_m_positive << "\n";
        os << "agreed m = 0 non-final runs: " << res.agreed_m_zero << "\n";
        os << "consistent withheld final runs (digit 0): " << res.omitted_consistent << "\n";
    }
    os << "documented open questions (withheld final run above digit 0): " << res.open_questions
       << "\n";
    os << "result: " << verify_result_word(res) << "\n";
    return os.str();
}

std::string render_verify_md(const SweepResult& res) {
    std::ostringstream os;
    os << "### verify l in [" << res.l_range.lo << ", " << res.l_range.hi << "], p in ["
       << res.p_range.lo << ", " << res.p_range.hi << "]\n\n";
    os << "| metric | value |\n|---|---|\n";
    os << "| strict | " << (res.strict ? "on" : "off") << " |\n";
    os << "| decompositions | " << res.decompositions << " |\n";
    os << "| runs | " << res.runs << " |\n";
    os << "| agreed (m >= 1) | " << res.agreed_m_positive << " |\n";
    os << "| agreed (m = 0, non-final) | " << res.agreed_m_zero << " |\n";
    os << "| withheld consistent | " << res.omitted_consistent << " |\n";
    os << "| open questions | " << res.open_questions << " |\n";
    os << "| mismatches | " << res.mismatches << " |\n";
    os << "| result | " << verify_result_word(res) << " |\n";
    return os.str();
}

ordered_json run_report_json(const RunReport& r) {
    ordered_json item;
    item["l"] = r.l;
    item["p"] = r.p;
    item["alpha"] = r.alpha;
    item["m"] = r.valuation;
    item["hi"] = r.hi;
    item["lo"] = r.lo;
    item["mu"] = r.mu;
    item["degree"] = r.degree;
    item["oracle_exponent"] = r.oracle_exp;
    item["admissible_empty"] = r.admissible_empty;
    item["check"] = to_string(r.check);
    item["note"] = r.note;
    return item;
}

ordered_json verify_json(const SweepResult& res) {
    ordered_json j;
    j["l_range"] = ordered_json::array({res.l_range.lo, res.l_range.hi});
    j["p_range"] = ordered_json::array({res.p_range.lo, res.p_range.hi});
    j["strict"] = res.strict;
    j["decompositions"] = res.decompositions;
    j["runs"] = res.runs;
    j["agreed_m_positive"] = res.agreed_m_positive;
    j["agreed_m_zero"] = res.agreed_m_zero;
    j["omitted_consistent"] = res.omitted_consistent;
    j["open_questions"] = res.open_questions;
    j["mismatches"] = res.mismatches;
    auto arr = ordered_json::array();
    for (const auto& r : res.flagged) arr.push_back(run_report_json(r));
    j["diagnostics"] = arr;
    j["result"] = verify_result_word(res);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"integral homology of spaces of monic polynomials with bounded root multiplicity"};
    app.require_subcommand(1);

    std::string format_str = "text";
    std::string output_path;

    // homology
    auto* cmd_homology = app.add_subcommand(
        "homology", "homology groups of P_{k,n}^l (or of the stable space, k = inf)");
    u64 h_l = 0;
    u32 h_n = 2;
    std::string h_k;
    u64 h_p = 0;
    u64 h_maxdeg = 0;
    cmd_homology->add_option("--l", h_l, "number of allowed n-fold roots")->required();
    cmd_homology->add_option("--n", h_n, "root multiplicity bound (>= 2)");
    cmd_homology->add_option("--k", h_k, "polynomial degree, or 'inf' for the stable space")
        ->required();
    cmd_homology->add_option("--p", h_p, "restrict torsion to one prime (stable space only)");
    auto* maxdeg_opt =
        cmd_homology->add_option("--max-degree", h_maxdeg, "largest homological degree to report");
    cmd_homology->add_option("--format", format_str, "text, md, or json")
        ->check(CLI::IsMember({"text", "md", "json"}));
    cmd_homology->add_option("--output", output_path, "write the result to a file");

    // torsion
    auto* cmd_torsion =
        app.add_subcommand("torsion", "higher torsion summands of the stable homology");
    u64 t_l = 0;
    u32 t_n = 2;
    u64 t_p = 0;
    bool t_show_omitted = false;
    cmd_torsion->add_option("--l", t_l, "number of allowed n-fold roots")->required();
    cmd_torsion->add_option("--n", t_n, "root multiplicity bound (>= 2)");
    cmd_torsion->add_option("--p", t_p, "single prime (default: all relevant primes)");
    cmd_torsion->add_flag("--show-omitted", t_show_omitted, "include withheld final-run entries");
    cmd_torsion->add_option("--format", format_str, "text, md, or json")
        ->check(CLI::IsMember({"text", "md", "json"}));
    cmd_torsion->add_option("--output", output_path, "write the result to a file");

    // table
    auto* cmd_table = app.add_subcommand("table", "order table of H_j(P_{k,2}^l; Z), all k brackets");
    u64 tb_l = 0;
    cmd_table->add_option("--l", tb_l, "number of allowed double roots")->required();
    cmd_table->add_option("--format", format_str, "text, md, or json")
        ->check(CLI::IsMember({"text", "md", "json"}));
    cmd_table->add_option("--output", output_path, "write the result to a file");

    // verify
    auto* cmd_verify = app.add_subcommand(
        "verify", "check the torsion table against the cokernel oracle over (l, p) ranges");
    std::string v_l_str, v_p_str = "2..31";
    bool v_strict = false;
    unsigned v_jobs = 1;
    cmd_verify->add_option("--l", v_l_str, "l value or range a..b")->required();
    cmd_verify->add_option("--p", v_p_str, "prime value or range a..b (default 2..31)");
    cmd_verify->add_flag("--strict", v_strict, "open-question diagnostics fail the run");
    cmd_verify->add_option("--jobs", v_jobs, "worker threads (output is order-independent)");
    cmd_verify->add_option("--format", format_str, "text, md, or json")
        ->check(CLI::IsMember({"text", "md", "json"}));
    cmd_verify->add_option("--output", output_path, "also write the JSON report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const u64 cap = max_l_cap();
        const Format format = parse_format(format_str);

        if (cmd_homology->parsed()) {
            check_l(h_l, cap);
            if (h_n < 2) throw std::invalid_argument("n must be >= 2");
            if (maxdeg_opt->count() == 0)
                h_maxdeg = h_n == 2 ? 2 * h_l + 7
                                    : narrow(static_cast<u128>(2 * h_n - 2) * h_l + 2 * h_n - 1);
            if (h_maxdeg > kMaxDegreeCap)
                throw std::invalid_argument("max degree too large; pass --max-degree <= " +
                                            std::to_string(kMaxDegreeCap));
            GradedGroup g;
            if (h_k == "inf") {
                std::optional<u64> p;
                if (h_p != 0) p = h_p;
                g = homology_of_w(h_l, h_n, p, h_maxdeg);
            } else {
                if (h_p != 0)
                    throw std::invalid_argument("--p applies only to the stable space (--k inf)");
                g = homology_of_p(parse_u64(h_k), h_n, h_l, h_maxdeg);
            }
            emit(render(g, format), output_path);
            return 0;
        }

        if (cmd_torsion->parsed()) {
            check_l(t_l, cap);
            if (t_n < 2) throw std::invalid_argument("n must be >= 2");
            auto summands = t_p != 0 ? higher_torsion(t_l, t_n, t_p) : all_higher_torsion(t_l, t_n);
            if (!t_show_omitted) summands = asserted_summands(summands);
            std::string out;
            if (format == Format::text) out = render_torsion_text(t_l, t_n, summands);
            else if (format == Format::markdown) out = render_torsion_md(t_l, t_n, summands);
            else out = torsion_json(t_l, t_n, summands).dump(2) + "\n";
            emit(out, output_path);
            return 0;
        }

        if (cmd_table->parsed()) {
            check_l(tb_l, cap);
            std::string out;
            if (format == Format::text) out = render_table_text(tb_l);
            else if (format == Format::markdown) out = render_table_md(tb_l);
            else out = table_json(tb_l).dump(2) + "\n";
            emit(out, output_path);
            return 0;
        }

        if (cmd_verify->parsed()) {
            const Range l_range = parse_range(v_l_str);
            const Range p_range = parse_range(v_p_str);
            check_l(l_range.lo, cap);
            check_l(l_range.hi, cap);
            if (p_range.hi > kMaxBase)
                throw std::invalid_argument("prime range exceeds the supported base range");

            const SweepResult res = run_sweep(l_range, p_range, v_strict, v_jobs);

            for (const auto& r : res.flagged) {
                std::cerr << "[" << to_string(r.check) << "] l=" << r.l << " p=" << r.p
                          << " alpha=" << r.alpha << " (m=" << r.valuation << ", run [" << r.hi
                          << "," << r.lo << "]): " << r.note << "\n";
            }

            std::string out;
            if (format == Format::text) out = render_verify_text(res);
            else if (format == Format::markdown) out = render_verify_md(res);
            else out = verify_json(res).dump(2) + "\n";
            std::cout << out;
            if (!output_path.empty()) {
                std::ofstream f(output_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open output file '" + output_path + "'");
                f << verify_json(res).dump(2) << "\n";
            }
            return res.exit_code();
        }
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
