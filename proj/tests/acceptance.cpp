// Acceptance suite. Usage: acceptance [criterion...]; with no arguments every
// criterion runs. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "starbook/cli/certificate.hpp"
#include "starbook/cli/graph_spec.hpp"
#include "starbook/cli/journal.hpp"
#include "starbook/construct.hpp"
#include "starbook/search.hpp"
#include "starbook/verify.hpp"

using namespace starbook;
namespace v = starbook::violation;

namespace {

// Pinned wall-clock limits, seconds.
constexpr double kRelaxedFamilyLimit = 10.0;
constexpr double kOddFamilyLimit = 10.0;
constexpr double kStrictWitnessLimit = 300.0;
constexpr double kPerInstanceLimit = 600.0;
constexpr double kOracleLimit = 60.0;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail.clear();
            if (!detail.empty()) detail += "; ";
            detail += what;
            pass = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

SearchOutcome solve_default(const SimpleGraph& g, int budget, VerificationProfile profile,
                            bool crosscap = false) {
    SearchProblem p;
    p.graph = g;
    p.budget = budget;
    p.profile = profile;
    p.crosscap_allowed = crosscap;
    return solve(p);
}

std::string fixture(const std::string& name) { return std::string(STARBOOK_FIXTURE_DIR) + "/" + name; }

std::string temp_journal(const std::string& tag) {
    return (std::filesystem::temp_directory_path() /
            ("starbook-acceptance-" + tag + "-" + std::to_string(::getpid()) + ".jsonl"))
        .string();
}

cli::JournalRecord record_for(const nlohmann::json& graph, const std::string& policy, int budget,
                              const SearchOutcome& outcome, std::optional<int> k_star) {
    cli::JournalRecord rec;
    rec.timestamp = cli::utc_timestamp();
    rec.graph = graph;
    rec.order_policy = policy;
    rec.profile = "strict";
    rec.budget = budget;
    rec.outcome = to_string(outcome.status);
    rec.k_star = k_star;
    rec.nodes = outcome.stats.nodes;
    rec.wall_seconds = outcome.stats.wall_seconds;
    if (outcome.layout) rec.digest = cli::digest(cli::make_certificate(*outcome.layout, {{"graph", graph}}));
    return rec;
}

Verdict relaxed_family() {
    Verdict out;
    const auto start = Clock::now();
    for (int r = 2; r <= 128; ++r) {
        const auto layout = relaxed_complete(r);
        const auto tag = "r=" + std::to_string(r);
        out.require(verify_layout(layout, VerificationProfile::Relaxed).passed, tag + " fails verify");
        out.require(layout.page_count() == static_cast<std::size_t>(r + 1), tag + " page count");
        std::size_t total = 0;
        for (std::size_t i = 0; i < layout.page_count(); ++i) {
            const auto& page = layout.pages()[i];
            total += page.size();
            const bool is_cap = i + 1 == layout.page_count();
            out.require(page.kind() == (is_cap ? PageKind::CrossCap : PageKind::Disk), tag + " page kind");
            out.require(page.size() == static_cast<std::size_t>(is_cap ? r : 2 * r - 2), tag + " page size");
        }
        out.require(total == static_cast<std::size_t>(2 * r * r - r), tag + " edge total");
        if (!out.pass) break;
    }
    const double t = since(start);
    out.require(t < kRelaxedFamilyLimit, "took " + fmt_seconds(t));
    if (out.pass) out.detail = "r in [2,128] verified, sizes (2r-2)^r + r = 2r^2-r, " + fmt_seconds(t);
    return out;
}

Verdict odd_family() {
    Verdict out;
    const auto start = Clock::now();
    for (int r = 2; r <= 64; ++r) {
        const auto layout = odd_extension(relaxed_complete(r));
        const int n = 2 * r + 1;
        const auto tag = "r=" + std::to_string(r);
        out.require(layout.graph() == complete_graph(n), tag + " graph");
        out.require(verify_layout(layout, VerificationProfile::Relaxed).passed, tag + " fails verify");
        out.require(layout.page_count() == static_cast<std::size_t>(1 + (r + 1)), tag + " page count");
        out.require(static_cast<int>(layout.page_count()) == 1 + (n + 1) / 2, tag + " page count vs 1+ceil(n/2)");
        if (!out.pass) break;
    }
    const double t = since(start);
    out.require(t < kOddFamilyLimit, "took " + fmt_seconds(t));
    if (out.pass) out.detail = "r in [2,64] verified with r+2 = 1+ceil(n/2) pages, " + fmt_seconds(t);
    return out;
}

Verdict literal_defects() {
    Verdict out;
    std::vector<Violation> expected{
        v::DuplicateEdge{EdgeKey(1, 2), {1, 3}},
        v::DuplicateEdge{EdgeKey(5, 6), {1, 5}},
        v::MissingEdge{EdgeKey(1, 5)},
        v::MissingEdge{EdgeKey(2, 6)},
    };
    std::sort(expected.begin(), expected.end());
    const auto three = verify_layout(strict_literal(3), VerificationProfile::Strict);
    out.require(!three.passed && three.violations == expected, "r=3 violation multiset differs");
    for (int r = 4; r <= 8; ++r) {
        int dup = 0, miss = 0, other = 0;
        for (const auto& x : verify_layout(strict_literal(r), VerificationProfile::Strict).violations) {
            if (std::holds_alternative<v::DuplicateEdge>(x)) ++dup;
            else if (std::holds_alternative<v::MissingEdge>(x)) ++miss;
            else ++other;
        }
        out.require(dup == r - 1 && miss == r - 1 && other == 0,
                    "r=" + std::to_string(r) + ": " + std::to_string(dup) + " dup, " +
                        std::to_string(miss) + " missing, " + std::to_string(other) + " other");
    }
    if (out.pass) out.detail = "r=3 exact multiset; r in [4,8] give r-1 duplicates and r-1 missing";
    return out;
}

Verdict strict_witnesses() {
    Verdict out;
    const auto start = Clock::now();
    std::string summary;
    for (int r = 2; r <= 6; ++r) {
        const auto result = strict_complete(r);
        const auto tag = "r=" + std::to_string(r);
        if (!result.layout) {
            out.require(false, tag + " no layout" + (result.proven_impossible ? " (proven impossible)" : ""));
            continue;
        }
        out.require(result.layout->graph() == complete_graph(2 * r), tag + " wrong graph");
        out.require(result.layout->page_count() <= static_cast<std::size_t>(r + 2), tag + " too many pages");
        out.require(verify_layout(*result.layout, VerificationProfile::Strict).passed, tag + " fails verify");
    }
    const auto path = fixture("k6_strict_witness.json");
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    try {
        const auto cert = cli::parse_certificate(text.str());
        out.require(cli::serialize(cert) == text.str(), "r=3 witness not byte-stable");
        out.require(cert.verify(VerificationProfile::Strict).passed && cert.pages.size() == 5,
                    "r=3 witness fails verify");
    } catch (const std::exception& e) {
        out.require(false, std::string("r=3 witness: ") + e.what());
    }
    const double t = since(start);
    out.require(t < kStrictWitnessLimit, "took " + fmt_seconds(t));
    if (out.pass) out.detail = "r in [2,6] verified with <= r+2 pages; r=3 witness byte-stable, " + fmt_seconds(t);
    return out;
}

Verdict exact_small() {
    Verdict out;
    auto value = [&](const SimpleGraph& g, VerificationProfile profile, bool crosscap, int lo, int hi,
                     const std::string& tag) -> std::optional<int> {
        ExactQuery q;
        q.graph = g;
        q.profile = profile;
        q.crosscap_allowed = crosscap;
        q.lo = lo;
        q.hi = hi;
        const auto start = Clock::now();
        const auto result = exact_value(q);
        out.require(since(start) < kPerInstanceLimit, tag + " over time limit");
        out.require(result.status != SearchStatus::Aborted, tag + " aborted");
        if (result.witness) {
            // certificates must repeat exactly
            const auto again = exact_value(q);
            out.require(again.witness && cli::digest(cli::make_certificate(*again.witness)) ==
                                             cli::digest(cli::make_certificate(*result.witness)),
                        tag + " certificate not deterministic");
        }
        return result.value;
    };
    out.require(value(complete_graph(4), VerificationProfile::Strict, false, 1, 4, "sabt(K4)") == 3, "sabt(K4) != 3");
    out.require(value(complete_graph(5), VerificationProfile::Strict, false, 1, 5, "sabt(K5)") == 4, "sabt(K5) != 4");
    for (int n = 4; n <= 7; ++n) {
        const auto tag = "sa(K" + std::to_string(n) + ")";
        out.require(value(complete_graph(n), VerificationProfile::StarForestsOnly, false, 1, n, tag) ==
                        1 + (n + 1) / 2,
                    tag + " != 1+ceil(n/2)");
    }
    const auto three = solve_default(complete_graph(6), 3, VerificationProfile::Relaxed, true);
    const auto four = solve_default(complete_graph(6), 4, VerificationProfile::Relaxed, true);
    out.require(three.status == SearchStatus::ExhaustedUnsat, "relaxed K6 budget 3 not exhausted");
    out.require(four.status == SearchStatus::Satisfiable, "relaxed K6 budget 4 not satisfiable");
    if (out.pass) {
        out.detail = "sabt(K4)=3, sabt(K5)=4, sa(K4..K7)=3,4,4,5, relaxed K6: 3 unsat / 4 sat";
    }
    return out;
}

Verdict open_value() {
    Verdict out;
    const auto journal_path = temp_journal("k6");
    std::filesystem::remove(journal_path);
    const cli::Journal journal(journal_path);
    const nlohmann::json graph = {{"family", "K"}, {"n", 6}};

    const auto four = solve_default(complete_graph(6), 4, VerificationProfile::Strict);
    out.require(four.status != SearchStatus::Aborted, "budget 4 aborted within default limits");
    std::optional<int> k_star;
    if (four.status == SearchStatus::Satisfiable) {
        out.require(verify_layout(*four.layout, VerificationProfile::Strict).passed, "budget 4 layout invalid");
        k_star = 4;
        journal.append(record_for(graph, "identity", 4, four, k_star));
    } else {
        journal.append(record_for(graph, "identity", 4, four, std::nullopt));
        const auto five = solve_default(complete_graph(6), 5, VerificationProfile::Strict);
        out.require(five.status == SearchStatus::Satisfiable, "budget 5 not satisfiable");
        if (five.layout) out.require(verify_layout(*five.layout, VerificationProfile::Strict).passed, "budget 5 layout invalid");
        k_star = 5;
        journal.append(record_for(graph, "identity", 5, five, k_star));
    }
    const auto records = journal.load();
    const auto bracket = cli::bracket_for(records, graph, "strict", false);
    out.require(bracket.exact() == k_star, "journal does not settle the value");
    std::filesystem::remove(journal_path);
    if (out.pass) {
        out.detail = "sabt(K6) = " + std::to_string(*k_star) + " (budget 4 " + to_string(four.status) + ", " +
                     std::to_string(four.stats.nodes) + " nodes), journaled";
    }
    return out;
}

Verdict octahedra() {
    Verdict out;
    for (int r = 2; r <= 64; ++r) {
        const auto layout = octahedron_pages(r);
        const auto tag = "r=" + std::to_string(r);
        out.require(layout.graph() == octahedron(r), tag + " graph");
        out.require(layout.page_count() == static_cast<std::size_t>(r), tag + " page count");
        out.require(verify_layout(layout, VerificationProfile::Strict).passed, tag + " fails verify");
        if (r >= 4) {
            const auto b = bounds(octahedron(r), FamilyHint::Octahedron);
            out.require(b.bt_lower == r, tag + " bt_lower");
        }
        if (!out.pass) break;
    }
    if (out.pass) out.detail = "r in [2,64] strict with r pages; bt_lower = r for r in [4,64]";
    return out;
}

Verdict minus_edge_value() {
    Verdict out;
    const auto journal_path = temp_journal("k6e");
    std::filesystem::remove(journal_path);
    const cli::Journal journal(journal_path);
    const nlohmann::json graph = {{"family", "K-e"}, {"n", 6}, {"remove", {1, 2}}};

    ExactQuery q;
    q.graph = minus_edge(complete_graph(6), EdgeKey(1, 2));
    q.lo = 1;
    q.hi = 4;
    q.order_policy = OrderPolicy::Optimize;
    const auto start = Clock::now();
    const auto result = exact_value(q);
    const double t = since(start);
    out.require(t < kPerInstanceLimit, "took " + fmt_seconds(t));
    for (const auto& [budget, outcome] : result.runs) {
        out.require(outcome.status != SearchStatus::Aborted, "budget " + std::to_string(budget) + " aborted");
        journal.append(record_for(graph, "optimize", budget, outcome,
                                  outcome.status == SearchStatus::Satisfiable ? result.value : std::nullopt));
    }
    out.require(result.value.has_value(), "no layout within 4 pages");
    if (result.witness) {
        out.require(verify_layout(*result.witness, VerificationProfile::Strict).passed, "witness invalid");
    }
    const auto bracket = cli::bracket_for(journal.load(), graph, "strict", false);
    out.require(bracket.exact() == result.value, "journal does not settle the value");
    std::filesystem::remove(journal_path);
    if (out.pass) {
        out.detail = "strict value of K6-{1,2} is " + std::to_string(*result.value) +
                     " (certificate + refutations journaled), " + fmt_seconds(t);
    }
    return out;
}

Verdict crosscap_properties() {
    Verdict out;
    for (int r = 2; r <= 128; ++r) {
        std::vector<EdgeKey> chords;
        for (int i = 1; i <= r; ++i) chords.emplace_back(i, i + r);
        out.require(crosscap_page_valid(CircularOrder::identity(2 * r), Page(PageKind::CrossCap, chords)).ok,
                    "antipodal r=" + std::to_string(r) + " rejected");
    }
    out.require(!crosscap_page_valid(CircularOrder::identity(8),
                                     Page(PageKind::CrossCap, {EdgeKey(1, 3), EdgeKey(2, 4), EdgeKey(5, 7),
                                                               EdgeKey(6, 8)}))
                     .ok,
                "two-bundle set accepted");
    out.require(crosscap_page_valid(CircularOrder::identity(6),
                                    Page(PageKind::CrossCap, {EdgeKey(1, 2), EdgeKey(2, 3), EdgeKey(1, 3)}))
                    .ok,
                "triangle rejected");

    long long pages_checked = 0;
    oracle::Rng rng(2024);
    for (int n = 4; n <= 8; ++n) {
        const auto all = oracle::complete_edges(n);
        const auto order = CircularOrder::identity(n);
        const bool exhaustive = n <= 6;
        const long long total = exhaustive ? (1LL << all.size()) : 20000;
        for (long long s = 0; s < total; ++s) {
            std::vector<EdgeKey> chords;
            for (std::size_t i = 0; i < all.size(); ++i) {
                const bool take = exhaustive ? ((s >> i) & 1) : rng.below(4) == 0;
                if (take) chords.emplace_back(all[i].first, all[i].second);
            }
            if (disk_page_valid(order, Page(PageKind::Disk, chords)).ok) {
                ++pages_checked;
                if (!crosscap_page_valid(order, Page(PageKind::CrossCap, chords)).ok) {
                    out.require(false, "disk-valid page rejected as cap on n=" + std::to_string(n));
                    break;
                }
            }
        }
    }
    if (out.pass) {
        out.detail = "antipodal r in [2,128] accepted, two bundles rejected, triangle accepted, " +
                     std::to_string(pages_checked) + " disk-valid pages cap-valid (n<=6 all, n=7,8 sampled)";
    }
    return out;
}

Verdict oracle_equivalence() {
    Verdict out;
    const auto start = Clock::now();
    const auto all = oracle::complete_edges(5);
    int subsets = 0;
    for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
        std::vector<oracle::Edge> edges;
        std::vector<EdgeKey> keys;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (mask & (1u << i)) {
                edges.push_back(all[i]);
                keys.emplace_back(all[i].first, all[i].second);
            }
        }
        ++subsets;
        out.require(is_star_forest(keys).ok == oracle::star_forest(edges, 5),
                    "is_star_forest mismatch on mask " + std::to_string(mask));
        const int least = oracle::min_star_forest_partition(edges, 5);
        const SimpleGraph g(5, keys);
        for (int budget = 1; budget <= 4; ++budget) {
            const auto outcome = solve_default(g, budget, VerificationProfile::StarForestsOnly);
            out.require((outcome.status == SearchStatus::Satisfiable) == (least <= budget),
                        "solve mismatch on mask " + std::to_string(mask) + " budget " + std::to_string(budget));
        }
        if (!out.pass) break;
    }
    const double t = since(start);
    out.require(t < kOracleLimit, "took " + fmt_seconds(t));
    if (out.pass) {
        out.detail = std::to_string(subsets) + " subsets of K5 agree (star forest + budgets 1..4), " + fmt_seconds(t);
    }
    return out;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "relaxed complete layouts", relaxed_family},
        {2, "odd extension", odd_family},
        {3, "literal strict scheme defects", literal_defects},
        {4, "strict layouts with r+2 pages", strict_witnesses},
        {5, "exact small values", exact_small},
        {6, "strict K6 value resolved and journaled", open_value},
        {7, "octahedron layouts and bounds", octahedra},
        {8, "strict K6 minus an edge", minus_edge_value},
        {9, "cross-cap criterion properties", crosscap_properties},
        {10, "oracle equivalence on K5 subsets", oracle_equivalence},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        try {
            wanted.push_back(std::stoi(argv[i]));
        } catch (const std::exception&) {
            std::cerr << "usage: acceptance [criterion...]\n";
            return 2;
        }
    }
    bool all_pass = true;
    for (const auto& c : criteria()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        Verdict verdict;
        try {
            verdict = c.run();
        } catch (const std::exception& e) {
            verdict.pass = false;
            verdict.detail = std::string("exception: ") + e.what();
        }
        all_pass &= verdict.pass;
        std::cout << (verdict.pass ? "[PASS]" : "[FAIL]") << " AC" << c.id << " " << c.title << ": "
                  << verdict.detail << std::endl;
    }
    return all_pass ? 0 : 1;
}
