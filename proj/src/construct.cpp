#include "starbook/construct.hpp"

#include "starbook/search.hpp"

#include <algorithm>

namespace starbook {

namespace {

// Star at `center` over the cyclic label range first..last (inclusive).
void add_star(std::vector<EdgeKey>& out, int n, long long center, long long first, long long last) {
    for (long long j = first; j <= last; ++j) {
        out.emplace_back(wrap_vertex(center, n), wrap_vertex(j, n));
    }
}

long long ceil_div(long long num, long long den) {
    return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

}  // namespace

SimpleGraph complete_graph(int n) {
    if (n < 1) throw DomainError("complete_graph needs n >= 1");
    std::vector<EdgeKey> edges;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
    }
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph octahedron(int r) {
    if (r < 2) throw DomainError("octahedron needs r >= 2");
    const int n = 2 * r;
    std::vector<EdgeKey> edges;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            if (v - u != r) edges.emplace_back(u, v);
        }
    }
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph cycle_power(int n, int k) {
    if (n < 3 || k < 1 || 2 * k >= n) {
        throw DomainError("cycle_power needs n >= 3 and 1 <= k < n/2");
    }
    std::vector<EdgeKey> edges;
    for (int u = 1; u <= n; ++u) {
        for (int d = 1; d <= k; ++d) edges.emplace_back(u, wrap_vertex(u + d, n));
    }
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph minus_edge(const SimpleGraph& g, const EdgeKey& e) {
    if (!g.has_edge(e)) throw DomainError("minus_edge: " + e.str() + " is not an edge");
    std::vector<EdgeKey> edges;
    for (const auto& f : g.edges()) {
        if (f != e) edges.push_back(f);
    }
    return SimpleGraph(g.n(), std::move(edges));
}

BookLayout star_pages(int n) {
    if (n < 2) throw DomainError("star_pages needs n >= 2");
    std::vector<Page> pages;
    for (int i = 1; i < n; ++i) {
        std::vector<EdgeKey> edges;
        for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
        pages.emplace_back(PageKind::Disk, std::move(edges));
    }
    return BookLayout(complete_graph(n), CircularOrder::identity(n), std::move(pages));
}

BookLayout relaxed_complete(int r) {
    if (r < 2) throw DomainError("relaxed_complete needs r >= 2");
    const int n = 2 * r;
    std::vector<Page> pages;
    for (int i = 1; i <= r; ++i) {
        std::vector<EdgeKey> edges;
        add_star(edges, n, i, i + 1, i + r - 1);
        add_star(edges, n, r + i, r + i + 1, n + i - 1);
        pages.emplace_back(PageKind::Disk, std::move(edges));
    }
    std::vector<EdgeKey> antipodal;
    for (int i = 1; i <= r; ++i) antipodal.emplace_back(i, r + i);
    pages.emplace_back(PageKind::CrossCap, std::move(antipodal));
    return BookLayout(complete_graph(n), CircularOrder::identity(n), std::move(pages));
}

BookLayout odd_extension(const BookLayout& layout) {
    const int n = layout.graph().n();
    if (layout.graph().m() != static_cast<std::size_t>(n) * (n - 1) / 2) {
        throw UsageError("odd_extension expects a layout of a complete graph");
    }
    const auto profile = layout.crosscap_count() > 0 ? VerificationProfile::Relaxed
                                                     : VerificationProfile::Strict;
    if (!verify_layout(layout, profile).passed) {
        throw UsageError("odd_extension input layout does not verify");
    }
    auto seq = layout.order().sequence();
    seq.push_back(n + 1);
    std::vector<EdgeKey> spanning;
    for (int j = 1; j <= n; ++j) spanning.emplace_back(j, n + 1);
    auto pages = layout.pages();
    pages.emplace_back(PageKind::Disk, std::move(spanning));
    return BookLayout(complete_graph(n + 1), CircularOrder(std::move(seq)), std::move(pages));
}

BookLayout strict_literal(int r) {
    if (r < 3) throw DomainError("strict_literal needs r >= 3");
    const int n = 2 * r;
    std::vector<Page> pages;
    for (int i = 1; i <= r; ++i) {
        std::vector<EdgeKey> edges;
        add_star(edges, n, i, i + 1, i + r);
        add_star(edges, n, i + r + 1, i + r + 2, n + i - 1);
        pages.emplace_back(PageKind::Disk, std::move(edges));
    }
    std::vector<EdgeKey> extra;
    add_star(extra, n, r + 1, r + 2, n);
    pages.emplace_back(PageKind::Disk, std::move(extra));
    pages.emplace_back(PageKind::Disk, std::vector<EdgeKey>{EdgeKey(r + 2, n)});
    return BookLayout(complete_graph(n), CircularOrder::identity(n), std::move(pages));
}

StrictCompleteResult strict_complete(int r, const StrictCompleteOptions& options) {
    if (r < 2) throw DomainError("strict_complete needs r >= 2");
    if (r > options.max_r) {
        throw DomainError("strict_complete: r=" + std::to_string(r) + " exceeds max_r=" +
                          std::to_string(options.max_r));
    }
    const int n = 2 * r;
    StrictCompleteResult result;

    if (r >= 3) {
        auto literal = strict_literal(r);
        const auto report = verify_layout(literal, VerificationProfile::Strict);
        if (report.passed) {
            result.layout = std::move(literal);
            result.source = StrictSource::Literal;
            return result;
        }
        result.diagnostic = "literal scheme failed with " +
                            std::to_string(report.violations.size()) + " violations; ";
    }

    SearchProblem repair;
    repair.graph = complete_graph(n);
    repair.order = CircularOrder::identity(n);
    repair.budget = r + 2;
    repair.profile = VerificationProfile::Strict;
    repair.deterministic = true;
    repair.limits = {options.node_limit, options.time_limit_seconds};
    for (int i = 1; i <= r; ++i) {
        std::vector<EdgeKey> main_star;
        add_star(main_star, n, i, i + 1, i + r);
        repair.pinned.push_back(std::move(main_star));
    }
    auto outcome = solve(repair);
    result.search_nodes += outcome.stats.nodes;
    if (outcome.status == SearchStatus::Satisfiable) {
        result.layout = std::move(outcome.layout);
        result.source = StrictSource::Repaired;
        return result;
    }
    result.diagnostic += "pinned repair " + to_string(outcome.status) + " after " +
                         std::to_string(outcome.stats.nodes) + " nodes; ";

    // Unpinned: any strict layout with r+2 star-forest pages.
    repair.pinned.clear();
    outcome = solve(repair);
    result.search_nodes += outcome.stats.nodes;
    if (outcome.status == SearchStatus::Satisfiable) {
        result.layout = std::move(outcome.layout);
        result.source = StrictSource::Searched;
        return result;
    }
    result.proven_impossible = outcome.status == SearchStatus::ExhaustedUnsat;
    result.diagnostic += "unpinned search " + to_string(outcome.status) + " after " +
                         std::to_string(outcome.stats.nodes) + " nodes";

    if (n - 1 <= r + 2) {
        result.layout = star_pages(n);
        result.source = StrictSource::StarPages;
    }
    return result;
}

BookLayout octahedron_pages(int r) {
    auto relaxed = relaxed_complete(r);
    std::vector<Page> disks;
    for (const auto& page : relaxed.pages()) {
        if (page.kind() == PageKind::Disk) disks.push_back(page);
    }
    return BookLayout(octahedron(r), relaxed.order(), std::move(disks));
}

int book_thickness_lower(long long m, int n) {
    if (n < 4) throw DomainError("book thickness bound needs n >= 4");
    return static_cast<int>(std::max(0LL, ceil_div(m - n, n - 3)));
}

BoundsSummary bounds(const SimpleGraph& g, FamilyHint hint) {
    BoundsSummary s;
    s.n = g.n();
    s.m = static_cast<long long>(g.m());
    s.counting_lower = (s.m == 0 || s.n < 2) ? 0 : static_cast<int>(ceil_div(s.m, s.n - 1));
    s.sa_lower = s.counting_lower;
    if (hint == FamilyHint::Complete) {
        s.sa_lower = s.n >= 4 ? 1 + (s.n + 1) / 2 : std::max(0, s.n - 1);
        s.arboricity_Kn = (s.n + 1) / 2;
    }
    if (s.n >= 4) s.bt_lower = book_thickness_lower(s.m, s.n);
    return s;
}

}  // namespace starbook
