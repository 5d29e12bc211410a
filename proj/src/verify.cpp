#include "starbook/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace starbook {

std::string to_string(VerificationProfile profile) {
    switch (profile) {
    case VerificationProfile::Strict:
        return "strict";
    case VerificationProfile::Relaxed:
        return "relaxed";
    case VerificationProfile::StarForestsOnly:
        return "saonly";
    }
    return "?";
}

StarForestResult is_star_forest(std::span<const EdgeKey> edges) {
    std::map<VertexId, int> degree;
    std::map<VertexId, VertexId> parent;
    for (const auto& e : edges) {
        ++degree[e.u()];
        ++degree[e.v()];
        parent.emplace(e.u(), e.u());
        parent.emplace(e.v(), e.v());
    }

    auto find = [&parent](VertexId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    StarForestResult result;
    result.components = static_cast<int>(parent.size());
    for (const auto& e : edges) {
        const VertexId a = find(e.u());
        const VertexId b = find(e.v());
        if (a != b) {
            parent[a] = b;
            --result.components;
        }
    }

    std::vector<EdgeKey> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) {
        if (degree[e.u()] >= 2 && degree[e.v()] >= 2) {
            result.ok = false;
            result.witness = e;
            break;
        }
    }
    return result;
}

DiskCheck disk_page_valid(const CircularOrder& order, const Page& page) {
    if (page.kind() != PageKind::Disk) {
        throw UsageError("disk_page_valid called on a cross-cap page");
    }
    const auto& edges = page.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (interleaves(order, edges[i], edges[j])) {
                return {false, std::make_pair(edges[i], edges[j])};
            }
        }
    }
    return {};
}

std::optional<CrossCapSplit> through_route(const CircularOrder& order,
                                           std::span<const EdgeKey> chords) {
    CrossCapSplit split;
    split.through.assign(chords.begin(), chords.end());
    std::sort(split.through.begin(), split.through.end());
    if (chords.empty()) {
        return split;
    }

    // Endpoint occurrences around the circle. Occurrences at one vertex form a
    // tie block whose internal arrangement is free, but every arrangement puts
    // the same vertex at each position, so pairing position i with i + k
    // yields one multiset of vertex pairs per rotation. The antipodal pairing
    // is invariant under rotation, so the first rotation decides.
    std::vector<VertexId> occurrences;
    occurrences.reserve(2 * chords.size());
    for (const auto& e : chords) {
        occurrences.push_back(e.u());
        occurrences.push_back(e.v());
    }
    std::sort(occurrences.begin(), occurrences.end(), [&order](VertexId a, VertexId b) {
        return order.position(a) < order.position(b);
    });

    const std::size_t k = chords.size();
    std::vector<EdgeKey> induced;
    induced.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (occurrences[i] == occurrences[i + k]) {
            return std::nullopt;
        }
        induced.emplace_back(occurrences[i], occurrences[i + k]);
    }
    std::sort(induced.begin(), induced.end());
    if (induced != split.through) {
        return std::nullopt;
    }
    split.rotation_witness = 0;
    split.endpoint_sequence = std::move(occurrences);
    return split;
}

CrossCapCheck crosscap_page_valid(const CircularOrder& order, const Page& page) {
    if (page.kind() != PageKind::CrossCap) {
        throw UsageError("crosscap_page_valid called on a disk page");
    }
    const auto& edges = page.edges();
    std::vector<bool> forced(edges.size(), false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (interleaves(order, edges[i], edges[j])) {
                forced[i] = forced[j] = true;
            }
        }
    }
    std::vector<EdgeKey> through;
    std::vector<EdgeKey> planar;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        (forced[i] ? through : planar).push_back(edges[i]);
    }

    // Through-chords pairwise either cross or share an endpoint.
    for (std::size_t i = 0; i < through.size(); ++i) {
        for (std::size_t j = i + 1; j < through.size(); ++j) {
            if (!through[i].shares_endpoint(through[j]) &&
                !interleaves(order, through[i], through[j])) {
                return {false, std::nullopt};
            }
        }
    }

    auto split = through_route(order, through);
    if (!split) {
        return {false, std::nullopt};
    }
    split->planar = std::move(planar);
    return {true, std::move(split)};
}

namespace {

struct Describe {
    std::string operator()(const violation::DuplicateEdge& v) const {
        std::string pages;
        for (int p : v.pages) {
            pages += (pages.empty() ? "" : ",") + std::to_string(p);
        }
        return "DuplicateEdge " + v.edge.str() + " on pages " + pages;
    }
    std::string operator()(const violation::MissingEdge& v) const {
        return "MissingEdge " + v.edge.str();
    }
    std::string operator()(const violation::ForeignEdge& v) const {
        return "ForeignEdge " + v.edge.str() + " on page " + std::to_string(v.page);
    }
    std::string operator()(const violation::CrossingPair& v) const {
        return "CrossingPair " + v.e.str() + " x " + v.f.str() + " on page " +
               std::to_string(v.page);
    }
    std::string operator()(const violation::NotStarForest& v) const {
        return "NotStarForest on page " + std::to_string(v.page) + " (witness " +
               v.witness.str() + ")";
    }
    std::string operator()(const violation::CrossCapUnroutable& v) const {
        return "CrossCapUnroutable on page " + std::to_string(v.page);
    }
    std::string operator()(const violation::TooManyCrossCaps& v) const {
        return "TooManyCrossCaps (" + std::to_string(v.count) + ")";
    }
    std::string operator()(const violation::OrderNotPermutation&) const {
        return "OrderNotPermutation";
    }
};

}  // namespace

std::string to_string(const Violation& v) { return std::visit(Describe{}, v); }

std::string kind_name(const Violation& v) {
    static constexpr const char* names[] = {
        "DuplicateEdge", "MissingEdge",        "ForeignEdge",      "CrossingPair",
        "NotStarForest", "CrossCapUnroutable", "TooManyCrossCaps", "OrderNotPermutation"};
    return names[v.index()];
}

VerificationReport verify_parts(const SimpleGraph& graph, std::span<const VertexId> order,
                                std::span<const Page> pages, VerificationProfile profile) {
    VerificationReport report;
    auto& out = report.violations;

    std::map<EdgeKey, std::vector<int>> placements;
    for (std::size_t p = 0; p < pages.size(); ++p) {
        const int page_no = static_cast<int>(p) + 1;
        for (const auto& e : pages[p].edges()) {
            if (!graph.has_edge(e)) {
                out.push_back(violation::ForeignEdge{e, page_no});
            } else {
                placements[e].push_back(page_no);
            }
        }
    }
    for (const auto& e : graph.edges()) {
        auto it = placements.find(e);
        if (it == placements.end()) {
            out.push_back(violation::MissingEdge{e});
        } else if (it->second.size() > 1) {
            out.push_back(violation::DuplicateEdge{e, it->second});
        }
    }

    for (std::size_t p = 0; p < pages.size(); ++p) {
        auto sf = is_star_forest(pages[p].edges());
        if (!sf.ok) {
            out.push_back(violation::NotStarForest{static_cast<int>(p) + 1, *sf.witness});
        }
    }

    if (profile != VerificationProfile::StarForestsOnly) {
        const bool order_ok = static_cast<int>(order.size()) == graph.n() &&
                              CircularOrder::is_permutation(order);
        if (!order_ok) {
            out.push_back(violation::OrderNotPermutation{});
        } else {
            const CircularOrder circle(std::vector<VertexId>(order.begin(), order.end()));
            for (std::size_t p = 0; p < pages.size(); ++p) {
                const int page_no = static_cast<int>(p) + 1;
                // foreign edges may reference vertices outside the circle
                std::vector<EdgeKey> on_circle;
                for (const auto& e : pages[p].edges()) {
                    if (circle.contains(e.u()) && circle.contains(e.v())) {
                        on_circle.push_back(e);
                    }
                }
                if (pages[p].kind() == PageKind::Disk) {
                    for (std::size_t i = 0; i < on_circle.size(); ++i) {
                        for (std::size_t j = i + 1; j < on_circle.size(); ++j) {
                            if (interleaves(circle, on_circle[i], on_circle[j])) {
                                out.push_back(
                                    violation::CrossingPair{page_no, on_circle[i], on_circle[j]});
                            }
                        }
                    }
                } else if (!crosscap_page_valid(circle, Page(PageKind::CrossCap, on_circle)).ok) {
                    out.push_back(violation::CrossCapUnroutable{page_no});
                }
            }
        }

        const auto caps = static_cast<int>(std::count_if(
            pages.begin(), pages.end(), [](const Page& p) { return p.kind() == PageKind::CrossCap; }));
        const int allowed = profile == VerificationProfile::Relaxed ? 1 : 0;
        if (caps > allowed) {
            out.push_back(violation::TooManyCrossCaps{caps});
        }
    }

    std::sort(out.begin(), out.end());
    report.passed = out.empty();
    return report;
}

VerificationReport verify_layout(const BookLayout& layout, VerificationProfile profile) {
    return verify_parts(layout.graph(), layout.order().sequence(), layout.pages(), profile);
}

}  // namespace starbook
