#include "starbook/model.hpp"

#include <algorithm>
#include <numeric>

namespace starbook {

EdgeKey::EdgeKey(VertexId a, VertexId b) {
    if (a == b) {
        throw DomainError("edge {" + std::to_string(a) + "," + std::to_string(b) + "} is a loop");
    }
    u_ = std::min(a, b);
    v_ = std::max(a, b);
}

std::string EdgeKey::str() const {
    return "{" + std::to_string(u_) + "," + std::to_string(v_) + "}";
}

SimpleGraph::SimpleGraph(int n, std::vector<EdgeKey> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) {
        throw DomainError("negative vertex count");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw DomainError("duplicate edge in graph");
    }
    for (const auto& e : edges_) {
        if (e.u() < 1 || e.v() > n_) {
            throw DomainError("edge " + e.str() + " out of range for n=" + std::to_string(n_));
        }
    }
}

bool SimpleGraph::has_edge(const EdgeKey& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

int SimpleGraph::degree(VertexId v) const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                          [v](const EdgeKey& e) { return e.touches(v); }));
}

int SimpleGraph::max_degree() const {
    std::vector<int> deg(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++deg[e.u()];
        ++deg[e.v()];
    }
    return n_ == 0 ? 0 : *std::max_element(deg.begin(), deg.end());
}

CircularOrder::CircularOrder(std::vector<VertexId> sequence) : sequence_(std::move(sequence)) {
    if (!is_permutation(sequence_)) {
        throw DomainError("circular order is not a permutation of 1..n");
    }
    position_.assign(sequence_.size() + 1, -1);
    for (std::size_t i = 0; i < sequence_.size(); ++i) {
        position_[sequence_[i]] = static_cast<int>(i);
    }
}

CircularOrder CircularOrder::identity(int n) {
    std::vector<VertexId> seq(n);
    std::iota(seq.begin(), seq.end(), 1);
    return CircularOrder(std::move(seq));
}

bool CircularOrder::is_permutation(std::span<const VertexId> sequence) {
    std::vector<bool> seen(sequence.size() + 1, false);
    for (VertexId v : sequence) {
        if (v < 1 || v > static_cast<int>(sequence.size()) || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

int CircularOrder::position(VertexId v) const {
    if (!contains(v)) {
        throw DomainError("vertex " + std::to_string(v) + " not in circular order");
    }
    return position_[v];
}

std::string to_string(PageKind kind) {
    return kind == PageKind::Disk ? "disk" : "crosscap";
}

Page::Page(PageKind kind, std::vector<EdgeKey> edges) : kind_(kind), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw DomainError("duplicate edge within a page");
    }
}

BookLayout::BookLayout(SimpleGraph graph, CircularOrder order, std::vector<Page> pages)
    : graph_(std::move(graph)), order_(std::move(order)), pages_(std::move(pages)) {
    if (order_.size() != graph_.n()) {
        throw DomainError("order size does not match vertex count");
    }
    for (const auto& page : pages_) {
        for (const auto& e : page.edges()) {
            if (!graph_.has_edge(e)) {
                throw DomainError("page edge " + e.str() + " is not an edge of the graph");
            }
        }
    }
    std::stable_partition(pages_.begin(), pages_.end(),
                          [](const Page& p) { return p.kind() == PageKind::Disk; });
}

std::size_t BookLayout::crosscap_count() const {
    return static_cast<std::size_t>(std::count_if(
        pages_.begin(), pages_.end(), [](const Page& p) { return p.kind() == PageKind::CrossCap; }));
}

bool arc_contains(const CircularOrder& order, VertexId a, VertexId b, VertexId x) {
    const int n = order.size();
    const int pa = order.position(a);
    const int pb = order.position(b);
    const int px = order.position(x);
    if (pa == pb) {
        throw DomainError("arc endpoints coincide");
    }
    const int span = ((pb - pa) % n + n) % n;
    const int off = ((px - pa) % n + n) % n;
    return off > 0 && off < span;
}

bool interleaves(const CircularOrder& order, const EdgeKey& e, const EdgeKey& f) {
    for (VertexId x : {e.u(), e.v(), f.u(), f.v()}) {
        (void)order.position(x);
    }
    if (e.shares_endpoint(f)) {
        return false;
    }
    return arc_contains(order, e.u(), e.v(), f.u()) != arc_contains(order, e.u(), e.v(), f.v());
}

}  // namespace starbook
