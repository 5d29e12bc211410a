#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace starbook {

/// Vertex label, 1-based.
using VertexId = int;

/// Thrown when an argument lies outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is invoked on an input it is not meant for
/// (wrong page kind, unverified layout and so on).
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Unordered vertex pair stored with u < v.
class EdgeKey {
public:
    EdgeKey(VertexId a, VertexId b);

    VertexId u() const { return u_; }
    VertexId v() const { return v_; }

    bool touches(VertexId x) const { return x == u_ || x == v_; }
    bool shares_endpoint(const EdgeKey& other) const {
        return touches(other.u_) || touches(other.v_);
    }

    std::string str() const;

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;

private:
    VertexId u_;
    VertexId v_;
};

class SimpleGraph {
public:
    explicit SimpleGraph(int n, std::vector<EdgeKey> edges = {});

    int n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    /// Edges in ascending order.
    const std::vector<EdgeKey>& edges() const { return edges_; }
    bool has_edge(const EdgeKey& e) const;
    int degree(VertexId v) const;
    int max_degree() const;

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    int n_;
    std::vector<EdgeKey> edges_;
};

/// Cyclic spine ordering of the vertices 1..n.
class CircularOrder {
public:
    explicit CircularOrder(std::vector<VertexId> sequence);

    static CircularOrder identity(int n);

    /// True iff `sequence` is a permutation of 1..sequence.size().
    static bool is_permutation(std::span<const VertexId> sequence);

    int size() const { return static_cast<int>(sequence_.size()); }
    const std::vector<VertexId>& sequence() const { return sequence_; }
    /// 0-based position of v along the circle.
    int position(VertexId v) const;
    bool contains(VertexId v) const { return v >= 1 && v <= size(); }

    friend bool operator==(const CircularOrder& a, const CircularOrder& b) {
        return a.sequence_ == b.sequence_;
    }

private:
    std::vector<VertexId> sequence_;
    std::vector<int> position_;
};

enum class PageKind { Disk, CrossCap };

std::string to_string(PageKind kind);

/// One part of the edge partition. Edges are kept sorted.
class Page {
public:
    Page(PageKind kind, std::vector<EdgeKey> edges);

    PageKind kind() const { return kind_; }
    const std::vector<EdgeKey>& edges() const { return edges_; }
    bool empty() const { return edges_.empty(); }
    std::size_t size() const { return edges_.size(); }

    friend bool operator==(const Page&, const Page&) = default;

private:
    PageKind kind_;
    std::vector<EdgeKey> edges_;
};

/// Graph, spine order and page sequence. Disk pages are stored before
/// cross-cap pages; relative order within each kind is kept.
class BookLayout {
public:
    BookLayout(SimpleGraph graph, CircularOrder order, std::vector<Page> pages);

    const SimpleGraph& graph() const { return graph_; }
    const CircularOrder& order() const { return order_; }
    const std::vector<Page>& pages() const { return pages_; }
    std::size_t page_count() const { return pages_.size(); }
    std::size_t crosscap_count() const;

    friend bool operator==(const BookLayout&, const BookLayout&) = default;

private:
    SimpleGraph graph_;
    CircularOrder order_;
    std::vector<Page> pages_;
};

/// Maps an arbitrary integer label onto [1, n] cyclically.
inline VertexId wrap_vertex(long long label, int n) {
    long long r = (label - 1) % n;
    if (r < 0) r += n;
    return static_cast<VertexId>(r + 1);
}

/// True iff x lies strictly inside the arc from a to b in the order's
/// cyclic direction.
bool arc_contains(const CircularOrder& order, VertexId a, VertexId b, VertexId x);

/// True iff the chords e and f cross. Chords sharing an endpoint never cross.
bool interleaves(const CircularOrder& order, const EdgeKey& e, const EdgeKey& f);

}  // namespace starbook
