#pragma once

#include <optional>
#include <string>

#include "starbook/model.hpp"
#include "starbook/verify.hpp"

namespace starbook {

SimpleGraph complete_graph(int n);
/// K_{2r} minus the antipodal matching {i, i+r}.
SimpleGraph octahedron(int r);
/// C_n^k: vertices at cyclic distance at most k are adjacent. Needs 1 <= k < n/2.
SimpleGraph cycle_power(int n, int k);
SimpleGraph minus_edge(const SimpleGraph& g, const EdgeKey& e);

/// n-1 disk pages; page i is the star at i over all larger labels.
BookLayout star_pages(int n);

/// Relaxed layout of K_{2r}: r disk pages of two (r-1)-stars each plus one
/// cross-cap page carrying the antipodal chords.
BookLayout relaxed_complete(int r);

/// Adds vertex n+1 after the last spine position and a disk page holding its
/// spanning star. The input must be a valid layout of a complete graph.
BookLayout odd_extension(const BookLayout& layout);

/// Two-stars-per-page strict scheme with the antipodal edge moved into the
/// first star and the second star re-centred, plus two extra pages, exactly
/// as written. It is not a partition of K_{2r}; verify reports the gap.
BookLayout strict_literal(int r);

struct StrictCompleteOptions {
    int max_r = 8;
    long long node_limit = 1'000'000'000;
    double time_limit_seconds = 600.0;
};

enum class StrictSource { Literal, Repaired, Searched, StarPages };

struct StrictCompleteResult {
    std::optional<BookLayout> layout;  // empty when every strategy failed
    StrictSource source = StrictSource::Literal;
    /// Set when exhaustive search showed that no strict layout of K_{2r}
    /// with r+2 star-forest pages exists.
    bool proven_impossible = false;
    long long search_nodes = 0;
    std::string diagnostic;
};

/// Strict star-forest layout of K_{2r} with at most r+2 pages. Tries the
/// literal scheme, then repairs it by exact search over the residual edges
/// with the r main stars pinned, then searches without pinning, then falls
/// back to star_pages when that is small enough. A failed result carries no
/// layout; it is never an invalid one.
StrictCompleteResult strict_complete(int r, const StrictCompleteOptions& options = {});

/// The r disk pages of relaxed_complete(r), over octahedron(r).
BookLayout octahedron_pages(int r);

enum class FamilyHint { General, Complete, Octahedron, CyclePower };

struct BoundsSummary {
    int n = 0;
    long long m = 0;
    /// Star arboricity lower bound: 1 + ceil(n/2) for complete n >= 4,
    /// otherwise the edge-count bound.
    int sa_lower = 0;
    /// ceil(m / (n-1)): every star forest on n vertices has at most n-1 edges.
    int counting_lower = 0;
    std::optional<int> bt_lower;       // n >= 4 only
    std::optional<int> arboricity_Kn;  // complete graphs only
};

BoundsSummary bounds(const SimpleGraph& g, FamilyHint hint = FamilyHint::General);

/// max(0, ceil((m - n) / (n - 3))); n must be at least 4.
int book_thickness_lower(long long m, int n);

}  // namespace starbook
