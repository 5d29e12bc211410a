#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "starbook/model.hpp"

namespace starbook {

enum class VerificationProfile { Strict, Relaxed, StarForestsOnly };

std::string to_string(VerificationProfile profile);

struct StarForestResult {
    bool ok = true;
    std::optional<EdgeKey> witness;  // an edge whose endpoints both have degree >= 2
    int components = 0;              // among non-isolated vertices
};

StarForestResult is_star_forest(std::span<const EdgeKey> edges);

struct DiskCheck {
    bool ok = true;
    std::optional<std::pair<EdgeKey, EdgeKey>> crossing;
};

DiskCheck disk_page_valid(const CircularOrder& order, const Page& page);

/// Routing of a cross-cap page. Through-chords enter the cap at one endpoint
/// and leave at the antipodal point; `endpoint_sequence` lists the 2k endpoint
/// occurrences of the through-chords around the circle starting at
/// `rotation_witness`, so chord i joins entries i and i + k.
struct CrossCapSplit {
    std::vector<EdgeKey> through;
    std::vector<EdgeKey> planar;
    int rotation_witness = 0;
    std::vector<VertexId> endpoint_sequence;
};

/// Decides whether `chords` can all pass through a single cross-cap at once.
/// On success the returned split has every chord in `through`.
std::optional<CrossCapSplit> through_route(const CircularOrder& order,
                                           std::span<const EdgeKey> chords);

struct CrossCapCheck {
    bool ok = true;
    std::optional<CrossCapSplit> split;
};

/// Forces every chord with an interleaving partner through the cap and tests
/// that set with through_route.
CrossCapCheck crosscap_page_valid(const CircularOrder& order, const Page& page);

namespace violation {

struct DuplicateEdge {
    EdgeKey edge;
    std::vector<int> pages;
    auto operator<=>(const DuplicateEdge&) const = default;
};
struct MissingEdge {
    EdgeKey edge;
    auto operator<=>(const MissingEdge&) const = default;
};
struct ForeignEdge {
    EdgeKey edge;
    int page;
    auto operator<=>(const ForeignEdge&) const = default;
};
struct CrossingPair {
    int page;
    EdgeKey e;
    EdgeKey f;
    auto operator<=>(const CrossingPair&) const = default;
};
struct NotStarForest {
    int page;
    EdgeKey witness;
    auto operator<=>(const NotStarForest&) const = default;
};
struct CrossCapUnroutable {
    int page;
    auto operator<=>(const CrossCapUnroutable&) const = default;
};
struct TooManyCrossCaps {
    int count;
    auto operator<=>(const TooManyCrossCaps&) const = default;
};
struct OrderNotPermutation {
    auto operator<=>(const OrderNotPermutation&) const = default;
};

}  // namespace violation

/// Page numbers inside violations are 1-based.
using Violation = std::variant<violation::DuplicateEdge, violation::MissingEdge,
                               violation::ForeignEdge, violation::CrossingPair,
                               violation::NotStarForest, violation::CrossCapUnroutable,
                               violation::TooManyCrossCaps, violation::OrderNotPermutation>;

std::string to_string(const Violation& v);
/// Name of the violation alternative, e.g. "DuplicateEdge".
std::string kind_name(const Violation& v);

struct VerificationReport {
    bool passed = true;
    std::vector<Violation> violations;  // sorted
};

VerificationReport verify_layout(const BookLayout& layout, VerificationProfile profile);

/// Same checks on unvalidated parts, as read from a file: the order need
/// not be a permutation and pages may hold edges outside the graph.
VerificationReport verify_parts(const SimpleGraph& graph, std::span<const VertexId> order,
                                std::span<const Page> pages, VerificationProfile profile);

}  // namespace starbook
