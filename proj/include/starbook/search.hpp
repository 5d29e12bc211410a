#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starbook/model.hpp"
#include "starbook/verify.hpp"

namespace starbook {

struct SearchLimits {
    long long node_limit = 1'000'000'000;
    double time_limit_seconds = 600.0;
};

struct SearchProblem {
    SimpleGraph graph{0};
    std::optional<CircularOrder> order;  // identity when unset
    int budget = 1;
    VerificationProfile profile = VerificationProfile::Strict;
    bool crosscap_allowed = false;  // one of the budget pages is a cross-cap
    bool optimize_order = false;    // try every spine order up to symmetry
    bool deterministic = true;
    SearchLimits limits;
    /// Edges fixed onto the first pages before the search starts. Pinned
    /// pages are disks and count against the budget.
    std::vector<std::vector<EdgeKey>> pinned;
};

enum class SearchStatus { Satisfiable, ExhaustedUnsat, Aborted };

std::string to_string(SearchStatus status);

struct SearchStats {
    long long nodes = 0;
    int max_depth = 0;
    double wall_seconds = 0.0;
    int orders_tried = 0;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedUnsat;
    std::optional<BookLayout> layout;  // Satisfiable only; empty pages dropped
    SearchStats stats;
    std::string abort_reason;
};

/// Exact decision: can the graph's edges be split into at most `budget`
/// star-forest pages valid under the profile? Satisfiable layouts are
/// re-verified before they are returned.
SearchOutcome solve(const SearchProblem& problem);

enum class OrderPolicy { Identity, Given, Optimize };

struct ExactQuery {
    SimpleGraph graph{0};
    VerificationProfile profile = VerificationProfile::Strict;
    bool crosscap_allowed = false;
    int lo = 1;
    int hi = 1;
    OrderPolicy order_policy = OrderPolicy::Identity;
    std::optional<CircularOrder> order;
    SearchLimits limits;
};

struct ExactResult {
    SearchStatus status = SearchStatus::ExhaustedUnsat;  // Satisfiable once k* is found
    std::optional<int> value;                            // least satisfiable budget in [lo, hi]
    std::optional<BookLayout> witness;
    std::optional<SearchStats> unsat_below;  // stats of the UNSAT run at value-1
    std::vector<std::pair<int, SearchOutcome>> runs;
};

/// Linear scan of solve over budgets lo..hi.
ExactResult exact_value(const ExactQuery& query);

/// Spine orders on n vertices up to rotation and reflection: vertex 1 first,
/// second entry smaller than the last. Lexicographic order.
std::vector<CircularOrder> canonical_orders(int n);

}  // namespace starbook
