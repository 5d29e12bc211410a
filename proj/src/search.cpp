#include "starbook/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>

namespace starbook {

std::string to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::Satisfiable:
        return "sat";
    case SearchStatus::ExhaustedUnsat:
        return "unsat";
    case SearchStatus::Aborted:
        return "aborted";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool intersects(const Bitset& other) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] & other.words_[w]) return true;
        }
        return false;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct PageState {
    std::vector<int> degree;
    std::vector<long long> neighbour_sum;  // equals the neighbour for degree-1 vertices
    Bitset members;
    std::vector<int> edges;
    int components = 0;
    bool crosscap = false;
};

struct SharedBudget {
    long long node_limit;
    Clock::time_point deadline;
    long long nodes = 0;
};

class Solver {
public:
    Solver(const SearchProblem& problem, const CircularOrder& order, SharedBudget& budget)
        : problem_(problem), order_(order), budget_(budget), all_(problem.graph.edges()),
          n_(problem.graph.n()) {
        const bool geometric = problem.profile != VerificationProfile::StarForestsOnly;
        const std::size_t m = all_.size();
        conflicts_.assign(m, Bitset(m));
        conflict_degree_.assign(m, 0);
        if (geometric) {
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = i + 1; j < m; ++j) {
                    if (interleaves(order_, all_[i], all_[j])) {
                        conflicts_[i].set(j);
                        conflicts_[j].set(i);
                        ++conflict_degree_[i];
                        ++conflict_degree_[j];
                    }
                }
            }
        }

        disk_pages_ = problem.budget - (problem.crosscap_allowed ? 1 : 0);
        pages_.resize(problem.budget);
        for (int p = 0; p < problem.budget; ++p) {
            pages_[p].degree.assign(n_ + 1, 0);
            pages_[p].neighbour_sum.assign(n_ + 1, 0);
            pages_[p].members = Bitset(m);
            pages_[p].crosscap = problem.crosscap_allowed && p == problem.budget - 1;
        }
        assignment_.assign(m, -1);

        if (static_cast<int>(problem.pinned.size()) > disk_pages_) {
            throw DomainError("more pinned pages than disk pages in the budget");
        }
        for (std::size_t p = 0; p < problem.pinned.size(); ++p) {
            for (const auto& e : problem.pinned[p]) {
                const auto idx = index_of(e);
                if (assignment_[idx] != -1 || !can_place(static_cast<int>(p), idx)) {
                    throw DomainError("pinned pages are not a valid partial layout");
                }
                place(static_cast<int>(p), idx);
            }
        }
        opened_ = static_cast<int>(problem.pinned.size());

        for (std::size_t i = 0; i < m; ++i) {
            if (assignment_[i] == -1) free_.push_back(static_cast<int>(i));
        }
        std::stable_sort(free_.begin(), free_.end(), [this](int a, int b) {
            return conflict_degree_[a] > conflict_degree_[b];
        });
    }

    SearchStatus run(SearchStats& stats) {
        const bool found = dfs(0);
        stats.max_depth = std::max(stats.max_depth, max_depth_);
        if (found) return SearchStatus::Satisfiable;
        return aborted_ ? SearchStatus::Aborted : SearchStatus::ExhaustedUnsat;
    }

    const std::string& abort_reason() const { return abort_reason_; }

    BookLayout layout() const {
        std::vector<Page> pages;
        for (int p = 0; p < problem_.budget; ++p) {
            std::vector<EdgeKey> edges;
            for (std::size_t i = 0; i < all_.size(); ++i) {
                if (assignment_[i] == p) edges.push_back(all_[i]);
            }
            if (!edges.empty()) {
                pages.emplace_back(pages_[p].crosscap ? PageKind::CrossCap : PageKind::Disk,
                                   std::move(edges));
            }
        }
        return BookLayout(problem_.graph, order_, std::move(pages));
    }

private:
    std::size_t index_of(const EdgeKey& e) const {
        auto it = std::lower_bound(all_.begin(), all_.end(), e);
        if (it == all_.end() || *it != e) {
            throw DomainError("pinned edge " + e.str() + " is not in the graph");
        }
        return static_cast<std::size_t>(it - all_.begin());
    }

    bool star_ok(const PageState& page, const EdgeKey& e) const {
        const int du = page.degree[e.u()];
        const int dv = page.degree[e.v()];
        if (du > 0 && dv > 0) return false;
        if (du == 1 && page.degree[page.neighbour_sum[e.u()]] >= 2) return false;
        if (dv == 1 && page.degree[page.neighbour_sum[e.v()]] >= 2) return false;
        return true;
    }

    bool crosscap_ok(const PageState& page, std::size_t idx) const {
        std::vector<EdgeKey> edges;
        edges.reserve(page.edges.size() + 1);
        for (int i : page.edges) edges.push_back(all_[i]);
        edges.push_back(all_[idx]);
        return crosscap_page_valid(order_, Page(PageKind::CrossCap, std::move(edges))).ok;
    }

    bool can_place(int p, std::size_t idx) const {
        const PageState& page = pages_[p];
        if (!star_ok(page, all_[idx])) return false;
        if (problem_.profile == VerificationProfile::StarForestsOnly) return true;
        if (page.crosscap) return crosscap_ok(page, idx);
        return !page.members.intersects(conflicts_[idx]);
    }

    // Necessary condition only: skips the routing test on the cap page.
    bool may_place(int p, std::size_t idx) const {
        const PageState& page = pages_[p];
        if (!star_ok(page, all_[idx])) return false;
        if (problem_.profile == VerificationProfile::StarForestsOnly || page.crosscap) return true;
        return !page.members.intersects(conflicts_[idx]);
    }

    void place(int p, std::size_t idx) {
        PageState& page = pages_[p];
        const EdgeKey& e = all_[idx];
        if (page.degree[e.u()] == 0 && page.degree[e.v()] == 0) ++page.components;
        ++page.degree[e.u()];
        ++page.degree[e.v()];
        page.neighbour_sum[e.u()] += e.v();
        page.neighbour_sum[e.v()] += e.u();
        page.members.set(idx);
        page.edges.push_back(static_cast<int>(idx));
        assignment_[idx] = p;
    }

    void unplace(int p, std::size_t idx) {
        PageState& page = pages_[p];
        const EdgeKey& e = all_[idx];
        --page.degree[e.u()];
        --page.degree[e.v()];
        page.neighbour_sum[e.u()] -= e.v();
        page.neighbour_sum[e.v()] -= e.u();
        if (page.degree[e.u()] == 0 && page.degree[e.v()] == 0) --page.components;
        page.members.reset(idx);
        page.edges.pop_back();
        assignment_[idx] = -1;
    }

    int capacity(const PageState& page) const {
        const int used = static_cast<int>(page.edges.size());
        return n_ - std::max(1, page.components) - used;
    }

    // Pages an edge may go to right now: opened disks, the next new disk, the cap.
    template <typename F>
    void for_each_candidate(F&& f) const {
        const int disks = std::min(opened_ + 1, disk_pages_);
        for (int p = 0; p < disks; ++p) {
            if (!f(p)) return;
        }
        if (problem_.crosscap_allowed) f(problem_.budget - 1);
    }

    bool bounds_ok(std::size_t depth) {
        const auto remaining = static_cast<long long>(free_.size() - depth);

        // Star forests never merge components, so a page with c components
        // can still take at most n - c - |E| edges.
        long long room = static_cast<long long>(disk_pages_ - opened_) * (n_ - 1);
        for (int p = 0; p < opened_; ++p) room += capacity(pages_[p]);
        if (problem_.crosscap_allowed) room += capacity(pages_.back());
        if (room < remaining) return false;

        if (opened_ < disk_pages_) return true;

        for (std::size_t d = depth; d < free_.size(); ++d) {
            const auto idx = static_cast<std::size_t>(free_[d]);
            bool any = false;
            for_each_candidate([&](int p) {
                any = may_place(p, idx);
                return !any;
            });
            if (!any) return false;
        }

        if (problem_.profile == VerificationProfile::StarForestsOnly || problem_.crosscap_allowed) {
            return true;
        }

        // Pairwise crossing edges need distinct pages: greedy clique among the
        // unassigned edges, then a matching of clique edges onto pages.
        std::vector<int> clique;
        for (std::size_t d = depth; d < free_.size(); ++d) {
            const int idx = free_[d];
            if (std::all_of(clique.begin(), clique.end(),
                            [&](int c) { return conflicts_[idx].test(c); })) {
                clique.push_back(idx);
            }
        }
        if (clique.size() < 2) return true;
        std::vector<int> page_owner(disk_pages_, -1);
        std::vector<std::vector<int>> options(clique.size());
        for (std::size_t c = 0; c < clique.size(); ++c) {
            for (int p = 0; p < disk_pages_; ++p) {
                if (may_place(p, clique[c])) options[c].push_back(p);
            }
        }
        std::vector<bool> seen;
        auto augment = [&](auto&& self, int c) -> bool {
            for (int p : options[c]) {
                if (seen[p]) continue;
                seen[p] = true;
                if (page_owner[p] == -1 || self(self, page_owner[p])) {
                    page_owner[p] = c;
                    return true;
                }
            }
            return false;
        };
        for (std::size_t c = 0; c < clique.size(); ++c) {
            seen.assign(disk_pages_, false);
            if (!augment(augment, static_cast<int>(c))) return false;
        }
        return true;
    }

    bool out_of_budget() {
        if (budget_.nodes >= budget_.node_limit) {
            aborted_ = true;
            abort_reason_ = "node limit reached";
        } else if ((budget_.nodes & 1023) == 0 && Clock::now() >= budget_.deadline) {
            aborted_ = true;
            abort_reason_ = "time limit reached";
        }
        return aborted_;
    }

    bool dfs(std::size_t depth) {
        max_depth_ = std::max(max_depth_, static_cast<int>(depth));
        if (depth == free_.size()) return true;
        ++budget_.nodes;
        if (out_of_budget()) return false;
        if (!bounds_ok(depth)) return false;

        const auto idx = static_cast<std::size_t>(free_[depth]);
        bool found = false;
        for_each_candidate([&](int p) {
            if (!can_place(p, idx)) return true;
            const bool opens = !pages_[p].crosscap && p == opened_;
            place(p, idx);
            if (opens) ++opened_;
            found = dfs(depth + 1);
            if (found) return false;
            if (opens) --opened_;
            unplace(p, idx);
            return !aborted_;
        });
        return found;
    }

    const SearchProblem& problem_;
    const CircularOrder& order_;
    SharedBudget& budget_;
    const std::vector<EdgeKey>& all_;
    int n_;
    std::vector<Bitset> conflicts_;
    std::vector<int> conflict_degree_;
    std::vector<PageState> pages_;
    std::vector<int> assignment_;
    std::vector<int> free_;
    int disk_pages_ = 0;
    int opened_ = 0;
    int max_depth_ = 0;
    bool aborted_ = false;
    std::string abort_reason_;
};

void check_problem(const SearchProblem& problem) {
    if (problem.budget < 1) {
        throw DomainError("search budget must be at least 1");
    }
    if (problem.crosscap_allowed && problem.profile != VerificationProfile::Relaxed) {
        throw DomainError("a cross-cap page requires the relaxed profile");
    }
    if (problem.crosscap_allowed && problem.budget < 1) {
        throw DomainError("cross-cap needs a page in the budget");
    }
    if (problem.optimize_order && problem.order) {
        throw DomainError("optimize_order and a fixed order are exclusive");
    }
    if (problem.optimize_order && problem.graph.n() > 9) {
        throw DomainError("order optimisation is limited to n <= 9");
    }
    if (problem.order && problem.order->size() != problem.graph.n()) {
        throw DomainError("order does not cover the graph's vertices");
    }
}

}  // namespace

std::vector<CircularOrder> canonical_orders(int n) {
    std::vector<CircularOrder> result;
    if (n <= 2) {
        result.push_back(CircularOrder::identity(n));
        return result;
    }
    std::vector<VertexId> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 2);
    do {
        if (rest.front() < rest.back()) {
            std::vector<VertexId> seq{1};
            seq.insert(seq.end(), rest.begin(), rest.end());
            result.emplace_back(std::move(seq));
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return result;
}

SearchOutcome solve(const SearchProblem& problem) {
    check_problem(problem);
    const auto start = Clock::now();
    SharedBudget budget{problem.limits.node_limit,
                        start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(problem.limits.time_limit_seconds)),
                        0};

    std::vector<CircularOrder> orders;
    if (problem.optimize_order) {
        orders = canonical_orders(problem.graph.n());
    } else {
        orders.push_back(problem.order ? *problem.order : CircularOrder::identity(problem.graph.n()));
    }

    SearchOutcome outcome;
    for (const auto& order : orders) {
        Solver solver(problem, order, budget);
        ++outcome.stats.orders_tried;
        const auto status = solver.run(outcome.stats);
        if (status == SearchStatus::Satisfiable) {
            outcome.status = status;
            outcome.layout = solver.layout();
            break;
        }
        if (status == SearchStatus::Aborted) {
            outcome.status = status;
            outcome.abort_reason = solver.abort_reason();
            break;
        }
    }
    outcome.stats.nodes = budget.nodes;
    outcome.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();

    if (outcome.layout) {
        const auto report = verify_layout(*outcome.layout, problem.profile);
        if (!report.passed) {
            throw std::logic_error("solver produced an invalid certificate: " +
                                   to_string(report.violations.front()));
        }
    }
    return outcome;
}

ExactResult exact_value(const ExactQuery& query) {
    if (query.lo > query.hi) {
        throw DomainError("exact_value needs lo <= hi");
    }
    ExactResult result;
    for (int k = std::max(1, query.lo); k <= query.hi; ++k) {
        SearchProblem problem;
        problem.graph = query.graph;
        problem.budget = k;
        problem.profile = query.profile;
        problem.crosscap_allowed = query.crosscap_allowed;
        problem.limits = query.limits;
        if (query.order_policy == OrderPolicy::Given) problem.order = query.order;
        problem.optimize_order = query.order_policy == OrderPolicy::Optimize;

        auto outcome = solve(problem);
        result.runs.emplace_back(k, outcome);
        if (outcome.status == SearchStatus::Aborted) {
            result.status = SearchStatus::Aborted;
            return result;
        }
        if (outcome.status == SearchStatus::Satisfiable) {
            result.status = SearchStatus::Satisfiable;
            result.value = k;
            result.witness = outcome.layout;
            if (result.runs.size() > 1) {
                result.unsat_below = result.runs[result.runs.size() - 2].second.stats;
            }
            return result;
        }
    }
    result.status = SearchStatus::ExhaustedUnsat;
    return result;
}

}  // namespace starbook
