#include "starbook/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "starbook/cli/certificate.hpp"
#include "starbook/cli/graph_spec.hpp"
#include "starbook/cli/journal.hpp"
#include "starbook/cli/svg.hpp"
#include "starbook/construct.hpp"
#include "starbook/search.hpp"

namespace starbook::cli {

namespace {

constexpr const char* kDefaultJournal = "starbook-journal.jsonl";

struct GraphOptions {
    std::string family = "K";
    int n = 0;
    int r = 0;
    int k = 0;
    std::string remove = "1,2";
    std::string graph_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "Graph family: K, O, Cpow, K-e");
        cmd->add_option("--n", n, "Vertex count");
        cmd->add_option("--r", r, "Half vertex count (K, O)");
        cmd->add_option("--k", k, "Cycle power exponent (Cpow)");
        cmd->add_option("--remove", remove, "Edge removed for K-e, as u,v");
        cmd->add_option("--graph", graph_file, "Edge-list file instead of a family");
    }

    GraphSpec spec() const {
        GraphSpec s;
        if (!graph_file.empty()) {
            std::ifstream in(graph_file);
            if (!in) throw FormatError("cannot open '" + graph_file + "'");
            const auto g = parse_edge_list(in);
            s.family = Family::EdgeList;
            s.n = g.n();
            s.edges = g.edges();
            return s;
        }
        s.family = parse_family(family);
        switch (s.family) {
        case Family::Octahedron:
            s.r = r > 0 ? r : n / 2;
            if (r == 0 && n % 2 != 0) throw FormatError("octahedron needs an even --n or --r");
            if (s.r < 2) throw FormatError("octahedron needs r >= 2");
            s.n = 2 * s.r;
            break;
        case Family::CyclePower:
            s.n = n;
            s.k = k;
            break;
        case Family::CompleteMinusEdge: {
            s.n = n > 0 ? n : 2 * r;
            int u = 0;
            int v = 0;
            char comma = 0;
            std::istringstream in(remove);
            if (!(in >> u >> comma >> v) || comma != ',') {
                throw FormatError("--remove expects u,v");
            }
            s.removed = EdgeKey(u, v);
            break;
        }
        default:
            s.n = n > 0 ? n : 2 * r;
            break;
        }
        if (s.n < 1) throw FormatError("missing --n (or --r)");
        return s;
    }
};

VerificationProfile parse_profile(const std::string& name) {
    if (name == "strict") return VerificationProfile::Strict;
    if (name == "relaxed") return VerificationProfile::Relaxed;
    if (name == "saonly") return VerificationProfile::StarForestsOnly;
    throw FormatError("unknown profile '" + name + "' (expected strict, relaxed, saonly)");
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw FormatError("bad range '" + text + "' (expected a..b)");
    }
}

void emit_certificate(const Certificate& cert, const std::string& out_path, std::ostream& out) {
    const auto text = serialize(cert);
    if (out_path.empty() || out_path == "-") {
        out << text;
    } else {
        write_text_file(out_path, text);
    }
}

void print_report(const VerificationReport& report, VerificationProfile profile, std::ostream& out) {
    out << (report.passed ? "PASS" : "FAIL") << " (profile " << to_string(profile) << ", "
        << report.violations.size() << " violations)\n";
    for (const auto& v : report.violations) out << "  " << to_string(v) << '\n';
}

struct SearchFlags {
    std::string profile = "strict";
    bool crosscap = false;
    bool optimize_order = false;
    bool deterministic = false;
    long long node_limit = 1'000'000'000;
    double time_limit = 600.0;
    std::string order;
    std::string out_path;
    std::string svg_path;
    std::string journal = kDefaultJournal;

    void attach(CLI::App* cmd) {
        cmd->add_option("--profile", profile, "strict | relaxed | saonly");
        cmd->add_flag("--crosscap", crosscap, "One budget page is a cross-cap (relaxed only)");
        cmd->add_flag("--optimize-order", optimize_order, "Try every spine order (n <= 9)");
        cmd->add_flag("--deterministic", deterministic, "Canonical least certificate");
        cmd->add_option("--node-limit", node_limit, "Search node limit");
        cmd->add_option("--time-limit", time_limit, "Search time limit in seconds");
        cmd->add_option("--order", order, "Spine order as comma-separated labels");
        cmd->add_option("--out", out_path, "Write the certificate here");
        cmd->add_option("--svg", svg_path, "Render the certificate to this SVG file");
        cmd->add_option("--journal", journal, "Results journal (JSONL)");
    }

    std::optional<CircularOrder> fixed_order() const {
        if (order.empty()) return std::nullopt;
        std::vector<VertexId> seq;
        std::istringstream in(order);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                seq.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw FormatError("bad --order entry '" + item + "'");
            }
        }
        try {
            return CircularOrder(std::move(seq));
        } catch (const DomainError& e) {
            throw FormatError(std::string("--order: ") + e.what());
        }
    }

    std::string order_policy() const {
        if (optimize_order) return "optimize";
        return order.empty() ? "identity" : "given:" + order;
    }
};

JournalRecord make_record(const GraphSpec& spec, const SearchFlags& flags, int budget,
                          const SearchOutcome& outcome, const nlohmann::json& meta) {
    JournalRecord rec;
    rec.timestamp = utc_timestamp();
    rec.graph = spec.to_json();
    rec.order_policy = flags.order_policy();
    rec.profile = flags.profile;
    rec.crosscap = flags.crosscap;
    rec.budget = budget;
    rec.outcome = to_string(outcome.status);
    rec.nodes = outcome.stats.nodes;
    rec.wall_seconds = outcome.stats.wall_seconds;
    if (outcome.layout) rec.digest = digest(make_certificate(*outcome.layout, meta));
    return rec;
}

void print_outcome(int budget, const SearchOutcome& outcome, std::ostream& out) {
    static const char* names[] = {"SAT", "UNSAT", "ABORTED"};
    out << fmt::format("budget {}: {} (nodes {}, max depth {}, orders {}, {:.3f} s)", budget,
                       names[static_cast<int>(outcome.status)], outcome.stats.nodes,
                       outcome.stats.max_depth, outcome.stats.orders_tried,
                       outcome.stats.wall_seconds);
    if (!outcome.abort_reason.empty()) out << " [" << outcome.abort_reason << "]";
    out << '\n';
}

int cmd_construct(const GraphOptions& g, const std::string& scheme, const std::string& out_path,
                  const std::string& svg_path, std::ostream& out, std::ostream& err) {
    auto spec = g.spec();
    nlohmann::json meta;
    std::optional<BookLayout> layout;

    if (spec.family == Family::Complete) {
        const int n = spec.n;
        const bool even = n % 2 == 0;
        const int r = even ? n / 2 : (n - 1) / 2;
        if (scheme == "relaxed" || scheme == "odd") {
            if (scheme == "odd" && even) throw FormatError("--scheme odd needs an odd --n");
            if (r < 2) throw FormatError("relaxed scheme needs n >= 4");
            layout = even ? relaxed_complete(r) : odd_extension(relaxed_complete(r));
        } else if (scheme == "strict-literal") {
            if (!even || r < 3) throw FormatError("strict-literal needs an even n >= 6");
            layout = strict_literal(r);
        } else if (scheme == "strict") {
            if (r < 2) throw FormatError("strict scheme needs n >= 4");
            auto result = strict_complete(r);
            meta["source"] = result.source == StrictSource::Literal    ? "literal"
                             : result.source == StrictSource::Repaired ? "repaired"
                             : result.source == StrictSource::Searched ? "searched"
                                                                       : "star-pages";
            if (!result.layout) {
                err << "strict construction failed for n=" << 2 * r << ": " << result.diagnostic
                    << '\n';
                if (result.proven_impossible) {
                    err << "exhaustive search shows no strict layout with " << r + 2
                        << " star-forest pages exists\n";
                }
                return kExitFailed;
            }
            layout = even ? std::move(result.layout) : odd_extension(*result.layout);
        } else if (scheme == "stars") {
            layout = star_pages(n);
        } else {
            throw FormatError("scheme '" + scheme + "' does not apply to family K");
        }
    } else if (spec.family == Family::Octahedron && scheme == "octahedron") {
        layout = octahedron_pages(spec.r);
    } else {
        throw FormatError("scheme '" + scheme + "' does not apply to family " +
                          family_name(spec.family));
    }

    meta["graph"] = spec.to_json();
    meta["scheme"] = scheme;
    const auto cert = make_certificate(*layout, meta);
    emit_certificate(cert, out_path, out);
    if (!svg_path.empty()) write_text_file(svg_path, render_svg(cert));
    return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& profile_name, bool as_json,
               std::ostream& out) {
    const auto cert = read_certificate_file(path);
    const auto profile = profile_name.empty() ? cert.default_profile() : parse_profile(profile_name);
    const auto report = cert.verify(profile);
    if (as_json) {
        out << report_to_json(report).dump(2) << '\n';
    } else {
        print_report(report, profile, out);
    }
    return report.passed ? kExitOk : kExitFailed;
}

int cmd_render(const std::string& path, const std::string& svg_path, const std::string& profile_name,
               bool force, std::ostream& out, std::ostream& err) {
    const auto cert = read_certificate_file(path);
    const auto profile = profile_name.empty() ? cert.default_profile() : parse_profile(profile_name);
    const auto report = cert.verify(profile);
    if (!report.passed && !force) {
        err << "certificate does not verify; use --force to render anyway\n";
        print_report(report, profile, err);
        return kExitFailed;
    }
    const auto svg = render_svg(cert);
    if (svg_path.empty() || svg_path == "-") {
        out << svg;
    } else {
        write_text_file(svg_path, svg);
    }
    return kExitOk;
}

SearchProblem make_problem(const GraphSpec& spec, const SearchFlags& flags, int budget) {
    SearchProblem problem;
    problem.graph = spec.build();
    problem.budget = budget;
    problem.profile = parse_profile(flags.profile);
    problem.crosscap_allowed = flags.crosscap;
    problem.optimize_order = flags.optimize_order;
    problem.deterministic = true;
    problem.order = flags.fixed_order();
    problem.limits = {flags.node_limit, flags.time_limit};
    return problem;
}

int cmd_search(const GraphOptions& g, const SearchFlags& flags, int budget, std::ostream& out) {
    const auto spec = g.spec();
    const auto problem = make_problem(spec, flags, budget);
    const auto outcome = solve(problem);

    nlohmann::json meta;
    meta["graph"] = spec.to_json();
    meta["search"] = {{"budget", budget}, {"profile", flags.profile}, {"crosscap", flags.crosscap}};
    Journal(flags.journal).append(make_record(spec, flags, budget, outcome, meta));

    out << spec.label() << ", profile " << flags.profile << (flags.crosscap ? " + cross-cap" : "")
        << ", order " << flags.order_policy() << '\n';
    print_outcome(budget, outcome, out);
    if (outcome.layout) {
        const auto cert = make_certificate(*outcome.layout, meta);
        if (!flags.out_path.empty()) emit_certificate(cert, flags.out_path, out);
        if (!flags.svg_path.empty()) write_text_file(flags.svg_path, render_svg(cert));
    }
    switch (outcome.status) {
    case SearchStatus::Satisfiable:
        return kExitOk;
    case SearchStatus::ExhaustedUnsat:
        return kExitFailed;
    case SearchStatus::Aborted:
        return kExitAborted;
    }
    return kExitAborted;
}

int cmd_exact(const GraphOptions& g, const SearchFlags& flags, const std::string& range,
              std::ostream& out) {
    const auto spec = g.spec();
    auto [lo, hi] = parse_range(range);
    const auto base = make_problem(spec, flags, std::max(1, lo));

    ExactQuery query;
    query.graph = base.graph;
    query.profile = base.profile;
    query.crosscap_allowed = base.crosscap_allowed;
    query.lo = lo;
    query.hi = hi;
    query.order_policy = flags.optimize_order ? OrderPolicy::Optimize
                         : base.order         ? OrderPolicy::Given
                                              : OrderPolicy::Identity;
    query.order = base.order;
    query.limits = base.limits;
    const auto result = exact_value(query);

    nlohmann::json meta;
    meta["graph"] = spec.to_json();
    Journal journal(flags.journal);
    out << spec.label() << ", profile " << flags.profile << (flags.crosscap ? " + cross-cap" : "")
        << ", order " << flags.order_policy() << '\n';
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        const auto& [budget, outcome] = result.runs[i];
        meta["search"] = {{"budget", budget}, {"profile", flags.profile}, {"crosscap", flags.crosscap}};
        auto rec = make_record(spec, flags, budget, outcome, meta);
        const bool settled = outcome.status == SearchStatus::Satisfiable && (i > 0 || budget == 1);
        if (settled) rec.k_star = budget;
        journal.append(rec);
        print_outcome(budget, outcome, out);
    }
    if (result.value) {
        const bool settled = result.unsat_below.has_value() || *result.value == 1;
        out << (settled ? "k* = " : "k* <= ") << *result.value << '\n';
        if (result.witness) {
            meta["search"] = {{"budget", *result.value}, {"profile", flags.profile},
                              {"crosscap", flags.crosscap}};
            const auto cert = make_certificate(*result.witness, meta);
            if (!flags.out_path.empty()) emit_certificate(cert, flags.out_path, out);
            if (!flags.svg_path.empty()) write_text_file(flags.svg_path, render_svg(cert));
        }
    }
    switch (result.status) {
    case SearchStatus::Satisfiable:
        return kExitOk;
    case SearchStatus::ExhaustedUnsat:
        out << "no budget in " << lo << ".." << hi << " is satisfiable\n";
        return kExitFailed;
    case SearchStatus::Aborted:
        return kExitAborted;
    }
    return kExitAborted;
}

int cmd_bounds(const GraphOptions& g, bool as_json, std::ostream& out) {
    const auto spec = g.spec();
    const auto b = bounds(spec.build(), spec.hint());
    if (as_json) {
        nlohmann::json j{{"graph", spec.to_json()},  {"n", b.n},
                         {"m", b.m},                 {"sa_lower", b.sa_lower},
                         {"counting_lower", b.counting_lower}};
        j["bt_lower"] = b.bt_lower ? nlohmann::json(*b.bt_lower) : nlohmann::json(nullptr);
        j["arboricity"] = b.arboricity_Kn ? nlohmann::json(*b.arboricity_Kn) : nlohmann::json(nullptr);
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << spec.label() << ": n=" << b.n << " m=" << b.m << " sa_lower=" << b.sa_lower
        << " counting_lower=" << b.counting_lower;
    if (b.bt_lower) out << " bt_lower=" << *b.bt_lower;
    if (b.arboricity_Kn) out << " arboricity=" << *b.arboricity_Kn;
    out << '\n';
    return kExitOk;
}

int cmd_table(GraphOptions g, const std::string& range, const std::string& journal_path,
              std::ostream& out) {
    auto [lo, hi] = parse_range(range);
    std::size_t skipped = 0;
    const auto records = Journal(journal_path).load(&skipped);
    out << fmt::format("{:>4} {:>8} {:>8} {:>8} {:>8} {:>8}\n", "n", "sa_lower", "bt_lower", "sa",
                       "sarbt", "sabt");
    for (int n = lo; n <= hi; ++n) {
        g.n = n;
        g.r = 0;
        GraphSpec spec;
        try {
            spec = g.spec();
            (void)spec.build();
        } catch (const std::exception&) {
            continue;
        }
        const auto b = bounds(spec.build(), spec.hint());
        const auto key = spec.to_json();
        out << fmt::format("{:>4} {:>8} {:>8} {:>8} {:>8} {:>8}\n", spec.n, b.sa_lower,
                           b.bt_lower ? std::to_string(*b.bt_lower) : "-",
                           bracket_for(records, key, "saonly", false).str(),
                           bracket_for(records, key, "relaxed", true).str(),
                           bracket_for(records, key, "strict", false).str());
    }
    if (skipped > 0) out << "(" << skipped << " unreadable journal lines skipped)\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"starbook: star-forest book embeddings"};
    app.require_subcommand(1);
    std::function<int()> action;

    GraphOptions graph;
    SearchFlags flags;
    std::string scheme;
    std::string out_path;
    std::string svg_path;
    std::string file;
    std::string profile_name;
    std::string range;
    int budget = 0;
    bool as_json = false;
    bool force = false;

    auto* construct = app.add_subcommand("construct", "Build a layout from a named scheme");
    graph.attach(construct);
    construct->add_option("--scheme", scheme, "relaxed | strict-literal | strict | stars | octahedron | odd")
        ->required();
    construct->add_option("--out", out_path, "Certificate output file (default stdout)");
    construct->add_option("--svg", svg_path, "Also render to this SVG file");
    construct->callback([&] {
        action = [&] { return cmd_construct(graph, scheme, out_path, svg_path, out, err); };
    });

    auto* verify = app.add_subcommand("verify", "Check a certificate");
    verify->add_option("certificate", file)->required();
    verify->add_option("--profile", profile_name, "strict | relaxed | saonly");
    verify->add_flag("--json", as_json, "Print the report as JSON");
    verify->callback([&] { action = [&] { return cmd_verify(file, profile_name, as_json, out); }; });

    auto* search = app.add_subcommand("search", "Decide one page budget exactly");
    graph.attach(search);
    flags.attach(search);
    search->add_option("--budget", budget, "Page budget")->required();
    search->callback([&] { action = [&] { return cmd_search(graph, flags, budget, out); }; });

    auto* exact = app.add_subcommand("exact", "Least satisfiable budget in a range");
    graph.attach(exact);
    flags.attach(exact);
    exact->add_option("--budget", range, "Budget range lo..hi")->required();
    exact->callback([&] { action = [&] { return cmd_exact(graph, flags, range, out); }; });

    auto* render = app.add_subcommand("render", "Render a certificate as SVG");
    render->add_option("certificate", file)->required();
    render->add_option("--svg", svg_path, "Output SVG file (default stdout)");
    render->add_option("--profile", profile_name, "Profile used for the validity check");
    render->add_flag("--force", force, "Render even if the certificate does not verify");
    render->callback(
        [&] { action = [&] { return cmd_render(file, svg_path, profile_name, force, out, err); }; });

    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form lower bounds");
    graph.attach(bounds_cmd);
    bounds_cmd->add_flag("--json", as_json, "Print as JSON");
    bounds_cmd->callback([&] { action = [&] { return cmd_bounds(graph, as_json, out); }; });

    auto* table = app.add_subcommand("table", "Bounds and journaled values per n");
    std::string journal_path = kDefaultJournal;
    table->add_option("--family", graph.family, "Graph family");
    table->add_option("--n", range, "Range lo..hi")->required();
    table->add_option("--k", graph.k, "Cycle power exponent (Cpow)");
    table->add_option("--journal", journal_path, "Results journal (JSONL)");
    table->callback([&] { action = [&] { return cmd_table(graph, range, journal_path, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace starbook::cli
