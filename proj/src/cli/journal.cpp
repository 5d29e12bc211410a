#include "starbook/cli/journal.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>

#include "starbook/cli/graph_spec.hpp"

namespace starbook::cli {

nlohmann::json JournalRecord::to_json() const {
    nlohmann::json j;
    j["timestamp"] = timestamp;
    j["graph"] = graph;
    j["order_policy"] = order_policy;
    j["profile"] = profile;
    j["crosscap"] = crosscap;
    j["budget"] = budget;
    j["outcome"] = outcome;
    j["k_star"] = k_star ? nlohmann::json(*k_star) : nlohmann::json(nullptr);
    j["nodes"] = nodes;
    j["wall_seconds"] = wall_seconds;
    j["digest"] = digest;
    return j;
}

JournalRecord JournalRecord::from_json(const nlohmann::json& j) {
    JournalRecord r;
    r.timestamp = j.at("timestamp").get<std::string>();
    r.graph = j.at("graph");
    r.order_policy = j.at("order_policy").get<std::string>();
    r.profile = j.at("profile").get<std::string>();
    r.crosscap = j.at("crosscap").get<bool>();
    r.budget = j.at("budget").get<int>();
    r.outcome = j.at("outcome").get<std::string>();
    if (!j.at("k_star").is_null()) r.k_star = j.at("k_star").get<int>();
    r.nodes = j.at("nodes").get<long long>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.digest = j.at("digest").get<std::string>();
    return r;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void Journal::append(const JournalRecord& record) const {
    // A torn last line must not swallow the new record.
    bool needs_newline = false;
    {
        std::ifstream in(path_, std::ios::binary | std::ios::ate);
        if (in && in.tellg() > 0) {
            in.seekg(-1, std::ios::end);
            needs_newline = in.get() != '\n';
        }
    }
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw FormatError("cannot open journal '" + path_ + "'");
    if (needs_newline) out << '\n';
    out << record.to_json().dump() << '\n';
    if (!out.flush()) throw FormatError("journal write to '" + path_ + "' failed");
}

std::vector<JournalRecord> Journal::load(std::size_t* skipped) const {
    std::vector<JournalRecord> records;
    std::size_t bad = 0;
    std::ifstream in(path_, std::ios::binary);
    std::string line;
    while (in && std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            records.push_back(JournalRecord::from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception&) {
            ++bad;
        }
    }
    if (skipped) *skipped = bad;
    return records;
}

std::optional<int> Bracket::exact() const {
    if (sat_min && unsat_max + 1 == *sat_min) return sat_min;
    return std::nullopt;
}

std::string Bracket::str() const {
    if (auto k = exact()) return std::to_string(*k);
    if (sat_min) return "[" + std::to_string(unsat_max + 1) + ".." + std::to_string(*sat_min) + "]";
    if (unsat_max > 0) return ">=" + std::to_string(unsat_max + 1);
    return "-";
}

Bracket bracket_for(const std::vector<JournalRecord>& records, const nlohmann::json& graph,
                    const std::string& profile, bool crosscap) {
    Bracket b;
    for (const auto& r : records) {
        if (r.graph != graph || r.profile != profile || r.crosscap != crosscap) continue;
        if (r.outcome == "sat") {
            b.sat_min = b.sat_min ? std::min(*b.sat_min, r.budget) : r.budget;
        } else if (r.outcome == "unsat") {
            b.unsat_max = std::max(b.unsat_max, r.budget);
        }
        if (r.k_star) {
            b.sat_min = b.sat_min ? std::min(*b.sat_min, *r.k_star) : *r.k_star;
            b.unsat_max = std::max(b.unsat_max, *r.k_star - 1);
        }
    }
    return b;
}

}  // namespace starbook::cli
