#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace starbook::cli {

struct JournalRecord {
    std::string timestamp;  // ISO-8601 UTC
    nlohmann::json graph;   // GraphSpec::to_json()
    std::string order_policy;
    std::string profile;
    bool crosscap = false;
    int budget = 0;
    std::string outcome;  // sat | unsat | aborted
    std::optional<int> k_star;
    long long nodes = 0;
    double wall_seconds = 0.0;
    std::string digest;  // certificate digest, sat only

    nlohmann::json to_json() const;
    static JournalRecord from_json(const nlohmann::json& j);
};

std::string utc_timestamp();

/// Append-only JSONL results log.
class Journal {
public:
    explicit Journal(std::string path) : path_(std::move(path)) {}

    const std::string& path() const { return path_; }

    void append(const JournalRecord& record) const;

    /// Reads every well-formed record. Lines that do not parse, such as a
    /// final line cut short by a crash, are skipped and counted.
    std::vector<JournalRecord> load(std::size_t* skipped = nullptr) const;

private:
    std::string path_;
};

/// What the journal establishes about the least budget for one graph and
/// profile: every budget up to `unsat_max` was refuted, `sat_min` succeeded.
struct Bracket {
    int unsat_max = 0;
    std::optional<int> sat_min;

    std::optional<int> exact() const;
    /// "5", "[4..6]", ">=5" or "-".
    std::string str() const;
};

Bracket bracket_for(const std::vector<JournalRecord>& records, const nlohmann::json& graph,
                    const std::string& profile, bool crosscap);

}  // namespace starbook::cli
