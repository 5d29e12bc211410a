#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "starbook/cli/graph_spec.hpp"
#include "starbook/model.hpp"
#include "starbook/verify.hpp"

namespace starbook::cli {

inline constexpr const char* kCertificateFormat = "starbook-cert/1";

/// Serialized layout. `meta` is a free-form object; when it carries a
/// "graph" entry the graph is rebuilt from it, otherwise the graph is the
/// union of the page edges.
struct Certificate {
    int n = 0;
    std::vector<VertexId> order;
    std::vector<Page> pages;
    nlohmann::json meta = nlohmann::json::object();

    SimpleGraph graph() const;
    /// Throws FormatError when the parts do not form a layout.
    BookLayout layout() const;
    VerificationReport verify(VerificationProfile profile) const;
    /// Relaxed when any cross-cap page is present, strict otherwise.
    VerificationProfile default_profile() const;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

Certificate make_certificate(const BookLayout& layout, nlohmann::json meta = nlohmann::json::object());

/// Canonical text: fixed key order, one page per line, edges sorted, disk
/// pages first. Equal layouts give identical bytes.
std::string serialize(const Certificate& cert);

Certificate parse_certificate(const std::string& text);

Certificate read_certificate_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Hex SHA-256 of the canonical serialization.
std::string digest(const Certificate& cert);

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace starbook::cli
