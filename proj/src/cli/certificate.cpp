#include "starbook/cli/certificate.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace starbook::cli {

namespace {

nlohmann::json edge_json(const EdgeKey& e) { return nlohmann::json::array({e.u(), e.v()}); }

struct ViolationJson {
    nlohmann::json operator()(const violation::DuplicateEdge& v) const {
        return {{"edge", edge_json(v.edge)}, {"pages", v.pages}};
    }
    nlohmann::json operator()(const violation::MissingEdge& v) const {
        return {{"edge", edge_json(v.edge)}};
    }
    nlohmann::json operator()(const violation::ForeignEdge& v) const {
        return {{"edge", edge_json(v.edge)}, {"page", v.page}};
    }
    nlohmann::json operator()(const violation::CrossingPair& v) const {
        return {{"page", v.page}, {"e", edge_json(v.e)}, {"f", edge_json(v.f)}};
    }
    nlohmann::json operator()(const violation::NotStarForest& v) const {
        return {{"page", v.page}, {"witness", edge_json(v.witness)}};
    }
    nlohmann::json operator()(const violation::CrossCapUnroutable& v) const {
        return {{"page", v.page}};
    }
    nlohmann::json operator()(const violation::TooManyCrossCaps& v) const {
        return {{"count", v.count}};
    }
    nlohmann::json operator()(const violation::OrderNotPermutation&) const {
        return nlohmann::json::object();
    }
};

}  // namespace

SimpleGraph Certificate::graph() const {
    if (meta.is_object() && meta.contains("graph")) {
        auto g = GraphSpec::from_json(meta.at("graph"));
        try {
            auto built = g.build();
            if (built.n() != n) {
                throw FormatError("certificate n does not match its graph description");
            }
            return built;
        } catch (const DomainError& e) {
            throw FormatError(std::string("certificate graph: ") + e.what());
        }
    }
    std::set<EdgeKey> edges;
    for (const auto& page : pages) edges.insert(page.edges().begin(), page.edges().end());
    try {
        return SimpleGraph(n, std::vector<EdgeKey>(edges.begin(), edges.end()));
    } catch (const DomainError& e) {
        throw FormatError(std::string("certificate edges: ") + e.what());
    }
}

BookLayout Certificate::layout() const {
    try {
        return BookLayout(graph(), CircularOrder(order), pages);
    } catch (const DomainError& e) {
        throw FormatError(std::string("certificate is not a layout: ") + e.what());
    }
}

VerificationReport Certificate::verify(VerificationProfile profile) const {
    return verify_parts(graph(), order, pages, profile);
}

VerificationProfile Certificate::default_profile() const {
    for (const auto& page : pages) {
        if (page.kind() == PageKind::CrossCap) return VerificationProfile::Relaxed;
    }
    return VerificationProfile::Strict;
}

Certificate make_certificate(const BookLayout& layout, nlohmann::json meta) {
    Certificate cert;
    cert.n = layout.graph().n();
    cert.order = layout.order().sequence();
    cert.pages = layout.pages();
    cert.meta = meta.is_null() ? nlohmann::json::object() : std::move(meta);
    return cert;
}

std::string serialize(const Certificate& cert) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format\": \"" << kCertificateFormat << "\",\n";
    out << "  \"n\": " << cert.n << ",\n";
    out << "  \"order\": [";
    for (std::size_t i = 0; i < cert.order.size(); ++i) {
        out << (i ? ", " : "") << cert.order[i];
    }
    out << "],\n";

    std::vector<const Page*> ordered;
    for (const auto& p : cert.pages) {
        if (p.kind() == PageKind::Disk) ordered.push_back(&p);
    }
    for (const auto& p : cert.pages) {
        if (p.kind() == PageKind::CrossCap) ordered.push_back(&p);
    }
    out << "  \"pages\": [";
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        out << (i ? ",\n" : "\n") << "    {\"kind\": \"" << to_string(ordered[i]->kind())
            << "\", \"edges\": [";
        const auto& edges = ordered[i]->edges();
        for (std::size_t j = 0; j < edges.size(); ++j) {
            out << (j ? ", " : "") << '[' << edges[j].u() << ", " << edges[j].v() << ']';
        }
        out << "]}";
    }
    out << (ordered.empty() ? "],\n" : "\n  ],\n");
    out << "  \"meta\": " << cert.meta.dump() << "\n";
    out << "}\n";
    return out.str();
}

Certificate parse_certificate(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kCertificateFormat) {
            throw FormatError("unsupported certificate format '" +
                              j.at("format").get<std::string>() + "'");
        }
        Certificate cert;
        cert.n = j.at("n").get<int>();
        if (cert.n < 0) throw FormatError("negative vertex count");
        cert.order = j.at("order").get<std::vector<VertexId>>();
        for (const auto& page : j.at("pages")) {
            const auto kind = page.at("kind").get<std::string>();
            PageKind pk;
            if (kind == "disk") {
                pk = PageKind::Disk;
            } else if (kind == "crosscap") {
                pk = PageKind::CrossCap;
            } else {
                throw FormatError("unknown page kind '" + kind + "'");
            }
            std::vector<EdgeKey> edges;
            for (const auto& e : page.at("edges")) {
                if (e.size() != 2) throw FormatError("edge must be a pair [u, v]");
                edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            }
            cert.pages.emplace_back(pk, std::move(edges));
        }
        if (j.contains("meta")) {
            cert.meta = j.at("meta");
            if (!cert.meta.is_object()) throw FormatError("meta must be an object");
        }
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed certificate: ") + e.what());
    } catch (const DomainError& e) {
        throw FormatError(std::string("malformed certificate: ") + e.what());
    }
}

Certificate read_certificate_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) throw FormatError("write to '" + path + "' failed");
}

std::string digest(const Certificate& cert) {
    const auto text = serialize(cert);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["passed"] = report.passed;
    auto arr = nlohmann::json::array();
    for (const auto& v : report.violations) {
        auto item = std::visit(ViolationJson{}, v);
        item["type"] = kind_name(v);
        arr.push_back(std::move(item));
    }
    j["violations"] = std::move(arr);
    return j;
}

}  // namespace starbook::cli
