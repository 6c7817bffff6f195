#include "gv/report.hpp"

#include <sstream>

namespace gv {

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "md") return ReportFormat::md;
    throw DomainError("unknown report format: " + name + " (expected json or md)");
}

namespace {

std::string payload_value(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void render_substep(std::ostringstream& out, const CertStep& step, int indent) {
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "- ["
        << status_name(step.status) << "] " << step.statement;
    if (!step.payload.empty()) {
        out << " (";
        bool first = true;
        for (const auto& [k, v] : step.payload.items()) {
            if (!first) out << ", ";
            out << k << " = " << payload_value(v);
            first = false;
        }
        out << ")";
    }
    if (!step.citation.empty()) out << " [cites: " << step.citation << "]";
    out << "\n";
    for (const CertStep& s : step.substeps) render_substep(out, s, indent + 1);
}

std::string render_md(const Certificate& cert) {
    std::ostringstream out;
    out << "# Verification certificate: Grauert example line bundle\n\n";
    out << "Verdict: " << cert.verdict << "\n";
    out << "Status: " << status_name(cert.status) << "\n";
    out << "Assumed-hypothesis steps: " << cert.assumed_hypothesis_count() << "\n";
    out << "Cited-rule families:";
    const auto families = cert.cited_rule_families();
    if (families.empty()) {
        out << " none";
    } else {
        bool first = true;
        for (const auto& f : families) {
            out << (first ? " " : ", ") << f;
            first = false;
        }
    }
    out << "\n";
    for (const CertStep& step : cert.steps) {
        out << "\n## " << step.statement << "\n\n";
        out << "Step `" << step.id << "`, status " << status_name(step.status);
        if (!step.citation.empty()) out << " [cites: " << step.citation << "]";
        out << "\n";
        for (const auto& [k, v] : step.payload.items())
            out << "- " << k << ": " << payload_value(v) << "\n";
        for (const CertStep& s : step.substeps) render_substep(out, s, 0);
    }
    return out.str();
}

} // namespace

std::string render_report(const Certificate& cert, ReportFormat format) {
    if (format == ReportFormat::json) return cert.to_json().dump(2) + "\n";
    return render_md(cert);
}

Certificate parse_certificate(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw DomainError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        return Certificate::from_json(j);
    } catch (const Json::exception& e) {
        throw DomainError(std::string("certificate does not match the schema: ") + e.what());
    }
}

} // namespace gv
