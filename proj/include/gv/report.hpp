#pragma once

#include <string>

#include "gv/surface.hpp"

namespace gv {

enum class ReportFormat { json, md };

ReportFormat report_format_from_name(const std::string& name);

// JSON per the certificate schema, or markdown with one section per
// certified claim; both renderings are deterministic.
std::string render_report(const Certificate& cert, ReportFormat format);

Certificate parse_certificate(const std::string& json_text);

} // namespace gv
