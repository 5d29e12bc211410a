#pragma once

#include <string>

#include "starbook/cli/certificate.hpp"

namespace starbook::cli {

/// Renders one panel per page. Disk edges are chords; cross-cap
/// through-edges run from each endpoint to a pair of antipodal points on a
/// small central circle, following the routing found by crosscap_page_valid.
/// Output bytes depend only on the certificate.
std::string render_svg(const Certificate& cert);

}  // namespace starbook::cli
