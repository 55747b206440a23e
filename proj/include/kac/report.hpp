#pragma once

#include <string>

#include "kac/checker.hpp"

namespace kac {

/// Human-readable report. A rejected report says "unknown", never
/// "incomplete".
std::string render_text(const CompletenessReport& report);

/// JSON document, schema "kacheck.report/1" (documented in README.md).
std::string render_structured(const CompletenessReport& report);

}  // namespace kac
