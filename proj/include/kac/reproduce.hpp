#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kac {

struct ReproCheck {
  std::string claim;
  bool ok = false;
  std::string observed;
};

struct ReproReport {
  std::string example;
  std::vector<std::string> narrative;
  std::vector<ReproCheck> checks;

  bool ok() const;
};

/// spyh, spy, h, fig4, fig5, appendixA, tcp-bound.
std::vector<std::string_view> reproducible_examples();

/// Runs the named example end to end on the embedded fixtures.
/// Throws InvalidArgument for an unknown name.
ReproReport reproduce(std::string_view example);

std::string render_text(const ReproReport& report);
std::string render_structured(const ReproReport& report);

}  // namespace kac
