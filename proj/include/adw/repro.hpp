#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

// Canned walkthrough cases (fig5-wire, fig6-or, ...).  A case runs its
// pipeline, prints the narrative, and reports whether the expected finding
// was produced.

namespace adw {

struct ReproCase {
  std::string id;
  std::string title;
  std::function<bool(std::ostream&)> run;
};

const std::vector<ReproCase>& repro_cases();
const ReproCase* find_repro_case(const std::string& id);

}  // namespace adw
