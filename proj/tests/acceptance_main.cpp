// Runs every acceptance criterion and prints one pass/fail line per
// criterion. Exit status is non-zero if any criterion fails.

#include <iostream>

#include "qwalk/acceptance.hpp"

int main() {
  int failures = 0;
  for (const auto& criterion : qwalk::acceptance::all_criteria()) {
    const auto result = criterion();
    std::cout << qwalk::acceptance::summary_line(result) << std::endl;
    if (!result.pass()) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " acceptance criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
