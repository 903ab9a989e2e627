#include "holdcert/acceptance.hpp"

#include <cstdio>
#include <string>

// One line per criterion; exits nonzero when any criterion fails.
int main(int argc, char** argv) {
  using namespace holdcert::acceptance;
  const std::string suite = argc > 1 ? argv[1] : "all";
  Options options;
  int failed = 0;
  run_suite(suite, options, [&](const CriterionResult& r) {
    std::printf("%s\n", summary_line(r).c_str());
    if (!r.pass()) {
      std::printf("%s", detail_lines(r).c_str());
      ++failed;
    }
    std::fflush(stdout);
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
