// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "CLI11.hpp"
#include "dlip/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs every acceptance criterion and prints one line each."};
  dlip::VerifyOptions options;
  std::vector<int> only;
  app.add_option("--seed", options.seed, "seed for the randomized parts");
  app.add_option("--only", only, "run just these criterion ids")->check(CLI::Range(1, dlip::kCriterionCount));
  CLI11_PARSE(app, argc, argv);

  if (only.empty()) only = dlip::suite_criteria("all");
  int failed = 0;
  for (int id : only) {
    const auto r = dlip::run_criterion(id, options);
    std::printf("%s\n", r.line().c_str());
    std::fflush(stdout);
    failed += !r.passed();
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(only.size()) - failed, only.size());
  return failed ? 1 : 0;
}
