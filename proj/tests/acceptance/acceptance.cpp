#include <cstdio>
#include <cstdlib>

#include "qadapt/core/error.hpp"
#include "qadapt/report/verify_all.hpp"

using namespace qadapt;

int main(int argc, char** argv) {
  auto cfg = report::VerifyConfig::from_environment();
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
  std::size_t failed = 0;
  report::verify_all(cfg, [&](const report::CriterionOutcome& o) {
    std::printf("%s criterion %2d %-34s %8.2fs / %.0fs  (%zu checks)", o.pass ? "PASS" : "FAIL", o.info.id,
                o.info.title.c_str(), o.runtime_s, o.info.time_limit_s, o.checks);
    if (!o.pass) std::printf("  first failure: %s", o.first_failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!o.pass) ++failed;
  });
  std::printf("%zu of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
