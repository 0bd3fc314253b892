#ifndef DERANGE_VERIFY_HPP
#define DERANGE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "derange/cache.hpp"

namespace derange {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

struct VerifyOptions {
  unsigned threads = 1;
  std::uint64_t seed = 12345;
  bool allow_long = false;  // gates the n = 6 exhaustive clique-level scan
  CacheOptions cache;
};

// Runs every invariant suite applicable to the given degree (3..6) and
// returns one line per check.
std::vector<CheckResult> verify_all(int n, const VerifyOptions& opts = {});

}  // namespace derange

#endif
