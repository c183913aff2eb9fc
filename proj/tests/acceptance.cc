// Copyright 2026 The Locsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "locsec/protocols.h"

namespace {

struct Criterion {
  const char* id;
  std::function<locsec::ProtocolResult()> run;
  double time_limit;  // seconds
};

}  // namespace

int main() {
  const double kNone = std::numeric_limits<double>::infinity();
  const std::vector<Criterion> criteria = {
      {"AC1", [] { return locsec::bswc_closed_form(); }, 5.0},
      {"AC2", [] { return locsec::table1(); }, 30.0},
      {"AC3", [] { return locsec::table2(); }, 300.0},
      {"AC4", [] { return locsec::convergence_order(); }, 20.0},
      {"AC5", [] { return locsec::dtm_invariants(); }, kNone},
      {"AC6", [] { return locsec::contraction(); }, kNone},
      {"AC7", [] { return locsec::sandwich(); }, kNone},
      {"AC8", [] { return locsec::information_bottleneck(); }, 60.0},
      {"AC9", [] { return locsec::regimes(); }, kNone},
      {"AC10", [] { return locsec::perfect_secrecy(); }, kNone},
      {"AC11", [] { return locsec::kkt(); }, kNone},
      {"AC12", [] { return locsec::eve_quantization(); }, kNone},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    locsec::ProtocolResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.name = "error";
      r.detail = e.what();
    }
    std::string detail = r.detail;
    bool passed = r.passed;
    if (r.seconds > c.time_limit) {
      passed = false;
      detail += "; exceeded time limit " + std::to_string(c.time_limit) + " s";
    }
    if (!passed) ++failures;
    std::printf("%s %s %s: %s [%.2f s]\n", c.id, passed ? "PASS" : "FAIL", r.name.c_str(),
                detail.c_str(), r.seconds);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
