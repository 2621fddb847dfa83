// Copyright 2026 The Coarse SBM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COARSE_SBM_SELFTEST_H_
#define COARSE_SBM_SELFTEST_H_

#include <cstdint>
#include <string>
#include <vector>

namespace coarse_sbm {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast oracle checks of the numerical kernels, each against an independent
// computation (brute-force enumeration, direct summation, dense grids).
std::vector<SelfTestResult> RunSelfTests(uint64_t seed = 7);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_SELFTEST_H_
