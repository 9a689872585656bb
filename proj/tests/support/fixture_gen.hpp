// Copyright 2026 The ThreatForge Authors.
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

// Builds the generated files under data/. Shared by the gen_fixtures tool and
// the drift test that keeps the checked-in copies current.

#ifndef THREATFORGE_TESTS_SUPPORT_FIXTURE_GEN_HPP_
#define THREATFORGE_TESTS_SUPPORT_FIXTURE_GEN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace threatforge::fixtures {

struct GeneratedFile {
  std::string path;  // relative to the repository root
  std::string content;
};

inline constexpr std::uint64_t kSynthetic10Seed = 7;
inline constexpr std::uint64_t kOproDatasetSeed = 2024;
inline constexpr std::uint64_t kOproSplitSeed = 0;

// Planted per-step scorer precision, one entry per trajectory step. Each value
// is 0.5 + 0.01 * k where k training samples answer at 3/5 and the rest at 2/4.
inline constexpr int kOproPlantedK[] = {0, 0, 3, 7, 5, 2, 6, 4, 0};
inline constexpr int kOproBestStep = 3;

std::vector<std::string> opro_instructions();

std::vector<GeneratedFile> generate_all();

}  // namespace threatforge::fixtures

#endif  // THREATFORGE_TESTS_SUPPORT_FIXTURE_GEN_HPP_
