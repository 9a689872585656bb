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

#include <gtest/gtest.h>

#include "fixture_gen.hpp"
#include "test_util.hpp"

namespace threatforge::fixtures {
namespace {

// Checked-in generated files must match the generator. Regenerate with
// `build/tests/gen_fixtures .` after changing anything they depend on.
TEST(Fixtures, CheckedInFilesAreCurrent) {
  auto files = generate_all();
  EXPECT_EQ(files.size(), 7u);
  for (const auto& f : files) {
    std::string on_disk;
    ASSERT_NO_THROW(on_disk = testing::read_file(testing::source_path(f.path))) << f.path;
    EXPECT_TRUE(on_disk == f.content) << f.path << " is stale";
  }
}

TEST(Fixtures, InstructionsAreDistinct) {
  auto ins = opro_instructions();
  ASSERT_EQ(ins.size(), std::size(kOproPlantedK));
  for (std::size_t i = 0; i < ins.size(); ++i)
    for (std::size_t j = i + 1; j < ins.size(); ++j) EXPECT_NE(ins[i], ins[j]);
}

}  // namespace
}  // namespace threatforge::fixtures
