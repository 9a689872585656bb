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

// Independent generators and reference implementations for property tests.

#ifndef THREATFORGE_TESTS_SUPPORT_ORACLES_HPP_
#define THREATFORGE_TESTS_SUPPORT_ORACLES_HPP_

#include <random>
#include <string>
#include <vector>

#include "dfd.hpp"

namespace threatforge::testing {

// Random valid graph using every element kind and attribute value. Names are
// unique across elements, flows and boundaries.
dfd::Graph random_graph(std::mt19937_64& rng);

// Random list of base control codes drawn from a small pool, so that random
// pairs overlap often. May contain duplicates.
std::vector<std::string> random_codes(std::mt19937_64& rng, int max_size);

struct BruteMetrics {
  double precision;
  double recall;
  double accuracy;
};

// Element-by-element counting over de-duplicated string lists, with the
// empty-set conventions of the evaluation harness.
BruteMetrics brute_metrics(const std::vector<std::string>& generated,
                           const std::vector<std::string>& truth);

}  // namespace threatforge::testing

#endif  // THREATFORGE_TESTS_SUPPORT_ORACLES_HPP_
