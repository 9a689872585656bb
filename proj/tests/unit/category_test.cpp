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

#include "category.hpp"

namespace threatforge {
namespace {

TEST(Category, PropertyBijection) {
  EXPECT_EQ(desired_property(Category::kSpoofing), "Authenticity");
  EXPECT_EQ(desired_property(Category::kTampering), "Integrity");
  EXPECT_EQ(desired_property(Category::kRepudiation), "Non-repudiability");
  EXPECT_EQ(desired_property(Category::kInformationDisclosure), "Confidentiality");
  EXPECT_EQ(desired_property(Category::kDenialOfService), "Availability");
  EXPECT_EQ(desired_property(Category::kElevationOfPrivilege), "Authorization");
  for (auto a : kAllCategories)
    for (auto b : kAllCategories)
      if (a != b) EXPECT_NE(desired_property(a), desired_property(b));
}

TEST(Category, LettersAndNamesRoundTrip) {
  EXPECT_EQ(std::string("STRIDE"),
            std::string({category_letter(kAllCategories[0]), category_letter(kAllCategories[1]),
                         category_letter(kAllCategories[2]), category_letter(kAllCategories[3]),
                         category_letter(kAllCategories[4]), category_letter(kAllCategories[5])}));
  for (auto c : kAllCategories) {
    EXPECT_EQ(category_from_letter(category_letter(c)), c);
    EXPECT_EQ(category_from_name(category_name(c)), c);
    EXPECT_EQ(category_from_string(category_name(c)), c);
  }
}

TEST(Category, LooseNames) {
  EXPECT_EQ(category_from_string("information disclosure"),
            Category::kInformationDisclosure);
  EXPECT_EQ(category_from_string("d"), Category::kDenialOfService);
  EXPECT_FALSE(category_from_string("Phishing").has_value());
  EXPECT_FALSE(category_from_letter('X').has_value());
}

TEST(Category, SetOperations) {
  CategorySet s{Category::kTampering, Category::kSpoofing, Category::kTampering};
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(Category::kSpoofing));
  EXPECT_FALSE(s.contains(Category::kRepudiation));
  std::vector<Category> order;
  s.for_each([&](Category c) { order.push_back(c); });
  EXPECT_EQ(order, (std::vector<Category>{Category::kSpoofing, Category::kTampering}));
  EXPECT_TRUE(CategorySet{}.empty());
}

}  // namespace
}  // namespace threatforge
