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

#ifndef THREATFORGE_CATEGORY_HPP_
#define THREATFORGE_CATEGORY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace threatforge {

// STRIDE categories in canonical S, T, R, I, D, E order.
enum class Category : std::uint8_t {
  kSpoofing,
  kTampering,
  kRepudiation,
  kInformationDisclosure,
  kDenialOfService,
  kElevationOfPrivilege,
};

inline constexpr std::array<Category, 6> kAllCategories = {
    Category::kSpoofing,           Category::kTampering,
    Category::kRepudiation,        Category::kInformationDisclosure,
    Category::kDenialOfService,    Category::kElevationOfPrivilege,
};

char category_letter(Category c);
std::string_view category_name(Category c);
// Security property the category violates.
std::string_view desired_property(Category c);

std::optional<Category> category_from_letter(char letter);
// Case-insensitive; accepts "Denial-of-Service", "Elevation of Privileges".
std::optional<Category> category_from_name(std::string_view name);
// Name or single letter.
std::optional<Category> category_from_string(std::string_view text);

// Small ordered set of categories.
class CategorySet {
 public:
  CategorySet() = default;
  CategorySet(std::initializer_list<Category> cats) {
    for (auto c : cats) insert(c);
  }

  void insert(Category c) { bits_ |= bit(c); }
  bool contains(Category c) const { return (bits_ & bit(c)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (auto c : kAllCategories)
      if (contains(c)) fn(c);
  }

  bool operator==(const CategorySet&) const = default;

 private:
  static std::uint8_t bit(Category c) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c));
  }
  std::uint8_t bits_ = 0;
};

}  // namespace threatforge

#endif  // THREATFORGE_CATEGORY_HPP_
