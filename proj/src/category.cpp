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

#include "category.hpp"

#include <bit>
#include <cctype>
#include <string>

namespace threatforge {

char category_letter(Category c) {
  static constexpr char kLetters[] = {'S', 'T', 'R', 'I', 'D', 'E'};
  return kLetters[static_cast<int>(c)];
}

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kSpoofing: return "Spoofing";
    case Category::kTampering: return "Tampering";
    case Category::kRepudiation: return "Repudiation";
    case Category::kInformationDisclosure: return "Information Disclosure";
    case Category::kDenialOfService: return "Denial of Service";
    case Category::kElevationOfPrivilege: return "Elevation of Privilege";
  }
  return "Spoofing";
}

std::string_view desired_property(Category c) {
  switch (c) {
    case Category::kSpoofing: return "Authenticity";
    case Category::kTampering: return "Integrity";
    case Category::kRepudiation: return "Non-repudiability";
    case Category::kInformationDisclosure: return "Confidentiality";
    case Category::kDenialOfService: return "Availability";
    case Category::kElevationOfPrivilege: return "Authorization";
  }
  return "Authenticity";
}

std::optional<Category> category_from_letter(char letter) {
  switch (std::toupper(static_cast<unsigned char>(letter))) {
    case 'S': return Category::kSpoofing;
    case 'T': return Category::kTampering;
    case 'R': return Category::kRepudiation;
    case 'I': return Category::kInformationDisclosure;
    case 'D': return Category::kDenialOfService;
    case 'E': return Category::kElevationOfPrivilege;
    default: return std::nullopt;
  }
}

std::optional<Category> category_from_name(std::string_view name) {
  // Fold case and treat hyphens/underscores as spaces.
  std::string folded;
  bool space = false;
  for (char ch : name) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || ch == '-' || ch == '_') {
      space = !folded.empty();
      continue;
    }
    if (space) folded.push_back(' ');
    space = false;
    folded.push_back(static_cast<char>(std::tolower(c)));
  }
  if (folded == "spoofing") return Category::kSpoofing;
  if (folded == "tampering") return Category::kTampering;
  if (folded == "repudiation") return Category::kRepudiation;
  if (folded == "information disclosure") return Category::kInformationDisclosure;
  if (folded == "denial of service") return Category::kDenialOfService;
  if (folded == "elevation of privilege" || folded == "elevation of privileges")
    return Category::kElevationOfPrivilege;
  return std::nullopt;
}

std::optional<Category> category_from_string(std::string_view text) {
  if (text.size() == 1) return category_from_letter(text[0]);
  return category_from_name(text);
}

std::size_t CategorySet::size() const {
  return static_cast<std::size_t>(std::popcount(bits_));
}

}  // namespace threatforge
