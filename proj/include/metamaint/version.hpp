// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace metamaint {

enum class Ordering { Less, Equal, Greater };

// Dotted numeric component version: one to four unsigned integers.
// Ordering is numeric per component with missing components read as 0, so
// "2.0" and "2.0.0" compare Equal while keeping their spelling.
class Version {
 public:
  // Throws Error(ParseError).
  static Version parse(std::string_view text);

  const std::vector<std::uint64_t>& parts() const noexcept { return parts_; }
  std::string to_string() const;

  friend bool operator==(const Version& a, const Version& b);
  friend std::weak_ordering operator<=>(const Version& a, const Version& b);

 private:
  std::vector<std::uint64_t> parts_;
};

Ordering compare_versions(const Version& a, const Version& b);
// Parses both sides first; throws Error(ParseError).
Ordering compare_versions(std::string_view a, std::string_view b);

}  // namespace metamaint
