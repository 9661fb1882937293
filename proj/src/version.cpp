// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/version.hpp"

#include <charconv>

#include "metamaint/error.hpp"

namespace metamaint {

Version Version::parse(std::string_view text) {
  Version v;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    auto piece = text.substr(start, dot == std::string_view::npos ? std::string_view::npos
                                                                 : dot - start);
    if (piece.empty()) {
      throw Error(ErrorCode::ParseError, "empty version component in '" + std::string(text) + "'");
    }
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc{} || end != piece.data() + piece.size()) {
      throw Error(ErrorCode::ParseError, "bad version component in '" + std::string(text) + "'");
    }
    v.parts_.push_back(value);
    if (v.parts_.size() > 4) {
      throw Error(ErrorCode::ParseError, "more than four components in '" + std::string(text) + "'");
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return v;
}

std::string Version::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(parts_[i]);
  }
  return out;
}

Ordering compare_versions(const Version& a, const Version& b) {
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  auto n = std::max(pa.size(), pb.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto x = i < pa.size() ? pa[i] : 0;
    auto y = i < pb.size() ? pb[i] : 0;
    if (x < y) return Ordering::Less;
    if (x > y) return Ordering::Greater;
  }
  return Ordering::Equal;
}

Ordering compare_versions(std::string_view a, std::string_view b) {
  return compare_versions(Version::parse(a), Version::parse(b));
}

bool operator==(const Version& a, const Version& b) {
  return compare_versions(a, b) == Ordering::Equal;
}

std::weak_ordering operator<=>(const Version& a, const Version& b) {
  switch (compare_versions(a, b)) {
    case Ordering::Less: return std::weak_ordering::less;
    case Ordering::Greater: return std::weak_ordering::greater;
    case Ordering::Equal: break;
  }
  return std::weak_ordering::equivalent;
}

}  // namespace metamaint
