// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "metamaint/error.hpp"
#include "metamaint/version.hpp"

using namespace metamaint;

TEST_CASE("parse accepts dotted numeric versions") {
  CHECK(Version::parse("1").parts() == std::vector<std::uint64_t>{1});
  CHECK(Version::parse("1.2.3").parts() == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(Version::parse("10.0.0.7").to_string() == "10.0.0.7");
}

TEST_CASE("parse rejects everything else") {
  for (const char* bad : {"", ".", "1.", ".1", "1..2", "a", "1.x", "-1", "1.2.3.4.5", "1 .2", "v1.0"}) {
    try {
      Version::parse(bad);
      FAIL("accepted '" << bad << "'");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}

TEST_CASE("comparison is numeric per component, missing components are zero") {
  CHECK(compare_versions("1.10", "1.9") == Ordering::Greater);
  CHECK(compare_versions("1.0.0", "1.0.1") == Ordering::Less);
  CHECK(compare_versions("2.0", "2.0.0") == Ordering::Equal);
  CHECK(Version::parse("2.0") == Version::parse("2.0.0"));
  CHECK(Version::parse("0.9.9") < Version::parse("1"));
}

TEST_CASE("comparison agrees with a lexicographic oracle over padded tuples") {
  std::vector<std::vector<std::uint64_t>> samples;
  for (std::uint64_t a = 0; a < 3; ++a) {
    for (std::uint64_t b = 0; b < 3; ++b) {
      samples.push_back({a, b});
      samples.push_back({a, b, 0});
      samples.push_back({a, b, 1});
    }
  }
  auto text = [](const std::vector<std::uint64_t>& p) {
    std::string s;
    for (auto x : p) s += (s.empty() ? "" : ".") + std::to_string(x);
    return s;
  };
  for (const auto& x : samples) {
    for (const auto& y : samples) {
      auto px = x, py = y;
      px.resize(4);
      py.resize(4);
      const auto expected = px < py ? Ordering::Less : (px == py ? Ordering::Equal : Ordering::Greater);
      CHECK(compare_versions(text(x), text(y)) == expected);
    }
  }
}
