// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "metamaint/codec.hpp"
#include "metamaint/error.hpp"

using namespace metamaint;

TEST_CASE("sha256 matches the FIPS 180-2 vectors") {
  CHECK(sha256("").hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256("abc").hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq").hex() ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("integers are 8-byte big-endian, strings carry a 4-byte length") {
  Encoder enc;
  enc.u64(0x0102030405060708ULL).str("ab").boolean(true);
  const Bytes expected{1, 2, 3, 4, 5, 6, 7, 8, 0, 0, 0, 2, 'a', 'b', 0, 0, 0, 0, 0, 0, 0, 1};
  CHECK(enc.data() == expected);
}

TEST_CASE("decoder round-trips what the encoder wrote") {
  const auto d = sha256("x");
  Encoder enc;
  enc.u64(42).str("hello").bytes(Bytes{9, 8, 7}).digest(d).count(3).boolean(false);
  Decoder dec(enc.data());
  CHECK(dec.u64() == 42);
  CHECK(dec.str() == "hello");
  CHECK(dec.bytes() == Bytes{9, 8, 7});
  CHECK(dec.digest() == d);
  CHECK(dec.count() == 3);
  CHECK_FALSE(dec.boolean());
  CHECK(dec.done());
  CHECK_NOTHROW(dec.expect_done());
}

TEST_CASE("malformed input is a schema error") {
  SUBCASE("truncated integer") {
    const Bytes in{0, 0, 1};
    Decoder dec(in);
    CHECK_THROWS_AS(dec.u64(), Error);
  }
  SUBCASE("length prefix past the end") {
    const Bytes in{0, 0, 0, 9, 'a'};
    Decoder dec(in);
    try {
      dec.str();
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SchemaError);
    }
  }
  SUBCASE("trailing bytes") {
    const Bytes in{0, 0, 0, 0, 0, 0, 0, 1, 0xff};
    Decoder dec(in);
    dec.u64();
    CHECK_THROWS_AS(dec.expect_done(), Error);
  }
  SUBCASE("boolean outside 0/1") {
    const Bytes in{0, 0, 0, 0, 0, 0, 0, 2};
    Decoder dec(in);
    CHECK_THROWS_AS(dec.boolean(), Error);
  }
}

TEST_CASE("digest hex round trip and validation") {
  const auto d = sha256("round");
  CHECK(Digest::from_hex(d.hex()) == d);
  CHECK(Digest{}.is_zero());
  CHECK_FALSE(d.is_zero());
  for (const char* bad : {"", "abc", "zz", "0123"}) {
    try {
      Digest::from_hex(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  CHECK_THROWS_AS(Digest::from_hex(std::string(63, '0') + "g"), Error);
}
