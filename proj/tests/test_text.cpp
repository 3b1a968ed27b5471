#include <catch2/catch_amalgamated.hpp>

#include "sticc/text.hpp"

using namespace sticc;

TEST_CASE("format_double round-trips through parse_double") {
  for (double v : {0.0, 1.0, -1.0, 1.5, -2.25, 0.1, 1e-9, 1e300, -3.14159265358979,
                   123456.789, 1.0 / 3.0}) {
    auto back = parse_double(format_double(v));
    REQUIRE(back.has_value());
    REQUIRE(*back == v);
  }
}

TEST_CASE("format_double prefers short forms") {
  REQUIRE(format_double(0.0) == "0");
  REQUIRE(format_double(1.0) == "1");
  REQUIRE(format_double(0.5) == "0.5");
  REQUIRE(format_double(-2.0) == "-2");
}

TEST_CASE("trim strips surrounding whitespace") {
  REQUIRE(trim("  a b \t") == "a b");
  REQUIRE(trim("x\r\n") == "x");
  REQUIRE(trim("") == "");
  REQUIRE(trim(" \t ") == "");
}

TEST_CASE("parse_double accepts plain numbers only") {
  REQUIRE(parse_double("1.25") == 1.25);
  REQUIRE(parse_double("  -3e2 ") == -300.0);
  REQUIRE_FALSE(parse_double("").has_value());
  REQUIRE_FALSE(parse_double("1.2x").has_value());
  REQUIRE_FALSE(parse_double("abc").has_value());
  REQUIRE_FALSE(parse_double("1.2 3").has_value());
}

TEST_CASE("parse_int accepts integers only") {
  REQUIRE(parse_int("42") == 42);
  REQUIRE(parse_int(" -7\t") == -7);
  REQUIRE_FALSE(parse_int("").has_value());
  REQUIRE_FALSE(parse_int("3.5").has_value());
  REQUIRE_FALSE(parse_int("12a").has_value());
}

TEST_CASE("split_csv keeps empty fields") {
  auto f = split_csv("a,b,,c");
  REQUIRE(f.size() == 4);
  REQUIRE(f[0] == "a");
  REQUIRE(f[2] == "");
  REQUIRE(f[3] == "c");

  auto g = split_csv("x,");
  REQUIRE(g.size() == 2);
  REQUIRE(g[1] == "");

  auto h = split_csv("single");
  REQUIRE(h.size() == 1);
  REQUIRE(h[0] == "single");
}
