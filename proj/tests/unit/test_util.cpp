/*
 * Copyright 2026 The embias Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "embias/error.hpp"
#include "embias/rng.hpp"
#include "embias/util.hpp"

#include "test_helpers.hpp"

using namespace embias;

TEST_CASE("trim and ascii_lower") {
    CHECK(trim("  a b \t") == "a b");
    CHECK(trim("") == "");
    CHECK(trim(" \r\n ") == "");
    CHECK(ascii_lower("MiXeD123") == "mixed123");
    CHECK(ascii_lower("caf\xc3\xa9") == "caf\xc3\xa9");  // non-ASCII untouched
}

TEST_CASE("split") {
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split("", ',') == std::vector<std::string>{""});
}

TEST_CASE("parse_double_field is strict") {
    CHECK(parse_double_field("1.5", "t") == 1.5);
    CHECK(parse_double_field(" -2e3 ", "t") == -2000.0);
    CHECK_THROWS_AS(parse_double_field("1x", "t"), DataError);
    CHECK_THROWS_AS(parse_double_field("", "t"), DataError);
    CHECK_THROWS_AS(parse_double_field("nan or not", "t"), DataError);
}

TEST_CASE("format_double round-trips") {
    // strtod instead of std::stod: stod throws out_of_range for subnormal
    // results even though the parse itself is exact.
    auto reparse = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        double v = (rng.next_double() - 0.5) * std::pow(10.0, static_cast<double>(rng.next_below(40)) - 20.0);
        CHECK(reparse(format_double(v)) == v);
    }
    for (double v : {0.1, 1.0 / 3.0, -0.0, 1e308, 5e-324, 42.0}) {
        CHECK(reparse(format_double(v)) == v);
    }
    CHECK(format_double(2.0) == "2");  // integers print without noise
}

TEST_CASE("parse_kv_file") {
    test::TempDir tmp("kv");
    write_text_file(tmp / "a.cfg",
                    "# comment\n"
                    "key = value with spaces\n"
                    "\n"
                    "dup = 1\n"
                    "dup = 2\n");
    auto pairs = parse_kv_file(tmp / "a.cfg");
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"key", "value with spaces"});
    CHECK(pairs[1].second == "1");
    CHECK(pairs[2].second == "2");  // duplicates preserved in order
    // A missing config file is a usage mistake, so it surfaces as ConfigError.
    CHECK_THROWS_AS(parse_kv_file(tmp / "missing.cfg"), ConfigError);
}

TEST_CASE("csv split and escape") {
    CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_csv_line("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
    CHECK(split_csv_line("\"he said \"\"hi\"\"\",x") ==
          std::vector<std::string>{"he said \"hi\"", "x"});
    CHECK(split_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    // Escape then split is the identity.
    std::string tricky = "x,\"y\"\nz";
    CHECK(split_csv_line(csv_escape(tricky) + ",tail")[0] == tricky);
}

TEST_CASE("read_lines and write_text_file") {
    test::TempDir tmp("io");
    write_text_file(tmp / "f.txt", "one\ntwo\n");
    auto lines = read_lines(tmp / "f.txt");
    CHECK(lines == std::vector<std::string>{"one", "two"});
    CHECK_THROWS_AS(read_lines(tmp / "absent.txt"), DataError);
}
