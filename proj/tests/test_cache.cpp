/*
 * Copyright 2026 The qdl-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdl/cache.hpp"
#include "qdl/errors.hpp"

using namespace qdl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qdl_cache_test_" + name + ".csv");
  fs::remove(p);
  return p;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cache rows round-trip") {
  const CacheRecord r{10, 3, PhotonPattern::parse("2-1"), MomentKind::two_gamma, 5.366123456789012, 0.0123,
                      1000000, 18446744073709551615ULL};
  const std::string row = format_cache_row(r);
  CHECK(row.rfind("10,3,2-1,two_gamma,", 0) == 0);
  const CacheRecord back = parse_cache_row(row);
  CHECK(back.m == 10);
  CHECK(back.q == r.q);
  CHECK(back.kind == MomentKind::two_gamma);
  CHECK(back.value == r.value);
  CHECK(back.stderr == r.stderr);
  CHECK(back.samples == r.samples);
  CHECK(back.seed == r.seed);
  CHECK_THROWS_AS(parse_cache_row("10,3,2-1,bogus,1,0,0,0"), DomainError);
  CHECK_THROWS_AS(parse_cache_row("10,3,2-1"), DomainError);
}

TEST_CASE("moment kinds") {
  CHECK(to_string(MomentKind::raw_c) == "raw_c");
  CHECK(parse_moment_kind("c") == MomentKind::c);
  CHECK_THROWS_AS(parse_moment_kind("gamma2"), DomainError);
}

TEST_CASE("missing cache file is an empty cache; append writes the header once") {
  const fs::path p = scratch("append");
  MomentCache cache(p);
  CHECK(cache.records().empty());
  cache.append({6, 2, PhotonPattern::parse("2"), MomentKind::two_gamma, 4.6, 0.01, 1000, 1});
  cache.append({6, 2, PhotonPattern::parse("1-1"), MomentKind::two_gamma, 4.0, 0.01, 1000, 1});
  const std::string text = read_all(p);
  CHECK(text.rfind(std::string(kCacheHeader) + "\n", 0) == 0);
  CHECK(text.find(kCacheHeader, 1) == std::string::npos);
  const MomentCache reloaded(p);
  CHECK(reloaded.records().size() == 2);
  fs::remove(p);
}

TEST_CASE("preferred record: exact, then most samples, then latest") {
  const fs::path p = scratch("best");
  {
    std::ofstream out(p);
    out << "# comment line\n" << kCacheHeader << '\n'
        << "6,2,2,two_gamma,4.50,0.1,1000,1\n"
        << "6,2,2,two_gamma,4.60,0.1,5000,2\n"
        << "6,2,2,two_gamma,4.65,0.1,5000,3\n"
        << "6,2,1-1,two_gamma,4.00,0.1,5000,3\n"
        << "10,2,2,two_gamma,5.00,0.1,5000,3\n";
  }
  MomentCache cache(p);
  const auto q = PhotonPattern::parse("2");
  CHECK(cache.best(6, 2, q, MomentKind::two_gamma)->value == 4.65);
  CHECK_FALSE(cache.best(6, 2, q, MomentKind::c).has_value());
  cache.append({6, 2, q, MomentKind::two_gamma, 4.6667, 0.0, 0, 0});
  CHECK(cache.best(6, 2, q, MomentKind::two_gamma)->exact());
  const auto records = cache.gamma_records(6, 2);
  CHECK(records.size() == 2);
  CHECK(cache.gamma_records(7, 2).empty());
  fs::remove(p);
}
