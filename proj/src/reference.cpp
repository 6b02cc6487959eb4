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

#include "qdl/reference.hpp"

#include <array>
#include <string>

#include "qdl/errors.hpp"

namespace qdl {
namespace {

struct Row {
  const char* table;
  int m;
  int n;
  const char* q;
  double value;
};

// clang-format off
constexpr Row kRows[] = {
    {"I", 6, 2, "1-1", 0.0471}, {"I", 6, 2, "2", 0.0977},
    {"I", 10, 2, "1-1", 0.0181}, {"I", 10, 2, "2", 0.0369},
    {"I", 20, 2, "1-1", 0.00476}, {"I", 20, 2, "2", 0.00959},
    {"I", 10, 3, "1-1-1", 0.00451}, {"I", 10, 3, "2-1", 0.00914}, {"I", 10, 3, "3", 0.0283},
    {"I", 20, 3, "1-1-1", 0.000648}, {"I", 20, 3, "2-1", 0.00131}, {"I", 20, 3, "3", 0.00398},
    {"I", 30, 10, "1-1-1-1-1-1-1-1-1-1", 1.56e-9}, {"I", 30, 10, "9-1", 0.00068},
    {"I", 30, 10, "10", 0.0072},

    {"II", 6, 2, "1-1", 3.770}, {"II", 6, 2, "2", 4.314},
    {"II", 10, 2, "1-1", 4.256}, {"II", 10, 2, "2", 5.136},
    {"II", 20, 2, "1-1", 4.751}, {"II", 20, 2, "2", 5.894},
    {"II", 40, 2, "1-1", 4.593}, {"II", 40, 2, "2", 5.882},
    {"II", 10, 3, "1-1-1", 4.562}, {"II", 10, 3, "2-1", 5.366}, {"II", 10, 3, "3", 6.968},
    {"II", 40, 3, "1-1-1", 5.475}, {"II", 40, 3, "2-1", 6.853}, {"II", 40, 3, "3", 9.717},

    {"III", 20, 4, "1-1-1-1", 5.44}, {"III", 20, 4, "3-1", 8.91}, {"III", 20, 4, "2-1-1", 6.60},
    {"III", 20, 4, "2-2", 8.38}, {"III", 20, 4, "4", 13.31},
    {"III", 20, 5, "1-1-1-1-1", 5.45}, {"III", 20, 5, "3-1-1", 8.44}, {"III", 20, 5, "4-1", 12.13},
    {"III", 20, 5, "2-2-1", 7.80}, {"III", 20, 5, "3-2", 10.50}, {"III", 20, 5, "2-1-1-1", 6.50},
    {"III", 20, 5, "5", 16.93},
    {"III", 20, 6, "1-1-1-1-1-1", 5.34}, {"III", 20, 6, "2-2-1-1", 7.26}, {"III", 20, 6, "3-3", 12.86},
    {"III", 20, 6, "2-2-2", 8.72}, {"III", 20, 6, "3-1-1-1", 7.77}, {"III", 20, 6, "5-1", 15.89},
    {"III", 20, 6, "2-1-1-1-1", 6.16}, {"III", 20, 6, "4-2", 13.42}, {"III", 20, 6, "4-1-1", 10.50},
    {"III", 20, 6, "3-2-1", 9.50}, {"III", 20, 6, "6", 26.34},
    {"III", 20, 8, "6-1-1", 15.81}, {"III", 20, 8, "3-2-1-1-1", 7.30}, {"III", 20, 8, "4-4", 18.04},
    {"III", 20, 8, "4-2-2", 11.11}, {"III", 20, 8, "2-2-1-1-1-1", 5.98}, {"III", 20, 8, "2-2-2-2", 7.95},
    {"III", 20, 8, "3-3-2", 10.91}, {"III", 20, 8, "5-1-1-1", 11.03}, {"III", 20, 8, "6-2", 19.18},
    {"III", 20, 8, "3-3-1-1", 9.09}, {"III", 20, 8, "1-1-1-1-1-1-1-1", 4.92}, {"III", 20, 8, "7-1", 24.34},
    {"III", 20, 8, "8", 34.86},
    {"III", 30, 4, "1-1-1-1", 5.92}, {"III", 30, 4, "3-1", 9.97}, {"III", 30, 4, "2-1-1", 7.28},
    {"III", 30, 4, "2-2", 9.47}, {"III", 30, 4, "4", 15.07},
    {"III", 30, 5, "1-1-1-1-1", 6.12}, {"III", 30, 5, "3-1-1", 10.10}, {"III", 30, 5, "4-1", 14.63},
    {"III", 30, 5, "2-2-1", 9.30}, {"III", 30, 5, "3-2", 12.88}, {"III", 30, 5, "2-1-1-1", 7.44},
    {"III", 30, 5, "5", 19.12},
    {"III", 30, 6, "1-1-1-1-1-1", 6.11}, {"III", 30, 6, "2-2-1-1", 9.03}, {"III", 30, 6, "3-3", 16.74},
    {"III", 30, 6, "2-2-2", 11.19}, {"III", 30, 6, "5-1", 20.82}, {"III", 30, 6, "2-1-1-1-1", 7.29},
    {"III", 30, 6, "4-2", 17.44}, {"III", 30, 6, "4-1-1", 13.98}, {"III", 30, 6, "3-1-1-1", 9.72},
    {"III", 30, 6, "3-2-1", 11.99}, {"III", 30, 6, "6", 33.20},
    {"III", 30, 8, "6-1-1", 23.70}, {"III", 30, 8, "3-2-1-1-1", 9.63}, {"III", 30, 8, "4-4", 27.56},
    {"III", 30, 8, "4-2-2", 17.58}, {"III", 30, 8, "2-2-1-1-1-1", 7.63}, {"III", 30, 8, "2-2-2-2", 10.10},
    {"III", 30, 8, "3-3-2", 17.84}, {"III", 30, 8, "5-1-1-1", 15.70}, {"III", 30, 8, "6-2", 35.89},
    {"III", 30, 8, "3-3-1-1", 12.80}, {"III", 30, 8, "1-1-1-1-1-1-1-1", 5.82}, {"III", 30, 8, "7-1", 34.43},
    {"III", 30, 8, "8", 61.69},

    {"IV", 40, 4, "1-1-1-1", 6.09}, {"IV", 40, 4, "3-1", 10.60}, {"IV", 40, 4, "2-1-1", 7.59},
    {"IV", 40, 4, "2-2", 9.81}, {"IV", 40, 4, "4", 15.91},
    {"IV", 40, 5, "1-1-1-1-1", 6.51}, {"IV", 40, 5, "3-1-1", 11.01}, {"IV", 40, 5, "4-1", 16.08},
    {"IV", 40, 5, "2-2-1", 10.02}, {"IV", 40, 5, "3-2", 13.93}, {"IV", 40, 5, "2-1-1-1", 8.050},
    {"IV", 40, 5, "5", 20.18},
    {"IV", 40, 6, "1-1-1-1-1-1", 6.68}, {"IV", 40, 6, "2-2-1-1", 10.03}, {"IV", 40, 6, "3-3", 19.82},
    {"IV", 40, 6, "2-2-2", 13.04}, {"IV", 40, 6, "5-1", 23.15}, {"IV", 40, 6, "2-1-1-1-1", 8.16},
    {"IV", 40, 6, "4-2", 20.40}, {"IV", 40, 6, "4-1-1", 15.57}, {"IV", 40, 6, "3-1-1-1", 10.91},
    {"IV", 40, 6, "3-2-1", 13.88}, {"IV", 40, 6, "6", 35.95},
    {"IV", 40, 8, "6-1-1", 32.65}, {"IV", 40, 8, "3-2-1-1-1", 12.24}, {"IV", 40, 8, "4-4", 47.54},
    {"IV", 40, 8, "4-2-2", 23.89}, {"IV", 40, 8, "2-2-1-1-1-1", 9.09}, {"IV", 40, 8, "2-2-2-2", 14.25},
    {"IV", 40, 8, "3-3-2", 20.99}, {"IV", 40, 8, "5-1-1-1", 21.25}, {"IV", 40, 8, "6-2", 36.11},
    {"IV", 40, 8, "3-3-1-1", 17.05}, {"IV", 40, 8, "1-1-1-1-1-1-1-1", 6.484}, {"IV", 40, 8, "7-1", 56.08},
    {"IV", 40, 8, "8", 67.49},

    {"V", 20, 9, "9", 40.84}, {"V", 20, 10, "10", 53.87},
    {"V", 30, 9, "9", 73.45}, {"V", 30, 10, "10", 111.5}, {"V", 30, 11, "11", 124.6},
    {"V", 30, 12, "12", 164.7}, {"V", 30, 13, "13", 201.4},
    {"V", 40, 9, "9", 114.5}, {"V", 40, 10, "10", 161.2}, {"V", 40, 11, "11", 207.2},
    {"V", 40, 12, "12", 259.7}, {"V", 40, 13, "13", 422.1},
    {"V", 60, 4, "4", 16.63}, {"V", 60, 6, "6", 43.59}, {"V", 60, 8, "8", 112.6},
    {"V", 60, 10, "10", 230.2}, {"V", 60, 12, "12", 500.4}, {"V", 60, 14, "14", 722.7},
    {"V", 60, 16, "16", 1877}, {"V", 60, 18, "18", 2.526e4},
};
// clang-format on

constexpr std::array<std::string_view, 5> kNames = {"I", "II", "III", "IV", "V"};

PublishedEntry to_entry(const Row& r) {
  const std::string_view table = r.table;
  return PublishedEntry{table, r.m, r.n, PhotonPattern::parse(r.q),
                        table == "I" ? MomentKind::raw_c : MomentKind::two_gamma, r.value};
}

}  // namespace

std::span<const std::string_view> published_table_names() { return kNames; }

std::vector<PublishedEntry> published_table(std::string_view table) {
  bool known = false;
  for (auto name : kNames) known = known || name == table;
  if (!known) throw DomainError("unknown table '" + std::string(table) + "' (expected I, II, III, IV or V)");
  std::vector<PublishedEntry> out;
  for (const auto& r : kRows) {
    if (table == r.table) out.push_back(to_entry(r));
  }
  return out;
}

std::optional<double> published_value(int m, int n, const PhotonPattern& q, MomentKind kind) {
  for (const auto& r : kRows) {
    if (r.m != m || r.n != n) continue;
    const PublishedEntry e = to_entry(r);
    if (e.kind == kind && e.q == q) return e.value;
  }
  return std::nullopt;
}

}  // namespace qdl
