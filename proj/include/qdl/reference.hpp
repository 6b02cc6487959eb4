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

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qdl/cache.hpp"
#include "qdl/fock.hpp"

namespace qdl {

/// A value printed in one of the five published coefficient tables.
/// Table I lists the unnormalized moment (raw_c); the others list two_gamma.
struct PublishedEntry {
  std::string_view table;
  int m = 0;
  int n = 0;
  PhotonPattern q;
  MomentKind kind = MomentKind::two_gamma;
  double value = 0.0;
};

/// Entries of table "I" .. "V" in printed order. Throws DomainError for an
/// unknown table name.
std::vector<PublishedEntry> published_table(std::string_view table);

std::span<const std::string_view> published_table_names();

std::optional<double> published_value(int m, int n, const PhotonPattern& q, MomentKind kind);

}  // namespace qdl
