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

#include <stdexcept>
#include <string>

namespace qdl {

/// Invalid arguments: out-of-range indices, inconsistent photon numbers,
/// parameters outside their mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured size cap (basis dimension, permanent order, compute
/// budget) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required record is missing from the moment cache.
class CacheMiss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdl
