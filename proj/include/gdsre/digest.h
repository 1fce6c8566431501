// Copyright 2026 The gdsre Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GDSRE_DIGEST_H_
#define GDSRE_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace gdsre {

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// First 8 bytes of the SHA-256 as an integer (big-endian).
uint64_t Sha256Prefix64(std::string_view data);

}  // namespace gdsre

#endif  // GDSRE_DIGEST_H_
