// Copyright 2026 The evsum Authors.
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

// Small JSON and file helpers shared by the loaders and the CLI.

#ifndef EVSUM_JSON_IO_H_
#define EVSUM_JSON_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace evsum {

using Json = nlohmann::json;

// Parses `text`; syntax errors become ParseError with line and column.
// `what` names the document in error messages.
Json ParseJson(std::string_view text, std::string_view what);

std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view contents);

// Canonical serialization: 2-space indent, sorted keys, trailing newline.
std::string DumpJson(const Json &value);

// Typed field access that reports schema violations as ParseError(0, 0)
// naming the offending field.
const Json &RequireField(const Json &object, std::string_view field,
                         std::string_view what);
std::string RequireString(const Json &object, std::string_view field,
                          std::string_view what);
int64_t RequireInt(const Json &object, std::string_view field,
                   std::string_view what);
const Json &RequireArray(const Json &object, std::string_view field,
                         std::string_view what);
const Json &RequireObject(const Json &value, std::string_view what);

}  // namespace evsum

#endif  // EVSUM_JSON_IO_H_
