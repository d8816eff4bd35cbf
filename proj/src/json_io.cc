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

#include "evsum/json_io.h"

#include <fstream>
#include <sstream>

#include "evsum/error.h"

namespace evsum {

namespace {

std::string Quote(std::string_view s) {
  return "'" + std::string(s) + "'";
}

ParseError SchemaError(std::string_view what, const std::string &detail) {
  return ParseError(std::string(what) + ": " + detail, 0, 0);
}

}  // namespace

Json ParseJson(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error &e) {
    // nlohmann reports a byte offset; translate it into line/column.
    size_t offset = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1;
    int column = 1;
    for (size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << what << ":" << line << ":" << column << ": JSON syntax error";
    throw ParseError(msg.str(), line, column);
  }
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path &path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for " + path.string());
  }
}

std::string DumpJson(const Json &value) {
  return value.dump(2) + "\n";
}

const Json &RequireField(const Json &object, std::string_view field,
                         std::string_view what) {
  const Json &obj = RequireObject(object, what);
  auto it = obj.find(std::string(field));
  if (it == obj.end()) {
    throw SchemaError(what, "missing field " + Quote(field));
  }
  return *it;
}

std::string RequireString(const Json &object, std::string_view field,
                          std::string_view what) {
  const Json &value = RequireField(object, field, what);
  if (!value.is_string()) {
    throw SchemaError(what, "field " + Quote(field) + " must be a string");
  }
  return value.get<std::string>();
}

int64_t RequireInt(const Json &object, std::string_view field,
                   std::string_view what) {
  const Json &value = RequireField(object, field, what);
  if (!value.is_number_integer()) {
    throw SchemaError(what, "field " + Quote(field) + " must be an integer");
  }
  return value.get<int64_t>();
}

const Json &RequireArray(const Json &object, std::string_view field,
                         std::string_view what) {
  const Json &value = RequireField(object, field, what);
  if (!value.is_array()) {
    throw SchemaError(what, "field " + Quote(field) + " must be an array");
  }
  return value;
}

const Json &RequireObject(const Json &value, std::string_view what) {
  if (!value.is_object()) {
    throw SchemaError(what, "expected a JSON object");
  }
  return value;
}

}  // namespace evsum
