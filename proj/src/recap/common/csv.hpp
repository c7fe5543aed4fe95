/* Copyright 2026 The RECAP Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace recap::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain delimiters, doubled quotes and
// line breaks. Throws Error(kInvalidArgument) on an unterminated quote.
std::vector<Row> parse(std::string_view text, char delimiter = ',');

std::string escape(std::string_view field, char delimiter = ',');

class Writer {
 public:
  explicit Writer(char delimiter = ',') : delimiter_(delimiter) {}

  Writer& row(const Row& fields);
  const std::string& str() const { return out_; }

 private:
  char delimiter_;
  std::string out_;
};

// Shortest round-trip representation; "" for NaN (undefined values).
std::string format_number(double value);

}  // namespace recap::csv
