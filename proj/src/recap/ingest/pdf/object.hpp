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

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace recap::ingest::pdf {

struct Ref {
  int num = 0;
  int gen = 0;
  auto operator<=>(const Ref&) const = default;
};

struct Name {
  std::string value;
};

struct String {
  std::string bytes;
};

class Object;
using Array = std::vector<Object>;
using Dict = std::map<std::string, Object, std::less<>>;

struct Stream;

class Object {
 public:
  using Value = std::variant<std::monostate, bool, double, String, Name, Array, Dict, Ref, std::shared_ptr<const Stream>>;

  Object() = default;
  Object(bool v) : value_(v) {}
  Object(double v) : value_(v) {}
  Object(String v) : value_(std::move(v)) {}
  Object(Name v) : value_(std::move(v)) {}
  Object(Array v) : value_(std::move(v)) {}
  Object(Dict v) : value_(std::move(v)) {}
  Object(Ref v) : value_(v) {}
  Object(std::shared_ptr<const Stream> v) : value_(std::move(v)) {}

  bool is_null() const { return std::holds_alternative<std::monostate>(value_); }
  bool is_number() const { return std::holds_alternative<double>(value_); }

  std::optional<double> number() const;
  double number_or(double fallback) const { return number().value_or(fallback); }
  std::optional<int> integer() const;
  const std::string* name() const;
  bool is_name(std::string_view n) const;
  const std::string* string() const;
  const Array* array() const { return std::get_if<Array>(&value_); }
  // Dictionary of a dict object or of a stream.
  const Dict* dict() const;
  const Ref* ref() const { return std::get_if<Ref>(&value_); }
  const Stream* stream() const;
  std::optional<bool> boolean() const;

  // Direct lookup (no reference resolution); null when absent.
  const Object& get(std::string_view key) const;

  static const Object& null();

 private:
  Value value_;
};

struct Stream {
  Dict dict;
  std::string raw;  // still encoded
};

const Object& lookup(const Dict& dict, std::string_view key);

}  // namespace recap::ingest::pdf
