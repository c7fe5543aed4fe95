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

#include "recap/ingest/pdf/object.hpp"

#include <cmath>

namespace recap::ingest::pdf {

std::optional<double> Object::number() const {
  if (const auto* d = std::get_if<double>(&value_)) return *d;
  return std::nullopt;
}

std::optional<int> Object::integer() const {
  if (const auto* d = std::get_if<double>(&value_)) return static_cast<int>(std::lround(*d));
  return std::nullopt;
}

const std::string* Object::name() const {
  if (const auto* n = std::get_if<Name>(&value_)) return &n->value;
  return nullptr;
}

bool Object::is_name(std::string_view n) const {
  const auto* v = name();
  return v && *v == n;
}

const std::string* Object::string() const {
  if (const auto* s = std::get_if<String>(&value_)) return &s->bytes;
  return nullptr;
}

const Dict* Object::dict() const {
  if (const auto* d = std::get_if<Dict>(&value_)) return d;
  if (const auto* s = std::get_if<std::shared_ptr<const Stream>>(&value_)) return &(*s)->dict;
  return nullptr;
}

const Stream* Object::stream() const {
  if (const auto* s = std::get_if<std::shared_ptr<const Stream>>(&value_)) return s->get();
  return nullptr;
}

std::optional<bool> Object::boolean() const {
  if (const auto* b = std::get_if<bool>(&value_)) return *b;
  return std::nullopt;
}

const Object& Object::get(std::string_view key) const {
  const Dict* d = dict();
  return d ? lookup(*d, key) : null();
}

const Object& Object::null() {
  static const Object kNull;
  return kNull;
}

const Object& lookup(const Dict& dict, std::string_view key) {
  const auto it = dict.find(key);
  return it == dict.end() ? Object::null() : it->second;
}

}  // namespace recap::ingest::pdf
