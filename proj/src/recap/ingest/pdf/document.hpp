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

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "recap/ingest/pdf/object.hpp"

namespace recap::ingest::pdf {

struct Page {
  Dict resources;
  std::array<double, 4> media_box{0, 0, 612, 792};
  std::string content;  // decoded, concatenated content streams
};

class Document {
 public:
  // Throws UnreadableDocument or EncryptedDocument.
  explicit Document(std::string data);

  Document(const Document&) = delete;
  Document& operator=(const Document&) = delete;

  // Follows references (chains included); returns null for dangling ones.
  const Object& resolve(const Object& obj);
  const Object& get(Ref ref);
  // Resolved dictionary entry.
  const Object& get(const Object& owner, std::string_view key);

  std::string decode_stream(const Stream& stream);

  const std::vector<Page>& pages() const { return pages_; }

 private:
  struct XrefEntry {
    enum Kind { kOffset, kCompressed } kind = kOffset;
    size_t offset = 0;     // byte offset, or containing stream number
    int index = 0;         // index inside an object stream
  };

  bool read_xref_chain();
  bool read_xref_at(size_t offset, std::set<size_t>& seen);
  bool read_xref_table(size_t offset, std::set<size_t>& seen);
  bool read_xref_stream(size_t offset, std::set<size_t>& seen);
  void merge_trailer(const Dict& dict);
  void rebuild_by_scanning();
  Object load(Ref ref);
  Object load_compressed(int stream_num, int index, int obj_num);
  void collect_pages();
  void walk_pages(const Object& node, Dict resources, std::array<double, 4> box, std::set<int>& visited,
                  int depth);

  std::string data_;
  std::map<int, XrefEntry> xref_;
  Dict trailer_;
  std::map<int, Object> cache_;
  std::set<int> loading_;
  std::map<int, std::vector<std::pair<int, size_t>>> objstm_index_;
  std::map<int, std::string> objstm_data_;
  std::vector<Page> pages_;
};

}  // namespace recap::ingest::pdf
