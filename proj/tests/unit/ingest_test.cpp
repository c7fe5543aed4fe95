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

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <random>
#include <regex>

#include "recap/common/files.hpp"
#include "recap/common/text.hpp"
#include "recap/ingest/corpus.hpp"
#include "recap/ingest/pdf/filters.hpp"
#include "recap/ingest/pdf/font.hpp"
#include "recap/ingest/text_extraction.hpp"
#include "recap/ingest/urls.hpp"
#include "test_support.hpp"

namespace recap::ingest {
namespace {

using testing::fixtures_dir;
using testing::TempDir;

std::string pdf_fixture(const std::string& name) { return read_file(fixtures_dir() / "pdf" / name); }

std::string squash_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\n' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(ExtractText, HelloWorld) { EXPECT_EQ(extract_text(pdf_fixture("hello.pdf")), "Hello world"); }

TEST(ExtractText, ImageOnlyDocumentIsEmptyAndFlagged) {
  const ExtractedText r = extract_document(pdf_fixture("image_only.pdf"));
  EXPECT_EQ(r.text, "");
  EXPECT_TRUE(r.no_text);
  EXPECT_EQ(r.images, 1u);
  EXPECT_EQ(r.pages, 1u);
}

TEST(ExtractText, TwoColumnPageMatchesTranscription) {
  const std::string golden = read_file(fixtures_dir() / "pdf" / "two_column.golden.txt");
  const std::string text = extract_text(pdf_fixture("two_column.pdf"));
  EXPECT_EQ(squash_whitespace(text), squash_whitespace(golden));
}

TEST(ExtractText, TwoColumnParagraphsKeepOrder) {
  const std::string text = extract_text(pdf_fixture("two_column.pdf"));
  const size_t title = text.find("Measuring Artifact");
  const size_t intro = text.find("1 Introduction");
  const size_t method = text.find("2 Method");
  const size_t results = text.find("3 Results");
  const size_t footer = text.find("Workshop on Research Practice");
  ASSERT_NE(results, std::string::npos);
  EXPECT_LT(title, intro);
  EXPECT_LT(intro, method);
  EXPECT_LT(method, results);
  EXPECT_LT(results, footer);
}

TEST(ExtractText, FootnoteIsSplicedAtMarker) {
  const std::string text = extract_text(pdf_fixture("footnote.pdf"));
  EXPECT_NE(text.find("our repository (footnote 1: See https://github.com/example/measure-kit for the code.) "
                      "and run on a laptop."),
            std::string::npos)
      << text;
  EXPECT_EQ(text.find("repository1"), std::string::npos);
}

TEST(ExtractText, HyphenatedLineBreaksAreRejoined) {
  const std::string text = extract_text(pdf_fixture("hyphenation.pdf"));
  EXPECT_NE(text.find("The evaluation of reproducibility signals needs care."), std::string::npos) << text;
  EXPECT_NE(text.find("Bayes-\nNash"), std::string::npos) << text;
}

TEST(ExtractText, CompressedObjectStreamsAndXrefStreams) {
  EXPECT_EQ(extract_text(pdf_fixture("compressed_objects.pdf")), "Compressed objects");
}

TEST(ExtractText, RecoversFromBrokenXrefOffset) {
  EXPECT_EQ(extract_text(pdf_fixture("damaged_xref.pdf")), "Hello world");
}

TEST(ExtractText, EmbeddedTrueTypeUsesToUnicode) {
  EXPECT_EQ(extract_text(pdf_fixture("unicode.pdf")), "Café naïve résumé final αβ");
}

TEST(ExtractText, PagesAreSeparatedByBlankLines) {
  const ExtractedText r = extract_document(pdf_fixture("multi_page.pdf"));
  EXPECT_EQ(r.pages, 3u);
  EXPECT_EQ(r.text, "Page 1 text\n\nPage 2 text\n\nPage 3 text");
}

TEST(ExtractText, EncryptedDocumentIsRejected) {
  EXPECT_EQ(error_of([] { extract_text(pdf_fixture("encrypted.pdf")); }), ErrorCode::kEncryptedDocument);
}

TEST(ExtractText, BinaryGarbageIsUnreadable) {
  EXPECT_EQ(error_of([] { extract_text(pdf_fixture("not_a_pdf.bin")); }), ErrorCode::kUnreadableDocument);
  EXPECT_EQ(error_of([] { extract_text(""); }), ErrorCode::kUnreadableDocument);
}

TEST(ExtractText, PlainTextInputPassesThrough) {
  const ExtractedText r = extract_document("Line one\r\nLine two\n\n\n\nNext\xC2\xA0paragraph \xEF\xAC\x81le\n");
  EXPECT_TRUE(r.plain_text_input);
  EXPECT_EQ(r.text, "Line one\nLine two\n\nNext paragraph file");
}

TEST(ExtractText, DamagedInputsNeverCrash) {
  const std::string base = pdf_fixture("two_column.pdf");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    std::string doc = base;
    if (i % 3 == 0) {
      doc.resize(std::uniform_int_distribution<size_t>(0, doc.size())(rng));
    } else {
      for (int k = 0; k < 8; ++k) {
        doc[std::uniform_int_distribution<size_t>(0, doc.size() - 1)(rng)] =
            static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng));
      }
    }
    try {
      (void)extract_document(doc);
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kUnreadableDocument || e.code() == ErrorCode::kEncryptedDocument)
          << to_string(e.code());
    }
  }
}

TEST(PdfFilters, Ascii85) {
  EXPECT_EQ(pdf::ascii85_decode("87cURD]j7BEbo8;+AbHq+T~>"), "Hello world, PDF!");
  EXPECT_EQ(pdf::ascii85_decode("z@:E^~>"), std::string("\0\0\0\0abc", 7));
}

TEST(PdfFilters, LzwReferenceSequence) {
  const std::string in = "\x80\x0B\x60\x50\x22\x0C\x0C\x85\x01";
  EXPECT_EQ(pdf::lzw_decode(in, true), "-----A---B");
}

TEST(PdfFilters, RunLengthAndHex) {
  EXPECT_EQ(pdf::run_length_decode(std::string("\x02" "abc" "\xFE" "z" "\x80", 7)), "abczzz");
  EXPECT_EQ(pdf::ascii_hex_decode("48 65 6c6C6f7>"), "Hellop");
}

TEST(PdfFilters, PngUpPredictor) {
  pdf::Dict parms{{"Predictor", pdf::Object(12.0)}, {"Columns", pdf::Object(3.0)}};
  const std::string rows = std::string("\x02\x01\x02\x03", 4) + std::string("\x02\x01\x01\x01", 4);
  EXPECT_EQ(pdf::apply_predictor(rows, pdf::Object(parms)), std::string("\x01\x02\x03\x02\x03\x04", 6));
}

TEST(PdfFonts, GlyphNames) {
  EXPECT_EQ(pdf::glyph_name_to_utf8("A"), "A");
  EXPECT_EQ(pdf::glyph_name_to_utf8("uni00E9"), "é");
  EXPECT_EQ(pdf::glyph_name_to_utf8("uni00410042"), "AB");
  EXPECT_EQ(pdf::glyph_name_to_utf8("u1F600"), "\xF0\x9F\x98\x80");
  EXPECT_EQ(pdf::glyph_name_to_utf8("f_i"), "fi");
  EXPECT_EQ(pdf::glyph_name_to_utf8("a.sc"), "a");
  EXPECT_EQ(pdf::glyph_name_to_utf8("fi"), "\xEF\xAC\x81");
  EXPECT_EQ(pdf::glyph_name_to_utf8("g123"), "");
}

TEST(ExtractUrls, TrailingPeriodIsStripped) {
  const auto links = extract_urls("code at https://example.org/repo.");
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].url, "https://example.org/repo");
  EXPECT_EQ(links[0].kind, LinkKind::kOther);
  EXPECT_EQ(links[0].source_offset, 8u);
}

TEST(ExtractUrls, DuplicatesCollapse) {
  const auto links = extract_urls("see https://github.com/a/b and again https://github.com/a/b/ here");
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].url, "https://github.com/a/b");
}

TEST(ExtractUrls, NoMatches) { EXPECT_TRUE(extract_urls("no links in this sentence, e.g. a.b").empty()); }

TEST(ExtractUrls, MixedFixtureMatchesHandLabels) {
  const std::string text = read_file(fixtures_dir() / "links" / "mixed_links.txt");
  const auto golden = nlohmann::json::parse(read_file(fixtures_dir() / "links" / "mixed_links.golden.json"));
  const auto links = extract_urls(text);
  ASSERT_EQ(links.size(), golden.size());
  for (size_t i = 0; i < links.size(); ++i) {
    EXPECT_EQ(links[i].url, golden[i]["url"].get<std::string>()) << i;
    EXPECT_EQ(to_string(links[i].kind), golden[i]["kind"].get<std::string>()) << i;
  }
}

TEST(ExtractUrls, RawFormOccursAtReportedOffset) {
  const std::string text = "Überblick: https://github.com/x/y, und doi:10.1145/3597503.3639188 sowie www.Foo.org/a.";
  const auto links = extract_urls(text);
  ASSERT_EQ(links.size(), 3u);
  for (const LinkRef& l : links) {
    const size_t byte = text::utf8_prefix_bytes(text, l.source_offset);
    EXPECT_EQ(text.substr(byte, l.raw.size()), l.raw);
  }
  EXPECT_EQ(links[1].url, "https://doi.org/10.1145/3597503.3639188");
  EXPECT_EQ(links[1].kind, LinkKind::kArchive);
  EXPECT_EQ(links[2].url, "https://www.foo.org/a");
}

TEST(ExtractUrls, IdempotentOnSerializedOutput) {
  const std::string text = read_file(fixtures_dir() / "links" / "mixed_links.txt");
  const auto first = extract_urls(text);
  std::string serialized;
  for (const auto& l : first) serialized += l.url + "\n";
  const auto second = extract_urls(serialized);
  ASSERT_EQ(first.size(), second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].url, second[i].url);
    EXPECT_EQ(first[i].kind, second[i].kind);
  }
}

TEST(ExtractUrls, BalancedParenthesesSurvive) {
  const auto links = extract_urls("(see https://en.wikipedia.org/wiki/Kappa_(statistic)).");
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].url, "https://en.wikipedia.org/wiki/Kappa_(statistic)");
}

TEST(ExtractUrls, NormalizationDetails) {
  EXPECT_EQ(normalize_url("HTTPS://GitHub.com:443/Org/Repo#readme"), "https://github.com/Org/Repo");
  EXPECT_EQ(normalize_url("http:/example.org/x?y=1"), "http://example.org/x?y=1");
  EXPECT_EQ(normalize_url("https://user@host.example.org:8080/"), "https://host.example.org:8080");
  EXPECT_FALSE(normalize_url("https://nohost/"));
  EXPECT_FALSE(normalize_url("https://exa mple.org"));
}

TEST(ExtractUrls, Classification) {
  EXPECT_EQ(classify_url("https://huggingface.co/datasets/x/y"), LinkKind::kDataset);
  EXPECT_EQ(classify_url("https://huggingface.co/x/model"), LinkKind::kRepository);
  EXPECT_EQ(classify_url("https://gitlab.inria.fr/a/b"), LinkKind::kRepository);
  EXPECT_EQ(classify_url("https://web.archive.org/web/2020/x"), LinkKind::kArchive);
  EXPECT_EQ(classify_url("https://notgithub.com/a"), LinkKind::kOther);
}

class CorpusTest : public ::testing::Test {
 protected:
  std::string pdf(const std::string& name) { return (fixtures_dir() / "pdf" / name).string(); }
  TempDir dir;
};

TEST_F(CorpusTest, ThreeValidRows) {
  const std::string manifest = "paper_id,year,title,pdf_path\n"
                               "p1,2021,Hello,\"" + pdf("hello.pdf") + "\"\n"
                               "p2,2022,\"Two, columns\"," + pdf("two_column.pdf") + "\n"
                               "p3,2023,Footnote," + pdf("footnote.pdf") + "\n";
  const Corpus c = load_corpus(manifest, {dir.path(), {}, 1});
  ASSERT_EQ(c.records.size(), 3u);
  EXPECT_TRUE(c.skipped.empty());
  EXPECT_EQ(c.records[1].title, "Two, columns");
  EXPECT_EQ(c.records[1].year, 2022);
  ASSERT_EQ(c.records[1].links.size(), 1u);
  EXPECT_EQ(c.records[1].links[0].url, "https://github.com/example/artifact-kit");
  EXPECT_EQ(c.records[1].links[0].kind, LinkKind::kRepository);
}

TEST_F(CorpusTest, MissingAndUnreadableDocumentsAreSkipped) {
  const std::string manifest = "paper_id,year,title,pdf_path\n"
                               "ok,2021,Hello," + pdf("hello.pdf") + "\n"
                               "gone,2021,Missing,does/not/exist.pdf\n"
                               "img,2021,Scan," + pdf("image_only.pdf") + "\n"
                               "enc,2021,Locked," + pdf("encrypted.pdf") + "\n";
  const Corpus c = load_corpus(manifest, {dir.path(), {}, 2});
  ASSERT_EQ(c.records.size(), 1u);
  ASSERT_EQ(c.skipped.size(), 3u);
  EXPECT_EQ(c.skipped[0].paper_id, "gone");
  EXPECT_EQ(c.skipped[0].reason, ErrorCode::kIo);
  EXPECT_EQ(c.skipped[1].reason, ErrorCode::kUnreadableDocument);
  EXPECT_EQ(c.skipped[2].reason, ErrorCode::kEncryptedDocument);
}

TEST_F(CorpusTest, DuplicatePaperIdIsRejected) {
  const std::string manifest = "paper_id,year,title,pdf_path\np1,2021,A,a.pdf\np1,2022,B,b.pdf\n";
  EXPECT_EQ(error_of([&] { load_corpus(manifest, {dir.path(), {}, 1}); }), ErrorCode::kDuplicatePaperId);
}

TEST_F(CorpusTest, MalformedManifests) {
  for (const std::string m : {std::string("paper_id,year,title\np1,2021,A\n"),
                              std::string("paper_id,year,title,pdf_path\np1,twenty,A,a.pdf\n"),
                              std::string("paper_id,year,title,pdf_path\np1,2021,A\n"),
                              std::string("paper_id,year,title,pdf_path\n,2021,A,a.pdf\n"),
                              std::string("paper_id,year,title,pdf_path\n\"p1,2021,A,a.pdf\n"),
                              std::string("")}) {
    EXPECT_EQ(error_of([&] { load_corpus(m, {dir.path(), {}, 1}); }), ErrorCode::kMalformedManifest) << m;
  }
}

TEST_F(CorpusTest, BestPaperCacheAndRelativePaths) {
  std::filesystem::copy_file(pdf("hello.pdf"), dir / "hello.pdf");
  write_file_atomic(dir / std::string(kBestPaperCacheFile),
                    R"({"p1": {"nominated": true, "won": false}, "other": {"nominated": false}})");
  const std::string manifest = "paper_id,year,title,pdf_path,supplementary\np1,2021,Hello,hello.pdf,Y\n";
  const Corpus c = load_corpus(manifest, {dir.path(), {}, 1});
  ASSERT_EQ(c.records.size(), 1u);
  EXPECT_EQ(c.records[0].flags.best_paper_nominated, true);
  EXPECT_EQ(c.records[0].flags.best_paper_won, false);
  EXPECT_EQ(c.records[0].flags.has_supplementary, true);

  write_file_atomic(dir / std::string(kBestPaperCacheFile), R"({"p1": {"nominated": "yes"}})");
  EXPECT_EQ(error_of([&] { load_corpus(manifest, {dir.path(), {}, 1}); }), ErrorCode::kMalformedManifest);
}

TEST_F(CorpusTest, OutputNeverExceedsManifestRows) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> choices = {pdf("hello.pdf"), pdf("image_only.pdf"), "missing.pdf",
                                            pdf("multi_page.pdf")};
  for (int trial = 0; trial < 5; ++trial) {
    std::string manifest = "paper_id,year,title,pdf_path\n";
    const int rows = 1 + trial * 2;
    for (int r = 0; r < rows; ++r) {
      manifest += "p" + std::to_string(r) + ",2020,T," +
                  choices[std::uniform_int_distribution<size_t>(0, choices.size() - 1)(rng)] + "\n";
    }
    const Corpus c = load_corpus(manifest, {dir.path(), {}, 3});
    EXPECT_EQ(c.records.size() + c.skipped.size(), static_cast<size_t>(rows));
    for (size_t i = 1; i < c.records.size(); ++i) {
      EXPECT_LT(std::stoi(c.records[i - 1].paper_id.substr(1)), std::stoi(c.records[i].paper_id.substr(1)));
    }
  }
}

}  // namespace
}  // namespace recap::ingest
