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

#include <algorithm>
#include <random>

#include "recap/checklist/assessment.hpp"
#include "recap/checklist/metrics.hpp"
#include "recap/checklist/schema.hpp"
#include "recap/common/error.hpp"
#include "test_support.hpp"

namespace recap::checklist {
namespace {

using recap::testing::make_assessment;
using recap::testing::ternary_schema;

ErrorCode schema_error(const std::string& doc) {
  try {
    load_schema(doc);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "schema unexpectedly loaded";
  return ErrorCode::kInvalidArgument;
}

TEST(ChecklistSchema, BundledSchemaMatchesReferenceTable) {
  const auto& schema = default_schema();
  // Every row of the reference checklist table: 5 + 3 + 12 + 6 + 15.
  EXPECT_EQ(schema.size(), 41u);
  ASSERT_EQ(schema.dimensions().size(), 5u);
  std::map<std::string, int> per_dim;
  for (const auto& item : schema.items()) ++per_dim[item.dimension];
  EXPECT_EQ(per_dim["Paper metadata"], 5);
  EXPECT_EQ(per_dim["Methodology"], 3);
  EXPECT_EQ(per_dim["Experimental setup"], 12);
  EXPECT_EQ(per_dim["Results reporting"], 6);
  EXPECT_EQ(per_dim["Artifact"], 15);

  // Item order is preserved from the document.
  EXPECT_EQ(schema.items().front().id, "author_affiliations");
  EXPECT_EQ(schema.items().back().id, "artifact_reproducible");

  int executable = 0;
  for (const auto& item : schema.items()) {
    if (item.field_kind == FieldKind::kExecutable) ++executable;
    if (item.descriptive) EXPECT_FALSE(item.counts_toward_completeness) << item.id;
    EXPECT_FALSE(item.criteria_text.empty()) << item.id;
  }
  EXPECT_EQ(executable, 1);

  std::vector<std::string> descriptive;
  for (const auto& item : schema.items())
    if (item.descriptive) descriptive.push_back(item.id);
  EXPECT_EQ(descriptive, (std::vector<std::string>{"author_affiliations", "paper_type", "best_paper_nomination",
                                                   "best_paper_award", "parameter_setting"}));

  const auto* setting = schema.find("parameter_setting");
  ASSERT_NE(setting, nullptr);
  EXPECT_EQ(setting->domain.options(), (std::vector<std::string>{"Automated", "Manual", "NA"}));
}

TEST(ChecklistSchema, RoundTripsThroughJson) {
  const auto& schema = default_schema();
  const auto again = load_schema(schema.to_json().dump());
  EXPECT_EQ(again.to_json(), schema.to_json());
}

TEST(ChecklistSchema, DuplicateItemIdIsRejected) {
  const std::string doc = R"({"version":"t","dimensions":["Methodology"],"items":[
    {"id":"pseudocode","dimension":"Methodology","domain":{"type":"ternary"}},
    {"id":"pseudocode","dimension":"Methodology","domain":{"type":"ternary"}}]})";
  EXPECT_EQ(schema_error(doc), ErrorCode::kDuplicateItemId);
  try {
    load_schema(doc);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("pseudocode"), std::string::npos);
  }
}

TEST(ChecklistSchema, SingleOptionCategoricalIsEmptyDomain) {
  const std::string doc = R"({"version":"t","dimensions":["Paper metadata"],"items":[
    {"id":"paper_type","dimension":"Paper metadata","domain":{"type":"categorical","options":["Research article"]},
     "descriptive":true}]})";
  EXPECT_EQ(schema_error(doc), ErrorCode::kEmptyDomain);
}

TEST(ChecklistSchema, MalformedDocuments) {
  EXPECT_EQ(schema_error("{not json"), ErrorCode::kMalformedSchema);
  EXPECT_EQ(schema_error(R"({"dimensions":[],"items":{}})"), ErrorCode::kMalformedSchema);
  // Unknown dimension.
  EXPECT_EQ(schema_error(R"({"dimensions":["A"],"items":[{"id":"x","dimension":"B","domain":{"type":"ternary"}}]})"),
            ErrorCode::kMalformedSchema);
  // Empty id.
  EXPECT_EQ(schema_error(R"({"dimensions":["A"],"items":[{"id":"","dimension":"A","domain":{"type":"ternary"}}]})"),
            ErrorCode::kMalformedSchema);
  // Descriptive items cannot count toward completeness.
  EXPECT_EQ(schema_error(R"({"dimensions":["A"],"items":[{"id":"x","dimension":"A","domain":{"type":"ternary"},
            "descriptive":true,"counts_toward_completeness":true}]})"),
            ErrorCode::kMalformedSchema);
  // Two executable fields.
  EXPECT_EQ(schema_error(R"({"dimensions":["A"],"items":[
            {"id":"x","dimension":"A","domain":{"type":"ternary"},"field_kind":"executable"},
            {"id":"y","dimension":"A","domain":{"type":"ternary"},"field_kind":"executable"}]})"),
            ErrorCode::kMalformedSchema);
}

TEST(Assessment, ParseRejectsDuplicateAnswers) {
  const std::string doc = R"({"paper_id":"p1","rater":"human","answers":{
      "pseudocode":{"value":"Y","disambiguation":""},
      "pseudocode":{"value":"N","disambiguation":""}}})";
  try {
    parse_assessment(doc);
    FAIL() << "duplicate answer accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedAssessment);
  }
  // Same key at a different nesting level is fine.
  const auto a = parse_assessment(
      R"({"paper_id":"p1","answers":{"x":{"value":"Y"}},"details":{"x":1,"answers":{"x":{}}}})");
  EXPECT_EQ(a.answers.size(), 1u);
}

TEST(Assessment, SerializationRoundTrip) {
  Assessment a = make_assessment("p7", Rater::kAutomated, {{"pseudocode", "Y"}, {"aggregated_results", "NA"}});
  a.answers["pseudocode"].disambiguation = "Algorithm 1 in section 3";
  a.provider_info = nlohmann::ordered_json{{"model", "stub"}};
  a.produced_at = parse_iso8601("2026-01-02T03:04:05Z");
  const std::string text = serialize(a, &default_schema());
  const Assessment b = parse_assessment(text);
  EXPECT_EQ(b.paper_id, "p7");
  EXPECT_EQ(b.rater, Rater::kAutomated);
  EXPECT_EQ(b.answers, a.answers);
  EXPECT_EQ(format_iso8601(b.produced_at), "2026-01-02T03:04:05Z");
  EXPECT_EQ(serialize(b, &default_schema()), text);
}

TEST(Validation, OutOfDomainUnknownAndMissing) {
  const auto schema = ternary_schema(3);
  auto a = make_assessment("p", Rater::kHuman, {{"item00", "Maybe"}, {"item01", "Y"}, {"item02", "N"}});
  auto r = validate_assessment(schema, a);
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].kind, ValidationIssue::Kind::kOutOfDomain);
  EXPECT_EQ(r.issues[0].item_id, "item00");

  a.answers["item00"].value = "NA";
  EXPECT_TRUE(validate_assessment(schema, a).empty());

  a.add({"ghost", "Y", ""});
  r = validate_assessment(schema, a);
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].kind, ValidationIssue::Kind::kUnknownItem);

  a.answers.erase("ghost");
  a.answers.erase("item02");
  r = validate_assessment(schema, a);
  EXPECT_EQ(r.count(ValidationIssue::Kind::kMissingItem), 1u);
}

TEST(Validation, SentinelIsListedButConformant) {
  const auto schema = ternary_schema(2);
  auto a = make_assessment("p", Rater::kAutomated, {{"item00", std::string(kUnparseable)}, {"item01", "Y"}});
  const auto r = validate_assessment(schema, a);
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(r.sentinel_items, std::vector<std::string>{"item00"});
}

TEST(Completeness, FiveYesThreeNoTwoNa) {
  const auto schema = ternary_schema(10);
  std::vector<std::pair<std::string, std::string>> v;
  const char* values[] = {"Y", "Y", "Y", "Y", "Y", "N", "N", "N", "NA", "NA"};
  for (int i = 0; i < 10; ++i) v.emplace_back(schema.items()[i].id, values[i]);
  const auto s = completeness(schema, make_assessment("p", Rater::kHuman, v));
  EXPECT_EQ(s.yes_count, 5u);
  EXPECT_EQ(s.applicable_count, 8u);
  ASSERT_TRUE(s.defined());
  EXPECT_DOUBLE_EQ(*s.value, 0.625);
}

TEST(Completeness, AllNotApplicableIsUndefined) {
  const auto schema = ternary_schema(4);
  std::vector<std::pair<std::string, std::string>> v;
  for (const auto& item : schema.items()) v.emplace_back(item.id, "NA");
  const auto s = completeness(schema, make_assessment("p", Rater::kHuman, v));
  EXPECT_FALSE(s.defined());
  EXPECT_EQ(s.applicable_count, 0u);
}

// Independent recount over the raw answer records, ignoring the schema's
// item walk entirely.
double recount(const ChecklistSchema& schema, const Assessment& a) {
  int yes = 0, applicable = 0;
  for (const auto& [id, fa] : a.answers) {
    const auto* item = schema.find(id);
    if (!item || item->descriptive || !item->counts_toward_completeness || !item->is_ternary()) continue;
    if (fa.value == "Y") {
      ++yes;
      ++applicable;
    } else if (fa.value == "N") {
      ++applicable;
    }
  }
  return applicable == 0 ? -1.0 : static_cast<double>(yes) / applicable;
}

TEST(Completeness, TwentyYesTenNoEightNaMatchesRecount) {
  const auto schema = ternary_schema(38);
  std::vector<std::pair<std::string, std::string>> v;
  for (int i = 0; i < 38; ++i) v.emplace_back(schema.items()[i].id, i < 20 ? "Y" : (i < 30 ? "N" : "NA"));
  const auto a = make_assessment("p", Rater::kHuman, v);
  const auto s = completeness(schema, a);
  ASSERT_TRUE(s.defined());
  EXPECT_NEAR(*s.value, 0.6667, 5e-5);
  EXPECT_DOUBLE_EQ(*s.value, recount(schema, a));
}

TEST(Completeness, DescriptiveAndCategoricalItemsNeverCount) {
  const auto& schema = default_schema();
  Assessment a;
  a.paper_id = "p";
  for (const auto& item : schema.items()) {
    a.add({item.id, item.is_ternary() ? "NA" : item.domain.options().front(), ""});
  }
  a.answers["pseudocode"].value = "Y";
  const auto s = completeness(schema, a);
  EXPECT_EQ(s.applicable_count, 1u);
  EXPECT_DOUBLE_EQ(*s.value, 1.0);
}

TEST(Completeness, RejectsUnvalidatedAssessments) {
  const auto schema = ternary_schema(2);
  EXPECT_THROW(completeness(schema, make_assessment("p", Rater::kHuman, {{"nope", "Y"}})), Error);
  EXPECT_THROW(completeness(schema, make_assessment("p", Rater::kHuman, {{"item00", "Maybe"}})), Error);
}

TEST(CompletenessProperties, PermutationNaInsertionAndMonotonicity) {
  std::mt19937_64 rng(20260101);
  const auto schema = ternary_schema(30);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = recap::testing::random_assessment(schema, "p", rng, /*allow_missing=*/true);

    // Insertion order does not matter.
    std::vector<FieldAnswer> shuffled;
    for (const auto& [id, fa] : a.answers) shuffled.push_back(fa);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Assessment b;
    b.paper_id = a.paper_id;
    for (auto& fa : shuffled) b.add(fa);
    EXPECT_EQ(completeness(schema, a).value, completeness(schema, b).value);

    const auto base = completeness(schema, a);
    // Adding NA to an unanswered item never changes a defined value.
    for (const auto& item : schema.items()) {
      if (a.answer(item.id)) continue;
      Assessment c = a;
      c.add({item.id, "NA", ""});
      EXPECT_EQ(completeness(schema, c).value, base.value);
    }
    // Flipping one N to Y strictly increases a defined value.
    for (const auto& [id, fa] : a.answers) {
      if (fa.value != "N") continue;
      Assessment d = a;
      d.answers[id].value = "Y";
      ASSERT_TRUE(base.defined());
      EXPECT_GT(*completeness(schema, d).value, *base.value);
      break;
    }
  }
}

TEST(ReportingRate, ThreeYesOneNoSixNa) {
  const auto schema = ternary_schema(1);
  std::vector<Assessment> corpus;
  const char* values[] = {"Y", "Y", "Y", "N", "NA", "NA", "NA", "NA", "NA", "NA"};
  for (int i = 0; i < 10; ++i)
    corpus.push_back(make_assessment("p" + std::to_string(i), Rater::kHuman, {{"item00", values[i]}}));
  const auto rate = reporting_rate(schema, corpus, "item00");
  ASSERT_TRUE(rate.has_value());
  EXPECT_DOUBLE_EQ(*rate, 0.75);
}

TEST(ReportingRate, AllNaIsUndefinedAndErrors) {
  const auto& schema = default_schema();
  std::vector<Assessment> corpus{make_assessment("p", Rater::kHuman, {{"pseudocode", "NA"}})};
  EXPECT_FALSE(reporting_rate(schema, corpus, "pseudocode").has_value());
  try {
    reporting_rate(schema, corpus, "does_not_exist");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownItem);
  }
  try {
    reporting_rate(schema, corpus, "paper_type");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonTernaryItem);
  }
}

TEST(ReportingRate, RandomCorpusMatchesPerPaperTally) {
  std::mt19937_64 rng(7);
  const auto schema = ternary_schema(12);
  std::vector<Assessment> corpus;
  for (int i = 0; i < 50; ++i)
    corpus.push_back(recap::testing::random_assessment(schema, "p" + std::to_string(i), rng, true));
  for (const auto& item : schema.items()) {
    int yes = 0, applicable = 0;
    for (const auto& a : corpus) {
      const auto it = a.answers.find(item.id);
      if (it == a.answers.end()) continue;
      yes += it->second.value == "Y";
      applicable += it->second.value == "Y" || it->second.value == "N";
    }
    const auto rate = reporting_rate(schema, corpus, item.id);
    if (applicable == 0) {
      EXPECT_FALSE(rate.has_value());
    } else {
      ASSERT_TRUE(rate.has_value());
      EXPECT_DOUBLE_EQ(*rate, static_cast<double>(yes) / applicable);
      EXPECT_GE(*rate, 0.0);
      EXPECT_LE(*rate, 1.0);
      EXPECT_EQ(*rate == 1.0, yes == applicable);
    }
  }
}

}  // namespace
}  // namespace recap::checklist
