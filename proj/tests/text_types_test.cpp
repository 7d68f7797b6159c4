// Copyright 2026 The GER Authors.
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

#include <gtest/gtest.h>

#include "ger/text.hpp"
#include "ger/types.hpp"

namespace ger {
namespace {

TEST(Text, CollapsesAndTrimsWhitespace) {
  EXPECT_EQ(collapse_whitespace("  the \t zoo\n "), "the zoo");
  EXPECT_EQ(collapse_whitespace(""), "");
  EXPECT_EQ(normalize_text("  Me and  MY Girlfriend "), "me and my girlfriend");
}

TEST(Text, Sha256KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Text, StableHashIsDigestPrefix) {
  // First eight bytes of sha256("abc"), big-endian.
  EXPECT_EQ(stable_hash64("abc"), 0xba7816bf8f01cfeaULL);
}

TEST(Types, EventTypeNamesRoundTrip) {
  for (EventType t : kAllEventTypes) {
    EXPECT_EQ(parse_event_type(to_string(t)), t);
    EXPECT_EQ(parse_event_type(abbreviation(t)), t);
    EXPECT_EQ(parse_event_type(to_lower(to_string(t))), t);
  }
  EXPECT_FALSE(parse_event_type("Maybe").has_value());
}

TEST(Types, AbbreviationsInTableOrder) {
  std::string joined;
  for (EventType t : kAllEventTypes) joined += std::string(abbreviation(t)) + " ";
  EXPECT_EQ(joined, "CST INC ADD FGT UFG ");
}

TEST(Types, GoldCollapse) {
  EXPECT_EQ(collapse_to_relevance(EventType::Consistent), RelevanceLabel::Relevant);
  EXPECT_EQ(collapse_to_relevance(EventType::Inconsistent), RelevanceLabel::Relevant);
  EXPECT_EQ(collapse_to_relevance(EventType::Unforgotten), RelevanceLabel::Relevant);
  EXPECT_EQ(collapse_to_relevance(EventType::Additional), RelevanceLabel::Irrelevant);
  EXPECT_EQ(collapse_to_relevance(EventType::Forgotten), RelevanceLabel::Irrelevant);
}

TEST(Types, ExternalPredictionCollapseDropsInconsistent) {
  EXPECT_EQ(external_prediction_to_relevance(EventType::Consistent), RelevanceLabel::Relevant);
  EXPECT_EQ(external_prediction_to_relevance(EventType::Unforgotten), RelevanceLabel::Relevant);
  EXPECT_EQ(external_prediction_to_relevance(EventType::Inconsistent), RelevanceLabel::Irrelevant);
  EXPECT_EQ(external_prediction_to_relevance(EventType::Additional), RelevanceLabel::Irrelevant);
  EXPECT_EQ(external_prediction_to_relevance(EventType::Forgotten), RelevanceLabel::Irrelevant);
}

TEST(Types, DirectionAdmissibility) {
  for (EventType t : kAllEventTypes) {
    const bool pre = t == EventType::Forgotten || t == EventType::Unforgotten;
    EXPECT_EQ(admissible(t, Direction::TargetIsPre), pre) << to_string(t);
    EXPECT_EQ(admissible(t, Direction::TargetIsPost), !pre) << to_string(t);
  }
  EXPECT_EQ(reference_role(Direction::TargetIsPre), StoryRole::PostRetold);
  EXPECT_EQ(reference_role(Direction::TargetIsPost), StoryRole::PreRetold);
  EXPECT_EQ(parse_direction("pre"), Direction::TargetIsPre);
  EXPECT_EQ(parse_direction("post"), Direction::TargetIsPost);
}

}  // namespace
}  // namespace ger
