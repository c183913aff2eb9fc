// Copyright 2026 The Locsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "locsec/channel_io.h"
#include "locsec/channels.h"
#include "locsec/errors.h"
#include "locsec/parallel.h"
#include "locsec/table.h"

namespace locsec {
namespace {

std::string ErrorOf(const std::string& text) {
  try {
    channel_from_json(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(ChannelIoTest, RoundTripIsBitExact) {
  AwgnQuantizerOptions jitter;
  jitter.edge_jitter = 0.1;
  const WiretapChannel wc = quantized_awgn_wiretap(4, 5, 3, 7.0, 1.0, 11, jitter);
  const WiretapChannel back = channel_from_json(channel_to_json(wc));
  EXPECT_EQ(back.px().probs(), wc.px().probs());
  EXPECT_EQ(back.bob().entries(), wc.bob().entries());
  EXPECT_EQ(back.eve().entries(), wc.eve().entries());
}

TEST(ChannelIoTest, MalformedJsonReportsLine) {
  const std::string msg = ErrorOf("{\n  \"nx\": 2,,\n}");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(ChannelIoTest, MissingFieldIsNamed) {
  std::string text = channel_to_json(bswc(0.1, 0.25));
  const auto pos = text.find("\"eve\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 5, "\"evx\"");
  EXPECT_NE(ErrorOf(text).find("'eve'"), std::string::npos);
}

TEST(ChannelIoTest, RejectsInvalidProbabilities) {
  std::string text = channel_to_json(bswc(0.1, 0.25));
  const auto pos = text.find("0.9");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 3, "0.8");
  EXPECT_THROW(channel_from_json(text), ValidationError);
}

TEST(ChannelIoTest, MissingFileIsValidationError) {
  EXPECT_THROW(read_channel_file("/nonexistent/channel.json"), ValidationError);
}

TEST(TableTest, FormatsTwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(2.56), "2.56");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(TableTest, CsvHeaderUnitsAndQuoting) {
  Table t;
  t.columns = {{"name"}, {"count"}, {"mi", true}};
  t.add_row({std::string("a,b"), std::int64_t{3}, std::log(2.0)});
  std::ostringstream out;
  write_csv(out, t, "capacity solve", "2026-01-01T00:00:00Z", LogBase::kBits);
  EXPECT_EQ(out.str(),
            "# locsec-csv v1 capacity solve 2026-01-01T00:00:00Z\n"
            "name,count,mi\n"
            "\"a,b\",3,1\n");
  EXPECT_THROW(t.add_row({1.0}), DimensionError);
}

TEST(ParallelMapTest, PreservesOrder) {
  const auto out = parallel_map(1000, [](std::size_t i) { return i * i; }, 4);
  ASSERT_EQ(out.size(), 1000u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
}

TEST(ParallelMapTest, PropagatesFirstException) {
  std::atomic<int> calls{0};
  EXPECT_THROW(parallel_map(
                   100,
                   [&](std::size_t i) {
                     ++calls;
                     if (i == 7) throw std::runtime_error("boom");
                     return i;
                   },
                   3),
               std::runtime_error);
  EXPECT_LE(calls.load(), 100);
}

}  // namespace
}  // namespace locsec
