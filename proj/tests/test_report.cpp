#include <gtest/gtest.h>

#include "tvgenus/report.hpp"

using namespace tvgenus;

namespace {

Report sample_report() {
  std::vector<ScreenEntry> entries{{"L(3,1) : #1", "cMcabbgaj", ""},
                                   {"name, with \"quotes\"", "cPcbbbaaa", ""},
                                   {"bad", "zz", ""},
                                   {"T x S1 : #1", "gvLQQedfedffrwawrhh", ""}};
  ScreenOptions opt;
  opt.mode = Mode::both;
  Report rep;
  rep.provenance.r = 5;
  rep.provenance.mode = "both";
  rep.records = screen(entries, opt);
  rep.records[0].notes.push_back("multi\nline note");
  return rep;
}

}  // namespace

TEST(Census, Parsing) {
  const auto entries = parse_census(
      "# comment\n"
      "L(3,1) : #1 ; cMcabbgaj\n"
      "\n"
      "weird ; name ; cPcbbbaaa\r\n"
      "no separator here\n"
      "empty sig ;   \n"
      "  T3 ;gvLQQedfedffrwawrhh");
  ASSERT_EQ(entries.size(), 5u);
  EXPECT_EQ(entries[0].name, "L(3,1) : #1");
  EXPECT_EQ(entries[0].isosig, "cMcabbgaj");
  EXPECT_EQ(entries[1].name, "weird ; name");
  EXPECT_EQ(entries[1].isosig, "cPcbbbaaa");
  EXPECT_NE(entries[2].error.find("line 5"), std::string::npos);
  EXPECT_FALSE(entries[3].error.empty());
  EXPECT_EQ(entries[4].name, "T3");
  EXPECT_TRUE(entries[4].error.empty());
}

TEST(Report, CsvRoundTrip) {
  const Report rep = sample_report();
  const std::string csv = to_csv(rep.records);
  EXPECT_EQ(csv.substr(0, csv.find('\r')), "name,isosig,r,tv_float,tv_exact,genus_lb,h1,min_gens,flagged,notes");
  EXPECT_NE(csv.find("\"name, with \"\"quotes\"\"\""), std::string::npos);
  EXPECT_EQ(records_from_csv(csv), rep.records);
}

TEST(Report, JsonRoundTrip) {
  const Report rep = sample_report();
  const Report back = report_from_json(to_json(rep));
  EXPECT_EQ(back.provenance, rep.provenance);
  EXPECT_EQ(back.records, rep.records);
  EXPECT_EQ(back.summary(), rep.summary());
  const auto j = nlohmann::json::parse(to_json(rep));
  EXPECT_EQ(j["summary"]["total"], 4);
  EXPECT_EQ(j["summary"]["failed"], 1);
}

TEST(Report, SummaryCountsMatchRecords) {
  const Report rep = sample_report();
  const Summary s = rep.summary();
  EXPECT_EQ(s.total, rep.records.size());
  EXPECT_EQ(s.failed, 1u);
  EXPECT_EQ(s.flagged, 0u);
  EXPECT_EQ(s.excluded, 2u);  // L(3,1) and S3
}

TEST(Report, TextUsesTwelveSignificantDigits) {
  const std::string text = to_text(sample_report());
  EXPECT_NE(text.find("tv=0.138196601125"), std::string::npos) << text;
  EXPECT_NE(text.find("tv=16 "), std::string::npos) << text;
  EXPECT_NE(text.find("FAILED"), std::string::npos);
  EXPECT_EQ(format_decimal(15.999999999999984), "16");
  EXPECT_EQ(format_decimal(13.105572809000083), "13.105572809");
}

TEST(Report, MalformedInputsAreRejected) {
  EXPECT_THROW(records_from_csv("a,b\r\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv_rows("\"open"), std::invalid_argument);
  EXPECT_THROW(report_from_json("{}"), std::exception);
}
