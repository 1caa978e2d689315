#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dualrisk/repro.hpp"

using namespace dualrisk;

namespace {

std::string table(const std::string& name) {
  for (const auto& f : repro_tables())
    if (f.name == name) return f.table.render();
  ADD_FAILURE() << "no table " << name;
  return {};
}

bool has_row(const std::string& text, const std::string& prefix, const std::string& exact) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0 && line.find("," + exact + ",") != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Csv, QuotesOnlyWhenNeeded) {
  CsvTable t({"a", "b"});
  t.add({"plain", "x,y"});
  t.add({"say \"hi\"", ""});
  EXPECT_EQ(t.render(), "a,b\nplain,\"x,y\"\n\"say \"\"hi\"\"\",\n");
  EXPECT_THROW(t.add({"one"}), std::exception);
}

TEST(Csv, ExactRowsCarryADecimal) {
  CsvTable t({"item", "subject", "exact", "decimal"});
  t.add_exact("v", "s", Rational(1) / 3);
  EXPECT_EQ(t.rows().back()[2], "1/3");
  EXPECT_EQ(t.rows().back()[3].substr(0, 6), "0.3333");
}

TEST(Repro, FourTablesWithTheWorkedNumbers) {
  const auto files = repro_tables();
  ASSERT_EQ(files.size(), 4u);
  const std::string div = table("divergence.csv");
  EXPECT_TRUE(has_row(div, "dual_moment_2,A", "25/12"));
  EXPECT_TRUE(has_row(div, "dual_moment_2,B", "23/12"));
  const std::string app = table("apportionment.csv");
  EXPECT_NE(app.find("[5/6;7/3;23/6]"), std::string::npos);
  EXPECT_NE(app.find("[5/4;5/4;19/4;27/4]"), std::string::npos);
  EXPECT_NE(app.find("0;1;-4;6;-4;1;0"), std::string::npos);
  const std::string port = table("portfolio.csv");
  EXPECT_NE(port.find("[2;2;4;8]"), std::string::npos);
  EXPECT_NE(port.find("[4;4;6;6;10;10;12;12]"), std::string::npos);
  const std::string sp = table("self_protection.csv");
  EXPECT_NE(sp.find("-3/8"), std::string::npos);
  EXPECT_NE(sp.find("more effort"), std::string::npos);
  EXPECT_NE(sp.find("less effort"), std::string::npos);
}

TEST(Repro, DeterministicAndWritten) {
  const auto a = repro_tables(), b = repro_tables();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].table.render(), b[i].table.render());
  const auto dir = std::filesystem::temp_directory_path() / "dualrisk_repro_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_repro(dir);
  ASSERT_EQ(paths.size(), 4u);
  std::ifstream in(paths.front());
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), a.front().table.render());
  std::filesystem::remove_all(dir);
}
