#include <catch_amalgamated.hpp>

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cecp/ingest.hpp"

using cecp::ErrorKind;
using namespace std::chrono;

namespace {

std::vector<cecp::RawSeries> load(const std::string& text, cecp::PanelSource src = {}) {
  std::istringstream in(text);
  return cecp::load_panel(in, src);
}

cecp::Error error_of(const std::string& text, cecp::PanelSource src = {}) {
  try {
    load(text, src);
  } catch (const cecp::Error& e) {
    return e;
  }
  FAIL("expected cecp::Error");
  return cecp::Error(ErrorKind::invalid_input, "unreachable");
}

std::vector<double> values(const cecp::RawSeries& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST_CASE("wide layout: one column, three rows") {
  const auto panel = load("date,GBP_3M\n2001-01-02,5.1\n2001-01-03,5.2\n2001-01-04,5.0\n");
  REQUIRE(panel.size() == 1);
  CHECK(panel[0].label() == "GBP_3M");
  CHECK(values(panel[0]) == std::vector<double>{5.1, 5.2, 5.0});
  REQUIRE(panel[0].timestamps());
  CHECK(panel[0].timestamps()->front() == sys_days{year{2001} / 1 / 2});
}

TEST_CASE("long layout: two labels by five dates") {
  std::string text = "date,label,value\n";
  for (int d = 1; d <= 5; ++d) {
    text += "2010-03-0" + std::to_string(d) + ",EUR_1M," + std::to_string(d) + "\n";
    text += "2010-03-0" + std::to_string(d) + ",CHF_1M," + std::to_string(10 * d) + "\n";
  }
  cecp::PanelSource src;
  src.layout = cecp::PanelLayout::long_format;
  const auto panel = load(text, src);
  REQUIRE(panel.size() == 2);
  CHECK(panel[0].label() == "EUR_1M");
  CHECK(panel[1].label() == "CHF_1M");
  CHECK(values(panel[0]) == std::vector<double>{1, 2, 3, 4, 5});
  CHECK(values(panel[1]) == std::vector<double>{10, 20, 30, 40, 50});
}

TEST_CASE("drop policy removes the missing observation") {
  const std::string text = "date,GBP_3M\n2001-01-02,1\n2001-01-03,2\n2001-01-04,NA\n2001-01-05,4\n2001-01-08,5\n";
  const auto panel = load(text);
  REQUIRE(panel.size() == 1);
  CHECK(values(panel[0]) == std::vector<double>{1, 2, 4, 5});
  const auto& ts = *panel[0].timestamps();
  REQUIRE(ts.size() == 4);
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
  CHECK(ts[2] == sys_days{year{2001} / 1 / 5});
}

TEST_CASE("missing markers") {
  const auto panel = load("date,a\n2001-01-01,\n2001-01-02,NaN\n2001-01-03,nan\n2001-01-04,NA\n2001-01-05,7\n");
  CHECK(values(panel[0]) == std::vector<double>{7});
}

TEST_CASE("forward fill repeats the last value and refuses a leading gap") {
  cecp::PanelSource src;
  src.policy = cecp::MissingPolicy::forward_fill;
  const auto panel = load("date,a,b\n2001-01-01,1,5\n2001-01-02,,6\n2001-01-03,3,NA\n", src);
  CHECK(values(panel[0]) == std::vector<double>{1, 1, 3});
  CHECK(values(panel[1]) == std::vector<double>{5, 6, 6});
  CHECK(panel[0].timestamps()->size() == 3);

  const auto e = error_of("date,a\n2001-01-01,NA\n2001-01-02,2\n", src);
  CHECK(e.kind() == ErrorKind::parse_error);
  CHECK(std::string(e.what()).find("'a'") != std::string::npos);
}

TEST_CASE("rows are sorted by date") {
  const auto panel = load("date,a\n2001-01-03,3\n2001-01-01,1\n2001-01-02,2\n");
  CHECK(values(panel[0]) == std::vector<double>{1, 2, 3});
}

TEST_CASE("differencing shortens the series by one") {
  cecp::PanelSource src;
  src.difference = true;
  const auto panel = load("date,a\n2001-01-01,1\n2001-01-02,4\n2001-01-03,2\n", src);
  CHECK(values(panel[0]) == std::vector<double>{3, -2});
  CHECK(panel[0].timestamps()->front() == sys_days{year{2001} / 1 / 2});
  CHECK(error_of("date,a\n2001-01-01,1\n", src).kind() == ErrorKind::insufficient_data);
}

TEST_CASE("parse errors carry the line number") {
  const auto bad_value = error_of("date,a\n2001-01-01,1\n2001-01-02,abc\n");
  CHECK(bad_value.kind() == ErrorKind::parse_error);
  CHECK(std::string(bad_value.what()).find(":3:") != std::string::npos);

  const auto bad_date = error_of("date,a\n2001-13-01,1\n");
  CHECK(bad_date.kind() == ErrorKind::parse_error);
  CHECK(std::string(bad_date.what()).find(":2:") != std::string::npos);

  CHECK(error_of("date,a\n2001-01-01,1,2\n").kind() == ErrorKind::parse_error);
  CHECK(error_of("date,a\n2001-01-01,inf\n").kind() == ErrorKind::parse_error);
  CHECK(error_of("").kind() == ErrorKind::parse_error);
  CHECK(error_of("date,a,a\n2001-01-01,1,2\n").kind() == ErrorKind::parse_error);
  cecp::PanelSource longsrc;
  longsrc.layout = cecp::PanelLayout::long_format;
  CHECK(error_of("date,label\n", longsrc).kind() == ErrorKind::parse_error);
}

TEST_CASE("duplicate dates and empty series") {
  CHECK(error_of("date,a\n2001-01-01,1\n2001-01-01,2\n").kind() == ErrorKind::duplicate_date);
  cecp::PanelSource longsrc;
  longsrc.layout = cecp::PanelLayout::long_format;
  CHECK(error_of("d,l,v\n2001-01-01,x,1\n2001-01-01,x,2\n", longsrc).kind() == ErrorKind::duplicate_date);
  CHECK_NOTHROW(load("d,l,v\n2001-01-01,x,1\n2001-01-01,y,2\n", longsrc));

  const auto empty = error_of("date,a,b\n2001-01-01,1,NA\n2001-01-02,2,\n");
  CHECK(empty.kind() == ErrorKind::insufficient_data);
  CHECK(std::string(empty.what()).find("'b'") != std::string::npos);
}

TEST_CASE("configurable date format and delimiter") {
  cecp::PanelSource src;
  src.date_format = "%d/%m/%Y";
  src.delimiter = ';';
  const auto panel = load("date;JPY_12M\r\n02/01/2001;0.5\r\n03/01/2001;0.25\r\n", src);
  CHECK(values(panel[0]) == std::vector<double>{0.5, 0.25});
  CHECK(panel[0].timestamps()->back() == sys_days{year{2001} / 1 / 3});
  CHECK(cecp::format_date(panel[0].timestamps()->back(), src.date_format) == "03/01/2001");
}

TEST_CASE("missing file is an i/o error") {
  cecp::PanelSource src;
  src.path = "/nonexistent/panel.csv";
  CHECK_THROWS_AS(cecp::load_panel(src), cecp::Error);
}

TEST_CASE("export then reload reproduces the panel exactly") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> val(0.0, 1e3);
  std::uniform_int_distribution<int> gap(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cecp::RawSeries> panel;
    for (int s = 0; s < 3; ++s) {
      std::vector<double> v;
      std::vector<cecp::Date> d;
      cecp::Date day = sys_days{year{2001} / 1 / 2} + days{gap(rng)};
      for (int i = 0; i < 50 + 10 * s; ++i) {
        v.push_back(val(rng) * std::pow(10.0, (i % 7) - 3));
        d.push_back(day);
        day += days{gap(rng)};
      }
      panel.emplace_back(std::move(v), "s" + std::to_string(s), std::move(d));
    }
    std::ostringstream out;
    cecp::write_wide(out, panel);
    const auto reloaded = load(out.str());
    REQUIRE(reloaded == panel);
  }
}
