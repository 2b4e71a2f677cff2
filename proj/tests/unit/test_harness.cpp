#include "doctest.h"
#include "ogaprox/harness/config.hpp"
#include "ogaprox/harness/dataset.hpp"
#include "ogaprox/harness/experiments.hpp"
#include "ogaprox/harness/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

using namespace ogaprox;
namespace fs = std::filesystem;

namespace {

const fs::path kData = OGAPROX_TEST_DATA_DIR;

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("ogaprox_test_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("datasets load with the documented shapes") {
  const Dataset breast = load_dataset(DatasetName::BreastCancer, kData / default_file_name(DatasetName::BreastCancer));
  CHECK(breast.rows() == 683);
  CHECK(breast.dropped_rows == 16);
  CHECK(breast.features.cols() == 9);
  const Dataset heart = load_dataset(DatasetName::HeartDisease, kData / default_file_name(DatasetName::HeartDisease));
  CHECK(heart.rows() == 270);
  CHECK(heart.features.cols() == 13);
  const Dataset sonar = load_dataset(DatasetName::Sonar, kData / default_file_name(DatasetName::Sonar));
  CHECK(sonar.rows() == 208);
  CHECK(sonar.features.cols() == 60);
  const Dataset iono = load_dataset(DatasetName::Ionosphere, kData / default_file_name(DatasetName::Ionosphere));
  CHECK(iono.rows() == 351);

  for (const Dataset* d : {&breast, &heart, &sonar, &iono}) {
    for (Index j = 0; j < d->features.cols(); ++j) {
      const auto col = d->features.col(j);
      const double mean = col.mean();
      CHECK(std::abs(mean) <= 1e-10);
      CHECK(std::abs(std::sqrt((col.array() - mean).square().mean()) - 1.0) <= 1e-10);
    }
    CHECK((d->labels.array().abs() == 1.0).all());
  }
  CHECK(iono.features.cols() == 33);
  CHECK(iono.warnings.empty());
}

TEST_CASE("heart groupings") {
  const Dataset heart = load_dataset(DatasetName::HeartDisease, kData / default_file_name(DatasetName::HeartDisease));
  const auto sex = heart_groups(heart, Grouping::Sex);
  const auto age = heart_groups(heart, Grouping::Age);
  for (Index i = 0; i < heart.rows(); ++i) {
    CHECK(sex[static_cast<std::size_t>(i)] == static_cast<Index>(heart.raw(i, 1)));
    const double a = heart.raw(i, 0);
    CHECK(age[static_cast<std::size_t>(i)] == (a < 50 ? 0 : (a < 60 ? 1 : 2)));
  }
  CHECK(group_names(Grouping::Age).size() == 3);
  CHECK(parse_grouping("sex") == Grouping::Sex);
  CHECK_THROWS_AS(parse_grouping("height"), InvalidArgument);
  const Dataset sonar = load_dataset(DatasetName::Sonar, kData / default_file_name(DatasetName::Sonar));
  CHECK_THROWS_AS(heart_groups(sonar, Grouping::Sex), InvalidArgument);
}

TEST_CASE("malformed datasets") {
  CHECK_THROWS_AS(parse_dataset_name("iris"), UnknownDataset);
  const fs::path bad = write_temp("bad.csv", "1,2,3,4,5,6,7,8,9,10,11,12,13,1\n1,2,x,4,5,6,7,8,9,10,11,12,13,2\n");
  try {
    load_dataset(DatasetName::HeartDisease, bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 3") != std::string::npos);
  }
  CHECK_THROWS(load_dataset(DatasetName::HeartDisease, kData / "missing.csv"));
}

TEST_CASE("constant columns are dropped with a warning") {
  std::string text;
  for (int i = 0; i < 6; ++i) {
    text += std::to_string(40 + i) + ",1";
    for (int j = 2; j < 13; ++j) text += "," + std::to_string(i * j + j);
    text += i % 2 ? ",1\n" : ",2\n";
  }
  const Dataset d = load_dataset(DatasetName::HeartDisease, write_temp("heart_const.csv", text));
  CHECK(d.features.cols() == 12);
  CHECK(std::find(d.feature_columns.begin(), d.feature_columns.end(), 1) == d.feature_columns.end());
  CHECK(d.warnings.size() == 1);
}

TEST_CASE("random splits partition the rows") {
  Philox4x32 rng(40);
  const Split s = random_split(101, 0.8, rng);
  CHECK(s.train.size() == 81);
  CHECK(s.test.size() == 20);
  std::vector<Index> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  std::vector<Index> expect(101);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(all == expect);
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));
  Philox4x32 again(40);
  CHECK(random_split(101, 0.8, again).train == s.train);
  CHECK_THROWS_AS(random_split(10, 1.0, rng), InvalidArgument);
}

TEST_CASE("trimmed mean and checkpoints") {
  CHECK(trimmed_mean({1.0, 100.0, 2.0, 3.0, -50.0}) == doctest::Approx(2.0));
  CHECK(trimmed_mean({1.0, 3.0}) == doctest::Approx(2.0));
  const auto cps = log_checkpoints(10000);
  CHECK(std::is_sorted(cps.begin(), cps.end()));
  CHECK(std::adjacent_find(cps.begin(), cps.end()) == cps.end());
  CHECK(cps.front() == 1);
  CHECK(cps.back() == 10000);
  CHECK(std::count_if(cps.begin(), cps.end(), [](Index k) { return k >= 100 && k <= 1000; }) >= 20);
}

TEST_CASE("reports") {
  Report empty;
  CHECK(to_csv(empty) == "k,gap,dist_x,dist_y,tsa,theta,tau,sigma\n");

  Report r;
  r.label = "demo";
  r.config["d"] = "4";
  r.summary["d0"] = 1.5;
  r.notes.push_back("note");
  MetricRecord a;
  a.k = 1;
  a.gap = 0.25;
  a.theta = 1.0;
  a.tau = 0.5;
  a.sigma = 0.125;
  a.extra["bound"] = 3.0;
  MetricRecord b;
  b.k = 10;
  b.tsa = 87.5;
  b.dist_y = std::numeric_limits<double>::infinity();
  r.records = {a, b};
  const std::string csv = to_csv(r);
  CHECK(csv.find("\n1,0.25,,,,1,0.5,0.125\n") != std::string::npos);

  const Report back = report_from_json(to_json(r));
  CHECK(back.label == "demo");
  CHECK(back.config == r.config);
  CHECK(back.summary == r.summary);
  CHECK(back.notes == r.notes);
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[0].gap == a.gap);
  CHECK(back.records[0].extra == a.extra);
  CHECK_FALSE(back.records[0].tsa.has_value());
  CHECK(back.records[1].tsa == b.tsa);
  CHECK(back.records[1].dist_y == b.dist_y);
  CHECK(to_json(back) == to_json(r));

  const fs::path dir = fs::temp_directory_path() / "ogaprox_test_reports";
  fs::create_directories(dir);
  emit_report(r, ReportFormat::Csv, dir / "demo.csv");
  std::ifstream in(dir / "demo.csv");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == csv);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::Json, dir / "no_such_dir" / "demo.json"), Error);
  CHECK_FALSE(version_string().empty());
}

TEST_CASE("config files") {
  const Config c = Config::parse("# comment\n\nd = 12\n  n=20  \nnu = 0.3\nd = 14\ncheckpoints = 1, 5,10\n");
  CHECK(c.get_int("d", 0) == 14);
  CHECK(c.get_int("n", 0) == 20);
  CHECK(c.get_double("nu", 0.0) == 0.3);
  CHECK(c.get_double("mu", 2.0) == 2.0);
  CHECK_FALSE(c.get_optional_double("mu").has_value());
  CHECK(c.get_int_list("checkpoints", {}) == std::vector<Index>{1, 5, 10});
  CHECK_THROWS_AS(c.require_known({"d", "n"}), InvalidArgument);
  CHECK_NOTHROW(c.require_known({"d", "n", "nu", "checkpoints"}));
  CHECK_THROWS_AS(Config::parse("just a line"), InvalidArgument);
  CHECK_THROWS_AS(Config::parse("d = abc").get_int("d", 0), InvalidArgument);
  const Config loaded = Config::load(write_temp("cfg.txt", "runs = 3\n"));
  CHECK(loaded.get_int("runs", 0) == 3);
}

TEST_CASE("toy runs are deterministic") {
  Config cfg = Config::parse("d = 6\nn = 9\niterations = 200\n");
  const ExperimentResult a = run_toy(cfg, 5), b = run_toy(cfg, 5);
  REQUIRE(a.reports.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    // Wall-clock time is the only field allowed to differ.
    Report ra = a.reports[i], rb = b.reports[i];
    ra.summary.erase("seconds");
    rb.summary.erase("seconds");
    CHECK(to_json(ra) == to_json(rb));
    CHECK(to_csv(ra) == to_csv(rb));
  }
  const Report& r0 = a.reports[0];
  for (std::size_t i = 1; i < r0.records.size(); ++i) CHECK(r0.records[i].k > r0.records[i - 1].k);
  for (const MetricRecord& m : r0.records) {
    CHECK(*m.gap > 0.0);
    CHECK(*m.gap <= m.extra.at("gap_bound") + 1e-9);
  }
  for (const MetricRecord& m : a.reports[1].records) CHECK(*m.dist_y <= m.extra.at("dist_y_bound") + 1e-9);
  CHECK(run_toy(cfg, 6).reports[0].records.back().gap != r0.records.back().gap);
}

TEST_CASE("fairness with a single group coincides with the unconstrained run") {
  Config cfg = Config::parse("grouping = none\nruns = 1\ncheckpoints = 10, 20\n");
  cfg.set("data_dir", kData.string());
  const ExperimentResult r = run_fairness(cfg, 3);
  REQUIRE(r.reports.size() == 2);
  REQUIRE(r.reports[0].records.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.reports[0].records[i].tsa == r.reports[1].records[i].tsa);
    CHECK(*r.reports[0].records[i].tsa >= 0.0);
    CHECK(*r.reports[0].records[i].tsa <= 100.0);
  }
}

TEST_CASE("validation suite") {
  Config cfg = Config::parse("trials = 200\n");
  const auto reports = run_validation(cfg, 1);
  CHECK(reports.size() >= 5);
  for (const ValidationReport& v : reports) {
    INFO(v.problem);
    CHECK(v.passed());
  }
}
