#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ivm/csv.hpp"
#include "ivm/errors.hpp"
#include "ivm/experiments.hpp"
#include "ivm/svg.hpp"
#include "test_support.hpp"

namespace ivm {
namespace {

ExperimentConfig small(std::size_t d = 3, std::size_t j = 2) {
  ExperimentConfig c;
  c.d = d;
  c.j = j;
  c.n_subspaces = 300;
  c.n_points = 300;
  c.steps = 4;
  return c;
}

TEST(Csv, RoundTripAndQuoting) {
  CsvTable t;
  t.header = {"name", "value", "note"};
  t.add_row({"plain", format_real(0.1), ""});
  t.add_row({"a,b", format_real(-1e-300), "say \"hi\""});
  t.add_row({"line\nbreak", format_int(-7), " spaced "});
  t.footer = {"slope=1"};
  const std::string text = to_csv(t);
  EXPECT_NE(text.find("\"a,b\""), std::string::npos);
  EXPECT_NE(text.find("\"say \"\"hi\"\"\""), std::string::npos);
  EXPECT_NE(text.find("\r\n"), std::string::npos);
  const CsvTable back = parse_csv(text);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.footer, t.footer);
  EXPECT_EQ(back.number(0, "value"), 0.1);
  EXPECT_THROW(t.add_row({"too", "short"}), ConfigError);
}

TEST(Csv, HeaderOnly) {
  CsvTable t;
  t.header = {"x", "y"};
  EXPECT_EQ(to_csv(t), "x,y\r\n");
  EXPECT_TRUE(parse_csv(to_csv(t)).rows.empty());
}

TEST(Csv, SeventeenDigits) {
  auto s = testing::gen(60);
  for (int i = 0; i < 1000; ++i) {
    const double x = s.gaussian() * std::pow(10.0, 40.0 * s.uniform() - 20.0);
    EXPECT_EQ(std::stod(format_real(x)), x);
  }
  EXPECT_EQ(format_real(0.5).find(','), std::string::npos);
}

TEST(Csv, WriteErrorsNamePath) {
  CsvTable t;
  t.header = {"x"};
  try {
    write_csv(t, "/nonexistent-dir/out.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
}

// Minimal well-formedness check: balanced tags, single root, declared size.
bool balanced_xml(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  int roots = 0;
  while ((pos = s.find('<', pos)) != std::string::npos) {
    const std::size_t end = s.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = s.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '?' || tag[0] == '!') continue;
    if (tag.back() == '/') {
      if (stack.empty()) ++roots;
      continue;
    }
    const std::string name = tag.substr(tag[0] == '/' ? 1 : 0, tag.find_first_of(" \n\t") - (tag[0] == '/' ? 1 : 0));
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      if (stack.empty()) ++roots;
      stack.push_back(name);
    }
  }
  return stack.empty() && roots == 1;
}

TEST(Svg, LogLogPlotIsWellFormed) {
  const CsvTable t = run_thm1(small());
  const std::vector<std::string> ys{"delta_hat", "claimed_bound"};
  const std::string svg = render_svg(t, "L_i", ys, true, "decay <&>");
  EXPECT_TRUE(balanced_xml(svg));
  EXPECT_NE(svg.find("width=\"800\""), std::string::npos);
  EXPECT_NE(svg.find("height=\"600\""), std::string::npos);
  EXPECT_NE(svg.find("&lt;&amp;&gt;"), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 0, true);
  std::size_t polylines = 0;
  for (std::size_t p = 0; (p = svg.find("<polyline", p)) != std::string::npos; ++p) ++polylines;
  EXPECT_EQ(polylines, 2u);

  const auto path = std::filesystem::temp_directory_path() / "ivm_thm1.svg";
  write_svg(t, "L_i", ys, path, true);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(balanced_xml(ss.str()));
  std::filesystem::remove(path);
}

TEST(Config, Validation) {
  ExperimentConfig c = small();
  EXPECT_NO_THROW(c.validate());
  c.d = 9;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small();
  c.j = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small();
  c.steps = 13;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small();
  c.n_subspaces = 100000;
  c.n_points = 10000;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small(3, 3);
  EXPECT_NO_THROW(run_thm1(c));
  EXPECT_THROW(run_thm2(c), ConfigError);
  EXPECT_THROW(run_thm3(c), ConfigError);
}

TEST(FitLogLog, RecoversExactPowerLaw) {
  const std::vector<double> x{1, 2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  const LineFit f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, -1.5, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(f.slope_se, 0.0, 1e-12);
}

TEST(Thm1, ColumnsAndHardChecks) {
  ExperimentConfig c = small();
  c.steps = 6;
  const CsvTable t = run_thm1(c);
  ASSERT_EQ(t.rows.size(), 6u);
  const double x0 = std::sqrt(0.5), rk = std::sqrt(2.0);
  for (std::size_t i = 0; i < 6; ++i) {
    const double l = t.number(i, "L_i");
    EXPECT_EQ(l, 2.0 * std::ldexp(1.0, int(i)));
    EXPECT_NEAR(t.number(i, "claimed_bound"), 4.0 / l, 1e-12);
    EXPECT_NEAR(t.number(i, "drift_floor"), l - x0 - rk, 1e-12);
    EXPECT_GE(t.number(i, "d_hausdorff"), t.number(i, "drift_floor") - 1e-9);
  }
  EXPECT_FALSE(t.footer.empty());
}

TEST(Thm1, DeterministicAcrossRunsAndWorkers) {
  ExperimentConfig c = small(4, 3);
  c.seed = 42;
  c.n_subspaces = 40;
  c.n_points = 400;
  c.steps = 3;
  const std::string a = to_csv(run_thm1(c));
  EXPECT_EQ(a, to_csv(run_thm1(c)));
  c.workers = 8;
  EXPECT_EQ(a, to_csv(run_thm1(c)));
}

TEST(Thm2, ScheduleAndBlocks) {
  const CsvTable t = run_thm2(small());
  ASSERT_EQ(t.rows.size(), 4u);
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(t.number(m, "claimed_step"), std::ldexp(1.0, -int(m) - 1));
    EXPECT_NEAR(t.number(m, "paper_block") / t.number(m, "corrected_block"), 2.0, 1e-12);
    EXPECT_GE(t.number(m, "measured_block"), t.number(m, "corrected_block") * (1 - 1e-6) - 1e-12);
    EXPECT_EQ(t.number(m, "good_H_fraction"), 1.0);
  }
}

TEST(Thm2, HigherDimensionalPlaneUsesMonteCarloBlocks) {
  ExperimentConfig c = small(4, 3);
  c.steps = 2;
  c.n_subspaces = 30;
  c.n_points = 4000;
  const CsvTable t = run_thm2(c);
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_GT(t.number(0, "measured_se"), 0.0);
}

TEST(Thm3, A0AndFloor) {
  ExperimentConfig c = small();
  c.n_subspaces = 2000;
  const CsvTable t = run_thm3(c);
  ASSERT_EQ(t.rows.size(), 4u);
  // a0 is the estimated V_2 of the unit square: planar area 1.
  double a0 = 0.0, a0_se = 0.0;
  for (const auto& f : t.footer)
    if (f.rfind("a0=", 0) == 0) {
      std::istringstream in(f.substr(3));
      in >> a0;
      a0_se = std::stod(f.substr(f.find("a0_se=") + 6));
    }
  EXPECT_LE(std::abs(a0 - 1.0), 3.0 * a0_se);
  double sum = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_NEAR(t.number(m, "claimed_step"), a0 / 4.0 * std::ldexp(1.0, -int(m) - 1), 1e-15);
    EXPECT_EQ(t.number(m, "claimed_floor"), 0.75 * a0);
    EXPECT_LE(t.number(m, "se"), 0.05 * t.number(m, "delta_to_empty_hat"));
    sum += t.number(m, "claimed_step");
  }
  EXPECT_LE(sum, a0 / 4.0 + 1e-12);
  c.a0 = 1.0;
  EXPECT_NEAR(run_thm3(c).number(0, "claimed_step"), 0.125, 1e-15);
}

TEST(Lemma, StatisticsAndDeterminism) {
  ExperimentConfig c = small(4, 2);
  c.n_subspaces = 10000;
  const LemmaReport r = run_lemma(c);
  EXPECT_EQ(r.summary.near_singular, 0u);
  EXPECT_GE(r.summary.mean_proj_e1_sq, 0.48);
  EXPECT_LE(r.summary.mean_proj_e1_sq, 0.52);
  EXPECT_EQ(r.summary.target_proj_e1_sq, 0.5);
  EXPECT_EQ(r.table.rows.size(), 10000u);
  c.workers = 8;
  EXPECT_EQ(to_csv(run_lemma(c).table), to_csv(r.table));
}

TEST(Validation, PassesAndRepeats) {
  ExperimentConfig c;
  c.seed = 3;
  const ValidationReport a = run_validation(c);
  c.workers = 4;
  const ValidationReport b = run_validation(c);
  EXPECT_EQ(to_csv(a.table), to_csv(b.table));
  EXPECT_EQ(a.all_passed, b.all_passed);
  EXPECT_EQ(a.table.cell(a.table.rows.size() - 1, "pass"), "pass");
}

TEST(Parsing, PlaneAndAxis) {
  const Subspace p = parse_plane("e1e2", 3);
  EXPECT_EQ(p.basis(), Subspace::leading(3, 2).basis());
  EXPECT_EQ(parse_plane("random:7", 4).basis(), parse_plane("random:7", 4).basis());
  EXPECT_THROW(parse_plane("random:", 3), ConfigError);
  EXPECT_THROW(parse_plane("e1e3", 3), ConfigError);
  EXPECT_EQ(parse_axis("e2", 3), (Vector{0.0, 1.0, 0.0}));
  const Vector v = parse_axis("3,4", 2);
  EXPECT_NEAR(v[0], 0.6, 1e-15);
  EXPECT_NEAR(v[1], 0.8, 1e-15);
  EXPECT_THROW(parse_axis("e4", 3), ConfigError);
  EXPECT_THROW(parse_axis("1,2", 3), ConfigError);
  EXPECT_THROW(parse_axis("0,0", 2), ConfigError);
}

TEST(Fibers, IdenticalBodiesGiveZeroProfile) {
  const VPolytope sq = testing::square();
  const FiberReport r = run_fibers(sq, sq, parse_plane("e1e2", 2), Vector{1.0, 0.0}, 100);
  EXPECT_EQ(r.table.rows.size(), 100u);
  EXPECT_EQ(r.profile.diff_measure, 0.0);
  EXPECT_THROW(run_fibers(sq, testing::square(0, 2), parse_plane("e1e2", 2), Vector{1.0, 0.0}, 10),
               ConfigError);
}

TEST(Fibers, NeedleOutOfTubeMassAndGridConvergence) {
  const VPolytope plus(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.49}, {0.5, 0.51}, {8.5, 0.49}, {8.5, 0.51}});
  const Subspace h = parse_plane("e1e2", 2);
  const FiberReport coarse = run_fibers(plus, testing::square(), h, Vector{1.0, 0.0}, 100);
  const FiberReport fine = run_fibers(plus, testing::square(), h, Vector{1.0, 0.0}, 1000);
  EXPECT_GT(coarse.profile.diff_outside_tube, 0.0);
  EXPECT_LT(std::abs(fine.profile.diff_measure - coarse.profile.diff_measure),
            0.05 * fine.profile.diff_measure);
  EXPECT_LE(fine.profile.max_diff, 8.0 + 2e-9);
}

}  // namespace
}  // namespace ivm
