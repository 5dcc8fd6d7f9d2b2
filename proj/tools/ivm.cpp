#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef IVM_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "ivm/bodies.hpp"
#include "ivm/csv.hpp"
#include "ivm/errors.hpp"
#include "ivm/experiments.hpp"
#include "ivm/metrics.hpp"
#include "ivm/svg.hpp"

namespace {

enum ExitCode { kOk = 0, kAssertion = 2, kConfig = 3, kIo = 4 };

struct Sampling {
  std::size_t subspaces = 2000;
  std::size_t points = 2000;
  std::uint64_t seed = 0;
  std::string mode = "auto";
  unsigned workers = 1;
};

ivm::SamplingMode parse_mode(const std::string& s) {
  if (s == "auto") return ivm::SamplingMode::automatic;
  if (s == "mc") return ivm::SamplingMode::monte_carlo;
  if (s == "exact") return ivm::SamplingMode::exact;
  throw ivm::ConfigError("unknown mode '" + s + "'");
}

void add_sampling(CLI::App* app, Sampling& s) {
  app->add_option("--subspaces", s.subspaces, "Haar subspace samples")->check(CLI::PositiveNumber);
  app->add_option("--points", s.points, "MC points per subspace")->check(CLI::PositiveNumber);
  app->add_option("--seed", s.seed, "RNG seed");
  app->add_option("--mode", s.mode, "inner volume mode")
      ->check(CLI::IsMember({"auto", "mc", "exact"}));
  app->add_option("--workers", s.workers, "worker threads")->check(CLI::PositiveNumber);
}

ivm::SamplingPlan to_plan(const Sampling& s) {
  ivm::SamplingPlan p;
  p.n_subspaces = s.subspaces;
  p.n_points = s.points;
  p.seed = s.seed;
  p.mode = parse_mode(s.mode);
  p.workers = s.workers;
  return p;
}

void print_estimate(const char* name, const ivm::MetricEstimate& e) {
  const bool exact_inner = e.exact || e.n_points_per_subspace == 0;
  std::printf("%s = %.17g\nstd_error = %.17g\nn_subspaces = %zu\nexact_inner = %s\n", name,
              e.value, e.std_error, e.n_subspaces, exact_inner ? "true" : "false");
}

void check_dims(const ivm::VPolytope& body, std::size_t d, const std::string& what) {
  if (d != 0 && body.ambient_dim() != d)
    throw ivm::ConfigError(what + " has dimension " + std::to_string(body.ambient_dim()) +
                           ", expected " + std::to_string(d));
}

void emit(const ivm::CsvTable& table, const std::string& out) {
  ivm::write_csv(table, out);
  for (const auto& line : table.footer) std::cout << "# " << line << '\n';
  std::cout << "wrote " << table.rows.size() << " rows to " << out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic volume metrics on convex polytopes"};
  app.require_subcommand(1);

  // metric
  Sampling metric_s;
  std::string body_a, body_b;
  bool empty_b = false;
  std::size_t d = 0, j = 2;
  auto* metric = app.add_subcommand("metric", "delta_j between two bodies");
  metric->add_option("--body-a", body_a, "body file")->required();
  auto* opt_b = metric->add_option("--body-b", body_b, "body file");
  auto* opt_empty = metric->add_flag("--empty", empty_b, "second operand is the empty set");
  opt_b->excludes(opt_empty);
  metric->add_option("-d", d, "ambient dimension (checked against the files)");
  metric->add_option("-j", j, "projection dimension")->required();
  add_sampling(metric, metric_s);

  // intrinsic
  Sampling intr_s;
  std::string body;
  auto* intrinsic = app.add_subcommand("intrinsic", "intrinsic volume V_j via Kubota");
  intrinsic->add_option("--body", body, "body file")->required();
  intrinsic->add_option("-j", j, "projection dimension")->required();
  add_sampling(intrinsic, intr_s);

  // hausdorff
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance");
  haus->add_option("--body-a", body_a, "body file")->required();
  haus->add_option("--body-b", body_b, "body file")->required();

  // thm1 / thm2 / thm3
  ivm::ExperimentConfig cfg;
  std::string out, svg, a0_text = "auto", mode_text = "auto";
  auto add_runner = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-d", cfg.d, "ambient dimension")->required();
    sub->add_option("-j", cfg.j, "projection dimension")->required();
    sub->add_option("--steps", cfg.steps, "sequence length")->required();
    sub->add_option("--l0", cfg.l0, "initial needle length")->required();
    sub->add_option("--seed", cfg.seed, "RNG seed")->required();
    sub->add_option("--out", out, "CSV output")->required();
    sub->add_option("--svg", svg, "log-log SVG plot");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--subspaces", cfg.n_subspaces, "Haar subspace samples");
    sub->add_option("--points", cfg.n_points, "MC points per subspace");
    sub->add_option("--mode", mode_text, "inner volume mode")
        ->check(CLI::IsMember({"auto", "mc", "exact"}));
    return sub;
  };
  auto* thm1 = add_runner("thm1", "unboundedness harness (prism needles)");
  auto* thm2 = add_runner("thm2", "dyadic Cauchy sequence of spindles");
  auto* thm3 = add_runner("thm3", "Cauchy sequence scaled by a0 = delta_j(K0, empty)");
  thm3->add_option("--a0", a0_text, "auto or a positive value");

  // lemma
  auto* lemma = app.add_subcommand("lemma", "good-subspace statistics");
  lemma->add_option("-d", cfg.d, "ambient dimension")->required();
  lemma->add_option("-j", cfg.j, "projection dimension")->required();
  lemma->add_option("--samples", cfg.n_subspaces, "Haar samples")->required();
  lemma->add_option("--seed", cfg.seed, "RNG seed")->required();
  lemma->add_option("--out", out, "CSV output")->required();
  lemma->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);

  // validate
  auto* validate = app.add_subcommand("validate", "Monte Carlo versus exact cross-checks");
  validate->add_option("--seed", cfg.seed, "RNG seed")->required();
  validate->add_option("--out", out, "CSV output")->required();
  validate->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);

  // fibers
  std::string plane_text, axis_text = "e1";
  std::size_t grid = 200;
  auto* fibers = app.add_subcommand("fibers", "fiber difference profile of body-b inside body-a");
  fibers->add_option("--body-a", body_a, "outer body file")->required();
  fibers->add_option("--body-b", body_b, "inner body file")->required();
  fibers->add_option("--plane", plane_text, "e1e2 or random:<seed>")->required();
  fibers->add_option("--grid", grid, "grid points per transverse axis")
      ->required()
      ->check(CLI::PositiveNumber);
  fibers->add_option("--axis", axis_text, "fiber direction: e<k> or comma list");
  fibers->add_option("--out", out, "CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*metric) {
      if (!empty_b && body_b.empty()) throw ivm::ConfigError("give --body-b or --empty");
      const ivm::VPolytope a = ivm::load_body(body_a);
      check_dims(a, d, body_a);
      ivm::BodyOperand b;
      if (!empty_b) {
        b = ivm::load_body(body_b);
        check_dims(*b, d, body_b);
      }
      if (j < 1 || j > a.ambient_dim()) throw ivm::ConfigError("need 1 <= j <= d");
      print_estimate("delta_j", ivm::delta_j(a, b, j, to_plan(metric_s)));
    } else if (*intrinsic) {
      const ivm::VPolytope k = ivm::load_body(body);
      if (j < 1 || j > k.ambient_dim()) throw ivm::ConfigError("need 1 <= j <= d");
      print_estimate("V_j", ivm::intrinsic_volume(k, j, to_plan(intr_s)));
    } else if (*haus) {
      const ivm::VPolytope a = ivm::load_body(body_a);
      const ivm::VPolytope b = ivm::load_body(body_b);
      if (a.ambient_dim() != b.ambient_dim())
        throw ivm::ConfigError("bodies have different ambient dimensions");
      std::printf("hausdorff = %.17g\n", ivm::hausdorff(a, b));
    } else if (*thm1 || *thm2 || *thm3) {
      cfg.mode = parse_mode(mode_text);
      if (*thm3 && a0_text != "auto") {
        try {
          std::size_t used = 0;
          cfg.a0 = std::stod(a0_text, &used);
          if (used != a0_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
          throw ivm::ConfigError("--a0 must be 'auto' or a number");
        }
      }
      const ivm::CsvTable table =
          *thm1 ? ivm::run_thm1(cfg) : *thm2 ? ivm::run_thm2(cfg) : ivm::run_thm3(cfg);
      emit(table, out);
      if (!svg.empty()) {
        std::vector<std::string> ys;
        std::string x;
        if (*thm1) {
          x = "L_i";
          ys = {"delta_hat", "claimed_bound"};
        } else if (*thm2) {
          x = "L_m";
          ys = {"step_delta_hat", "claimed_step"};
        } else {
          x = "L_m";
          ys = {"delta_to_empty_hat", "claimed_floor"};
        }
        ivm::write_svg(table, x, ys, svg, true, app.get_subcommands().front()->get_name());
      }
    } else if (*lemma) {
      const ivm::LemmaReport report = ivm::run_lemma(cfg);
      emit(report.table, out);
    } else if (*validate) {
      const ivm::ValidationReport report = ivm::run_validation(cfg);
      emit(report.table, out);
      for (const auto& row : report.table.rows)
        std::cout << (row.back() == "FAIL" ? "FAIL " : "     ") << row.front() << '\n';
      if (!report.all_passed) {
        std::cerr << "validation failed\n";
        return kAssertion;
      }
    } else if (*fibers) {
      const ivm::VPolytope a = ivm::load_body(body_a);
      const ivm::VPolytope b = ivm::load_body(body_b);
      const ivm::Subspace plane = ivm::parse_plane(plane_text, a.ambient_dim());
      const ivm::Vector axis = ivm::parse_axis(axis_text, a.ambient_dim());
      const ivm::FiberReport report = ivm::run_fibers(a, b, plane, axis, grid);
      emit(report.table, out);
    }
  } catch (const ivm::AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kAssertion;
  } catch (const ivm::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ivm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
