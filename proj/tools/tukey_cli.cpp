#include "tukey/experiments.hpp"
#include "tukey/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tukey;

namespace {

struct Common {
  std::string data;
  std::string spec;
  std::uint64_t seed = 1;
  std::string out;
  std::string tau;
  int precision = 53;
};

Point parse_point(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> c;
  std::string tok;
  while (in >> tok) c.push_back(parse_rational(tok));
  Point p(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) p(static_cast<Eigen::Index>(i)) = c[i];
  return p;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  return out;
}

DataSet load(const Common& c) {
  if (c.data.empty()) throw std::invalid_argument("--data is required");
  return io::read_dataset_file(c.data);
}

DistributionSpec load_spec(const Common& c) {
  if (c.spec.empty()) throw std::invalid_argument("--spec is required");
  DistributionSpec s = parse_distribution(io::read_key_values_file(c.spec));
  s.snap_bits = c.precision;
  return s;
}

// Writes to <out>/<name> when --out is set, else to stdout.
template <class F>
void emit(const Common& c, const std::string& name, F&& write) {
  if (c.out.empty()) {
    write(std::cout);
    return;
  }
  std::filesystem::create_directories(c.out);
  std::ofstream f(std::filesystem::path(c.out) / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + name);
  write(f);
}

void print_probe(const ProbeReport& r) {
  std::cout << r.statistic << ": " << r.estimate << " +- " << r.half_width << " (N=" << r.draws << ") " << r.verdict;
  if (r.witness) {
    std::cout << " witness=(";
    for (Eigen::Index j = 0; j < r.witness->size(); ++j) std::cout << (j ? " " : "") << (*r.witness)(j);
    std::cout << ")";
  }
  if (!r.series.empty()) {
    std::cout << " series=";
    for (std::size_t i = 0; i < r.series.size(); ++i) std::cout << (i ? "," : "") << r.series[i];
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact halfspace depth, depth regions, the halfspace median and its breakdown bounds"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s) {
    s->add_option("--data", c.data, "dataset file (one point per line)");
    s->add_option("--spec", c.spec, "distribution or experiment spec (key=value)");
    s->add_option("--seed", c.seed, "master seed");
    s->add_option("--out", c.out, "output directory");
    s->add_option("--tau", c.tau, "depth level k/n");
    s->add_option("--precision", c.precision, "snap precision in bits for sampled data");
  };

  std::string point_text;
  bool approx = false;
  auto* depth = app.add_subcommand("depth", "exact depth of a point with a witness direction");
  common(depth);
  depth->add_option("--point", point_text, "coordinates, e.g. \"1 1/2\"")->required();
  depth->add_flag("--approximate", approx, "direction-net approximation (any d)");

  auto* region = app.add_subcommand("region", "depth region {x : D(x) >= tau}");
  common(region);

  bool vertex_average = false;
  auto* median = app.add_subcommand("median", "median region, lambda* and T*");
  common(median);
  median->add_flag("--vertex-average", vertex_average, "T* as the vertex average instead of the barycenter");

  long m_max = 0;
  auto* bounds = app.add_subcommand("bounds", "lower and upper breakdown bounds");
  common(bounds);
  bounds->add_option("--exact-search", m_max, "also search contamination plans up to this m (d = 2, small n)");

  std::string u_text, scales_text = "1000 10000 100000";
  long attack_m = 0;
  auto* attack = app.add_subcommand("attack", "build and verify the projection attack");
  common(attack);
  attack->add_option("--u", u_text, "direction (default: minimizer of the upper bound)");
  attack->add_option("--scales", scales_text, "placement distances");
  attack->add_option("--m", attack_m, "override the number of contaminating points");

  std::string schedule;
  int trials = 0;
  auto* conv = app.add_subcommand("convergence", "bounds across a sample-size schedule");
  common(conv);
  conv->add_option("--n-schedule", schedule, "e.g. \"50 200 800 1600\"");
  conv->add_option("--trials", trials, "trials per n");

  std::string kind = "all";
  std::size_t draws = 100000;
  std::string x0_text, dir_text = "1 0";
  auto* probe = app.add_subcommand("probe", "Monte Carlo probes of a distribution");
  common(probe);
  probe->add_option("--kind", kind, "symmetry|smoothness|continuity|shell|all");
  probe->add_option("--draws", draws, "Monte Carlo sample size");
  probe->add_option("--x0", x0_text, "probe point (default theta0)");
  probe->add_option("--direction", dir_text, "approach direction for the continuity probe");

  std::size_t sample_n = 100;
  auto* samp = app.add_subcommand("sample", "draw a dataset from a spec");
  common(samp);
  samp->add_option("--n", sample_n, "number of points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*depth) {
      const DataSet ds = load(c);
      const Point x = parse_point(point_text);
      const DepthResult r = approx ? approximate_depth(x, ds) : tukey_depth(x, ds);
      std::cout << "depth " << r.depth.str() << (r.exact ? "" : " (approximate)") << "\n"
                << "witness " << to_string(r.witness.direction.vec()) << " count_le " << r.witness.count_le
                << " boundary " << r.witness.count_boundary << "\n";
    } else if (*region) {
      const DataSet ds = load(c);
      if (c.tau.empty()) throw std::invalid_argument("--tau is required");
      const Polytope p = depth_region(ds, DepthValue::parse(c.tau));
      emit(c, "region.txt", [&](std::ostream& o) { io::write_region(o, p); });
      if (!c.out.empty()) emit(c, "region.csv", [&](std::ostream& o) { io::write_region_csv(o, p); });
    } else if (*median) {
      const DataSet ds = load(c);
      const MedianResult m = median_region(ds, vertex_average ? BarycenterMode::VertexAverage : BarycenterMode::Uniform);
      std::cout << "lambda* " << m.lambda_star.str() << "\nmedian " << to_string(m.median) << "\n";
      emit(c, "median_region.txt", [&](std::ostream& o) { io::write_region(o, m.region); });
    } else if (*bounds) {
      const DataSet ds = load(c);
      if (m_max > 0) {
        const BreakdownReport r = exact_breakdown(ds, m_max, {1000, 10000, 100000});
        emit(c, "bounds.csv", [&](std::ostream& o) {
          io::CsvWriter w(o);
          w.row(r.csv_header());
          w.row(r.csv_row());
        });
      } else {
        const Rational lo = lower_bound(ds);
        const UpperBound up = upper_bound(ds);
        std::cout << "lower " << to_string(lo) << "\nupper " << to_string(up.bound) << (up.exact ? "" : " (net)")
                  << "\ninf_lambda_u " << up.inf_lambda.str() << "\nargmin_u " << to_string(up.argmin.vec()) << "\n";
      }
    } else if (*attack) {
      const DataSet ds = load(c);
      std::optional<Direction> u;
      if (!u_text.empty()) u = Direction(parse_point(u_text));
      std::optional<long> m;
      if (attack_m > 0) m = attack_m;
      const AttackDemo demo = run_attack_demo(ds, parse_list(scales_text), u, m);
      emit(c, "attack.csv", [&](std::ostream& o) { write_attack_csv(o, demo); });
      if (!c.out.empty()) emit(c, "attack_geometry.csv", [&](std::ostream& o) { write_attack_geometry(o, demo); });
    } else if (*conv) {
      ExperimentConfig cfg;
      if (!c.spec.empty()) cfg = parse_experiment(io::read_key_values_file(c.spec));
      cfg.spec.snap_bits = c.precision;
      if (conv->count("--seed")) cfg.seed = c.seed;
      if (!schedule.empty()) {
        cfg.n_schedule.clear();
        std::istringstream in(schedule);
        long v = 0;
        while (in >> v) cfg.n_schedule.push_back(v);
      }
      if (trials > 0) cfg.trials = trials;
      const ConvergenceResult res = run_convergence(cfg);
      for (const auto& p : res.preflight) print_probe(p);
      if (res.exit_code == kExitRefused) {
        std::cerr << "refused: distribution failed a preflight probe\n";
        return kExitRefused;
      }
      emit(c, "convergence.csv", [&](std::ostream& o) { write_convergence_csv(o, res.rows); });
      emit(c, "convergence_summary.csv", [&](std::ostream& o) { write_summary_csv(o, res.summary); });
      if (res.exit_code == kExitBudget) std::cerr << "budget exceeded on at least one row\n";
      return res.exit_code;
    } else if (*probe) {
      const DistributionSpec spec = load_spec(c);
      Eigen::VectorXd x0 = spec.theta0();
      if (!x0_text.empty()) {
        const Point p = parse_point(x0_text);
        for (Eigen::Index j = 0; j < p.size(); ++j) x0(j) = to_double(p(j));
      }
      Eigen::VectorXd dir(x0.size());
      const Point dp = parse_point(dir_text);
      for (Eigen::Index j = 0; j < dir.size(); ++j) dir(j) = to_double(dp(j));
      bool refused = false;
      auto run = [&](const ProbeReport& r, bool gate) {
        print_probe(r);
        refused = refused || (gate && !r.pass());
      };
      if (kind == "symmetry" || kind == "all") run(halfspace_symmetry_probe(spec, x0, 180, draws, c.seed), true);
      if (kind == "smoothness" || kind == "all") run(smoothness_probe(spec, x0, {1e-1, 1e-2, 1e-3}, 180, draws, c.seed), true);
      if (kind == "continuity" || kind == "all") run(depth_continuity_probe(spec, x0, dir, {1e-1, 1e-2, 1e-3}, draws, c.seed), false);
      if (kind == "shell" || kind == "all") run(shell_mass_probe(spec, 2.0, draws, c.seed), false);
      return refused ? kExitRefused : kExitOk;
    } else if (*samp) {
      DistributionSpec spec = load_spec(c);
      const DataSet ds = sample(spec, sample_n, c.seed);
      emit(c, "sample.txt", [&](std::ostream& o) { io::write_dataset(o, ds, {{"distribution", spec.name()}, {"seed", std::to_string(c.seed)}}); });
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
