#include "tukey/experiments.hpp"

#include "tukey/io.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tukey {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) { return mix(master ^ mix(a ^ mix(b))); }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

DataSet full_dimensional_sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    DataSet ds = sample(spec, n, sub_seed(seed, attempt, 0x5a));
    if (affine_dimension(ds) == ds.dim()) return ds;
    if (attempt > 1000) throw std::runtime_error("could not draw a full-dimensional sample");
  }
}

bool general_position(const DataSet& ds) {
  const int d = ds.dim();
  const std::size_t n = ds.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ds[i] == ds[j]) return false;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (d == 2) {
          if (affine_dimension(std::vector<Point>{ds[i], ds[j], ds[k]}) < 2) return false;
          continue;
        }
        for (std::size_t l = k + 1; l < n; ++l) {
          if (affine_dimension(std::vector<Point>{ds[i], ds[j], ds[k], ds[l]}) < 3) return false;
        }
      }
    }
  }
  return true;
}

Point random_probe(const Box& box, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-64, 1024 + 64);
  Point p(box.lo.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) p(j) = box.lo(j) + (box.hi(j) - box.lo(j)) * Rational(pick(rng), 1024);
  return p;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("experiment: trials must be at least 1");
  if (n_schedule.empty()) throw std::invalid_argument("experiment: empty n schedule");
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] < 1 || (i > 0 && n_schedule[i] <= n_schedule[i - 1])) {
      throw std::invalid_argument("experiment: n schedule must be strictly increasing and positive");
    }
  }
}

ExperimentConfig parse_experiment(const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  if (kv.count("variant")) cfg.spec = parse_distribution(kv);
  auto num = [&](const char* key) { return to_double(parse_rational(kv.at(key))); };
  if (kv.count("name")) cfg.name = kv.at("name");
  if (kv.count("n_schedule")) {
    cfg.n_schedule.clear();
    std::istringstream in(kv.at("n_schedule"));
    long v = 0;
    while (in >> v) cfg.n_schedule.push_back(v);
  }
  if (kv.count("trials")) cfg.trials = static_cast<int>(num("trials"));
  if (kv.count("seed")) cfg.seed = std::stoull(kv.at("seed"));
  if (kv.count("wall_limit_s")) cfg.wall_limit_s = num("wall_limit_s");
  if (kv.count("probe_draws")) cfg.probe_draws = static_cast<std::size_t>(num("probe_draws"));
  if (kv.count("probe_directions")) cfg.probe_directions = static_cast<int>(num("probe_directions"));
  if (kv.count("smooth_threshold")) cfg.smooth_threshold = num("smooth_threshold");
  cfg.validate();
  return cfg;
}

ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  ConvergenceResult res;
  const Eigen::VectorXd theta0 = cfg.spec.theta0();
  res.preflight.push_back(
      halfspace_symmetry_probe(cfg.spec, theta0, cfg.probe_directions, cfg.probe_draws, sub_seed(cfg.seed, 0, 1)));
  res.preflight.push_back(smoothness_probe(cfg.spec, theta0, cfg.probe_widths, cfg.probe_directions, cfg.probe_draws,
                                           sub_seed(cfg.seed, 0, 2), SmoothnessConfig{cfg.smooth_threshold}));
  for (const auto& p : res.preflight) {
    if (!p.pass()) {
      res.exit_code = kExitRefused;
      return res;
    }
  }

  using Clock = std::chrono::steady_clock;
  for (long n : cfg.n_schedule) {
    for (int t = 0; t < cfg.trials; ++t) {
      const auto start = Clock::now();
      auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
      ConvergenceRow row;
      row.n = n;
      row.trial = t;
      const DataSet ds =
          full_dimensional_sample(cfg.spec, static_cast<std::size_t>(n), sub_seed(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)));
      row.lambda_star = max_depth(ds);
      row.lower = bound_ratio(row.lambda_star);
      if (elapsed() > cfg.wall_limit_s) {
        row.aborted = true;
      } else {
        const UpperBound ub = upper_bound(ds, cfg.search);
        row.inf_lambda_u = ub.inf_lambda;
        row.upper = ub.bound;
        row.aborted = elapsed() > cfg.wall_limit_s;
      }
      row.runtime_ms = elapsed() * 1000.0;
      if (row.aborted) res.exit_code = kExitBudget;
      res.rows.push_back(row);
    }
  }
  std::sort(res.rows.begin(), res.rows.end(),
            [](const ConvergenceRow& a, const ConvergenceRow& b) { return std::tie(a.n, a.trial) < std::tie(b.n, b.trial); });

  for (long n : cfg.n_schedule) {
    std::vector<double> lo, up;
    for (const auto& r : res.rows) {
      if (r.n != n || r.aborted) continue;
      lo.push_back(to_double(r.lower));
      up.push_back(to_double(r.upper));
    }
    if (lo.empty()) continue;
    ConvergenceSummary s{n, median_of(lo), median_of(up), 0.0};
    s.gap = std::max(std::abs(s.median_lower - 1.0 / 3.0), std::abs(s.median_upper - 1.0 / 3.0));
    res.summary.push_back(s);
  }
  for (std::size_t i = 1; i < res.summary.size(); ++i) {
    if (res.summary[i].gap > res.summary[i - 1].gap) ++res.gap_increases;
  }
  return res;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  io::CsvWriter csv(out);
  csv.row({"n", "trial", "lambda_star", "lower", "inf_lambda_u", "upper", "lower_approx", "upper_approx", "status"});
  for (const auto& r : rows) {
    csv.row({std::to_string(r.n), std::to_string(r.trial), r.lambda_star.str(), to_string(r.lower),
             r.aborted ? "" : r.inf_lambda_u.str(), r.aborted ? "" : to_string(r.upper), fmt(to_double(r.lower)),
             r.aborted ? "" : fmt(to_double(r.upper)), r.aborted ? "aborted" : "ok"});
  }
}

void write_summary_csv(std::ostream& out, const std::vector<ConvergenceSummary>& summary) {
  io::CsvWriter csv(out);
  csv.row({"n", "median_lower", "median_upper", "gap"});
  for (const auto& s : summary) csv.row({std::to_string(s.n), fmt(s.median_lower), fmt(s.median_upper), fmt(s.gap)});
}

RegionOracleSummary check_region_instance(const DataSet& ds, int random_probes, std::uint64_t seed,
                                          bool check_general_position) {
  RegionOracleSummary sum;
  sum.instances = 1;
  const int d = ds.dim();
  const long n = static_cast<long>(ds.size());
  const long lambda = max_depth(ds).num;
  std::mt19937_64 rng(seed);
  Box box = bounding_box(ds);
  auto fail = [&](const std::string& what) {
    ++sum.mismatches;
    if (sum.failures.size() < 5) sum.failures.push_back(what);
  };
  for (long k = 1; k <= lambda; ++k) {
    ++sum.levels;
    const DepthValue tau(k, n);
    const Polytope region = depth_region(ds, tau);
    if (region.empty() || region.unbounded) {
      fail("level " + tau.str() + ": region empty or unbounded");
      continue;
    }
    std::vector<Point> probes = region.vertices;
    probes.insert(probes.end(), ds.begin(), ds.end());
    for (int i = 0; i < random_probes; ++i) probes.push_back(random_probe(box, rng));
    const Rational push(1, 1 << 20);
    for (const auto& h : region.halfspaces) {
      std::vector<Point> tight;
      for (const auto& v : region.vertices) {
        if (h.evaluate(v) == 0) tight.push_back(v);
      }
      if (tight.empty()) continue;
      Point mid = Point::Zero(d);
      for (const auto& v : tight) mid += v;
      mid /= Rational(static_cast<long>(tight.size()));
      Rational scale = 0;
      for (Eigen::Index j = 0; j < d; ++j) scale = std::max(scale, abs(h.normal.vec()(j)));
      probes.push_back(Point(mid - (push / scale) * h.normal.vec()));
    }
    for (const auto& p : probes) {
      ++sum.points_checked;
      const bool inside = region.contains(p);
      const bool deep = tukey_depth(p, ds).witness.count_le >= k;
      if (inside != deep) fail("level " + tau.str() + " at (" + to_string(p) + ")");
    }
    if (check_general_position) {
      for (const auto& c : enumerate_irrotatable(ds, tau)) {
        ++sum.certificates;
        if (static_cast<int>(c.boundary_points.size()) != d || c.cut_count != k - 1) ++sum.certificate_exceptions;
      }
    }
  }
  return sum;
}

RegionOracleSummary run_region_oracle(const RegionOracleConfig& cfg) {
  if (cfg.d != 2 && cfg.d != 3) throw std::invalid_argument("region oracle: d must be 2 or 3");
  RegionOracleSummary total;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> pick_n(std::max(cfg.n_min, static_cast<long>(cfg.d) + 1), cfg.n_max);
  auto base = std::make_shared<DistributionSpec>(DistributionSpec{UniformBall{cfg.d, 1.0}, {}, 53});
  DistributionSpec spec;
  if (cfg.general_position) {
    spec = *base;
  } else {
    // coarse snapping adds accidental ties on top of the forced ones
    base->snap_bits = 6;
    spec = DistributionSpec{DegenerateSampler{base, cfg.dup_rate, cfg.collinear_rate}, {}, 6};
  }
  for (int i = 0; i < cfg.instances; ++i) {
    const auto n = static_cast<std::size_t>(pick_n(rng));
    DataSet ds;
    for (std::uint64_t attempt = 0;; ++attempt) {
      ds = sample(spec, n, sub_seed(cfg.seed, static_cast<std::uint64_t>(i), attempt));
      if (affine_dimension(ds) == cfg.d && (!cfg.general_position || general_position(ds))) break;
    }
    const auto s = check_region_instance(ds, cfg.random_probes, sub_seed(cfg.seed, static_cast<std::uint64_t>(i), 99),
                                         cfg.general_position);
    total.instances += 1;
    total.levels += s.levels;
    total.points_checked += s.points_checked;
    total.mismatches += s.mismatches;
    total.certificates += s.certificates;
    total.certificate_exceptions += s.certificate_exceptions;
    for (const auto& f : s.failures) {
      if (total.failures.size() < 10) total.failures.push_back("instance " + std::to_string(i) + ": " + f);
    }
  }
  return total;
}

AttackDemo run_attack_demo(const DataSet& ds, const std::vector<Rational>& scales, std::optional<Direction> u,
                           std::optional<long> m) {
  if (scales.empty()) throw std::invalid_argument("attack demo: empty scale schedule");
  const Direction dir = u ? *u : upper_bound(ds).argmin;
  AttackDemo demo{ds, dir, projected_lambda(ds, dir), {}};
  for (const auto& s : scales) {
    AttackDemoRow row{s, build_attack(ds, dir, s, m), {}};
    row.verification = verify_attack(ds, row.plan);
    demo.rows.push_back(std::move(row));
  }
  return demo;
}

void write_attack_csv(std::ostream& out, const AttackDemo& demo) {
  io::CsvWriter csv(out);
  csv.row({"scale", "u", "lambda_u", "m", "y0", "median", "distance_sq_approx", "growth_sq_approx", "sup_depth_inside",
           "depth_at_y0", "escaped"});
  for (const auto& r : demo.rows) {
    csv.row({to_string(r.scale), to_string(demo.u.vec()), demo.lambda_u.str(), std::to_string(r.plan.m),
             to_string(r.plan.y0), to_string(r.verification.contaminated_median),
             fmt(to_double(r.verification.distance_sq)), fmt(to_double(r.verification.growth)),
             r.verification.sup_depth_inside.str(), r.verification.depth_at_y0.str(),
             r.verification.escaped ? "true" : "false"});
  }
}

void write_attack_geometry(std::ostream& out, const AttackDemo& demo) {
  io::CsvWriter csv(out);
  std::vector<std::string> header{"kind", "scale"};
  for (int j = 0; j < demo.data.dim(); ++j) header.push_back("x" + std::to_string(j + 1));
  csv.row(header);
  auto emit = [&](const std::string& kind, const std::string& scale, const Point& p) {
    std::vector<std::string> row{kind, scale};
    for (Eigen::Index j = 0; j < p.size(); ++j) row.push_back(fmt(to_double(p(j))));
    csv.row(row);
  };
  for (const auto& p : demo.data) emit("sample", "", p);
  if (demo.rows.empty()) return;
  const ProjectionFrame frame = projection_frame(demo.u);
  const auto& x0 = demo.rows.front().plan.x0_projected;
  emit("line", "", line_point(frame, x0, 0));
  emit("line", "", line_point(frame, x0, demo.rows.back().plan.gamma));
  for (const auto& r : demo.rows) {
    emit("y0", to_string(r.scale), r.plan.y0);
    emit("median", to_string(r.scale), r.verification.contaminated_median);
  }
}

}  // namespace tukey
