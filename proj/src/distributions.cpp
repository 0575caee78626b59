#include "tukey/distributions.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tukey {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) { return std::mt19937_64(splitmix64(seed ^ splitmix64(index))); }

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};

Eigen::VectorXd gaussian_direction(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(d);
  do {
    for (int j = 0; j < d; ++j) v(j) = g(rng);
  } while (v.norm() < 1e-300);
  return v.normalized();
}

Eigen::VectorXd in_ball(int d, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::VectorXd dir = gaussian_direction(d, rng);
  return dir * (radius * std::pow(u(rng), 1.0 / d));
}

// One draw centered at the origin (DiscreteCloud draws are absolute).
Eigen::VectorXd draw(const DistributionSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::visit(
      Overloaded{
          [&](const UniformBall& b) -> Eigen::VectorXd { return in_ball(b.d, b.radius, rng); },
          [&](const UniformSphere& s) -> Eigen::VectorXd { return gaussian_direction(s.d, rng) * s.radius; },
          [&](const BallSphereMixture& m) -> Eigen::VectorXd {
            if (unit(rng) < 0.5) return in_ball(m.d, 1.0, rng);
            return gaussian_direction(m.d, rng) * 2.0;
          },
          [&](const AtomOnHyperplane& a) -> Eigen::VectorXd {
            if (unit(rng) < a.m0) {
              Eigen::VectorXd x = Eigen::VectorXd::Zero(a.d);
              x.tail(a.d - 1) = in_ball(a.d - 1, a.radius, rng);
              return x;
            }
            return draw(*a.base, rng);
          },
          [&](const DiscreteCloud& c) -> Eigen::VectorXd {
            std::discrete_distribution<std::size_t> pick(c.weights.begin(), c.weights.end());
            return c.points[pick(rng)];
          },
          [&](const DegenerateSampler& g) -> Eigen::VectorXd { return draw(*g.base, rng); },
      },
      spec.law);
}

void check_rate(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string("invalid ") + what + ": must lie in [0, 1]");
}

void validate(const DistributionSpec& spec) {
  std::visit(Overloaded{
                 [](const UniformBall& b) {
                   if (b.d < 1 || !(b.radius > 0)) throw std::invalid_argument("UniformBall: need d >= 1, radius > 0");
                 },
                 [](const UniformSphere& s) {
                   if (s.d < 1 || !(s.radius > 0)) throw std::invalid_argument("UniformSphere: need d >= 1, radius > 0");
                 },
                 [](const BallSphereMixture& m) {
                   if (m.d < 1) throw std::invalid_argument("BallSphereMixture: need d >= 1");
                 },
                 [](const AtomOnHyperplane& a) {
                   check_rate(a.m0, "m0");
                   if (a.d < 2 || !a.base) throw std::invalid_argument("AtomOnHyperplane: need d >= 2 and a base law");
                   validate(*a.base);
                 },
                 [](const DiscreteCloud& c) {
                   if (c.points.empty() || c.points.size() != c.weights.size()) {
                     throw std::invalid_argument("DiscreteCloud: points and weights must be nonempty and match");
                   }
                 },
                 [](const DegenerateSampler& g) {
                   check_rate(g.dup_rate, "dup_rate");
                   check_rate(g.collinear_rate, "collinear_rate");
                   if (!g.base) throw std::invalid_argument("DegenerateSampler: missing base law");
                   validate(*g.base);
                 },
             },
             spec.law);
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(to_double(parse_rational(tok)));
  return out;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  return x;
}

Eigen::VectorXd to_eigen(const Point& p) {
  Eigen::VectorXd x(p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) x(j) = to_double(p(j));
  return x;
}

}  // namespace

int DistributionSpec::dim() const {
  return std::visit(Overloaded{
                        [](const UniformBall& b) { return b.d; },
                        [](const UniformSphere& s) { return s.d; },
                        [](const BallSphereMixture& m) { return m.d; },
                        [](const AtomOnHyperplane& a) { return a.d; },
                        [](const DiscreteCloud& c) { return static_cast<int>(c.points.front().size()); },
                        [](const DegenerateSampler& g) { return g.base->dim(); },
                    },
                    law);
}

Eigen::VectorXd DistributionSpec::theta0() const {
  if (center.size() != 0) return center;
  return Eigen::VectorXd::Zero(dim());
}

double DistributionSpec::hyperplane_mass() const {
  if (const auto* a = std::get_if<AtomOnHyperplane>(&law)) return a->m0;
  if (const auto* g = std::get_if<DegenerateSampler>(&law)) return g->base->hyperplane_mass();
  return 0.0;
}

std::string DistributionSpec::name() const {
  static const char* names[] = {"UniformBall",     "UniformSphere", "BallSphereMixture",
                                "AtomOnHyperplane", "DiscreteCloud", "DegenerateSampler"};
  return names[law.index()];
}

std::vector<Eigen::VectorXd> sample_double(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  if (std::holds_alternative<DegenerateSampler>(spec.law)) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& p : sample(spec, n, seed)) out.push_back(to_eigen(p));
    return out;
  }
  const bool absolute = std::holds_alternative<DiscreteCloud>(spec.law);
  const Eigen::VectorXd c = absolute ? Eigen::VectorXd::Zero(spec.dim()) : spec.theta0();
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = stream(seed, i);
    out.push_back(draw(spec, rng) + c);
  }
  return out;
}

DataSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  if (n < 1) throw std::invalid_argument("sample: n must be at least 1");
  std::vector<Point> pts;
  const auto* degenerate = std::get_if<DegenerateSampler>(&spec.law);
  if (degenerate) {
    DistributionSpec base = *degenerate->base;
    if (spec.center.size() != 0) base.center = spec.center;
    base.snap_bits = spec.snap_bits;
    pts = sample(base, n, seed).points();
    std::mt19937_64 rng(splitmix64(seed ^ 0x6a09e667f3bcc909ULL));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 1; i < n; ++i) {
      if (unit(rng) < degenerate->dup_rate) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        pts[i] = pts[pick(rng)];
      }
    }
    for (std::size_t t = 0; t + 2 < n; t += 3) {
      if (!(unit(rng) < degenerate->collinear_rate)) continue;
      const Vec dir = pts[t + 1] - pts[t];
      if (dir.isZero()) continue;
      const Rational s = (pts[t + 2] - pts[t]).dot(dir) / dir.dot(dir);
      pts[t + 2] = pts[t] + s * dir;
    }
  } else {
    for (const auto& x : sample_double(spec, n, seed)) {
      Point p(x.size());
      for (Eigen::Index j = 0; j < x.size(); ++j) p(j) = snap(x(j), spec.snap_bits);
      pts.push_back(std::move(p));
    }
  }
  DataSet ds(std::move(pts));
  ds.snap_bits = spec.snap_bits;
  return ds;
}

DistributionSpec parse_distribution(const std::map<std::string, std::string>& kv) {
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  auto num = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : to_double(parse_rational(it->second));
  };
  const int d = static_cast<int>(num("d", 2));
  auto simple = [&](const std::string& variant, double radius) -> DistributionSpec {
    if (variant == "UniformBall") return {UniformBall{d, radius}, {}, 53};
    if (variant == "UniformSphere") return {UniformSphere{d, radius}, {}, 53};
    if (variant == "BallSphereMixture") return {BallSphereMixture{d}, {}, 53};
    throw std::invalid_argument("unknown base variant: " + variant);
  };
  const std::string variant = get("variant", "");
  DistributionSpec spec;
  if (variant == "UniformBall" || variant == "UniformSphere" || variant == "BallSphereMixture") {
    spec = simple(variant, num("radius", 1.0));
  } else if (variant == "AtomOnHyperplane") {
    auto base = std::make_shared<DistributionSpec>(simple(get("base", "UniformBall"), num("base_radius", 1.0)));
    spec.law = AtomOnHyperplane{d, num("m0", 0.4), num("radius", 1.0), base};
  } else if (variant == "DiscreteCloud") {
    DiscreteCloud c;
    std::istringstream in(get("points", ""));
    std::string item;
    while (std::getline(in, item, ';')) {
      auto v = parse_doubles(item);
      if (!v.empty()) c.points.push_back(to_eigen(v));
    }
    c.weights = parse_doubles(get("weights", ""));
    if (c.weights.empty()) c.weights.assign(c.points.size(), 1.0);
    spec.law = c;
  } else if (variant == "DegenerateSampler") {
    auto base = std::make_shared<DistributionSpec>(simple(get("base", "UniformBall"), num("base_radius", 1.0)));
    spec.law = DegenerateSampler{base, num("dup_rate", 0.0), num("collinear_rate", 0.0)};
  } else {
    throw std::invalid_argument("unknown distribution variant: '" + variant + "'");
  }
  if (kv.count("center")) spec.center = to_eigen(parse_doubles(kv.at("center")));
  spec.snap_bits = static_cast<int>(num("snap_bits", 53));
  validate(spec);
  if (spec.center.size() != 0 && spec.center.size() != spec.dim()) {
    throw std::invalid_argument("center dimension does not match the distribution");
  }
  return spec;
}

double binomial_half_width(double p, std::size_t n) {
  return 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

ProbeReport halfspace_symmetry_probe(std::span<const Eigen::VectorXd> draws, const Eigen::VectorXd& theta0,
                                     int directions) {
  if (directions < 1) throw std::invalid_argument("halfspace_symmetry_probe: need at least one direction");
  if (draws.empty()) throw std::invalid_argument("halfspace_symmetry_probe: no draws");
  ProbeReport r;
  r.statistic = "min_u P(u.X >= u.theta0)";
  r.draws = draws.size();
  r.estimate = 1.0;
  for (const auto& u : direction_net(static_cast<int>(theta0.size()), directions)) {
    const double ut = u.dot(theta0);
    std::size_t c = 0;
    for (const auto& x : draws) c += u.dot(x) >= ut ? 1 : 0;
    const double p = static_cast<double>(c) / static_cast<double>(draws.size());
    if (p < r.estimate) {
      r.estimate = p;
      r.witness = u;
    }
  }
  r.half_width = binomial_half_width(r.estimate, r.draws);
  r.verdict = r.estimate >= 0.5 - 3.0 * r.half_width ? "PASS" : "FAIL";
  return r;
}

ProbeReport halfspace_symmetry_probe(const DistributionSpec& spec, const Eigen::VectorXd& theta0, int directions,
                                     std::size_t n, std::uint64_t seed) {
  const auto draws = sample_double(spec, n, seed);
  return halfspace_symmetry_probe(std::span<const Eigen::VectorXd>(draws), theta0, directions);
}

ProbeReport smoothness_probe(const DistributionSpec& spec, const Eigen::VectorXd& x0, const std::vector<double>& widths,
                             int directions, std::size_t n, std::uint64_t seed, const SmoothnessConfig& cfg) {
  if (widths.empty()) throw std::invalid_argument("smoothness_probe: no widths");
  for (std::size_t i = 1; i < widths.size(); ++i) {
    if (!(widths[i] < widths[i - 1])) throw std::invalid_argument("smoothness_probe: widths must decrease");
  }
  const auto draws = sample_double(spec, n, seed);
  const auto net = direction_net(static_cast<int>(x0.size()), directions);
  ProbeReport r;
  r.statistic = "max_u P(|u.X - u.x0| <= w)";
  r.draws = n;
  for (double w : widths) {
    double worst = 0.0;
    Eigen::VectorXd arg = net.front();
    for (const auto& u : net) {
      const double ux = u.dot(x0);
      std::size_t c = 0;
      for (const auto& x : draws) c += std::abs(u.dot(x) - ux) <= w ? 1 : 0;
      const double p = static_cast<double>(c) / static_cast<double>(n);
      if (p > worst) {
        worst = p;
        arg = u;
      }
    }
    r.series.push_back(worst);
    r.estimate = worst;
    r.witness = arg;
  }
  r.half_width = binomial_half_width(r.estimate, n);
  r.verdict = r.estimate <= cfg.threshold ? "SMOOTH" : "NON-SMOOTH";
  return r;
}

ProbeReport depth_continuity_probe(const DistributionSpec& spec, const Eigen::VectorXd& theta0,
                                   const Eigen::VectorXd& direction, const std::vector<double>& radii, std::size_t n,
                                   std::uint64_t seed, const ContinuityConfig& cfg) {
  if (radii.empty()) throw std::invalid_argument("depth_continuity_probe: no radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] < radii[i - 1])) throw std::invalid_argument("depth_continuity_probe: radii must decrease");
  }
  const auto draws = sample_double(spec, n, seed);
  const std::span<const Eigen::VectorXd> view(draws);
  const auto center = population_depth_estimate(view, theta0, cfg.net_size);
  ProbeReport r;
  r.statistic = "D(theta0 + r dir, F)";
  r.draws = n;
  r.estimate = center.estimate;
  r.half_width = center.half_width;
  const Eigen::VectorXd dir = direction.normalized();
  for (double rad : radii) r.series.push_back(population_depth_estimate(view, theta0 + rad * dir, cfg.net_size).estimate);
  const double m0 = spec.hyperplane_mass();
  if (m0 > 0.0) {
    const bool sides_low =
        std::all_of(r.series.begin(), r.series.end(), [&](double s) { return s <= (1.0 - m0) / 2.0 + cfg.tolerance; });
    r.verdict = sides_low && center.estimate >= 0.5 - cfg.tolerance ? "DISCONTINUOUS" : "CONTINUOUS";
  } else {
    r.verdict = std::abs(r.series.back() - center.estimate) <= cfg.tolerance ? "CONTINUOUS" : "DISCONTINUOUS";
  }
  return r;
}

ProbeReport shell_mass_probe(const DistributionSpec& spec, double radius, std::size_t n, std::uint64_t seed) {
  const auto draws = sample_double(spec, n, seed);
  const Eigen::VectorXd c = spec.theta0();
  std::size_t hits = 0;
  for (const auto& x : draws) hits += std::abs((x - c).norm() - radius) <= 1e-12 ? 1 : 0;
  ProbeReport r;
  r.statistic = "P(| |X - theta0| - r | <= 1e-12)";
  r.draws = n;
  r.estimate = static_cast<double>(hits) / static_cast<double>(n);
  r.half_width = binomial_half_width(r.estimate, n);
  r.verdict = "MEASURED";
  return r;
}

PopulationDepthEstimate population_depth_estimate(const DistributionSpec& spec, const Eigen::VectorXd& x,
                                                  std::size_t n, std::uint64_t seed, int net_size) {
  const auto draws = sample_double(spec, n, seed);
  return population_depth_estimate(std::span<const Eigen::VectorXd>(draws), x, net_size);
}

DataSet symmetrize(const DataSet& ds, const Point& theta0) {
  std::vector<Point> pts = ds.points();
  for (const auto& p : ds) pts.push_back(2 * theta0 - p);
  return DataSet(std::move(pts));
}

long min_halfspace_count(const DataSet& ds, const Point& theta0) {
  // #{u.X >= u.t} over u equals #{(-u).X <= (-u).t}, so the minimum is the
  // depth count of theta0.
  return tukey_depth(theta0, ds).witness.count_le;
}

}  // namespace tukey
