#include "ila/estimator.hpp"

#include <vector>

#include "ila/json_util.hpp"

namespace ila {

std::string_view scheme_kind_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Bgv: return "bgv";
    case SchemeKind::Bfv: return "bfv";
    case SchemeKind::Tfhe: return "tfhe";
  }
  return "?";
}

namespace {

Rational option(const nlohmann::json& opts, const char* key, const Rational& fallback) {
  if (opts.is_object() && opts.contains(key)) return json_rational(opts.at(key));
  return fallback;
}

Rational sum(const Rational& a, const Rational& b) { return a + b; }
Rational product(const Rational& a, const Rational& b) { return a * b; }

void base_fields(NoiseEstimator& est, const nlohmann::json& opts, const EstimatorContext& ctx) {
  Rational t(ctx.t), d(static_cast<long>(ctx.d));
  est.add = sum;
  est.g_ext = product;
  est.g_ext_rlwe = product;
  Rational c_pc = option(opts, "c_pc", t * d);
  est.g = [c_pc](const Rational& e) -> Rational { return c_pc * e; };
  est.b_r = option(opts, "b_r", t * (1 + d / 2));
  est.eps_b = option(opts, "eps_b", ctx.fresh_eps);
}

NoiseEstimator worst_case(const nlohmann::json& opts, const EstimatorContext& ctx) {
  NoiseEstimator est;
  est.name = "worst_case";
  base_fields(est, opts, ctx);
  est.f = product;
  return est;
}

// Worst case including the ring expansion factor d and the key-switching
// term of the toy scheme's relinearization.
NoiseEstimator scaled_worst_case(const nlohmann::json& opts, const EstimatorContext& ctx) {
  NoiseEstimator est;
  est.name = "scaled_worst_case";
  base_fields(est, opts, ctx);
  Rational t(ctx.t), d(static_cast<long>(ctx.d)), eta(ctx.eta);
  Rational bits(static_cast<long>(bit_length(ctx.q_max)));
  switch (ctx.scheme) {
    case SchemeKind::Bgv: {
      Rational relin = t * bits * d * eta;
      est.f = [d, relin](const Rational& a, const Rational& b) -> Rational { return d * a * b + relin; };
      break;
    }
    case SchemeKind::Bfv: {
      Rational lin = t * d * (d + 3) / 2;
      Rational rounding = t / Rational(ctx.q_max) * ((1 + d + d * d) / 2 + bits * d * eta);
      est.f = [lin, d, rounding](const Rational& a, const Rational& b) -> Rational {
        return lin * (a + b) + d * a * b + rounding;
      };
      break;
    }
    case SchemeKind::Tfhe:
      est.f = product;
      break;
  }
  return est;
}

class Table {
 public:
  Table(std::vector<Rational> points, std::vector<std::vector<Rational>> f, std::vector<Rational> g)
      : points_(std::move(points)), f_(std::move(f)), g_(std::move(g)) {}

  Rational f(const Rational& a, const Rational& b) const {
    auto [i, sa] = locate(a);
    auto [j, sb] = locate(b);
    return Rational(f_[i][j] * sa * sb);
  }
  Rational g(const Rational& a) const {
    auto [i, sa] = locate(a);
    return Rational(g_[i] * sa);
  }

 private:
  // Smallest grid point >= e; past the last point the value is scaled up
  // linearly so the function stays monotone.
  std::pair<std::size_t, Rational> locate(const Rational& e) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (e <= points_[i]) return {i, Rational(1)};
    Rational scale = e / points_.back();
    return {points_.size() - 1, scale};
  }

  std::vector<Rational> points_;
  std::vector<std::vector<Rational>> f_;
  std::vector<Rational> g_;
};

NoiseEstimator custom_table(const nlohmann::json& opts, const EstimatorContext& ctx) {
  if (!opts.is_object() || !opts.contains("points") || !opts.contains("f") || !opts.contains("g"))
    throw EstimatorError("custom-table needs 'points', 'f' and 'g'");
  std::vector<Rational> points;
  for (const auto& p : opts.at("points")) points.push_back(json_rational(p));
  if (points.empty()) throw EstimatorError("custom-table: empty 'points'");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i])) throw EstimatorError("custom-table: 'points' must be increasing");
  std::size_t n = points.size();
  std::vector<std::vector<Rational>> f;
  for (const auto& row : opts.at("f")) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(json_rational(v));
    if (r.size() != n) throw EstimatorError("custom-table: 'f' must be a square table over 'points'");
    f.push_back(std::move(r));
  }
  if (f.size() != n) throw EstimatorError("custom-table: 'f' must be a square table over 'points'");
  std::vector<Rational> g;
  for (const auto& v : opts.at("g")) g.push_back(json_rational(v));
  if (g.size() != n) throw EstimatorError("custom-table: 'g' needs one entry per point");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto at = [&](std::size_t a, std::size_t b) { return to_string(points[a]) + "," + to_string(points[b]); };
      if (i + 1 < n && f[i + 1][j] < f[i][j])
        throw EstimatorError("custom-table: f is not monotone: f(" + at(i + 1, j) + ") < f(" + at(i, j) + ")");
      if (j + 1 < n && f[i][j + 1] < f[i][j])
        throw EstimatorError("custom-table: f is not monotone: f(" + at(i, j + 1) + ") < f(" + at(i, j) + ")");
    }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (g[i + 1] < g[i]) throw EstimatorError("custom-table: g is not monotone");

  auto table = std::make_shared<Table>(points, std::move(f), std::move(g));
  NoiseEstimator est;
  est.name = "custom-table";
  base_fields(est, opts, ctx);
  est.f = [table](const Rational& a, const Rational& b) { return table->f(a, b); };
  est.g = [table](const Rational& a) { return table->g(a); };
  return est;
}

}  // namespace

void check_monotone(const NoiseEstimator& est, const EstimatorContext& ctx) {
  std::vector<Rational> grid;
  for (int k = -24; k <= 96; k += 4) {
    Rational v = 1;
    if (k >= 0) v.get_num() <<= k;
    else v.get_den() <<= -k;
    grid.push_back(v);
  }
  bool at_least_one = ctx.scheme != SchemeKind::Bfv;
  auto fail = [&](const std::string& what) { throw EstimatorError(est.name + ": " + what); };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational& a = grid[i];
    if (i + 1 < grid.size() && est.g(grid[i + 1]) < est.g(a)) fail("g is not monotone");
    if (at_least_one && a >= 1 && est.g(a) < 1) fail("g maps a value >= 1 below 1");
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Rational& b = grid[j];
      Rational fab = est.f(a, b);
      if (i + 1 < grid.size() && est.f(grid[i + 1], b) < fab) fail("f is not monotone in its first argument");
      if (j + 1 < grid.size() && est.f(a, grid[j + 1]) < fab) fail("f is not monotone in its second argument");
      if (at_least_one && a >= 1 && b >= 1 && fab < 1) fail("f maps values >= 1 below 1");
      if (est.add(a, b) < a || est.add(a, b) < b) fail("add combination is below an operand");
    }
  }
}

NoiseEstimator make_estimator(std::string_view name, const nlohmann::json& options,
                              const EstimatorContext& ctx) {
  NoiseEstimator est;
  if (name == "worst_case") est = worst_case(options, ctx);
  else if (name == "scaled_worst_case") est = scaled_worst_case(options, ctx);
  else if (name == "custom-table") est = custom_table(options, ctx);
  else throw EstimatorError("unknown estimator '" + std::string(name) + "'");
  check_monotone(est, ctx);
  return est;
}

}  // namespace ila
