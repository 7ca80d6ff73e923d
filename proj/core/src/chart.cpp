#include "fedq/chart.hpp"

#include <json.hpp>

#include "fedq/error.hpp"

namespace fedq {

Chart::Chart(std::string name, int dim, int jet_order, std::vector<std::string> coords,
             std::vector<std::string> params)
    : name_(std::move(name)), dim_(dim), jet_order_(jet_order), coords_(std::move(coords)), params_(std::move(params)) {
  SymplecticData check(dim);
  if (jet_order < 0) throw InputError("negative jet order");
  if (static_cast<int>(coords_.size()) != dim) throw InputError("chart needs one coordinate name per dimension");
  for (const auto& p : params_) params::intern(p);
  gamma_.assign(static_cast<std::size_t>(dim * dim * dim), ScalarJet(dim, jet_order));
}

void Chart::set_gamma(int k, int i, int j, const ScalarJet& g) {
  ScalarJet t = g.truncated(jet_order_);
  gamma_[index(k, i, j)] = t;
  gamma_[index(k, j, i)] = t;
}

bool Chart::is_flat() const {
  for (const auto& g : gamma_)
    if (!g.is_zero()) return false;
  return true;
}

void Chart::validate() const {
  SymplecticData om = omega();
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (!(gamma(k, i, j) == gamma(k, j, i)))
          throw MathError("connection has torsion: Γ^" + std::to_string(k) + "_{" + std::to_string(i) +
                          std::to_string(j) + "} is not symmetric");
  auto lowered = [&](int i, int j, int k) {
    int l = om.partner(i);
    return gamma(l, j, k).scaled(Scalar(om.lower(i, l)));
  };
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (!(lowered(i, j, k) == lowered(j, i, k)))
          throw MathError("connection does not preserve ω: ω_{il}Γ^l_{jk} is not totally symmetric");
}

std::string Chart::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["dim"] = dim_;
  j["params"] = params_;
  j["coords"] = coords_;
  j["omega"] = "standard";
  j["jet_order"] = jet_order_;
  auto arr = nlohmann::ordered_json::array();
  for (int k = 0; k < dim_; ++k)
    for (int a = 0; a < dim_; ++a)
      for (int b = a; b < dim_; ++b)
        for (const auto& [alpha, c] : gamma(k, a, b).terms()) {
          nlohmann::ordered_json e;
          e["k"] = k;
          e["i"] = a;
          e["j"] = b;
          e["alpha"] = alpha.to_vector(dim_);
          e["coeff"] = c.str();
          arr.push_back(e);
        }
  j["gamma_jets"] = arr;
  return j.dump(2);
}

Chart Chart::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("chart file: ") + e.what());
  }
  try {
    int dim = j.at("dim").get<int>();
    if (j.value("omega", std::string("standard")) != "standard")
      throw InputError("chart file: only omega = \"standard\" is supported");
    std::vector<std::string> coords;
    if (j.contains("coords")) {
      coords = j.at("coords").get<std::vector<std::string>>();
    } else {
      for (int i = 0; i < dim; ++i) coords.push_back("x" + std::to_string(i + 1));
    }
    std::vector<std::string> params = j.value("params", std::vector<std::string>{});
    Chart c(j.value("name", std::string("file")), dim, j.at("jet_order").get<int>(), coords, params);
    std::vector<ScalarJet> g(static_cast<std::size_t>(dim * dim * dim), ScalarJet(dim, c.jet_order()));
    std::size_t idx = 0;
    for (const auto& e : j.at("gamma_jets")) {
      std::string where = "chart file: gamma_jets[" + std::to_string(idx++) + "]";
      int k = e.at("k").get<int>(), a = e.at("i").get<int>(), b = e.at("j").get<int>();
      if (k < 0 || a < 0 || b < 0 || k >= dim || a >= dim || b >= dim) throw InputError(where + ": index out of range");
      auto alpha = e.at("alpha").get<std::vector<int>>();
      if (static_cast<int>(alpha.size()) != dim) throw InputError(where + ": alpha has wrong length");
      Scalar coeff;
      try {
        coeff = Scalar::parse(e.at("coeff").get<std::string>());
      } catch (const InputError& err) {
        throw InputError(where + ".coeff: " + err.what());
      }
      if (a > b) std::swap(a, b);
      g[static_cast<std::size_t>((k * dim + a) * dim + b)].add(MultiIndex::from(alpha), coeff);
    }
    for (int k = 0; k < dim; ++k)
      for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) c.set_gamma(k, a, b, g[static_cast<std::size_t>((k * dim + a) * dim + b)]);
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("chart file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

CurvatureJets::CurvatureJets(int dim, int order)
    : dim_(dim), order_(order), r_(static_cast<std::size_t>(dim * dim * dim * dim), ScalarJet(dim, order)) {}

bool CurvatureJets::is_zero() const {
  for (const auto& j : r_)
    if (!j.is_zero()) return false;
  return true;
}

CurvatureJets curvature_from_gamma(const Chart& c) {
  if (c.jet_order() < 1)
    throw InputError("curvature needs Γ jets of order >= 1 (chart has order " + std::to_string(c.jet_order()) + ")");
  const int n = c.dim();
  const int order = c.jet_order() - 1;
  SymplecticData om = c.omega();
  auto G = [&](int m, int i, int j) { return c.gamma(m, i, j).truncated(order); };
  // R^m_{jkl}
  std::vector<ScalarJet> up(static_cast<std::size_t>(n * n * n * n), ScalarJet(n, order));
  auto up_at = [&](int m, int j, int k, int l) -> ScalarJet& {
    return up[static_cast<std::size_t>(((m * n + j) * n + k) * n + l)];
  };
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          ScalarJet v = c.gamma(m, l, j).derivative(k) - c.gamma(m, k, j).derivative(l);
          for (int p = 0; p < n; ++p) v = v + G(m, k, p) * G(p, l, j) - G(m, l, p) * G(p, k, j);
          up_at(m, j, k, l) = v.truncated(order);
        }
  CurvatureJets R(n, order);
  for (int i = 0; i < n; ++i) {
    int m = om.partner(i);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) R(i, j, k, l) = up_at(m, j, k, l).scaled(Scalar(om.lower(i, m)));
  }
  return R;
}

// ---------------------------------------------------------------------------

namespace {

/// f(x_0) g(x_1) as a 2-variable jet.
ScalarJet outer(const UnivariateJet& f, const UnivariateJet& g, int order) {
  ScalarJet j(2, order);
  for (int a = 0; a <= std::min(order, f.order()); ++a) {
    if (f[a].is_zero()) continue;
    for (int b = 0; a + b <= order && b <= g.order(); ++b)
      if (!g[b].is_zero()) j.add(MultiIndex::from({a, b}), f[a] * g[b]);
  }
  return j;
}

UnivariateJet one(int order) { return UnivariateJet::constant(order, Scalar(1)); }

/// s(t) = sqrt(1 - t²/r²).
UnivariateJet sphere_s(int order) {
  Scalar r = Scalar::param("r");
  UnivariateJet t = UnivariateJet::variable(order);
  return (one(order) - (t * t).scaled(Scalar(1) / (r * r))).sqrt();
}

}  // namespace

Chart builtin_chart_r2(int jet_order) { return Chart("r2", 2, jet_order, {"x", "p"}); }

Chart builtin_chart_s2(int jet_order) {
  Chart c("s2", 2, jet_order, {"t", "phi"}, {"r"});
  Scalar r = Scalar::param("r");
  const int N = jet_order;
  UnivariateJet t = UnivariateJet::variable(N);
  // t / (r² - t²)
  UnivariateJet a = t * (UnivariateJet::constant(N, r * r) - t * t).inverse();
  UnivariateJet b = t - (t * t * t).scaled(Scalar(1) / (r * r));
  UnivariateJet const1 = one(N);
  c.set_gamma(0, 0, 0, outer(a, const1, N));
  c.set_gamma(0, 1, 1, outer(b, const1, N));
  c.set_gamma(1, 0, 1, outer(a.scaled(Scalar(-1)), const1, N));
  c.validate();
  return c;
}

MomentData moment_jets_r2(int jet_order) {
  MomentData m;
  m.generators = {"E", "F", "H"};
  auto mono = [&](int a, int b, Scalar c) {
    ScalarJet j(2, jet_order);
    j.add(MultiIndex::from({a, b}), c);
    return j;
  };
  m.phi = {mono(2, 0, Scalar::rational(1, 2)), mono(0, 2, Scalar::rational(-1, 2)), mono(1, 1, Scalar(-1))};
  // Action on (x, p): E = x∂_p, F = p∂_x, H = x∂_x - p∂_p.
  m.linear = {{{0, 0}, {1, 0}}, {{0, 1}, {0, 0}}, {{1, 0}, {0, -1}}};
  return m;
}

MomentData moment_jets_s2(int jet_order) {
  MomentData m;
  m.generators = {"sx", "sy", "sz"};
  Scalar r = Scalar::param("r");
  const int N = jet_order;
  UnivariateJet rs = sphere_s(N).scaled(r);
  m.phi = {outer(rs, UnivariateJet::cos(N), N), outer(rs, UnivariateJet::sin(N), N),
           outer(UnivariateJet::variable(N).scaled(Scalar(-1)), one(N), N)};
  return m;
}

std::vector<ScalarJet> hamiltonian_field(const ScalarJet& f, const SymplecticData& omega) {
  std::vector<ScalarJet> v;
  for (int j = 0; j < omega.dim(); ++j) {
    int i = omega.partner(j);
    v.push_back(f.derivative(i).scaled(Scalar(omega.upper(i, j))));
  }
  return v;
}

std::vector<std::vector<ScalarJet>> rotation_fields_s2(int jet_order) {
  Scalar r = Scalar::param("r");
  const int N = jet_order;
  UnivariateJet s = sphere_s(N);
  UnivariateJet rs = s.scaled(r);
  UnivariateJet t_over_rs = UnivariateJet::variable(N) * s.inverse().scaled(Scalar(1) / r);
  UnivariateJet c = UnivariateJet::cos(N), sn = UnivariateJet::sin(N);
  std::vector<ScalarJet> tx{outer(rs.scaled(Scalar(-1)), sn, N), outer(t_over_rs, c, N)};
  std::vector<ScalarJet> ty{outer(rs, c, N), outer(t_over_rs, sn, N)};
  std::vector<ScalarJet> tz{ScalarJet(2, N), ScalarJet::constant(2, N, Scalar(1))};
  return {tx, ty, tz};
}

}  // namespace fedq
