#include "horolab/experiment.hpp"

#include "horolab/error.hpp"
#include "horolab/kernel.hpp"
#include "horolab/sl3.hpp"
#include "horolab/sln.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

namespace horolab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    raise(ErrorCode::config, "key '" + key + "': expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(d);
  } catch (const std::exception&) {
    raise(ErrorCode::config, "key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::pair<const char*, ExperimentKind> kKinds[] = {
    {"horocycle-decay", ExperimentKind::horocycle_decay},
    {"fold-unfold", ExperimentKind::fold_unfold},
    {"interpolation-suite", ExperimentKind::interpolation_suite},
    {"sl3-roots", ExperimentKind::sl3_roots},
    {"sln-tables", ExperimentKind::sln_tables},
    {"budgets", ExperimentKind::budgets},
};

}  // namespace

const char* kind_name(ExperimentKind kind) {
  for (const auto& [name, k] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig c;
  std::map<std::string, std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      raise(ErrorCode::config, "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (seen.count(key)) raise(ErrorCode::config, "duplicate key '" + key + "'");
    seen[key] = value;
    if (key == "kind") {
      bool found = false;
      for (const auto& [name, k] : kKinds)
        if (value == name) {
          c.kind = k;
          found = true;
        }
      if (!found) raise(ErrorCode::config, "unknown experiment kind '" + value + "'");
    } else if (key == "t_min") {
      c.t_min = parse_double(key, value);
    } else if (key == "t_max") {
      c.t_max = parse_double(key, value);
    } else if (key == "t_points") {
      c.t_points = parse_int(key, value);
    } else if (key == "eps_policy") {
      if (value == "fixed") c.eps_policy = EpsPolicy::fixed;
      else if (value == "paper-optimal") c.eps_policy = EpsPolicy::paper_optimal;
      else raise(ErrorCode::config, "unknown eps_policy '" + value + "'");
    } else if (key == "eps_value") {
      c.eps_value = parse_double(key, value);
    } else if (key == "bump_center_x") {
      c.bump_center_x = parse_double(key, value);
    } else if (key == "bump_center_y") {
      c.bump_center_y = parse_double(key, value);
    } else if (key == "bump_wx") {
      c.bump_wx = parse_double(key, value);
    } else if (key == "bump_wy") {
      c.bump_wy = parse_double(key, value);
    } else if (key == "bump_amplitude") {
      c.bump_amplitude = parse_double(key, value);
    } else if (key == "quad_panels_x") {
      c.quad.panels_x = parse_int(key, value);
    } else if (key == "quad_panels_y") {
      c.quad.panels_y = parse_int(key, value);
    } else if (key == "quad_nodes") {
      c.quad.nodes_per_panel = parse_int(key, value);
    } else if (key == "quad_tol") {
      c.quad.tol = parse_double(key, value);
    } else if (key == "out") {
      c.out = value;
    } else if (key == "workers") {
      c.workers = parse_int(key, value);
    } else {
      raise(ErrorCode::config, "unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void ExperimentConfig::validate() const {
  if (!(t_min >= 1.0) || !std::isfinite(t_min)) raise(ErrorCode::config, "t_min must be >= 1");
  if (!(t_max >= t_min) || !std::isfinite(t_max)) raise(ErrorCode::config, "t_max must be >= t_min");
  if (t_points < 2) raise(ErrorCode::config, "T grid needs at least 2 points");
  if (eps_policy == EpsPolicy::fixed && !(eps_value > 0.0 && eps_value < 0.5))
    raise(ErrorCode::config, "eps_value must lie in (0, 1/2)");
  if (workers < 1) raise(ErrorCode::config, "workers must be >= 1");
  try {
    quad.validate();
    bump();
  } catch (const Error& e) {
    raise(ErrorCode::config, e.what());
  }
}

std::vector<double> ExperimentConfig::t_grid() const {
  std::vector<double> g(t_points);
  const double lo = std::log10(t_min), step = (std::log10(t_max) - lo) / (t_points - 1);
  for (int i = 0; i < t_points; ++i)
    g[i] = (i == 0) ? t_min : (i + 1 == t_points) ? t_max : std::pow(10.0, lo + step * i);
  return g;
}

BumpTestFunction ExperimentConfig::bump() const {
  return BumpTestFunction({bump_center_x, bump_center_y}, bump_wx, bump_wy, bump_amplitude);
}

FitReport fit_slope(const std::vector<ResultRow>& rows, double threshold, double t_cut) {
  std::vector<double> xs, ys;
  for (const ResultRow& r : rows) {
    if (r.abs_error <= 0.0 || r.T < t_cut || !(r.T > 0.0)) continue;
    xs.push_back(std::log(r.T));
    ys.push_back(std::log(r.abs_error));
  }
  FitReport f;
  f.threshold = threshold;
  f.points = static_cast<int>(xs.size());
  if (xs.size() < 2) return f;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += e * e;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  f.pass = f.slope <= threshold;
  return f;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int threads = std::max(1, std::min(workers, count));
  std::vector<std::exception_ptr> errors(count);
  if (threads == 1) {
    for (int i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

using Clock = std::chrono::steady_clock;

struct RowSpec {
  std::string label;
  double T;
};

std::vector<RowSpec> rows_for(const ExperimentConfig& c) {
  std::vector<RowSpec> specs;
  const auto grid = c.t_grid();
  if (c.kind == ExperimentKind::sl3_roots) {
    for (double t : grid) specs.push_back({fmt(t) + "|" + fmt(t), t});
  } else if (c.kind == ExperimentKind::sln_tables) {
    for (int n = 2; n <= 6; ++n)
      for (double t : grid) {
        std::string label = fmt(t);
        for (int k = 1; k < n - 1; ++k) label += "|" + fmt(t);
        specs.push_back({label, t});
      }
  } else {
    for (double t : grid) specs.push_back({fmt(t), t});
  }
  return specs;
}

int sln_rank(const std::string& label) {
  return static_cast<int>(std::count(label.begin(), label.end(), '|')) + 2;
}

double relative(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const BumpTestFunction F = config.bump();
  const auto specs = rows_for(config);
  RunResult result;
  result.rows.resize(specs.size());

  FunctionNorms fnorms{1.0, 1.0};
  double reference = 0.0;
  const bool needs_bump = config.kind == ExperimentKind::horocycle_decay ||
                          config.kind == ExperimentKind::fold_unfold;
  if (needs_bump) {
    fnorms = norms(F, config.quad);
    reference = hyperbolic_average(F);
  }
  const auto eps_for = [&](double T) {
    if (config.eps_policy == EpsPolicy::fixed) return config.eps_value;
    if (!(fnorms.l2_gamma > 0.0 && fnorms.sobolev_1_inf > 0.0))
      raise(ErrorCode::numeric_degeneracy, "paper-optimal eps needs a nonzero test function");
    return epsilon_optimizer_rank1(1, 1.0, T, fnorms.l2_gamma, fnorms.sobolev_1_inf).eps;
  };

  std::unique_ptr<sl3::NodeScheme6> scheme;
  std::array<cplx, 6> mix{};
  if (config.kind == ExperimentKind::sl3_roots) {
    const double eps = config.eps_policy == EpsPolicy::fixed ? config.eps_value : 0.01;
    scheme = std::make_unique<sl3::NodeScheme6>(sl3::LambdaPair{1.0, 0.0}, sl3::default_nodes(), eps);
    for (int i = 0; i < 6; ++i) mix[i] = cplx(1.0 + 0.25 * i, 0.5 - 0.125 * i);
  }

  parallel_for(static_cast<int>(specs.size()), config.workers, [&](int i) {
    const RowSpec& spec = specs[i];
    const auto start = Clock::now();
    ResultRow row;
    row.label = spec.label;
    row.T = spec.T;
    try {
      switch (config.kind) {
        case ExperimentKind::horocycle_decay: {
          row.eps = eps_for(spec.T);
          row.value = horocycle_average(F, spec.T, config.quad);
          row.reference = reference;
          row.abs_error = std::abs(row.value - row.reference);
          break;
        }
        case ExperimentKind::fold_unfold: {
          row.eps = eps_for(spec.T);
          if (!(row.eps < 0.5))
            raise(ErrorCode::numeric_degeneracy, "eps = " + fmt(row.eps) + " is outside (0, 1/2)");
          const ThickKernel k(1, spec.T, row.eps);
          row.value = thickened_average_folded(F, k, config.quad);
          row.reference = thickened_average_unfolded(F, k, config.quad);
          row.abs_error = std::abs(row.value - row.reference);
          break;
        }
        case ExperimentKind::interpolation_suite: {
          row.eps = config.eps_policy == EpsPolicy::fixed ? config.eps_value : 0.01;
          double worst = 0.0;
          for (int n = 1; n <= 4; ++n) {
            const SpectralPoint pts[] = {
                SpectralPoint::exceptional(n, 0.5 * n + 0.3 * n / 2.0 + 0.05),
                SpectralPoint::exceptional(n, static_cast<double>(n)),
                SpectralPoint::tempered(n, 0.0),
                SpectralPoint::tempered(n, 3.0),
            };
            for (const auto& sp : pts) {
              worst = std::max(worst, homogeneous_interpolation_residual(1.0, 0.0, sp, spec.T, 2.0, row.eps));
              worst = std::max(worst, homogeneous_interpolation_residual(0.0, 1.0, sp, spec.T, 2.0, row.eps));
              worst = std::max(worst, homogeneous_interpolation_residual(cplx(0.3, -1.0), cplx(2.0, 0.5), sp,
                                                                         spec.T, 2.0, row.eps));
            }
          }
          row.value = worst;
          row.abs_error = worst;
          break;
        }
        case ExperimentKind::sl3_roots: {
          row.eps = scheme->eps();
          const sl3::KernelPair k(spec.T, spec.T, row.eps);
          sl3::KernelPair nodes_k[6] = {
              {scheme->nodes()[0].b1, scheme->nodes()[0].b2, row.eps},
              {scheme->nodes()[1].b1, scheme->nodes()[1].b2, row.eps},
              {scheme->nodes()[2].b1, scheme->nodes()[2].b2, row.eps},
              {scheme->nodes()[3].b1, scheme->nodes()[3].b2, row.eps},
              {scheme->nodes()[4].b1, scheme->nodes()[4].b2, row.eps},
              {scheme->nodes()[5].b1, scheme->nodes()[5].b2, row.eps},
          };
          std::array<cplx, 6> values{};
          cplx exact = 0.0;
          for (int b = 0; b < 6; ++b) {
            exact += mix[b] * sl3::alpha_basis(k, scheme->basis()[b]);
            for (int j = 0; j < 6; ++j) values[j] += mix[b] * sl3::alpha_basis(nodes_k[j], scheme->basis()[b]);
          }
          const cplx got = scheme->reproduce(values, spec.T, spec.T);
          row.value = got.real();
          row.reference = exact.real();
          row.abs_error = std::abs(got - exact);
          break;
        }
        case ExperimentKind::sln_tables: {
          const int n = sln_rank(spec.label);
          const std::vector<double> T(n - 1, spec.T);
          const auto e = sln::epsilon_optimizer_sln(n, T, 1.0, 1.0);
          row.eps = e.eps;
          row.value = e.smoothing_term;
          row.reference = e.spectral_term;
          row.abs_error = std::abs(row.value - row.reference);
          break;
        }
        case ExperimentKind::budgets: {
          if (!(spec.T > 1.0)) raise(ErrorCode::domain, "budget rows need T > 1");
          const auto e = epsilon_optimizer_rank1(1, 1.0, spec.T, 1.0, 1.0);
          row.eps = e.eps;
          row.value = e.smoothing_term;
          row.reference = e.spectral_term;
          row.abs_error = std::abs(row.value - row.reference);
          break;
        }
      }
    } catch (const Error& e) {
      raise(e.code(), "row T=" + spec.label + ": " + e.what());
    }
    if (options.record_timing)
      row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    result.rows[i] = row;
  });

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ResultRow& a, const ResultRow& b) { return a.T < b.T; });
  if (config.kind == ExperimentKind::sln_tables)
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const ResultRow& a, const ResultRow& b) {
      return sln_rank(a.label) < sln_rank(b.label);
    });

  switch (config.kind) {
    case ExperimentKind::horocycle_decay: {
      const double cut = config.t_min * 10.0 * (1.0 - 1e-9);
      result.fit = fit_slope(result.rows, -1.0 / 3.0 + 0.05, cut);
      result.has_fit = true;
      bool monotone = true;
      double prev = INFINITY;
      for (const ResultRow& r : result.rows) {
        if (r.T < cut) continue;
        if (!(r.abs_error < prev)) monotone = false;
        prev = r.abs_error;
      }
      result.pass = result.fit.pass && monotone;
      result.notes.push_back(std::string("errors monotone after first decade: ") + (monotone ? "yes" : "no"));
      if (config.eps_policy == EpsPolicy::paper_optimal)
        for (const ResultRow& r : result.rows)
          if (!(r.eps < 0.5)) {
            result.notes.push_back("asymptotic regime not reached at T=" + r.label + " (eps=" + fmt(r.eps) + ")");
          }
      break;
    }
    case ExperimentKind::fold_unfold: {
      result.pass = true;
      for (const ResultRow& r : result.rows)
        if (relative(r.value, r.reference) > 1e-6) result.pass = false;
      result.notes.push_back("tolerance: relative 1e-6");
      break;
    }
    case ExperimentKind::interpolation_suite: {
      result.pass = true;
      for (const ResultRow& r : result.rows)
        if (!(r.abs_error <= 1e-10)) result.pass = false;
      result.notes.push_back("tolerance: residual 1e-10");
      break;
    }
    case ExperimentKind::sl3_roots: {
      result.pass = true;
      for (const ResultRow& r : result.rows)
        if (!(r.abs_error <= 1e-8 * std::max(std::abs(r.reference), 1e-300))) result.pass = false;
      result.notes.push_back("scheme condition number: " + fmt(scheme->condition_number()));
      result.notes.push_back("tolerance: relative 1e-8");
      break;
    }
    case ExperimentKind::sln_tables:
    case ExperimentKind::budgets: {
      result.pass = true;
      for (const ResultRow& r : result.rows)
        if (relative(r.value, r.reference) > 1e-12) result.pass = false;
      result.notes.push_back("tolerance: relative balance 1e-12");
      if (config.kind == ExperimentKind::budgets) {
        const ExponentBudget b = exponent_budget(1, Rational(1));
        result.notes.push_back("n=1 delta=1 total error exponent " + to_string(b.kinv_total_error_exp) +
                               ", log power " + to_string(b.kinv_log_power));
        if (b.kinv_total_error_exp != Rational(-1, 3) || b.kinv_log_power != Rational(2, 3))
          result.pass = false;
      }
      break;
    }
  }
  return result;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "T,value,reference,abs_error,eps,wall_ms\n";
  for (const ResultRow& r : rows) {
    out += r.label + "," + fmt(r.value) + "," + fmt(r.reference) + "," + fmt(r.abs_error) + "," +
           fmt(r.eps) + "," + fmt(r.wall_ms) + "\n";
  }
  return out;
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "T,value,reference,abs_error,eps,wall_ms")
    raise(ErrorCode::io, "unexpected CSV header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) raise(ErrorCode::io, "CSV row has " + std::to_string(f.size()) + " fields");
    ResultRow r;
    r.label = f[0];
    r.T = parse_double("T", f[0].substr(0, f[0].find('|')));
    r.value = parse_double("value", f[1]);
    r.reference = parse_double("reference", f[2]);
    r.abs_error = parse_double("abs_error", f[3]);
    r.eps = parse_double("eps", f[4]);
    r.wall_ms = parse_double("wall_ms", f[5]);
    rows.push_back(r);
  }
  return rows;
}

std::string format_summary(const ExperimentConfig& config, const RunResult& result) {
  std::string s;
  s += std::string("kind: ") + kind_name(config.kind) + "\n";
  s += "rows: " + std::to_string(result.rows.size()) + "\n";
  double worst = 0.0;
  for (const ResultRow& r : result.rows) worst = std::max(worst, r.abs_error);
  s += "max abs_error: " + fmt(worst) + "\n";
  if (result.has_fit) {
    s += "fit slope: " + fmt(result.fit.slope) + "\n";
    s += "fit intercept: " + fmt(result.fit.intercept) + "\n";
    s += "fit r2: " + fmt(result.fit.r2) + "\n";
    s += "fit points: " + std::to_string(result.fit.points) + "\n";
    s += "fit threshold: " + fmt(result.fit.threshold) + "\n";
  }
  for (const std::string& n : result.notes) s += n + "\n";
  s += std::string("result: ") + (result.pass ? "PASS" : "FAIL") + "\n";
  return s;
}

void emit_report(const ExperimentConfig& config, const RunResult& result, const std::string& path) {
  const auto write = [](const std::string& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::io, "cannot write '" + p + "'");
    out << body;
    if (!out) raise(ErrorCode::io, "write failed for '" + p + "'");
  };
  write(path, format_csv(result.rows));
  write(path + ".summary.txt", format_summary(config, result));
}

}  // namespace horolab
