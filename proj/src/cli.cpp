#include "fsmooth/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsmooth/bootstrap.hpp"
#include "fsmooth/csv.hpp"
#include "fsmooth/deconv.hpp"
#include "fsmooth/density.hpp"
#include "fsmooth/markov.hpp"
#include "fsmooth/modal_regression.hpp"
#include "fsmooth/modes.hpp"
#include "fsmooth/regression.hpp"
#include "fsmooth/simulate.hpp"

namespace fsmooth::cli {

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string input;
  std::string output;
  std::optional<double> radius;
  std::string rule;
  std::vector<double> lscv_candidates;
  std::vector<std::string> grid_specs;
  double tau = 0.1;
  int replicates = 200;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
};

GridAxis parse_axis(const std::string& spec) {
  GridAxis axis;
  const auto first = spec.find(':');
  const auto second = spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("grid spec must be min:max:count, got '" + spec + "'");
  }
  axis.min = std::stod(spec.substr(0, first));
  axis.max = std::stod(spec.substr(first + 1, second - first - 1));
  const long long count = std::stoll(spec.substr(second + 1));
  if (count < 1) throw std::invalid_argument("grid spec needs count >= 1");
  axis.count = static_cast<std::size_t>(count);
  return axis;
}

std::vector<Point> build_grid(const std::vector<std::string>& specs, std::size_t d) {
  if (specs.empty()) throw std::invalid_argument("this command needs --grid min:max:count");
  std::vector<GridAxis> axes;
  if (specs.size() == 1 && d > 1) {
    axes.assign(d, parse_axis(specs[0]));
  } else {
    if (specs.size() != d) {
      throw std::invalid_argument("expected one --grid per axis (" + std::to_string(d) +
                                  " axes)");
    }
    for (const auto& s : specs) axes.push_back(parse_axis(s));
  }

  std::vector<std::vector<double>> levels;
  for (const auto& a : axes) {
    std::vector<double> v(a.count);
    for (std::size_t i = 0; i < a.count; ++i) {
      v[i] = a.count == 1 ? 0.5 * (a.min + a.max)
                          : a.min + (a.max - a.min) * static_cast<double>(i) /
                                static_cast<double>(a.count - 1);
    }
    levels.push_back(std::move(v));
  }

  std::vector<Point> grid;
  std::vector<std::size_t> idx(d, 0);
  std::size_t total = 1;
  for (const auto& l : levels) total *= l.size();
  grid.reserve(total);
  for (std::size_t p = 0; p < total; ++p) {
    Point pt(d);
    for (std::size_t j = 0; j < d; ++j) pt[j] = levels[j][idx[j]];
    grid.push_back(std::move(pt));
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < levels[j].size()) break;
      idx[j] = 0;
    }
  }
  return grid;
}

Smoothness parse_rule(const std::string& rule) {
  const auto colon = rule.find(':');
  const std::string kind = rule.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::string rest = rule.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("rule parameters must be name=value, got '" + item + "'");
      }
      kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
  }
  if (kind == "supersmooth") {
    Supersmooth s{2.0, 0.5};
    if (kv.count("alpha")) s.alpha = kv["alpha"];
    if (kv.count("c1")) s.c1 = kv["c1"];
    return s;
  }
  if (kind == "ordinary") {
    OrdinarySmooth o{3.0};
    if (kv.count("beta")) o.beta = kv["beta"];
    return o;
  }
  throw std::invalid_argument("rule must be supersmooth:... or ordinary:..., got '" + rule +
                              "'");
}

// Exactly one of --R, --rule, --lscv-candidates picks the radius.
Radius resolve_radius(const CommonOpts& opts, const SampleMatrix& sample, json* summary) {
  const int given = (opts.radius.has_value() ? 1 : 0) + (opts.rule.empty() ? 0 : 1) +
                    (opts.lscv_candidates.empty() ? 0 : 1);
  if (given != 1) {
    throw std::invalid_argument("supply exactly one of --R, --rule, --lscv-candidates");
  }
  if (opts.radius.has_value()) {
    (*summary)["radius_source"] = "explicit";
    return Radius(*opts.radius);
  }
  if (!opts.rule.empty()) {
    (*summary)["radius_source"] = "rule";
    return select_radius(parse_rule(opts.rule), sample.rows(), sample.cols());
  }
  std::vector<Radius> candidates;
  for (double c : opts.lscv_candidates) candidates.emplace_back(c);
  (*summary)["radius_source"] = "lscv";
  return select_radius_lscv(sample, candidates);
}

// Splits a CSV into predictor columns x1..xd and the optional response y.
struct LoadedData {
  std::vector<double> x;  // row-major
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> y;
  bool has_y = false;
};

LoadedData load_columns(const CsvTable& table) {
  LoadedData out;
  out.n = table.rows;
  if (table.rows == 0) throw CsvFormatError("input has a header but no data rows");

  std::vector<std::size_t> x_cols;
  for (std::size_t d = 1;; ++d) {
    const std::size_t c = table.find_column("x" + std::to_string(d));
    if (c == static_cast<std::size_t>(-1)) break;
    x_cols.push_back(c);
  }
  const std::size_t y_col = table.find_column("y");
  if (x_cols.empty()) {
    // Headerless-style fallback: every column except y is a predictor.
    for (std::size_t c = 0; c < table.cols; ++c) {
      if (c != y_col) x_cols.push_back(c);
    }
  }
  if (x_cols.empty()) throw CsvFormatError("no predictor columns found (expected x1..xd)");

  out.d = x_cols.size();
  out.x.resize(out.n * out.d);
  for (std::size_t r = 0; r < out.n; ++r) {
    for (std::size_t j = 0; j < out.d; ++j) out.x[r * out.d + j] = table.at(r, x_cols[j]);
  }
  if (y_col != static_cast<std::size_t>(-1)) {
    out.y = table.column(y_col);
    out.has_y = true;
  }
  return out;
}

std::vector<std::string> point_header(std::size_t d) {
  std::vector<std::string> h;
  for (std::size_t j = 1; j <= d; ++j) h.push_back("x" + std::to_string(j));
  return h;
}

void add_common(CLI::App* cmd, CommonOpts* opts, bool needs_input, bool needs_radius) {
  if (needs_input) {
    cmd->add_option("--input", opts->input, "input CSV path")->required();
  }
  cmd->add_option("--output", opts->output, "output CSV path")->required();
  if (needs_radius) {
    cmd->add_option("--R", opts->radius, "explicit radius (frequency cutoff)");
    cmd->add_option("--rule", opts->rule,
                    "radius rule, e.g. supersmooth:alpha=2,c1=0.5 or ordinary:beta=3");
    cmd->add_option("--lscv-candidates", opts->lscv_candidates,
                    "comma-separated candidate radii for cross-validation")
        ->delimiter(',');
  }
  cmd->add_option("--grid", opts->grid_specs, "evaluation grid min:max:count (per axis)");
  cmd->add_option("--tau", opts->tau, "miscoverage level in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  cmd->add_option("--B", opts->replicates, "bootstrap replicates");
  cmd->add_option("--seed", opts->seed, "random seed");
  cmd->add_option("--threads", opts->threads, "worker threads (0 = auto)");
}

json base_summary(const std::string& command, const CommonOpts& opts) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["input"] = opts.input;
  j["output"] = opts.output;
  j["seed"] = opts.seed;
  j["threads"] = opts.threads;
  return j;
}

int finish(json summary, const std::chrono::steady_clock::time_point& start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  summary["seconds"] =
      std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
  std::cout << summary.dump() << std::endl;
  return 0;
}

NoiseModel parse_noise(const std::string& spec, int dim) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  double param = 0.0;
  if (colon != std::string::npos) {
    const auto eq = spec.find('=', colon);
    if (eq == std::string::npos) {
      throw std::invalid_argument("noise spec must be kind:param=value");
    }
    param = std::stod(spec.substr(eq + 1));
  }
  if (kind == "gaussian") return NoiseModel{GaussianIsotropicNoise{param}, dim};
  if (kind == "laplace") return NoiseModel{LaplaceProductNoise{param}, dim};
  if (kind == "point") {
    return NoiseModel{CustomFourierNoise{[](std::span<const double>) { return 1.0; }}, dim};
  }
  throw std::invalid_argument("noise must be gaussian:h=..., laplace:b=..., or point");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Multivariate smoothing with the Fourier (sinc) kernel"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* density_cmd = app.add_subcommand("density", "density estimate with pointwise intervals");
  add_common(density_cmd, &opts, true, true);

  auto* derivs_cmd = app.add_subcommand("derivs", "density derivative tensors on a grid");
  add_common(derivs_cmd, &opts, true, true);
  int deriv_order = 1;
  derivs_cmd->add_option("--order", deriv_order, "derivative order (1 or 2)");

  auto* ci_cmd = app.add_subcommand("ci", "pointwise confidence intervals");
  add_common(ci_cmd, &opts, true, true);

  auto* band_cmd = app.add_subcommand("band", "uniform bootstrap confidence band");
  add_common(band_cmd, &opts, true, true);

  auto* regress_cmd = app.add_subcommand("regress", "regression estimate with intervals");
  add_common(regress_cmd, &opts, true, true);
  std::size_t sigma_cap = 4000;
  regress_cmd->add_option("--sigma-cap", sigma_cap, "row cap for the noise-variance traces");

  auto* deconv_cmd = app.add_subcommand("deconv", "mixing-density estimate under known noise");
  add_common(deconv_cmd, &opts, true, true);
  std::string noise_spec = "gaussian:h=0.1";
  bool use_mc = false;
  int mc_draws = 1;
  int deconv_deriv = 0;
  deconv_cmd->add_option("--noise", noise_spec, "noise model kind:param=value");
  deconv_cmd->add_flag("--mc", use_mc, "use the uniform-frequency Monte Carlo variant (1-d)");
  deconv_cmd->add_option("--m", mc_draws, "Monte Carlo draws per observation");
  deconv_cmd->add_option("--deriv", deconv_deriv, "0 for the value, 1 for d/dtheta");

  auto* modes_cmd = app.add_subcommand("modes", "local modes of the density or mixing density");
  add_common(modes_cmd, &opts, true, true);
  bool mixing = false;
  std::string modes_noise = "gaussian:h=0.1";
  std::string starts_spec;
  modes_cmd->add_flag("--mixing", mixing, "search the deconvolved mixing density");
  modes_cmd->add_option("--noise", modes_noise, "noise model for --mixing");
  modes_cmd->add_option("--starts", starts_spec,
                        "ascent starts: 'data' (default) or grid spec min:max:count");

  auto* modal_cmd = app.add_subcommand("modal", "conditional modes over a predictor grid");
  add_common(modal_cmd, &opts, true, true);
  std::string y_range_spec;
  modal_cmd->add_option("--y-range", y_range_spec, "response window lo:hi");

  auto* transition_cmd = app.add_subcommand("transition", "Markov transition density");
  add_common(transition_cmd, &opts, true, true);
  std::vector<double> x_point;
  std::vector<std::size_t> response_cols;
  transition_cmd->add_option("--x", x_point, "conditioning state, comma-separated")
      ->delimiter(',')
      ->required();
  transition_cmd
      ->add_option("--response-cols", response_cols,
                   "1-based successor coordinates the y grid refers to (default: all)")
      ->delimiter(',');

  auto* simulate_cmd = app.add_subcommand("simulate", "generate a worked-example dataset");
  add_common(simulate_cmd, &opts, false, false);
  int example = 1;
  std::size_t sim_n = 1000;
  std::vector<std::string> override_specs;
  simulate_cmd->add_option("--example", example, "example id 1..7")->required();
  simulate_cmd->add_option("--n", sim_n, "sample size / series length");
  simulate_cmd->add_option("--override", override_specs, "parameter override name=value");

  auto* lscv_cmd = app.add_subcommand("lscv", "cross-validation scores for candidate radii");
  add_common(lscv_cmd, &opts, true, false);
  std::vector<double> lscv_list;
  lscv_cmd->add_option("--candidates", lscv_list, "candidate radii")->delimiter(',')->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << std::endl;
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << std::endl;
    return 1;
  }

  try {
    if (app.got_subcommand(simulate_cmd)) {
      ExampleSpec spec;
      if (example < 1 || example > 7) {
        throw std::invalid_argument("simulate: --example must be 1..7");
      }
      spec.id = static_cast<ExampleId>(example);
      spec.n = sim_n;
      spec.seed = opts.seed;
      for (const auto& ov : override_specs) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
          throw std::invalid_argument("override must be name=value, got '" + ov + "'");
        }
        spec.overrides[ov.substr(0, eq)] = std::stod(ov.substr(eq + 1));
      }
      const GeneratedData data = generate(spec);

      json summary = base_summary("simulate", opts);
      summary["estimator"] = "example_generator";
      summary["example"] = example;
      std::vector<std::vector<double>> rows;
      std::vector<std::string> header;
      if (std::holds_alternative<LabeledSample>(data)) {
        const auto& ls = std::get<LabeledSample>(data);
        header = point_header(ls.dim());
        header.push_back("y");
        for (std::size_t i = 0; i < ls.size(); ++i) {
          std::vector<double> row(ls.x().row(i).begin(), ls.x().row(i).end());
          row.push_back(ls.y()[i]);
          rows.push_back(std::move(row));
        }
        summary["n"] = ls.size();
        summary["d"] = ls.dim();
      } else if (std::holds_alternative<SampleMatrix>(data)) {
        const auto& sm = std::get<SampleMatrix>(data);
        header = point_header(sm.cols());
        for (std::size_t i = 0; i < sm.rows(); ++i) {
          rows.emplace_back(sm.row(i).begin(), sm.row(i).end());
        }
        summary["n"] = sm.rows();
        summary["d"] = sm.cols();
      } else {
        const auto& ms = std::get<MarkovSeries>(data);
        header = point_header(ms.dim());
        for (std::size_t i = 0; i < ms.length(); ++i) {
          rows.emplace_back(ms.row(i).begin(), ms.row(i).end());
        }
        summary["n"] = ms.length();
        summary["d"] = ms.dim();
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    const CsvTable table = read_csv(opts.input);
    const LoadedData loaded = load_columns(table);

    if (app.got_subcommand(transition_cmd)) {
      MarkovSeries series(loaded.x, loaded.n, loaded.d);
      json summary = base_summary("transition", opts);
      summary["estimator"] = "fourier_transition";
      // The marginal sample drives data-driven radius choices.
      SampleMatrix marginal(loaded.x, loaded.n, loaded.d);
      const Radius R = resolve_radius(opts, marginal, &summary);
      EstimatorConfig cfg(R);

      std::vector<std::size_t> cols0;
      for (std::size_t c : response_cols) {
        if (c < 1) throw std::invalid_argument("--response-cols entries are 1-based");
        cols0.push_back(c - 1);
      }
      const std::size_t dy = cols0.empty() ? loaded.d : cols0.size();
      if (x_point.size() != loaded.d) {
        throw std::invalid_argument("--x dimension does not match the series");
      }
      const std::vector<Point> grid = build_grid(opts.grid_specs, dy);
      const auto evals = transition_grid(series, x_point, grid, cfg, cols0, opts.threads);

      std::vector<std::string> header;
      for (std::size_t j = 1; j <= dy; ++j) header.push_back("y" + std::to_string(j));
      header.push_back("estimate");
      header.push_back("reliable");
      std::vector<std::vector<double>> rows;
      for (const auto& ev : evals) {
        std::vector<double> row(ev.y.begin(), ev.y.end());
        row.push_back(ev.value);
        row.push_back(ev.reliable ? 1.0 : 0.0);
        rows.push_back(std::move(row));
      }
      write_csv(opts.output, header, rows);
      summary["estimator"] = "fourier_transition";
      summary["R"] = R.value();
      summary["n"] = series.length();
      summary["d"] = series.dim();
      return finish(std::move(summary), start);
    }

    if (app.got_subcommand(regress_cmd) || app.got_subcommand(modal_cmd)) {
      if (!loaded.has_y) throw CsvFormatError("this command needs a y column");
      LabeledSample data(SampleMatrix(loaded.x, loaded.n, loaded.d), loaded.y);

      json summary = base_summary(app.got_subcommand(regress_cmd) ? "regress" : "modal", opts);
      const Radius R = resolve_radius(opts, data.x(), &summary);
      EstimatorConfig cfg(R);
      summary["R"] = R.value();
      summary["n"] = data.size();
      summary["d"] = data.dim();

      if (app.got_subcommand(regress_cmd)) {
        summary["estimator"] = "fourier_regression";
        const std::vector<Point> grid = build_grid(opts.grid_specs, data.dim());
        const double sigma2 = sigma2_hat(data, cfg, sigma_cap, 0x5eed, opts.threads);
        summary["sigma2"] = sigma2;
        std::vector<std::string> header = point_header(data.dim());
        header.insert(header.end(), {"estimate", "denominator", "reliable", "lower", "upper"});
        std::vector<std::vector<double>> rows;
        for (const auto& pt : grid) {
          const RegressionEvaluation ev = regress_at(data, pt, cfg);
          IntervalEstimate interval;
          interval.lower = interval.upper = ev.m_hat;
          if (ev.denominator != 0.0) {
            interval = regress_ci_with_sigma(data, pt, cfg, opts.tau, sigma2);
          }
          std::vector<double> row(pt.begin(), pt.end());
          row.insert(row.end(), {ev.m_hat, ev.denominator, ev.reliable ? 1.0 : 0.0,
                                 interval.lower, interval.upper});
          rows.push_back(std::move(row));
        }
        write_csv(opts.output, header, rows);
        return finish(std::move(summary), start);
      }

      summary["estimator"] = "fourier_conditional_modes";
      const std::vector<Point> grid = build_grid(opts.grid_specs, data.dim());
      YRange range = default_y_range(data, R);
      if (!y_range_spec.empty()) {
        const auto colon = y_range_spec.find(':');
        if (colon == std::string::npos) {
          throw std::invalid_argument("--y-range must be lo:hi");
        }
        range.lo = std::stod(y_range_spec.substr(0, colon));
        range.hi = std::stod(y_range_spec.substr(colon + 1));
      }
      const ModalCurve curve = modal_curve(data, grid, cfg, AscentConfig{}, range, opts.threads);
      std::vector<std::string> header = point_header(data.dim());
      header.insert(header.end(), {"mode_y", "dy", "dyy"});
      std::vector<std::vector<double>> rows;
      for (std::size_t g = 0; g < curve.x_grid.size(); ++g) {
        const auto& ms = curve.mode_sets[g];
        for (std::size_t m = 0; m < ms.modes_y.size(); ++m) {
          std::vector<double> row(curve.x_grid[g].begin(), curve.x_grid[g].end());
          row.insert(row.end(),
                     {ms.modes_y[m], ms.dy_certificates[m], ms.dyy_certificates[m]});
          rows.push_back(std::move(row));
        }
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    // Remaining commands operate on an unlabeled sample.
    SampleMatrix sample(loaded.x, loaded.n, loaded.d);

    if (app.got_subcommand(lscv_cmd)) {
      json summary = base_summary("lscv", opts);
      summary["estimator"] = "lscv";
      summary["n"] = sample.rows();
      summary["d"] = sample.cols();
      std::vector<Radius> candidates;
      for (double c : lscv_list) candidates.emplace_back(c);
      std::vector<std::vector<double>> rows;
      for (const auto& c : candidates) {
        rows.push_back({c.value(), lscv_criterion(sample, c)});
      }
      const Radius chosen = select_radius_lscv(sample, candidates);
      summary["R"] = chosen.value();
      write_csv(opts.output, {"R", "criterion"}, rows);
      return finish(std::move(summary), start);
    }

    json summary = base_summary(app.get_subcommands().front()->get_name(), opts);
    const Radius R = resolve_radius(opts, sample, &summary);
    EstimatorConfig cfg(R);
    summary["R"] = R.value();
    summary["n"] = sample.rows();
    summary["d"] = sample.cols();

    if (app.got_subcommand(density_cmd) || app.got_subcommand(ci_cmd)) {
      summary["estimator"] = "fourier_density";
      const std::vector<Point> grid = build_grid(opts.grid_specs, sample.cols());
      std::vector<std::string> header = point_header(sample.cols());
      header.insert(header.end(), {"estimate", "clipped", "lower", "upper"});
      std::vector<std::vector<double>> rows;
      for (const auto& pt : grid) {
        const DensityEvaluation ev = density_at(sample, pt, cfg);
        const IntervalEstimate interval = pointwise_ci(sample, pt, cfg, opts.tau);
        std::vector<double> row(pt.begin(), pt.end());
        row.insert(row.end(), {ev.raw_value, ev.clipped_value, interval.lower, interval.upper});
        rows.push_back(std::move(row));
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    if (app.got_subcommand(derivs_cmd)) {
      summary["estimator"] = "fourier_density_derivative";
      summary["order"] = deriv_order;
      const std::vector<Point> grid = build_grid(opts.grid_specs, sample.cols());
      const std::size_t d = sample.cols();
      std::vector<std::string> header = point_header(d);
      if (deriv_order == 1) {
        for (std::size_t j = 1; j <= d; ++j) header.push_back("d1_" + std::to_string(j));
      } else {
        for (std::size_t u = 1; u <= d; ++u) {
          for (std::size_t v = 1; v <= d; ++v) {
            header.push_back("d2_" + std::to_string(u) + std::to_string(v));
          }
        }
      }
      std::vector<std::vector<double>> rows;
      for (const auto& pt : grid) {
        const DerivativeTensor t = density_derivative_at(sample, pt, deriv_order, cfg);
        std::vector<double> row(pt.begin(), pt.end());
        row.insert(row.end(), t.entries().begin(), t.entries().end());
        rows.push_back(std::move(row));
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    if (app.got_subcommand(band_cmd)) {
      summary["estimator"] = "bootstrap_band";
      BootstrapPlan plan;
      plan.replicates = opts.replicates;
      plan.seed = opts.seed;
      plan.grid = build_grid(opts.grid_specs, sample.cols());
      const BandEstimate band = bootstrap_band(sample, cfg, plan, opts.tau, opts.threads);
      if (band.low_replicate_warning) {
        std::cerr << "warning: B * tau < 1; the band quantile is the largest deviation"
                  << std::endl;
      }
      summary["eta"] = band.eta;
      summary["B"] = band.replicates;
      std::vector<std::string> header = point_header(sample.cols());
      header.insert(header.end(), {"estimate", "lower", "upper"});
      std::vector<std::vector<double>> rows;
      for (std::size_t g = 0; g < band.grid.size(); ++g) {
        std::vector<double> row(band.grid[g].begin(), band.grid[g].end());
        row.insert(row.end(), {band.center[g], band.center[g] - band.half_width[g],
                               band.center[g] + band.half_width[g]});
        rows.push_back(std::move(row));
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    if (app.got_subcommand(deconv_cmd)) {
      summary["estimator"] = use_mc ? "fourier_deconvolution_mc" : "fourier_deconvolution";
      const std::vector<Point> grid = build_grid(opts.grid_specs, sample.cols());
      std::vector<std::string> header = point_header(sample.cols());
      header.push_back(deconv_deriv == 0 ? "estimate" : "derivative");
      if (use_mc) header.push_back("std_error");
      std::vector<std::vector<double>> rows;
      if (use_mc) {
        if (sample.cols() != 1) throw std::invalid_argument("--mc needs 1-d input");
        const auto noise = parse_noise(noise_spec, 1);
        if (!std::holds_alternative<GaussianIsotropicNoise>(noise.kind)) {
          throw std::invalid_argument("--mc supports gaussian noise only");
        }
        const double h = std::get<GaussianIsotropicNoise>(noise.kind).h;
        for (const auto& pt : grid) {
          const DeconvEvaluation ev =
              deconv_deriv == 0
                  ? deconv_at_mc(sample, pt[0], h, cfg.R, mc_draws, opts.seed)
                  : deconv_derivative_mc(sample, pt[0], h, cfg.R, mc_draws, opts.seed);
          rows.push_back({pt[0], ev.raw_value, ev.mc_std_error.value_or(0.0)});
        }
      } else {
        const NoiseModel noise = parse_noise(noise_spec, static_cast<int>(sample.cols()));
        const DeconvEvaluator ev(sample, noise, cfg);
        for (const auto& pt : grid) {
          std::vector<double> row(pt.begin(), pt.end());
          if (deconv_deriv == 0) {
            row.push_back(ev.value(pt));
          } else {
            if (sample.cols() != 1) {
              throw std::invalid_argument("--deriv 1 output needs 1-d input");
            }
            row.push_back(ev.derivative(pt, 1).at(0));
          }
          rows.push_back(std::move(row));
        }
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    if (app.got_subcommand(modes_cmd)) {
      summary["estimator"] = mixing ? "mixing_density_modes" : "density_modes";
      AscentConfig ascent;
      if (!starts_spec.empty() && starts_spec != "data") {
        const GridAxis axis = parse_axis(starts_spec);
        GridStartSpec gs;
        gs.lo.assign(sample.cols(), axis.min);
        gs.hi.assign(sample.cols(), axis.max);
        gs.counts.assign(sample.cols(), axis.count);
        ascent.grid_starts = gs;
      }
      const ModeSet modes =
          mixing ? find_modes_mixing(sample, parse_noise(modes_noise,
                                                         static_cast<int>(sample.cols())),
                                     cfg, ascent, opts.threads)
                 : find_modes_density(sample, cfg, ascent, opts.threads);
      summary["k"] = modes.k;
      summary["starts"] = modes.starts_used;
      summary["converged"] = modes.converged;
      std::vector<std::string> header = point_header(sample.cols());
      header.insert(header.end(), {"value", "grad_norm", "hessian_top_eig"});
      std::vector<std::vector<double>> rows;
      for (std::size_t m = 0; m < modes.k; ++m) {
        std::vector<double> row(modes.modes[m].begin(), modes.modes[m].end());
        row.insert(row.end(),
                   {modes.values[m], modes.gradient_norms[m], modes.hessian_top_eigs[m]});
        rows.push_back(std::move(row));
      }
      write_csv(opts.output, header, rows);
      return finish(std::move(summary), start);
    }

    throw std::invalid_argument("unknown command");
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

}  // namespace fsmooth::cli
