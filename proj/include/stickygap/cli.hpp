#pragma once

// Command-line front end. run() is what the stickygap binary calls; it is kept
// in the header so tests can drive it with string streams.
//
//   stickygap bound {ball|manifold|partial-disk|needle|generic} [flags]
//   stickygap figure {fig1|fig2a|fig2b} [--n N] [--out PATH]
//   stickygap solve {neumann-gap|disk-gap|needle-gamma|partial-threshold} [flags]
//
// Exit codes: 0 ok, 2 bad flags, 3 numeric failure, 4 unwritable output.

#include <cmath>
#include <fstream>
#include <functional>
#include <list>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stickygap/disk_exact.hpp"
#include "stickygap/error.hpp"
#include "stickygap/interpolation.hpp"
#include "stickygap/models.hpp"
#include "stickygap/output_record.hpp"

namespace stickygap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

class OutputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

// Numeric flags are taken as text so that "inf" is accepted and the echo shows
// exactly what was parsed.
struct NumericFlags {
  std::map<std::string, std::string> text;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App& app, const std::string& name, const std::string& help) {
    opts[name] = app.add_option("--" + name, text[name], help)->type_name("NUMBER");
  }
  bool has(const std::string& name) const {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
  double get(const std::string& name) const {
    if (!has(name)) throw DomainError("--" + name + " is required");
    return parse_number(text.at(name));
  }
  double get_or(const std::string& name, double fallback) const {
    return has(name) ? get(name) : fallback;
  }
  int get_int(const std::string& name) const {
    const double v = get(name);
    if (!(std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e9)) {
      throw DomainError("--" + name + " must be an integer");
    }
    return static_cast<int>(v);
  }
  int get_int_or(const std::string& name, int fallback) const {
    return has(name) ? get_int(name) : fallback;
  }
  // Echoes every supplied flag in the order the leaf declared them.
  void echo(OutputRecord& r, const std::vector<std::string>& order) const {
    for (const auto& name : order) {
      if (has(name)) r.add_query(name, parse_number(text.at(name)));
    }
  }
};

struct Leaf {
  CLI::App* app = nullptr;
  NumericFlags flags;
  std::function<OutputRecord(const NumericFlags&, bool strict)> action;
  std::optional<CurveLayout> curve_layout;  // set for figure leaves
};

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw OutputError("failed writing '" + path + "'");
}

inline DiskEigenConfig disk_config(bool strict) {
  DiskEigenConfig cfg = apply_env_overrides({});
  cfg.strict_scan = strict;
  return cfg;
}

inline void add_constants(OutputRecord& r, const BoundConstants& k, const std::string& anchor) {
  r.add_result("c_omega", k.c_omega, anchor);
  r.add_result("c_sigma", k.c_sigma, anchor);
  r.add_result("k_sigma_omega", k.k_sigma_omega, anchor);
  r.add_result("k1", k.k1, anchor);
  r.add_result("k2", k.k2, anchor);
}

inline void add_root(OutputRecord& r, const RootResult& root, double scale_exponent) {
  auto map = [&](double x) { return scale_exponent == 2.0 ? x * x : x; };
  r.add_result("residual", root.residual, "root search residual |f(root)|");
  r.add_result("bracket_lo", map(root.bracket.first), "root search bracket");
  r.add_result("bracket_hi", map(root.bracket.second), "root search bracket");
  r.add_result("converged", root.converged ? 1.0 : 0.0, "root search status");
}

// Shared tail of every bound leaf: one alpha or a whole curve.
inline OutputRecord finish_bound(OutputRecord r, const NumericFlags& f,
                                 const std::function<double(Alpha)>& bound,
                                 std::optional<Alpha> fixed_alpha, const std::string& anchor) {
  if (f.has("curve")) {
    r.curve = sample_curve(f.get_int("curve"), bound);
    for (double v : r.curve->upper_bounds) {
      if (!std::isfinite(v)) throw NonFinite("bound curve has a non-finite value");
    }
    r.curve->validate();
    return r;
  }
  const Alpha alpha = fixed_alpha ? *fixed_alpha : Alpha{f.get("alpha")};
  if (fixed_alpha) r.add_result("alpha", alpha.value(), "alpha = gamma / (d + gamma)");
  const double value = bound(alpha);
  if (!std::isfinite(value)) throw NonFinite("bound evaluated to a non-finite value");
  r.add_result("upper_bound", value, anchor);
  return r;
}

inline OutputRecord bound_ball(const NumericFlags& f) {
  OutputRecord r;
  r.command = "bound ball";
  f.echo(r, {"d", "beta", "gamma", "c-omega", "curve"});
  const BallSpec spec{f.get_int_or("d", 2), f.get_or("beta", 1.0), f.get_or("gamma", 1.0)};
  std::optional<double> c_omega;
  if (f.has("c-omega")) c_omega = f.get("c-omega");
  const BoundConstants k = ball_constants(spec, c_omega);
  add_constants(r, k, "ball constants");
  return finish_bound(
      std::move(r), f,
      [&](Alpha a) { return ball_bound_formula(spec.d, spec.beta, k.c_omega, a); }, spec.alpha(),
      "ball bound");
}

inline OutputRecord bound_manifold(const NumericFlags& f) {
  OutputRecord r;
  r.command = "bound manifold";
  f.echo(r, {"d", "k-r", "k-2", "c-omega", "c-sigma", "vol-ratio", "alpha", "curve"});
  const ManifoldSpec spec{f.get_int("d"),       f.get("k-r"),     f.get("k-2"),
                          f.get("c-omega"),     f.get("c-sigma"), f.get("vol-ratio")};
  add_constants(r, manifold_constants(spec), "manifold constants");
  if (!f.has("curve")) {
    const Alpha alpha{f.get("alpha")};
    r.add_result("m1", manifold_m1(spec, alpha), "manifold interpolation route M1");
    r.add_result("m2", manifold_m2(spec, alpha), "manifold direct route M2");
  }
  return finish_bound(
      std::move(r), f, [&](Alpha a) { return manifold_bound(spec, a); }, std::nullopt,
      "manifold bound min(M1, M2)");
}

inline OutputRecord bound_partial_disk(const NumericFlags& f) {
  OutputRecord r;
  r.command = "bound partial-disk";
  f.echo(r, {"delta", "alpha", "curve"});
  const PartialDiskSpec spec{f.get("delta")};
  add_constants(r, partial_disk_constants(spec), "partial disk constants");
  return finish_bound(
      std::move(r), f, [&](Alpha a) { return partial_disk_bound(spec, a); }, std::nullopt,
      "partial disk bound");
}

inline OutputRecord bound_needle(const NumericFlags& f) {
  OutputRecord r;
  r.command = "bound needle";
  f.echo(r, {"L", "beta", "alpha", "curve"});
  const NeedleSpec spec{f.get_or("L", 2.0 * std::numbers::pi), f.get_or("beta", 1.0)};
  r.add_result("gamma_l", needle_gamma(spec), "needle secular equation, smallest root");
  add_constants(r, needle_constants(spec), "needle constants");
  return finish_bound(
      std::move(r), f, [&](Alpha a) { return needle_bound(spec, a); }, std::nullopt,
      "needle bound");
}

inline OutputRecord bound_generic(const NumericFlags& f) {
  OutputRecord r;
  r.command = "bound generic";
  f.echo(r, {"c-omega", "c-sigma", "k", "k1", "k2", "alpha", "curve"});
  const BoundConstants k{f.get("c-omega"), f.get("c-sigma"), f.get_or("k", kInfinity),
                         f.get("k1"), f.get("k2")};
  k.validate();
  return finish_bound(
      std::move(r), f, [&](Alpha a) { return interpolation_bound(k, a); }, std::nullopt,
      "interpolation bound");
}

inline OutputRecord figure(const std::string& which, const NumericFlags& f, bool strict) {
  OutputRecord r;
  r.command = "figure " + which;
  f.echo(r, {"n"});
  const int n = f.get_int_or("n", 99);
  stickygap::detail::require(n >= 2, "--n must be >= 2");
  if (which == "fig1") {
    r.curve = exact_curve(n, disk_config(strict));
    r.add_result("sigma_omega", neumann_disk_gap(), "Neumann gap of the unit disk");
  } else {
    const PartialDiskSpec spec{which == "fig2a" ? 0.5 : 0.9};
    r.add_query("delta", spec.delta);
    r.curve = sample_curve(n, [&](Alpha a) { return partial_disk_bound(spec, a); });
    const BoundConstants k = partial_disk_constants(spec);
    add_constants(r, k, "partial disk constants");
  }
  r.curve->validate();
  r.add_result("rows", static_cast<double>(r.curve->alphas.size()), "alpha grid (i + 1/2) / n");
  r.add_result("bound_first", r.curve->upper_bounds.front(), "curve endpoint, smallest alpha");
  r.add_result("bound_last", r.curve->upper_bounds.back(), "curve endpoint, largest alpha");
  return r;
}

inline OutputRecord solve_neumann(bool strict) {
  OutputRecord r;
  r.command = "solve neumann-gap";
  const NeumannGap g = neumann_disk_gap_detail(disk_config(strict));
  r.add_result("sigma_omega", g.sigma, "first nonzero Neumann eigenvalue of the unit disk");
  r.add_result("c_omega", 1.0 / g.sigma, "C_Omega = 1 / sigma_Omega");
  r.add_result("m_star", g.m_star, "minimising Bessel order");
  r.add_result("x_star", g.root.root, "first positive zero of J_m'");
  add_root(r, g.root, 2.0);
  return r;
}

inline OutputRecord solve_disk_gap(const NumericFlags& f, bool strict) {
  OutputRecord r;
  r.command = "solve disk-gap";
  f.echo(r, {"alpha"});
  const Alpha alpha{f.get("alpha")};
  const DiskGap g = disk_exact_gap(alpha, disk_config(strict));
  r.add_result("lambda_star", g.lambda_star, "disk secular equation, smallest root over modes");
  r.add_result("c_alpha", 1.0 / g.lambda_star, "C_alpha = 1 / lambda_star");
  r.add_result("m_star", g.m_star, "minimising Bessel order");
  add_root(r, g.root, 1.0);
  return r;
}

inline OutputRecord solve_needle_gamma(const NumericFlags& f) {
  OutputRecord r;
  r.command = "solve needle-gamma";
  f.echo(r, {"L"});
  const NeedleSpec spec{f.get_or("L", 2.0 * std::numbers::pi), 1.0};
  const RootResult root = needle_gamma_root(spec);
  r.add_result("gamma_l", root.root, "needle secular equation, smallest root");
  add_root(r, root, 1.0);
  return r;
}

inline OutputRecord solve_partial_threshold() {
  OutputRecord r;
  r.command = "solve partial-threshold";
  const RootResult root = partial_disk_continuity_threshold();
  r.add_result("delta_threshold", root.root, "4 delta^2 = C_Omega + K_1(delta)");
  add_root(r, root, 1.0);
  return r;
}

}  // namespace detail

/// Parses args (args[0] is the program name), runs the command and writes
/// the record to out and diagnostics to err. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper bounds on the Poincare constant of sticky-reflecting Brownian motion",
               "stickygap"};
  app.require_subcommand(1);

  bool json = false;
  bool strict = false;
  std::string out_path;
  std::list<detail::Leaf> leaves;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::vector<std::pair<std::string, std::string>> numeric) {
    CLI::App* sub = parent->add_subcommand(name, help);
    detail::Leaf& l = leaves.emplace_back();
    l.app = sub;
    for (const auto& [flag, flag_help] : numeric) l.flags.add(*sub, flag, flag_help);
    sub->add_flag("--json", json, "print the record as JSON instead of CSV");
    sub->add_option("--out", out_path, "write the CSV (or JSON) to this path");
    return &l;
  };

  CLI::App* bound = app.add_subcommand("bound", "evaluate an upper bound on C_alpha");
  bound->require_subcommand(1);
  CLI::App* fig = app.add_subcommand("figure", "emit figure data as CSV");
  fig->require_subcommand(1);
  CLI::App* solve = app.add_subcommand("solve", "solve one secular equation");
  solve->require_subcommand(1);

  const std::pair<std::string, std::string> alpha{"alpha", "bulk weight alpha in (0, 1)"};
  const std::pair<std::string, std::string> curve{"curve", "sample N alphas instead of one"};

  leaf(bound, "ball", "unit ball, whole boundary sticky",
       {{"d", "dimension"}, {"beta", "tangential diffusivity"}, {"gamma", "sticky rate"},
        {"c-omega", "Neumann constant (required for d >= 3)"}, curve})
      ->action = [](const detail::NumericFlags& f, bool) { return detail::bound_ball(f); };
  leaf(bound, "manifold", "manifold with curvature bounds",
       {{"d", "dimension"}, {"k-r", "Ricci lower bound"}, {"k-2", "second fundamental form bound"},
        {"c-omega", "bulk Poincare constant"}, {"c-sigma", "boundary Poincare constant"},
        {"vol-ratio", "|Omega| / |boundary|"}, alpha, curve})
      ->action = [](const detail::NumericFlags& f, bool) { return detail::bound_manifold(f); };
  leaf(bound, "partial-disk", "unit disk sticky on an arc",
       {{"delta", "arc fraction in (0, 1)"}, alpha, curve})
      ->action = [](const detail::NumericFlags& f, bool) { return detail::bound_partial_disk(f); };
  leaf(bound, "needle", "unit disk with an attached needle",
       {{"L", "needle length"}, {"beta", "tangential diffusivity"}, alpha, curve})
      ->action = [](const detail::NumericFlags& f, bool) { return detail::bound_needle(f); };
  leaf(bound, "generic", "raw constants",
       {{"c-omega", "C_Omega"}, {"c-sigma", "C_Sigma"}, {"k", "K_{Sigma,Omega} (may be inf)"},
        {"k1", "K_1"}, {"k2", "K_2"}, alpha, curve})
      ->action = [](const detail::NumericFlags& f, bool) { return detail::bound_generic(f); };

  for (const std::string name : {"fig1", "fig2a", "fig2b"}) {
    detail::Leaf* l = leaf(fig, name, name + " data", {{"n", "number of alpha samples"}});
    l->action = [name](const detail::NumericFlags& f, bool s) { return detail::figure(name, f, s); };
    l->curve_layout = name == "fig1" ? CurveLayout::ExactThenBound : CurveLayout::BoundOnly;
  }

  leaf(solve, "neumann-gap", "first Neumann eigenvalue of the unit disk", {})->action =
      [](const detail::NumericFlags&, bool s) { return detail::solve_neumann(s); };
  leaf(solve, "disk-gap", "exact sticky gap of the unit disk", {alpha})->action =
      [](const detail::NumericFlags& f, bool s) { return detail::solve_disk_gap(f, s); };
  leaf(solve, "needle-gamma", "smallest root of the needle equation", {{"L", "needle length"}})
      ->action = [](const detail::NumericFlags& f, bool) { return detail::solve_needle_gamma(f); };
  leaf(solve, "partial-threshold", "continuity threshold of the partial disk", {})->action =
      [](const detail::NumericFlags&, bool) { return detail::solve_partial_threshold(); };

  for (auto& l : leaves) {
    if (l.app->get_parent() != bound && l.app->get_parent() != fig) {
      l.app->add_flag("--strict-scan", strict, "scan every Bessel order up to the cap");
    } else if (l.app->get_parent() == fig && l.app->get_name() == "fig1") {
      l.app->add_flag("--strict-scan", strict, "scan every Bessel order up to the cap");
    }
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const detail::Leaf* chosen = nullptr;
  for (const auto& l : leaves) {
    if (l.app->parsed()) chosen = &l;
  }
  if (chosen == nullptr) {
    err << "error: no command given\n";
    return kExitUsage;
  }

  try {
    const OutputRecord record = chosen->action(chosen->flags, strict);
    std::string text;
    if (json) {
      text = to_json(record).dump(2) + "\n";
    } else if (record.curve) {
      text = curve_to_csv(*record.curve,
                          chosen->curve_layout.value_or(record.curve->exact
                                                            ? CurveLayout::BoundThenExact
                                                            : CurveLayout::BoundOnly));
    } else {
      text = to_csv(record);
    }
    if (out_path.empty()) {
      out << text;
    } else {
      detail::write_file(out_path, text);
      if (record.curve && !json) out << to_csv(record);
    }
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace stickygap::cli
