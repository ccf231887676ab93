#pragma once

// Subcommand dispatch for the `rtsl` tool. run_command is usable in-process,
// which is how the tests drive it.
//
// Exit codes: 0 success, 1 a check failed (the failing invariant is named on
// stderr), 2 usage error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rtsl/rtsl.hpp"
#include "rtsl_cli/config.hpp"
#include "rtsl_cli/csv.hpp"
#include "rtsl_cli/svg.hpp"

namespace rtsl::cli {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline std::string fixed(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline BranchingDistribution parse_dist(const std::string& literal) {
  try {
    return BranchingDistribution::parse(literal);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--dist: ") + e.what());
  }
}

inline void require(bool cond, const std::string& message) {
  if (!cond) throw UsageError(message);
}

class Outputs {
 public:
  Outputs(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  /// CSV to --out (plus metadata) when given, otherwise to stdout.
  void table(const CsvTable& t) {
    if (cfg_.out.empty()) {
      out_ << to_csv(t);
      return;
    }
    write_csv(cfg_.out, t);
    files_.push_back(cfg_.out);
    out_ << "wrote " << cfg_.out << " (" << t.rows.size() << " rows)\n";
  }

  void text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << body;
    files_.push_back(path);
    out_ << "wrote " << path << "\n";
  }

  void finish(std::chrono::steady_clock::time_point start) const {
    std::optional<double> wall;
    if (cfg_.timing)
      wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& f : files_) write_metadata(f, cfg_, wall);
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::vector<std::string> files_;
};

}  // namespace detail

inline int cmd_lyapunov(const RunConfig& cfg, std::ostream& out, detail::Outputs& io) {
  const auto dist = detail::parse_dist(cfg.dist);
  detail::require(cfg.n >= 100, "--n must be at least 100");
  auto grid = cfg.energies.empty() ? energy_grid(cfg.emin, cfg.emax, cfg.steps) : cfg.energies;
  const auto curve = lyapunov_curve(dist, grid, cfg.n, cfg.samples, cfg.seed);
  CsvTable t{{"energy", "lyapunov", "std_err", "n", "samples"}, {}};
  for (const auto& e : curve)
    t.rows.push_back({fmt(e.energy), fmt(e.mean), fmt(e.std_err), fmt(std::uint64_t{e.n}),
                      fmt(std::uint64_t{e.samples})});
  io.table(t);
  (void)out;
  return 0;
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, detail::Outputs& io) {
  const auto dist = detail::parse_dist(cfg.dist);
  detail::require(cfg.size <= 50000, "--size must not exceed 50000");
  const auto h = spectrum_histogram(dist, cfg.size, cfg.seed, cfg.bins);
  CsvTable t{{"bin_left", "bin_right", "count"}, {}};
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    t.rows.push_back({fmt(h.bin_edges[i]), fmt(h.bin_edges[i + 1]), fmt(std::uint64_t{h.counts[i]})});
  io.table(t);
  out << "# min eigenvalue " << fmt(h.min_eigenvalue) << "\n"
      << "# max eigenvalue " << fmt(h.max_eigenvalue) << "\n"
      << "# band edge 2*sqrt(d_mu) " << fmt(h.edge) << "\n"
      << "# empty bin fraction " << fmt(h.empty_bin_fraction) << "\n";
  if (h.outside > 0)
    throw CheckFailure("spectrum inclusion: " + std::to_string(h.outside) +
                       " eigenvalues beyond 2*sqrt(d_mu) + 1e-9");
  return 0;
}

inline int cmd_decay(const RunConfig& cfg, std::ostream& out, detail::Outputs& io) {
  const auto dist = detail::parse_dist(cfg.dist);
  detail::require(cfg.window.size() == 2, "--window takes two values a,b");
  const double lo = cfg.window[0], hi = cfg.window[1];
  const double edge = 2.0 * std::sqrt(static_cast<double>(dist.d_mu()));
  detail::require(lo < hi && lo > -edge && hi < edge,
                  "--window must lie inside (-2 sqrt(d_mu), 2 sqrt(d_mu))");
  detail::require(!(lo <= 0.0 && hi >= 0.0), "--window must exclude 0");
  detail::require(cfg.ref_n >= 100, "--ref-n must be at least 100");
  const auto reports =
      localization_report(dist, cfg.size, cfg.seed, lo, hi,
                          {static_cast<std::size_t>(cfg.ref_n),
                           static_cast<std::size_t>(cfg.ref_samples), worker_count()});
  CsvTable t{{"eigenvalue", "fitted_rate", "reference_L", "ratio", "fit_residual"}, {}};
  std::vector<double> ratios, rates;
  double worst = 0.0;
  for (const auto& r : reports) {
    t.rows.push_back({fmt(r.eigenvalue), fmt(r.fitted_rate), fmt(r.reference_rate), fmt(r.ratio()),
                      fmt(r.fit_residual)});
    ratios.push_back(r.ratio());
    rates.push_back(r.fitted_rate);
    worst = std::max(worst, r.eigen_residual);
  }
  io.table(t);
  out << "# eigenvalues in window " << reports.size() << "\n"
      << "# median fitted rate " << fmt(finite_median(rates)) << "\n"
      << "# median ratio " << fmt(finite_median(ratios)) << "\n"
      << "# max eigenvector residual " << detail::sci(worst) << "\n";
  if (worst > 1e-8) throw CheckFailure("eigenvector residual above 1e-8: " + detail::sci(worst));
  return 0;
}

inline int cmd_weyl(const RunConfig& cfg, std::ostream& out, detail::Outputs& io) {
  const auto dist = detail::parse_dist(cfg.dist);
  detail::require(dist.contains(cfg.dmax), "--dmax must be in the support of --dist");
  detail::require(cfg.dmax == dist.d_mu(), "--dmax must be the largest support value");
  detail::require(cfg.run_start >= 1, "--start must be at least 1");
  const double edge = 2.0 * std::sqrt(static_cast<double>(cfg.dmax));
  if (std::abs(cfg.energy) > edge) throw UsageError("outside asymptotic spectrum");
  std::vector<double> residual(cfg.runs.size());
  parallel_for(cfg.runs.size(), [&](std::size_t i) {
    const std::size_t r = cfg.runs[i];
    const std::size_t k = cfg.run_start;
    const auto w = engineered_sequence(dist, cfg.dmax, k - 1, r + 2, k + r + 16,
                                       derive_seed(cfg.seed, i));
    residual[i] = weyl_residual(w, cfg.dmax, cfg.energy, k, r);
  });
  CsvTable t{{"R", "residual", "bound"}, {}};
  std::string failed;
  for (std::size_t i = 0; i < cfg.runs.size(); ++i) {
    const double bound = weyl_bound(cfg.dmax, cfg.energy, cfg.runs[i]);
    t.rows.push_back({fmt(cfg.runs[i]), fmt(residual[i]), fmt(bound)});
    // the bound is attained at E = 0; allow for rounding only
    if (residual[i] > bound * (1.0 + 1e-12)) failed += " R=" + std::to_string(cfg.runs[i]);
  }
  io.table(t);
  (void)out;
  if (!failed.empty()) throw CheckFailure("Weyl residual bound violated at" + failed);
  return 0;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out, detail::Outputs&) {
  detail::require(!cfg.branching.empty() || cfg.depth == 0, "--branching is required");
  detail::require(cfg.branching.size() >= cfg.depth, "branching list shorter than depth");
  std::optional<RadialTree> tree;
  try {
    tree.emplace(cfg.branching, cfg.depth);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto& t = *tree;
  const auto beta = multiplicities(t);
  out << "β =";
  for (std::size_t n = 0; n < beta.size(); ++n) out << (n ? "," : " ") << beta[n];
  out << "\n";
  const auto total = block_dimension_total(t);
  const auto vertices = t.vertex_count();
  out << "dimension identity: " << total << " = " << vertices << "\n";
  std::vector<std::string> failures;
  if (total != vertices) failures.push_back("dimension identity");

  const bool small = vertices <= kDenseLimit;
  double worst = 0.0;
  for (std::size_t n = 0; n <= t.depth(); ++n) {
    std::vector<std::uint64_t> copies;
    if (small) {
      copies.resize(beta[n]);
      std::iota(copies.begin(), copies.end(), std::uint64_t{1});
    } else {
      copies = {1, beta[n]};
    }
    for (auto k : copies) worst = std::max(worst, verify_block_action(t, n, k, cfg.tol).max_residual);
  }
  out << "max block residual: " << detail::sci(worst) << (small ? "" : " (first and last copy per block)")
      << "\n";
  if (worst > cfg.tol) failures.push_back("block action");
  if (small) {
    const auto rep = spectral_multiset_check(t, cfg.tol);
    out << "max spectral discrepancy: "
        << (rep.sizes_match ? detail::sci(rep.max_discrepancy) : std::string("size mismatch")) << "\n";
    if (!rep.ok) failures.push_back("spectral multiset");
  } else {
    out << "max spectral discrepancy: skipped (" << vertices << " vertices exceed the dense limit)\n";
  }
  if (!failures.empty()) {
    std::string msg = "decomposition check failed:";
    for (const auto& f : failures) msg += " " + f;
    throw CheckFailure(msg);
  }
  out << "status: ok\n";
  return 0;
}

inline int cmd_tree_decay(const RunConfig& cfg, std::ostream& out, detail::Outputs& io) {
  const auto dist = detail::parse_dist(cfg.dist);
  detail::require(cfg.block <= cfg.depth && cfg.depth - cfg.block >= 20,
                  "tree too shallow: need depth - N >= 20");
  const auto w = sample_sequence(dist, cfg.depth, cfg.seed);
  std::optional<RadialTree> tree;
  try {
    tree.emplace(std::vector<int>(w.values().begin(), w.values().end()), cfg.depth);
  } catch (const std::overflow_error& e) {
    throw UsageError(e.what());
  }
  const auto& t = *tree;
  const auto beta = multiplicities(t);
  detail::require(cfg.copy >= 1 && cfg.copy <= beta[cfg.block], "--k out of range [1, beta_N]");

  const auto block = truncate(w, cfg.depth - cfg.block + 1, cfg.block);
  const double tol = 1e-13 * std::max(1.0, block.radius());
  const auto eigenvalues = tridiag_eigenvalues(block, tol);
  std::vector<std::size_t> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(eigenvalues[a] - cfg.energy) < std::abs(eigenvalues[b] - cfg.energy);
  });
  // nearest eigenvalue whose eigenvector has a usable decay window
  for (std::size_t idx : order) {
    const auto u = eigenvector_inverse_iteration(block, eigenvalues[idx]);
    DecayReport half;
    try {
      half = decay_rate_fit(u);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const double l_ref = cfg.l_ref.value_or(half.fitted_rate);
    const auto rep = tree_decay_check(t, cfg.block, cfg.copy, u, l_ref, cfg.eps);
    const double l_hat = estimate_lyapunov(dist, eigenvalues[idx], cfg.ref_n, cfg.ref_samples,
                                           derive_seed(cfg.seed, 1))
                             .mean;
    if (!cfg.out.empty()) {
      CsvTable tab{{"generation", "half_line_abs", "tree_sup"}, {}};
      for (std::size_t j = 0; j < u.size(); ++j)
        tab.rows.push_back({fmt(std::uint64_t{cfg.block + j}), fmt(std::abs(u[j])),
                            fmt(rep.generation_sup[cfg.block + j])});
      io.table(tab);
    }
    out << "eigenvalue " << fmt(eigenvalues[idx]) << "\n"
        << "fit window sites " << half.window_first << ".." << half.window_last << "\n"
        << "half-line rate " << fmt(rep.half_line.fitted_rate) << "\n"
        << "tree rate " << fmt(rep.tree.fitted_rate) << "\n"
        << "L_ref " << fmt(l_ref) << (cfg.l_ref ? "" : " (fitted half-line rate)") << "\n"
        << "L_hat(eigenvalue) " << fmt(l_hat) << "\n"
        << "required L_ref + log(2)/2 - eps " << fmt(rep.required) << "\n";
    if (!rep.ok) throw CheckFailure("lift decay dominance: " + rep.message);
    out << "status: ok\n";
    return 0;
  }
  throw CheckFailure("insufficient decay window for every eigenvector of the block");
}

inline int cmd_furstenberg(const RunConfig& cfg, std::ostream& out, detail::Outputs&) {
  const auto dist = detail::parse_dist(cfg.dist);
  detail::require(cfg.alpha >= 2 && cfg.beta >= 2 && cfg.alpha != cfg.beta,
                  "--alpha and --beta must be distinct values >= 2");
  detail::require(!dist.degenerate(), "--dist must have at least two atoms");
  std::vector<std::string> failures;
  const auto wit = furstenberg_witness(cfg.alpha, cfg.beta, cfg.energy, cfg.power, cfg.tol);
  const double expected = std::max(wit.expected_11, wit.expected_22);
  out << "A_n = (M_" << cfg.alpha << " M_" << cfg.beta << "^-1)^" << cfg.power << " at E = "
      << fmt(cfg.energy) << "\n"
      << "  off-diagonal/diagonal residual " << detail::sci(wit.residual) << "\n"
      << "  norm " << fmt(wit.norm) << " expected " << fmt(expected) << "\n";
  if (!wit.ok || std::abs(wit.norm - expected) > cfg.tol * expected)
    failures.push_back("diagonal witness");
  const std::vector<double> energies =
      cfg.energies.empty() ? std::vector<double>{0.0, 0.5, 1.0, 2.0} : cfg.energies;
  for (double e : energies) {
    const auto r = invariant_direction_check(dist, e);
    out << "E = " << fmt(e) << ": V1 fixed " << (r.v1_invariant ? "yes" : "no") << ", V2 fixed "
        << (r.v2_invariant ? "yes" : "no") << ", swap " << (r.swap ? "yes" : "no")
        << ", invariant set among {V1, V2, V1 u V2} " << (r.no_invariant_set ? "none" : "present")
        << "\n";
    if (e == 0.0 && !r.swap) failures.push_back("swap at E = 0");
    if (e != 0.0 && !r.fix_empty) failures.push_back("fixed direction at E = " + fmt(e));
  }
  if (!failures.empty()) {
    std::string msg = "furstenberg check failed:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw CheckFailure(msg);
  }
  out << "status: ok\n";
  return 0;
}

inline int cmd_plot(const RunConfig& cfg, std::ostream&, detail::Outputs& io) {
  detail::require(!cfg.in.empty() && !cfg.out.empty(), "--in and --out are required");
  CsvTable t;
  try {
    t = read_csv(cfg.in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  detail::require(t.header.size() >= 2, "plot input needs at least two columns");
  const std::string xs = cfg.x_column.empty() ? t.header[0] : cfg.x_column;
  const std::string ys = cfg.y_column.empty() ? t.header[1] : cfg.y_column;
  std::string es = cfg.err_column;
  if (es.empty() && std::find(t.header.begin(), t.header.end(), "std_err") != t.header.end())
    es = "std_err";
  std::size_t xc = 0, yc = 0, ec = 0;
  try {
    xc = t.column(xs);
    yc = t.column(ys);
    if (!es.empty()) ec = t.column(es);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<PlotRow> rows;
  for (const auto& r : t.rows) {
    PlotRow p;
    p.x = std::stod(r[xc]);
    p.y = std::stod(r[yc]);
    if (!es.empty()) p.err = std::stod(r[ec]);
    rows.push_back(p);
  }
  PlotStyle style;
  style.x_label = xs;
  style.y_label = ys;
  style.title = ys + " vs " + xs;
  style.error_bars = !es.empty();
  io.text_file(cfg.out, emit_svg(rows, style));
  return 0;
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral laboratory for random radial trees", "rtsl"};
  app.require_subcommand(1);
  RunConfig cfg;
  double l_ref = 0.0;

  auto dist_opt = [&](CLI::App* s) {
    return s->add_option("--dist", cfg.dist, "branching law, e.g. 2:0.5,3:0.5")->capture_default_str();
  };
  auto seed_opt = [&](CLI::App* s, const char* name = "--seed") {
    s->add_option(name, cfg.seed, "master seed")->capture_default_str();
  };
  auto out_opt = [&](CLI::App* s) {
    s->add_option("--out", cfg.out, "output file");
    s->add_flag("--timing", cfg.timing, "record wall time in the metadata sidecar");
  };
  const auto positive = CLI::PositiveNumber;

  auto* lyap = app.add_subcommand("lyapunov", "Monte Carlo Lyapunov exponent over an energy grid");
  dist_opt(lyap);
  lyap->add_option("--emin", cfg.emin)->capture_default_str();
  lyap->add_option("--emax", cfg.emax)->capture_default_str();
  lyap->add_option("--steps", cfg.steps, "grid points")->check(positive)->capture_default_str();
  lyap->add_option("--energies", cfg.energies, "explicit energy list")->delimiter(',');
  lyap->add_option("--n", cfg.n, "steps per sample")->check(positive)->capture_default_str();
  lyap->add_option("--samples", cfg.samples)->check(positive)->capture_default_str();
  seed_opt(lyap);
  out_opt(lyap);

  auto* spec = app.add_subcommand("spectrum", "eigenvalue histogram of a truncation");
  dist_opt(spec);
  spec->add_option("--size", cfg.size)->check(positive)->capture_default_str();
  spec->add_option("--bins", cfg.bins)->check(positive)->capture_default_str();
  seed_opt(spec);
  out_opt(spec);

  auto* decay = app.add_subcommand("decay", "eigenvector decay rates against the Lyapunov exponent");
  dist_opt(decay);
  decay->add_option("--size", cfg.size)->check(positive)->capture_default_str();
  decay->add_option("--window", cfg.window, "energy window a,b")->delimiter(',')->expected(2);
  decay->add_option("--ref-n", cfg.ref_n)->check(positive)->capture_default_str();
  decay->add_option("--ref-samples", cfg.ref_samples)->check(positive)->capture_default_str();
  seed_opt(decay);
  out_opt(decay);

  auto* weyl = app.add_subcommand("weyl", "Weyl residuals on planted constant runs");
  weyl->add_option("--dmax", cfg.dmax, "largest branching value d_mu")->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  auto* weyl_dist = dist_opt(weyl);
  weyl->add_option("--energy", cfg.energy)->capture_default_str();
  weyl->add_option("--runs", cfg.runs, "run lengths R")->delimiter(',')->check(positive);
  weyl->add_option("--start", cfg.run_start, "first site of the Weyl vector")->capture_default_str();
  seed_opt(weyl);
  out_opt(weyl);

  auto* dec = app.add_subcommand("decompose-verify", "check the block decomposition of a tree");
  dec->add_option("--branching", cfg.branching, "branching numbers b_0,b_1,...")
      ->delimiter(',')
      ->required();
  auto* dec_depth = dec->add_option("--depth", cfg.depth);
  dec->add_option("--tol", cfg.tol)->check(positive)->capture_default_str();

  auto* tdecay = app.add_subcommand("tree-decay", "decay of a half-line eigenvector lifted to the tree");
  dist_opt(tdecay);
  seed_opt(tdecay, "--branching-seed");
  tdecay->add_option("--depth", cfg.depth)->capture_default_str();
  tdecay->add_option("--N", cfg.block, "block generation")->capture_default_str();
  tdecay->add_option("--k", cfg.copy, "copy index")->check(positive)->capture_default_str();
  tdecay->add_option("--energy", cfg.energy)->capture_default_str();
  tdecay->add_option("--eps", cfg.eps)->capture_default_str();
  auto* lref_opt = tdecay->add_option("--lref", l_ref, "reference rate (default: fitted half-line rate)");
  tdecay->add_option("--ref-n", cfg.ref_n)->check(CLI::Range(100ull, 1ull << 40))->capture_default_str();
  tdecay->add_option("--ref-samples", cfg.ref_samples)->check(positive)->capture_default_str();
  out_opt(tdecay);

  auto* furst = app.add_subcommand("furstenberg", "diagonal witnesses and invariant directions");
  dist_opt(furst);
  furst->add_option("--alpha", cfg.alpha)->capture_default_str();
  furst->add_option("--beta", cfg.beta)->capture_default_str();
  furst->add_option("--power", cfg.power, "n in (M_alpha M_beta^-1)^n")->capture_default_str();
  furst->add_option("--energy", cfg.energy, "energy of the witness")->capture_default_str();
  furst->add_option("--energies", cfg.energies, "energies for the direction check")->delimiter(',');
  furst->add_option("--tol", cfg.tol)->check(positive)->capture_default_str();

  auto* plot = app.add_subcommand("plot", "SVG line plot of a CSV file");
  plot->add_option("--in", cfg.in)->required();
  plot->add_option("--out", cfg.out)->required();
  plot->add_option("--x", cfg.x_column, "x column (default: first)");
  plot->add_option("--y", cfg.y_column, "y column (default: second)");
  plot->add_option("--err", cfg.err_column, "error column (default: std_err if present)");
  plot->add_flag("--timing", cfg.timing);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const auto* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.command == "weyl" && weyl_dist->count() == 0) {
    std::vector<Atom> atoms;
    for (int v = 2; v <= cfg.dmax; ++v) atoms.push_back({v, 1.0 / (cfg.dmax - 1)});
    cfg.dist = BranchingDistribution(atoms).to_string();
  }
  if (cfg.command == "decompose-verify" && dec_depth->count() == 0) cfg.depth = cfg.branching.size();
  if (cfg.command == "tree-decay" && lref_opt->count() > 0) cfg.l_ref = l_ref;

  const auto start = std::chrono::steady_clock::now();
  detail::Outputs io(cfg, out);
  try {
    int code = 0;
    if (cfg.command == "lyapunov") code = cmd_lyapunov(cfg, out, io);
    else if (cfg.command == "spectrum") code = cmd_spectrum(cfg, out, io);
    else if (cfg.command == "decay") code = cmd_decay(cfg, out, io);
    else if (cfg.command == "weyl") code = cmd_weyl(cfg, out, io);
    else if (cfg.command == "decompose-verify") code = cmd_decompose(cfg, out, io);
    else if (cfg.command == "tree-decay") code = cmd_tree_decay(cfg, out, io);
    else if (cfg.command == "furstenberg") code = cmd_furstenberg(cfg, out, io);
    else if (cfg.command == "plot") code = cmd_plot(cfg, out, io);
    io.finish(start);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return 2;
  } catch (const CheckFailure& e) {
    io.finish(start);
    err << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rtsl::cli
