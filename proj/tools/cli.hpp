#pragma once

// Command-line front end: construct | verify | bounds | code | oracle.
// Exit codes: 0 all requested verifications passed, 1 a verification failed,
// 2 usage or input error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satset/satset.hpp"

namespace satset::cli {

struct PlaneArgs {
  std::optional<std::uint32_t> q;
  std::optional<std::string> plane_file;
};

struct Common {
  PlaneArgs plane;
  std::string xi = "auto";
  std::string strategy = "nagy";
  std::optional<std::string> seeds;
  std::optional<std::string> out_prefix;
  std::optional<std::uint64_t> cap;
  std::optional<std::string> grid;
  std::optional<std::string> set_file;
  std::optional<std::string> matrix_file;
  std::optional<unsigned> space_dim;
  bool json = false;
};

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

inline PlaneModel load_model(const PlaneArgs& a, std::uint32_t max_order) {
  if (a.q.has_value() == a.plane_file.has_value()) throw DomainError("give exactly one of --q and --plane");
  if (a.plane_file) return load_plane_file(*a.plane_file);
  return build_pg2(*a.q, max_order);
}

inline double resolve_xi(const std::string& text, std::uint32_t q) {
  if (text == "auto") return static_cast<double>(bounds::xi_star(q));
  std::size_t used = 0;
  double xi = 0;
  try {
    xi = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(xi >= 1.0)) throw DomainError("--xi must be 'auto' or a number >= 1");
  return xi;
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "nagy") return Strategy::Nagy;
  if (s == "plain") return Strategy::Plain;
  throw DomainError("--strategy must be nagy or plain");
}

inline std::pair<PointId, PointId> parse_seeds(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    return {static_cast<PointId>(std::stoul(s.substr(0, comma))), static_cast<PointId>(std::stoul(s.substr(comma + 1)))};
  } catch (const std::exception&) {
    throw DomainError("--seeds expects a,b");
  }
}

inline std::pair<std::uint32_t, std::uint32_t> parse_grid(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    return {static_cast<std::uint32_t>(std::stoul(s.substr(0, colon))),
            static_cast<std::uint32_t>(std::stoul(s.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw DomainError("--grid expects qmin:qmax");
  }
}

inline nlohmann::json bounds_json(std::uint32_t q, double xi) {
  nlohmann::json j;
  const auto report = bounds::make_bound_report(q, xi);
  for (const auto& [name, value] : report.values) j[name] = static_cast<double>(value);
  j["delta"] = static_cast<double>(report.delta);
  j["k_threshold"] = report.k_threshold;
  return j;
}

}  // namespace detail

inline int cmd_construct(const Common& c, std::ostream& out) {
  const PlaneModel plane = detail::load_model(c.plane, static_cast<std::uint32_t>(c.cap.value_or(1024)));
  const std::uint32_t q = plane.order();
  RunOptions opt;
  opt.xi = detail::resolve_xi(c.xi, q);
  opt.strategy = detail::parse_strategy(c.strategy);
  if (c.seeds) opt.seeds = detail::parse_seeds(*c.seeds);
  const RunResult run = run_truncated(plane, opt);
  const auto ups = bounds::upsilon(q);
  const bool under = bounds::fits_under(static_cast<bounds::Real>(run.size), ups);

  nlohmann::json summary;
  summary["q"] = q;
  summary["size"] = run.size;
  summary["xi"] = opt.xi;
  summary["k_executed"] = run.k_executed;
  summary["finish_added"] = run.finish_added;
  summary["bounds"] = detail::bounds_json(q, opt.xi);
  summary["verified"] = run.verified;
  summary["strategy"] = c.strategy;
  summary["size_le_upsilon"] = under;
  summary["set"] = run.final_set;

  if (c.out_prefix) {
    auto set_file = detail::open_out(*c.out_prefix + ".set.txt");
    write_set(plane, run.final_set, set_file);
    auto traj = detail::open_out(*c.out_prefix + ".trajectory.json");
    traj << trajectory_to_json(run.trajectory).dump(1) << '\n';
    auto sum = detail::open_out(*c.out_prefix + ".summary.json");
    sum << summary.dump(2) << '\n';
  }

  if (c.json) {
    out << summary.dump(2) << '\n';
  } else {
    out << "plane     : " << (plane.source() == PlaneSource::GeneratedPG ? "PG(2," + std::to_string(q) + ")" : *c.plane.plane_file)
        << " order " << q << '\n';
    out << "xi        : " << std::setprecision(10) << opt.xi << (c.xi == "auto" ? " (auto)" : "") << '\n';
    out << "strategy  : " << c.strategy << '\n';
    out << "size      : " << run.size << " (seeds " << run.seed_count << ", steps " << run.k_executed
        << ", finish " << run.finish_added << ")\n";
    out << "verified  : " << (run.verified ? "yes" : "NO") << '\n';
    out << "upsilon   : " << static_cast<double>(ups) << (under ? "  size <= upsilon" : "  size > upsilon") << '\n';
    out << "general   : " << static_cast<double>(bounds::general_bound(q, opt.xi)) << '\n';
  }
  return run.verified ? 0 : 1;
}

inline int cmd_verify(const Common& c, std::ostream& out) {
  if (!c.set_file) throw DomainError("--set FILE is required");
  const PlaneModel plane = detail::load_model(c.plane, static_cast<std::uint32_t>(c.cap.value_or(1024)));
  std::ifstream in(*c.set_file);
  if (!in) throw IoError("cannot open " + *c.set_file);
  const auto set = read_set(in);
  const auto check = verify_saturating(plane, set);
  if (check) {
    out << "saturating: yes (" << set.size() << " points)\n";
    return 0;
  }
  out << "saturating: no, witness point " << *check.witness;
  if (auto co = plane.coords(*check.witness)) out << " (" << (*co)[0] << ':' << (*co)[1] << ':' << (*co)[2] << ')';
  out << '\n';
  return 1;
}

inline int cmd_bounds(const Common& c, std::ostream& out) {
  std::vector<std::uint32_t> qs;
  if (c.plane.q && c.grid) throw DomainError("give --q or --grid, not both");
  if (c.plane.q) {
    qs.push_back(*c.plane.q);
  } else if (c.grid) {
    const auto [lo, hi] = detail::parse_grid(*c.grid);
    qs = prime_powers_in(std::max<std::uint32_t>(lo, 3), hi);
  } else {
    throw DomainError("bounds needs --q or --grid");
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &out;
  if (c.out_prefix) {
    file = std::make_unique<std::ofstream>(detail::open_out(*c.out_prefix + ".csv"));
    os = file.get();
  }

  if (c.space_dim) {
    *os << "q,N,upper,trivial_lower,branch\n" << std::setprecision(12);
    for (auto q : qs) {
      *os << q << ',' << *c.space_dim << ',';
      try {
        const auto sb = bounds::space_bounds(*c.space_dim, q);
        *os << *sb.upper() << ',' << sb.trivial_lower << ','
            << (sb.even_general ? "even" : sb.even_special ? "even_8_12" : "odd") << '\n';
      } catch (const BranchInapplicable&) {
        *os << ',' << bounds::space_trivial_lower(*c.space_dim, q) << ",inapplicable\n";
      }
    }
  } else if (c.json && qs.size() == 1) {
    const double xi = c.xi == "auto" ? static_cast<double>(bounds::xi_star(qs[0])) : detail::resolve_xi(c.xi, qs[0]);
    nlohmann::json j;
    j["q"] = qs[0];
    j["xi"] = xi;
    j["bounds"] = detail::bounds_json(qs[0], xi);
    *os << j.dump(2) << '\n';
  } else {
    bounds::bounds_table(qs, *os);
  }
  if (file) out << "wrote " << *c.out_prefix << ".csv (" << qs.size() << " rows)\n";
  return 0;
}

inline int cmd_code(const Common& c, std::ostream& out) {
  const std::uint64_t cap = c.cap.value_or(10'000'000);
  CodeMatrix code;
  bool from_set = false;
  if (c.matrix_file) {
    std::ifstream in(*c.matrix_file);
    if (!in) throw IoError("cannot open " + *c.matrix_file);
    code = read_matrix(in);
  } else {
    if (!c.plane.q) throw DomainError("code needs --q (with optional --set) or --matrix");
    std::uint64_t syndromes = 1;
    for (int j = 0; j < 3; ++j) {
      syndromes *= *c.plane.q;
      if (syndromes > cap) throw ResourceLimit("q^3 syndrome space exceeds cap " + std::to_string(cap));
    }
    const PlaneModel plane = build_pg2(*c.plane.q);
    std::vector<PointId> set;
    if (c.set_file) {
      std::ifstream in(*c.set_file);
      if (!in) throw IoError("cannot open " + *c.set_file);
      set = read_set(in);
    } else {
      RunOptions opt;
      opt.xi = detail::resolve_xi(c.xi, plane.order());
      opt.strategy = detail::parse_strategy(c.strategy);
      if (c.seeds) opt.seeds = detail::parse_seeds(*c.seeds);
      set = run_truncated(plane, opt).final_set;
    }
    code = parity_check_from_plane(plane, set);
    from_set = true;
  }
  const GaloisField field(code.q);
  const CoveringRadius radius = covering_radius(field, code, cap);
  const auto report = check_length_function(code.q, code.r, code.n);

  if (c.out_prefix) {
    auto f = detail::open_out(*c.out_prefix + ".matrix.txt");
    write_matrix(code, f);
  }
  out << "code      : [" << code.n << "," << code.n - std::min<std::size_t>(code.n, code.r) << "]_" << code.q
      << " (r=" << code.r << ")\n";
  out << "radius    : " << (radius ? std::to_string(*radius) : std::string("Unreachable")) << '\n';
  out << "trivial   : " << static_cast<double>(report.trivial_lower) << (report.above_trivial ? "" : "  (n at or below: impossible)")
      << '\n';
  if (report.upper)
    out << std::left << std::setw(10) << report.upper_name << std::right << ": " << static_cast<double>(*report.upper)
        << (*report.within_upper ? "  n within bound" : "  n exceeds bound") << '\n';
  for (const auto& note : report.notes) out << "note      : " << note << '\n';
  if (from_set) return radius && *radius <= 2 ? 0 : 1;
  return 0;
}

inline int cmd_oracle(const Common& c, std::ostream& out) {
  const PlaneModel plane = detail::load_model(c.plane, 1024);
  const auto res = exhaustive_min_saturating(plane, static_cast<std::uint32_t>(c.cap.value_or(31)));
  const auto lower = bounds::trivial_lower(plane.order());
  out << "minimum saturating size: " << res.size << '\n';
  out << "example set            :";
  for (auto p : res.example) out << ' ' << p;
  out << '\n';
  out << "trivial lower bound    : " << static_cast<double>(lower) << (res.size > lower ? " (exceeded)" : " (NOT exceeded)")
      << '\n';
  return res.size > lower ? 0 : 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saturating sets in projective planes: construction, verification, bounds, codes"};
  app.require_subcommand(1);
  Common c;

  auto add_plane = [&](CLI::App* sub) {
    auto* q = sub->add_option("--q", c.plane.q, "plane order (prime power)");
    auto* p = sub->add_option("--plane", c.plane.plane_file, "incidence file of a plane");
    q->excludes(p);
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--xi", c.xi, "truncation threshold (number >= 1 or 'auto')");
    sub->add_option("--strategy", c.strategy, "nagy or plain")->check(CLI::IsMember({"nagy", "plain"}));
    sub->add_option("--seeds", c.seeds, "two seed point indices a,b");
  };

  auto* construct = app.add_subcommand("construct", "build a saturating set with the truncated greedy");
  add_plane(construct);
  add_run(construct);
  construct->add_option("--out", c.out_prefix, "output prefix for set/trajectory/summary files");
  construct->add_option("--cap", c.cap, "largest plane order to materialize (default 1024)");
  construct->add_flag("--json", c.json, "print the machine summary as JSON");

  auto* verify = app.add_subcommand("verify", "check that a set file is saturating");
  add_plane(verify);
  verify->add_option("--set", c.set_file, "set file (one index per line)")->required();
  verify->add_option("--cap", c.cap, "largest plane order to materialize (default 1024)");

  auto* bnd = app.add_subcommand("bounds", "tabulate bound formulas");
  bnd->add_option("--q", c.plane.q, "single order");
  bnd->add_option("--grid", c.grid, "prime powers in qmin:qmax");
  bnd->add_option("--N", c.space_dim, "tabulate PG(N,q) bounds instead");
  bnd->add_option("--xi", c.xi, "xi for the general bound (with --json)");
  bnd->add_option("--out", c.out_prefix, "write PREFIX.csv instead of standard output");
  bnd->add_flag("--json", c.json, "JSON report for a single --q");

  auto* code = app.add_subcommand("code", "parity-check matrix and covering radius");
  code->add_option("--q", c.plane.q, "plane order; builds a set unless --set is given");
  code->add_option("--set", c.set_file, "set file in PG(2,q)");
  code->add_option("--matrix", c.matrix_file, "matrix file ('code q r n' header)");
  add_run(code);
  code->add_option("--out", c.out_prefix, "write PREFIX.matrix.txt");
  code->add_option("--cap", c.cap, "largest q^r syndrome space (default 1e7)");

  auto* oracle = app.add_subcommand("oracle", "exhaustive minimum saturating set (tiny planes)");
  add_plane(oracle);
  oracle->add_option("--cap", c.cap, "largest point count to search (default 31)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e, out, err);
    return code_ == 0 ? 0 : 2;
  }

  try {
    if (*construct) return cmd_construct(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*bnd) return cmd_bounds(c, out);
    if (*code) return cmd_code(c, out);
    if (*oracle) return cmd_oracle(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"satset"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace satset::cli
