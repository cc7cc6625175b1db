#pragma once

// Command-line driver. run() parses argv, dispatches to the library and
// returns the process exit status: 0 success, 1 domain error, 2 parse error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tempered/tempered.hpp"

namespace tempered::cli {

struct RunConfig {
  std::optional<long> prime;
  int weight = 0;
  std::optional<int> trunc;
  std::vector<int> trunc_sweep;
  int n_max = 8;
  std::vector<std::string> inputs;
  std::string output;
  std::string format;  // empty: subcommand default

  // subcommand-specific
  std::string cls = "tempered";
  int radius = 0;
  std::string g = "1";
  std::string g_prime = "1";
  bool polynomial = false;
  bool generic = false;
  bool check_inverse = false;
  std::string vector_path;
  std::string relation_path;
  std::string cover_path;
  std::string algebra = "tempered-disk";
  int dim = 1;
  std::string smaller;
  std::string larger;
};

namespace detail {

inline bool csv(const RunConfig& c, bool default_csv = false) {
  return c.format.empty() ? default_csv : c.format == "csv";
}

inline const std::string& input(const RunConfig& c, std::size_t i, const char* what) {
  if (c.inputs.size() <= i) throw ParseError(std::string("missing --input for ") + what);
  return c.inputs[i];
}

inline void check_prime(const RunConfig& c, const Prime& p) {
  if (c.prime && *c.prime != p.value()) {
    throw DomainError("prime mismatch: --prime " + std::to_string(*c.prime) + " but input uses " +
                      std::to_string(p.value()));
  }
}

inline GrowthSeries load_series(const RunConfig& c, std::size_t i, const char* what) {
  auto f = read_series_file(input(c, i, what));
  check_prime(c, f.prime());
  return f;
}

inline TubePresentation load_presentation(const RunConfig& c, const std::string& path) {
  auto in = text::open_input(path);
  auto pres = read_presentation(in);
  check_prime(c, pres.prime());
  return pres;
}

/// Clips every window to hi <= N.
inline GrowthSeries clip(const GrowthSeries& f, int n) {
  auto vars = f.spec().vars();
  for (auto& v : vars) v.hi = std::min(v.hi, n);
  return f.restricted(SeriesSpec(f.prime(), std::move(vars)));
}

inline std::vector<std::optional<int>> sweep_points(const RunConfig& c) {
  if (!c.trunc_sweep.empty()) return {c.trunc_sweep.begin(), c.trunc_sweep.end()};
  return {c.trunc};
}

/// Payload goes to --output when given, else to the report stream.
class Sink {
 public:
  Sink(const RunConfig& c, std::ostream& out) : out_(out) {
    if (!c.output.empty()) {
      file_.open(c.output);
      if (!file_) throw ParseError("cannot write '" + c.output + "'");
    }
  }
  std::ostream& payload() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }
  std::ostream& report() { return out_; }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline void print_dims(std::ostream& os, const std::vector<int>& dims, bool as_csv, std::optional<int> n) {
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (as_csv) {
      if (n) os << *n << ',';
      os << k << ',' << dims[k] << '\n';
    } else {
      if (n) os << "N=" << *n << ' ';
      os << "H^" << k << " dim " << dims[k] << '\n';
    }
  }
}

inline void print_profiles(std::ostream& os, const std::vector<LabelledProfile>& profs, bool as_csv) {
  for (const auto& lp : profs) {
    if (as_csv) {
      for (const auto& pt : lp.profile.points) {
        os << lp.side << ',' << lp.profile.weight << ',' << pt.truncation << ',' << pt.norm.str() << '\n';
      }
    } else {
      os << "profile " << lp.side << " weight " << lp.profile.weight << ":";
      for (const auto& pt : lp.profile.points) os << ' ' << pt.truncation << ':' << pt.norm.str();
      os << '\n';
    }
  }
}

// ---- subcommands -----------------------------------------------------------

inline void cmd_norm(const RunConfig& c, std::ostream& out) {
  auto f = load_series(c, 0, "norm");
  for (auto n : sweep_points(c)) {
    auto g = n ? clip(f, *n) : f;
    auto v = norm_weighted(g, c.weight).str();
    if (csv(c)) {
      if (!c.trunc_sweep.empty()) out << *n << ',';
      out << c.weight << ',' << v << '\n';
    } else {
      if (!c.trunc_sweep.empty()) out << "N=" << *n << ' ';
      out << v << '\n';
    }
  }
}

inline GrowthClass parse_class(const RunConfig& c) {
  auto k = parse_class_name(c.cls);
  if (!k) throw ParseError("unknown class '" + c.cls + "'");
  return {*k, c.radius};
}

inline void print_membership(std::ostream& os, std::string_view name, const MembershipReport& r, bool as_csv) {
  if (as_csv) {
    print_profiles(os, r.profiles, true);
    return;
  }
  os << "class: " << name << '\n';
  os << "verdict: " << (r.member ? "member-up-to-truncation" : "rejected") << '\n';
  if (r.witness) os << "witness: " << *r.witness << '\n';
  if (r.violating_index) os << "violating index: " << *r.violating_index << '\n';
  if (!r.detail.empty()) os << "detail: " << r.detail << '\n';
  print_profiles(os, r.profiles, false);
}

inline void cmd_membership(const RunConfig& c, std::ostream& out) {
  auto f = load_series(c, 0, "membership");
  auto cls = parse_class(c);
  if (c.trunc) f = clip(f, *c.trunc);
  print_membership(out, c.cls, membership(f, cls, c.n_max), csv(c));
}

inline void cmd_split(const RunConfig& c, Sink& sink) {
  auto f = load_series(c, 0, "split-cover");
  auto s = split_cover(f, c.n_max);
  auto& os = sink.payload();
  os << "# at-infinity part\n";
  write_series(os, s.at_infinity);
  os << "# fast part\n";
  write_series(os, s.fast_part);
  auto& rep = sink.report();
  rep << "# at-infinity part: " << (s.at_infinity_report.member ? "member" : "rejected") << " (temp-at-infinity)\n";
  rep << "# fast part: " << (s.fast_report.member ? "member" : "rejected") << " (fast)\n";
}

inline void cmd_pair(const RunConfig& c, std::ostream& out) {
  auto f = load_series(c, 0, "pair (first)");
  auto g = load_series(c, 1, "pair (second)");
  auto p = pair_dual(f, g, c.weight);
  if (csv(c)) {
    out << p.value.str() << ',' << p.lhs.str() << ',' << p.rhs.str() << ',' << (p.holds() ? 1 : 0) << '\n';
  } else {
    out << "value: " << p.value.str() << "\n|value|: " << p.lhs.str() << "\nbound: " << p.rhs.str()
        << "\nholds: " << yes_no(p.holds()) << '\n';
  }
}

inline Exactness mode(const RunConfig& c) { return c.polynomial ? Exactness::polynomial : Exactness::truncated; }

inline void print_certificate(std::ostream& os, const std::string& what, const NormCertificate& cert) {
  os << "# certificate " << what << " weight " << cert.weight << ": " << cert.lhs.str() << " <= " << cert.rhs.str()
     << " holds: " << yes_no(cert.holds()) << '\n';
}

inline void cmd_divide_diagonal(const RunConfig& c, Sink& sink) {
  auto f = load_series(c, 0, "divide-diagonal");
  auto q = divide_diagonal(f, c.weight, mode(c));
  write_series(sink.payload(), q.quotient);
  print_certificate(sink.report(), "||q||_2n <= 2^n ||f||_n", q.certificate);
}

inline void cmd_divide_linear(const RunConfig& c, Sink& sink) {
  auto f = load_series(c, 0, "divide-linear");
  std::vector<int> weights{c.weight};
  auto q = divide_linear(f, Scalar::parse(c.g), Scalar::parse(c.g_prime), weights, mode(c));
  write_series(sink.payload(), q.quotient);
  for (const auto& cert : q.certificates) print_certificate(sink.report(), "||h||_n <= ||h'||_n", cert);
}

inline DiffSystem load_system(const RunConfig& c) {
  auto in = text::open_input(input(c, 0, "the system"));
  auto sys = read_system(in);
  check_prime(c, sys.spec().prime());
  return sys;
}

inline void cmd_ode(const RunConfig& c, Sink& sink) {
  auto sys = load_system(c);
  const int n = c.trunc.value_or(max_solution_order(sys));
  auto sol = cauchy_solve(sys, n);
  auto& os = sink.payload();
  const int m = sys.dim();
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const auto& v = sol.origin[k][static_cast<std::size_t>(i) * m + j];
        if (csv(c)) {
          os << k << ',' << i + 1 << ',' << j + 1 << ',' << v.str() << '\n';
        } else {
          os << "G_[" << k << "](0)[" << i + 1 << "," << j + 1 << "] = " << v.str() << '\n';
        }
      }
    }
    if (c.generic && !csv(c)) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          os << "# G_[" << k << "] entry " << i + 1 << ' ' << j + 1 << '\n';
          write_series(os, sol.generic[k][static_cast<std::size_t>(i) * m + j]);
        }
      }
    }
  }
  sink.report() << "# residual check through degree " << sol.residual_degree << ": "
                << (sol.residual_ok ? "ok" : "FAILED") << '\n';
  if (!sol.residual_ok) throw DomainError("solution identity failed");
}

inline void cmd_tau(const RunConfig& c, Sink& sink) {
  auto f = load_series(c, 0, "tau");
  const int n = c.trunc.value_or(f.spec().var(0).hi);
  write_series(sink.payload(), taylor_generic(f, n, mode(c)));
}

inline std::vector<Scalar> coefficient_sequence(const GrowthSeries& f) {
  if (f.spec().arity() != 1 || !f.spec().is_power_series()) {
    throw DomainError("growth needs a univariate power series");
  }
  std::vector<Scalar> seq;
  for (int i = 0; i <= f.spec().var(0).hi; ++i) seq.push_back(f.coeff({i}));
  return seq;
}

inline void cmd_growth(const RunConfig& c, std::ostream& out) {
  auto f = load_series(c, 0, "growth");
  for (auto n : sweep_points(c)) {
    auto g = n ? clip(f, *n) : f;
    auto rep = log_growth_estimate(coefficient_sequence(g), g.prime(), c.n_max);
    if (csv(c)) {
      if (!c.trunc_sweep.empty()) out << *n << ',';
      out << rep.order_str() << '\n';
    } else {
      if (!c.trunc_sweep.empty()) out << "N=" << *n << ' ';
      out << "order: " << rep.order_str() << '\n';
      std::vector<LabelledProfile> lp;
      for (const auto& p : rep.profiles) lp.push_back({"sequence", p});
      print_profiles(out, lp, false);
    }
  }
}

inline void cmd_transfer(const RunConfig& c, std::ostream& out) {
  auto sys = load_system(c);
  const int n = c.trunc.value_or(max_solution_order(sys));
  auto rep = transfer_experiment(sys, n, c.n_max);
  if (csv(c)) {
    out << rep.generic.order_str() << ',' << rep.origin.order_str() << ',' << (rep.pointwise_ok ? 1 : 0) << ','
        << verdict_text(rep.verdict) << '\n';
    return;
  }
  out << "generic order: " << rep.generic.order_str() << '\n';
  out << "origin order: " << rep.origin.order_str() << '\n';
  out << "pointwise |G_[m](0)| <= ||G_[m]||: " << yes_no(rep.pointwise_ok) << '\n';
  out << "verdict: " << verdict_text(rep.verdict) << '\n';
}

inline void cmd_koszul(const RunConfig& c, Sink& sink) {
  auto pres = load_presentation(c, input(c, 0, "the presentation"));
  if (c.vector_path.empty()) throw ParseError("missing --vector");
  auto in = text::open_input(c.vector_path);
  auto h = read_koszul_vector(in);
  auto red = koszul_reduce(h, pres, c.weight);
  write_koszul_vector(sink.payload(), red.reduced);
  const auto& cert = red.certificate;
  auto& rep = sink.report();
  rep << "# weight: " << cert.weight << '\n';
  rep << "# scale: " << cert.scale.str() << '\n';
  rep << "# scaled psi norm: " << cert.psi_norm.str() << '\n';
  rep << "# scaled input norm: " << cert.input_norm.str() << '\n';
  rep << "# scaled output norm: " << cert.output_norm.str() << '\n';
  rep << "# residual zero: " << yes_no(cert.residual_zero) << '\n';
  for (const auto& [j, v] : cert.ledger) rep << "# correction at y^(" << join(j) << "): " << v.str() << '\n';
}

inline void cmd_normal_form(const RunConfig& c, Sink& sink) {
  auto pres = load_presentation(c, input(c, 0, "the presentation"));
  auto g = load_series(c, 1, "the element");
  write_series(sink.payload(), tube_normal_form(g, pres, mode(c)));
}

inline void cmd_change(const RunConfig& c, Sink& sink) {
  auto a = load_series(c, 0, "the coefficient family");
  if (c.relation_path.empty()) throw ParseError("missing --relation");
  auto in = text::open_input(c.relation_path);
  auto rel = read_relation(in);
  check_prime(c, rel.prime());
  auto ch = change_presentation(a, rel, c.weight);
  write_series(sink.payload(), ch.family);
  auto& rep = sink.report();
  rep << "# certificate weight " << ch.weight << ": attained " << ch.attained.str() << " <= bound " << ch.bound.str()
      << " holds: " << yes_no(ch.holds()) << '\n';
  if (c.check_inverse) {
    auto back = change_presentation(ch.family, invert_relation(rel), c.weight);
    bool same = true;
    for (const auto& [j, v] : back.family.terms()) {
      if (!a.spec().contains(j) || !(a.coeff(j) == v)) same = false;
    }
    for (const auto& [j, v] : a.terms()) {
      if (!back.family.spec().contains(j) || !(back.family.coeff(j) == v)) same = false;
    }
    rep << "# inverse round trip: " << (same ? "identity" : "MISMATCH") << '\n';
    if (!same) throw DomainError("inverse relation does not recover the family");
  }
}

inline AlgebraModel algebra_model(const RunConfig& c, int n) {
  AlgebraModel alg;
  alg.trunc = n;
  alg.dim = c.dim;
  const auto& a = c.algebra;
  if (a == "tempered-disk") {
    alg.kind = AlgebraKind::tempered_polydisk;
    alg.dim = 1;
  } else if (a == "tate-disk") {
    alg.kind = AlgebraKind::tate_polydisk;
    alg.dim = 1;
  } else if (a == "tempered-bidisk") {
    alg.kind = AlgebraKind::tempered_polydisk;
    alg.dim = 2;
  } else if (a == "tempered-polydisk") {
    alg.kind = AlgebraKind::tempered_polydisk;
  } else if (a == "tate-polydisk") {
    alg.kind = AlgebraKind::tate_polydisk;
  } else if (a == "laurent-annulus") {
    alg.kind = AlgebraKind::laurent_annulus;
  } else if (a == "tube") {
    alg.kind = AlgebraKind::tube;
    alg.presentation = load_presentation(c, input(c, 0, "the tube presentation"));
  } else {
    throw ParseError("unknown algebra '" + a + "'");
  }
  return alg;
}

inline void cmd_derham(const RunConfig& c, std::ostream& out) {
  for (auto n : sweep_points(c)) {
    auto dims = cohomology_dims(de_rham_complex(algebra_model(c, n.value_or(8))));
    print_dims(out, dims, csv(c, true), c.trunc_sweep.empty() ? std::nullopt : n);
  }
}

inline void cmd_cech(const RunConfig& c, std::ostream& out) {
  if (c.cover_path.empty()) throw ParseError("missing --cover");
  auto cov = read_cover_file(c.cover_path);
  if (cov.prime) check_prime(c, Prime(*cov.prime));
  for (auto n : sweep_points(c)) {
    auto dims = cohomology_dims(cech_de_rham(instantiate_cover(cov, n.value_or(8))));
    print_dims(out, dims, csv(c, true), c.trunc_sweep.empty() ? std::nullopt : n);
  }
}

inline void cmd_weak_fibration(const RunConfig& c, Sink& sink) {
  auto pres = load_presentation(c, input(c, 0, "the presentation"));
  const int n = c.trunc.value_or(4);
  if (!c.output.empty()) write_presentation(sink.payload(), weak_fibration_data(pres, c.dim));
  auto cmp = compare_weak_fibration(pres, c.dim, n);
  auto& os = sink.report();
  if (csv(c)) {
    const std::size_t top = std::max(cmp.base_dims.size(), cmp.extended_dims.size());
    for (std::size_t k = 0; k < top; ++k) {
      os << k << ',' << (k < cmp.base_dims.size() ? cmp.base_dims[k] : 0) << ','
         << (k < cmp.extended_dims.size() ? cmp.extended_dims[k] : 0) << '\n';
    }
    return;
  }
  os << "base: " << join(cmp.base_dims) << '\n';
  os << "extended: " << join(cmp.extended_dims) << '\n';
  os << "verdict: " << (cmp.consistent ? "consistent" : "inconsistent") << '\n';
}

inline void cmd_lattice(const RunConfig& c, std::ostream& out) {
  if (!c.smaller.empty() || !c.larger.empty()) {
    if (c.smaller.empty() || c.larger.empty()) throw ParseError("--smaller and --larger go together");
    if (!parse_class_name(c.smaller) || !parse_class_name(c.larger)) throw ParseError("unknown class name");
    out << (lattice_query(c.smaller, c.larger) ? "true" : "false") << '\n';
    return;
  }
  for (const auto& f : lattice_relations()) {
    if (csv(c)) {
      out << f.smaller << ',' << f.larger << '\n';
    } else {
      out << f.smaller << " <= " << f.larger << "  (" << f.reason << ")\n";
    }
  }
  if (!csv(c)) {
    for (const auto& [a, b] : lattice_covers()) out << a << " + " << b << " cover the line\n";
  }
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact p-adic series with log-growth norms: arithmetic, ODEs, tubes, cohomology", "tempered"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::function<void(std::ostream&, detail::Sink&)> action;
  auto add = [&](const std::string& name, const std::string& desc, auto fn) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--prime", cfg.prime, "Expected residue characteristic of the inputs");
    sub->add_option("--weight", cfg.weight, "Weight n of the norm");
    sub->add_option("--trunc", cfg.trunc, "Truncation N");
    sub->add_option("--trunc-sweep", cfg.trunc_sweep, "Comma-separated truncations")->delimiter(',');
    sub->add_option("--nmax", cfg.n_max, "Largest weight examined")->check(CLI::NonNegativeNumber);
    sub->add_option("--input", cfg.inputs, "Input file (repeatable)");
    sub->add_option("--output", cfg.output, "Write the main result to this file");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  add("norm", "Weighted norm ||f||_n of a series",
      [&](std::ostream& o, detail::Sink&) { detail::cmd_norm(cfg, o); });
  add("membership", "Membership of a series in a growth class",
      [&](std::ostream& o, detail::Sink&) { detail::cmd_membership(cfg, o); })
      ->add_option("--class", cfg.cls, "Class name");
  app.get_subcommand("membership")->add_option("--radius", cfg.radius, "Open-disk radius exponent");
  add("split-cover", "Split a Laurent series along the infinity/fast cover",
      [&](std::ostream&, detail::Sink& s) { detail::cmd_split(cfg, s); });
  add("pair", "Duality pairing of two series", [&](std::ostream& o, detail::Sink&) { detail::cmd_pair(cfg, o); });
  add("divide-diagonal", "(f(t,x) - f(x,x)) / (t - x) with its norm certificate",
      [&](std::ostream&, detail::Sink& s) { detail::cmd_divide_diagonal(cfg, s); })
      ->add_flag("--polynomial", cfg.polynomial, "Treat the input as a polynomial");
  {
    auto* sub = add("divide-linear", "Solve (g t - g') h = h'",
                    [&](std::ostream&, detail::Sink& s) { detail::cmd_divide_linear(cfg, s); });
    sub->add_option("--g", cfg.g, "Unit g");
    sub->add_option("--gprime", cfg.g_prime, "Unit g'");
    sub->add_flag("--polynomial", cfg.polynomial, "Require exact polynomial division");
  }
  add("ode-solve", "Formal fundamental solution of dY/dt = Y G",
      [&](std::ostream&, detail::Sink& s) { detail::cmd_ode(cfg, s); })
      ->add_flag("--generic", cfg.generic, "Also print G_[m] as series");
  add("tau", "Development at the generic point", [&](std::ostream&, detail::Sink& s) { detail::cmd_tau(cfg, s); })
      ->add_flag("--polynomial", cfg.polynomial, "Treat the input as a polynomial");
  add("growth", "Log-growth order of a coefficient sequence",
      [&](std::ostream& o, detail::Sink&) { detail::cmd_growth(cfg, o); });
  add("transfer", "Generic versus origin growth of a system",
      [&](std::ostream& o, detail::Sink&) { detail::cmd_transfer(cfg, o); });
  add("koszul-reduce", "Reduce a Koszul vector to norm <= 1",
      [&](std::ostream&, detail::Sink& s) { detail::cmd_koszul(cfg, s); })
      ->add_option("--vector", cfg.vector_path, "Koszul vector file");
  add("normal-form", "Image of an element in the tube algebra",
      [&](std::ostream&, detail::Sink& s) { detail::cmd_normal_form(cfg, s); })
      ->add_flag("--polynomial", cfg.polynomial, "Treat the element as a polynomial");
  {
    auto* sub = add("change-presentation", "Rewrite a coefficient family under a presentation change",
                    [&](std::ostream&, detail::Sink& s) { detail::cmd_change(cfg, s); });
    sub->add_option("--relation", cfg.relation_path, "Relation file");
    sub->add_flag("--check-inverse", cfg.check_inverse, "Also verify the inverse relation round trip");
  }
  {
    auto* sub = add("derham", "Cohomology dimensions of a truncated de Rham complex",
                    [&](std::ostream& o, detail::Sink&) { detail::cmd_derham(cfg, o); });
    sub->add_option("--algebra", cfg.algebra, "Algebra model")
        ->check(CLI::IsMember({"tempered-disk", "tate-disk", "tempered-bidisk", "tempered-polydisk", "tate-polydisk",
                               "laurent-annulus", "tube"}));
    sub->add_option("--dim", cfg.dim, "Polydisk dimension");
  }
  add("cech", "Cohomology dimensions of a Cech-de Rham complex",
      [&](std::ostream& o, detail::Sink&) { detail::cmd_cech(cfg, o); })
      ->add_option("--cover", cfg.cover_path, "Cover file");
  add("weak-fibration", "Compare a tube with its product by a tempered polydisk",
      [&](std::ostream&, detail::Sink& s) { detail::cmd_weak_fibration(cfg, s); })
      ->add_option("--dim", cfg.dim, "Number of added coordinates");
  {
    auto* sub = add("lattice", "Inclusions between the opens of the line",
                    [&](std::ostream& o, detail::Sink&) { detail::cmd_lattice(cfg, o); });
    sub->add_option("--smaller", cfg.smaller, "Query: smaller class");
    sub->add_option("--larger", cfg.larger, "Query: larger class");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (cfg.dim < 0) throw DomainError("--dim must be >= 0");
    detail::Sink sink(cfg, out);
    action(out, sink);
  } catch (const tempered::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"tempered"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tempered::cli
