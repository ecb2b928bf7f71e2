#include "treg/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "treg/cauchy.hpp"
#include "treg/json_io.hpp"
#include "treg/quat13.hpp"
#include "treg/random.hpp"
#include "treg/selftest.hpp"

namespace treg {
namespace {

using quat13::KIndex;
using R = Rational;
using E = Element<R>;
using P = PolyMap<R>;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::string path;  // empty = stdout
  std::ostream* fallback = nullptr;

  void write(const std::string& text) const {
    if (path.empty()) {
      *fallback << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write '" + path + "'");
    f << text;
  }
};

std::pair<R, R> parse_mirror_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("mirror point must be 'a,b' (two rationals)");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::string quat_to_string(const Element<double>& q) {
  std::ostringstream os;
  os << std::setprecision(17) << q.coeff(0) << (q.coeff(1) < 0 ? "" : "+") << q.coeff(1)
     << "i" << (q.coeff(2) < 0 ? "" : "+") << q.coeff(2) << "j"
     << (q.coeff(3) < 0 ? "" : "+") << q.coeff(3) << "k";
  return os.str();
}

// ---- table -----------------------------------------------------------------

int cmd_table(const std::string& family, int maxdeg, const std::string& format,
              const Output& out) {
  std::ostringstream os;
  if (family == "tk") {
    if (format == "csv") {
      os << "k1,k2,e0,e1,e2,e3,c_1,c_i,c_j,c_k\n";
      for (int k = 0; k <= maxdeg; ++k)
        for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
          const P t = quat13::tk(k1, k2);
          for (const auto& [e, c] : t.terms()) {
            os << k1 << "," << k2 << "," << e[0] << "," << e[1] << "," << e[2] << ","
               << e[3];
            for (int s = 0; s < 4; ++s) os << "," << to_string(c.coeff(s));
            os << "\n";
          }
        }
    } else {
      json rows = json::array();
      for (int k = 0; k <= maxdeg; ++k)
        for (const auto& [k1, k2] : quat13::indices_of_degree(k))
          rows.push_back({{"k1", k1},
                          {"k2", k2},
                          {"poly", polymap_to_json(quat13::tk(k1, k2))}});
      os << rows.dump(2) << "\n";
    }
  } else if (family == "akbk") {
    if (format == "csv") {
      os << "k1,k2,part,e_x0,e_x1,e_g,re,im\n";
      for (int k = 0; k <= maxdeg; ++k)
        for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
          const auto ab = quat13::akbk(k1, k2);
          for (const auto* part : {&ab.A, &ab.B}) {
            const char* tag = (part == &ab.A) ? "A" : "B";
            for (const auto& [e, c] : part->terms())
              os << k1 << "," << k2 << "," << tag << "," << e[0] << "," << e[1] << ","
                 << e[2] << "," << to_string(c.coeff(0)) << "," << to_string(c.coeff(1))
                 << "\n";
          }
        }
    } else {
      json rows = json::array();
      for (int k = 0; k <= maxdeg; ++k)
        for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
          const auto ab = quat13::akbk(k1, k2);
          rows.push_back({{"k1", k1},
                          {"k2", k2},
                          {"A", polymap_to_json(ab.A)},
                          {"B", polymap_to_json(ab.B)}});
        }
      os << rows.dump(2) << "\n";
    }
  } else {
    throw CLI::ValidationError("--family must be tk or akbk");
  }
  out.write(os.str());
  return kExitOk;
}

// ---- check -----------------------------------------------------------------

template <class S>
int run_check(const TFan<S>& fan, const PolyMap<S>& f,
              const std::vector<TorusPoint<S>>& points, const std::string& mode,
              double tol, const std::string& format, const Output& out) {
  std::ostringstream os;
  int code = kExitOk;
  if (mode == "regular") {
    const auto rep = check_regular(fan, f, points, CheckOptions{true, tol});
    if (format == "csv") {
      os << "sample,zero,residual_norm\n";
      for (size_t i = 0; i < rep.samples.size(); ++i)
        os << i << "," << (rep.samples[i].zero ? 1 : 0) << ","
           << rep.samples[i].residual_norm << "\n";
      os << "verdict," << to_string(rep.verdict) << ",\n";
    } else {
      os << regularity_report_to_json(rep, true).dump(2) << "\n";
    }
    code = rep.verdict == RegularityVerdict::counterexample ? kExitCounterexample
                                                            : kExitOk;
  } else if (mode == "preserve") {
    const auto rep = check_slice_preserving(fan, f, points, tol);
    if (format == "csv") {
      os << "preserving," << (rep.preserving ? 1 : 0) << "\n";
      for (const auto& v : rep.violations) os << "violation_at_sample," << v.sample << "\n";
    } else {
      os << preserve_report_to_json(rep).dump(2) << "\n";
    }
    code = rep.preserving ? kExitOk : kExitCounterexample;
  } else {
    throw CLI::ValidationError("--mode must be regular or preserve");
  }
  out.write(os.str());
  return code;
}

int cmd_check(const std::string& fan_name, const std::string& input,
              const std::string& backend, int grid, std::uint64_t seed, int count,
              const std::string& mode, double tol, const std::string& format,
              const Output& out) {
  const json fj = load_json_file(input);
  if (backend == "rational") {
    const TFan<R> fan = build_fan<R>(fan_name);
    const P f = polymap_from_json<R>(fj);
    return run_check(fan, f, torus_grid(fan, grid), mode, tol, format, out);
  }
  if (backend == "float64") {
    const TFan<double> fan = build_fan<double>(fan_name);
    const PolyMap<double> f = polymap_from_json<double>(fj);
    std::vector<TorusPoint<double>> points =
        count > 0 ? torus_random(fan, seed, count) : torus_grid(fan, grid);
    return run_check(fan, f, points, mode, tol, format, out);
  }
  throw CLI::ValidationError("--backend must be rational or float64");
}

// ---- expand ----------------------------------------------------------------

int cmd_expand(const std::string& input, const std::string& center, int maxdeg,
               const std::string& format, const Output& out) {
  const P f = polymap_from_json<R>(load_json_file(input));
  const auto [a, b] = parse_mirror_point(center);
  const int deg = maxdeg >= 0 ? maxdeg : f.max_degree();
  const auto r = quat13::series_expand(f, a, b, deg);
  std::ostringstream os;
  if (format == "csv") {
    os << "k1,k2,c_1,c_i,c_j,c_k\n";
    for (const auto& [ki, c] : r.coeffs) {
      os << ki.first << "," << ki.second;
      for (int s = 0; s < 4; ++s) os << "," << to_string(c.coeff(s));
      os << "\n";
    }
    os << "exact," << (r.exact ? 1 : 0) << ",,,,\n";
  } else {
    json coeffs = json::array();
    for (const auto& [ki, c] : r.coeffs)
      coeffs.push_back(
          {{"k1", ki.first}, {"k2", ki.second}, {"coeff", element_to_json(c)}});
    json j{{"center", {to_string(a), to_string(b)}},
           {"maxdeg", deg},
           {"exact", r.exact},
           {"slice_preserving_conditions",
            quat13::classify_slice_preserving(r.coeffs)},
           {"coeffs", std::move(coeffs)}};
    if (!r.exact) j["residual"] = polymap_to_json(r.residual);
    os << j.dump(2) << "\n";
  }
  out.write(os.str());
  return r.exact ? kExitOk : kExitCounterexample;
}

// ---- represent ---------------------------------------------------------------

int cmd_represent(const std::string& input, const std::string& ti, const std::string& tj,
                  const std::string& tk_param, const std::string& z_text,
                  const std::string& beta_text, const Output& out) {
  const P f = polymap_from_json<R>(load_json_file(input));
  if (f.nvars() != 4)
    throw std::invalid_argument("represent: ambient quaternionic maps only (4 vars)");
  auto eval = [&](const E& x) {
    return evaluate(f, {x.coeff(0), x.coeff(1), x.coeff(2), x.coeff(3)});
  };
  const E I = quat13::circle_point(parse_rational(ti));
  const E J = quat13::circle_point(parse_rational(tj));
  const E K = tk_param.empty() ? neg(J) : quat13::circle_point(parse_rational(tk_param));
  const auto [za, zb] = parse_mirror_point(z_text);
  const E z = add(E::scalar(AlgebraSpec::quaternions(), za),
                  E::unit(AlgebraSpec::quaternions(), 1, zb));
  const R beta = parse_rational(beta_text);

  const E direct = eval(add(z, scale(I, beta)));
  const E general = quat13::represent_general(eval, I, J, K, z, beta);
  const E two_point = quat13::represent_two_point(eval, I, J, z, beta);
  const bool ok = general == direct && two_point == direct;
  json j{{"direct", element_to_json(direct)},
         {"general", element_to_json(general)},
         {"two_point", element_to_json(two_point)},
         {"general_matches", general == direct},
         {"two_point_matches", two_point == direct}};
  out.write(j.dump(2) + "\n");
  return ok ? kExitOk : kExitCounterexample;
}

// ---- stems ---------------------------------------------------------------------

int cmd_stems(const std::string& input, const std::string& tj, const Output& out) {
  const P f = polymap_from_json<R>(load_json_file(input));
  if (f.nvars() != 4)
    throw std::invalid_argument("stems: ambient quaternionic maps only (4 vars)");
  const E J = quat13::circle_point(parse_rational(tj));
  const auto stem = quat13::extract_stem(f, J);
  const bool parity = flip_var_sign(stem.F0, 2) == stem.F0 &&
                      flip_var_sign(stem.F1, 2) == neg(stem.F1);
  const bool system = quat13::stem_system_holds(stem);
  const bool harmonic =
      apply_laplacian(stem.F0).empty() && apply_laplacian(stem.F1).empty();
  json j{{"F0", polymap_to_json(stem.F0)},
         {"F1", polymap_to_json(stem.F1)},
         {"parity_ok", parity},
         {"system_ok", system},
         {"harmonic_ok", harmonic}};
  out.write(j.dump(2) + "\n");
  return (parity && system && harmonic) ? kExitOk : kExitCounterexample;
}

// ---- cauchy-demo ------------------------------------------------------------------

int cmd_cauchy_demo(double radius, int npoints, std::uint64_t seed, const Output& out) {
  using cauchy::DElem;
  const AlgebraSpec& h = AlgebraSpec::quaternions();
  const DElem J = DElem::unit(h, 2);
  const DElem y0 = DElem::zero(h);
  RandomSource rnd(seed);
  P combo = P::zero(4, h);
  for (int k = 0; k <= 4; ++k)
    for (const auto& ki : quat13::indices_of_degree(k))
      combo = add(combo, right_mul(quat13::tk(ki.first, ki.second),
                                   rnd.element<R>(h, 2, 2)));
  const auto fd = convert_scalar<double>(combo);
  auto f = [&](const DElem& x) {
    return evaluate(fd, {x.coeff(0), x.coeff(1), x.coeff(2), x.coeff(3)});
  };
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<DElem> points;
  while (static_cast<int>(points.size()) < npoints) {
    DElem x = add(add(scale(DElem::one(h), u(rng)), scale(DElem::unit(h, 1), u(rng))),
                  scale(J, u(rng)));
    if (cauchy::modulus(x) <= 0.7 * radius) points.push_back(std::move(x));
  }
  std::ostringstream os;
  os << "order,x,abs_error,rel_error\n";
  for (int order : {8, 16, 32}) {
    for (const DElem& x : points) {
      const DElem direct = f(x);
      const double abs_err =
          coeff_norm(sub(cauchy::cauchy_reconstruct(f, J, y0, radius, x, order), direct));
      const double rel = abs_err / std::max(1e-30, coeff_norm(direct));
      os << order << "," << quat_to_string(x) << "," << std::setprecision(6)
         << abs_err << "," << rel << "\n";
    }
  }
  out.write(os.str());
  return kExitOk;
}

// ---- basis-verify -------------------------------------------------------------------

int cmd_basis_verify(const std::string& name, const std::string& input,
                     const Output& out) {
  std::optional<BasisViolation> violation;
  std::string label;
  if (!input.empty()) {
    const json j = load_json_file(input);
    const AlgebraSpec& alg = algebra_from_json(j.at("algebra"));
    std::vector<E> vectors;
    for (const json& vj : j.at("vectors")) {
      typename E::Coeffs c(alg.dim());
      for (int s = 0; s < alg.dim(); ++s)
        c[s] = scalar_from_json<R>(vj.at(static_cast<size_t>(s)));
      vectors.push_back(E(alg, std::move(c)));
    }
    label = "file:" + input;
    violation = verify_basis(vectors);
  } else {
    std::string algebra = name, selector;
    if (const auto colon = name.find(':'); colon != std::string::npos) {
      algebra = name.substr(0, colon);
      selector = name.substr(colon + 1);
    }
    label = name;
    const auto basis = build_named_basis<R>(algebra, selector);
    violation = verify_basis(basis.vectors);
  }
  json j{{"basis", label}, {"ok", !violation.has_value()}};
  if (violation)
    j["violation"] = {{"condition", to_string(violation->cond)},
                      {"s", violation->s},
                      {"t", violation->t}};
  out.write(j.dump(2) + "\n");
  return violation ? kExitCounterexample : kExitOk;
}

// ---- cone -----------------------------------------------------------------------------

int cmd_cone(const std::string& algebra, const std::string& coeffs,
             const std::string& input, const Output& out) {
  std::optional<E> x;
  if (!input.empty()) {
    x = element_from_json<R>(load_json_file(input));
  } else {
    const AlgebraSpec* alg = AlgebraSpec::find(algebra);
    if (!alg) throw std::invalid_argument("unknown algebra '" + algebra + "'");
    typename E::Coeffs c(alg->dim());
    std::stringstream ss(coeffs);
    std::string tok;
    int idx = 0;
    while (std::getline(ss, tok, ',')) {
      if (idx >= alg->dim()) throw std::invalid_argument("too many coefficients");
      c[idx++] = parse_rational(tok);
    }
    if (idx != alg->dim()) throw std::invalid_argument("expected " +
                                                       std::to_string(alg->dim()) +
                                                       " coefficients");
    x = E(*alg, std::move(c));
  }
  json j{{"element", element_to_json(*x)},
         {"in_quadratic_cone", in_quadratic_cone(*x)},
         {"in_sphere", in_sphere(*x)},
         {"trace", element_to_json(trace(*x))},
         {"norm_form", element_to_json(norm_form(*x))}};
  if (in_quadratic_cone(*x) && !is_zero(*x))
    j["cone_inverse"] = element_to_json(cone_inverse(*x));
  out.write(j.dump(2) + "\n");
  return kExitOk;
}

// ---- selftest ---------------------------------------------------------------------------

int cmd_selftest(const std::string& backend, double tol, const std::string& format,
                 const Output& out) {
  const auto results =
      backend == "float64" ? run_float_selftest(tol) : run_acceptance_suite();
  std::ostringstream os;
  bool all = true;
  if (format == "csv") {
    os << "id,name,pass,seconds,detail\n";
    for (const auto& r : results) {
      os << r.id << ",\"" << r.name << "\"," << (r.pass ? 1 : 0) << "," << r.seconds
         << ",\"" << r.detail << "\"\n";
      all = all && r.pass;
    }
  } else {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"id", r.id},
                      {"name", r.name},
                      {"pass", r.pass},
                      {"seconds", r.seconds},
                      {"detail", r.detail}});
      all = all && r.pass;
    }
    os << json{{"backend", backend}, {"all_pass", all}, {"criteria", rows}}.dump(2)
       << "\n";
  }
  out.write(os.str());
  return all ? kExitOk : kExitCounterexample;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"T-regularity calculus on alternative real *-algebras"};
  app.require_subcommand(1);

  std::string fan_name, input, backend = "rational", format = "json", out_path;
  std::string family = "tk", mode = "regular", center = "0,0";
  std::string ti = "0", tj = "0", tk_param, z_text = "0,0", beta_text = "1";
  std::string basis_name, algebra = "H", coeffs;
  int grid = 8, count = 0, maxdeg = -1, npoints = 10;
  std::uint64_t seed = 1;
  double tol = kDefaultTol, radius = 1.0;

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "output file"); };
  auto add_fmt = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* table = app.add_subcommand("table", "emit tk or akbk coefficient tables");
  table->add_option("--family", family, "tk|akbk");
  table->add_option("--maxdeg", maxdeg, "maximum total degree")->required();
  add_fmt(table);
  add_out(table);

  CLI::App* check = app.add_subcommand("check", "regularity / slice-preservation check");
  check->add_option("--fan", fan_name, "fan name, e.g. H:(1,3)")->required();
  check->add_option("--input", input, "PolyMap JSON file")->required();
  check->add_option("--grid", grid, "rational grid density");
  check->add_option("--seed", seed, "random sampler seed (float64 backend)");
  check->add_option("--count", count, "random sample count (float64 backend)");
  check->add_option("--backend", backend, "rational|float64");
  check->add_option("--mode", mode, "regular|preserve");
  check->add_option("--tol", tol, "float64 tolerance");
  add_fmt(check);
  add_out(check);

  CLI::App* expand = app.add_subcommand("expand", "series expansion at a mirror point");
  expand->add_option("--input", input, "PolyMap JSON file")->required();
  expand->add_option("--center", center, "mirror point 'a,b'");
  expand->add_option("--maxdeg", maxdeg, "expansion degree (default: input degree)");
  add_fmt(expand);
  add_out(expand);

  CLI::App* represent = app.add_subcommand("represent", "representation formulas");
  represent->add_option("--input", input, "PolyMap JSON file")->required();
  represent->add_option("--ti", ti, "circle parameter of I");
  represent->add_option("--tj", tj, "circle parameter of J");
  represent->add_option("--tk", tk_param, "circle parameter of K (default: -J)");
  represent->add_option("--z", z_text, "mirror point 'a,b'");
  represent->add_option("--beta", beta_text, "radius (rational)");
  add_out(represent);

  CLI::App* stems = app.add_subcommand("stems", "stem extraction and checks");
  stems->add_option("--input", input, "PolyMap JSON file")->required();
  stems->add_option("--tj", tj, "circle parameter of the extraction slice");
  add_out(stems);

  CLI::App* cauchy_demo = app.add_subcommand("cauchy-demo", "quadrature error table");
  cauchy_demo->add_option("--radius", radius, "sphere radius");
  cauchy_demo->add_option("--points", npoints, "number of interior points");
  cauchy_demo->add_option("--seed", seed, "sampling seed");
  add_out(cauchy_demo);

  CLI::App* basis_verify = app.add_subcommand("basis-verify", "hypercomplex basis check");
  basis_verify->add_option("--basis", basis_name, "named basis, e.g. H or Cl05:V5");
  basis_verify->add_option("--input", input, "basis JSON file");
  add_out(basis_verify);

  CLI::App* cone = app.add_subcommand("cone", "quadratic cone predicates");
  cone->add_option("--algebra", algebra, "algebra alias");
  cone->add_option("--coeffs", coeffs, "comma-separated rational coefficients");
  cone->add_option("--input", input, "Element JSON file");
  add_out(cone);

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--backend", backend, "rational|float64");
  selftest->add_option("--tol", tol, "float64 tolerance");
  add_fmt(selftest);
  add_out(selftest);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const Output output{out_path, &out};
  try {
    if (table->parsed()) return cmd_table(family, maxdeg, format, output);
    if (check->parsed())
      return cmd_check(fan_name, input, backend, grid, seed, count, mode, tol, format,
                       output);
    if (expand->parsed()) return cmd_expand(input, center, maxdeg, format, output);
    if (represent->parsed())
      return cmd_represent(input, ti, tj, tk_param, z_text, beta_text, output);
    if (stems->parsed()) return cmd_stems(input, tj, output);
    if (cauchy_demo->parsed()) return cmd_cauchy_demo(radius, npoints, seed, output);
    if (basis_verify->parsed()) return cmd_basis_verify(basis_name, input, output);
    if (cone->parsed()) return cmd_cone(algebra, coeffs, input, output);
    if (selftest->parsed()) return cmd_selftest(backend, tol, format, output);
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace treg
