#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "treg/fan_names.hpp"
#include "treg/tregular.hpp"

namespace treg {

using nlohmann::json;

// --- scalars ---------------------------------------------------------------
// Rationals travel as canonical "p/q" strings (bit-exact round-trip);
// float64 as JSON numbers.

inline json scalar_to_json(const Rational& v) { return to_string(v); }
inline json scalar_to_json(double v) { return v; }

template <class S>
S scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected rational as \"p/q\" string, got " + j.dump());
}

template <>
inline double scalar_from_json<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw std::invalid_argument("expected number, got " + j.dump());
}

// --- algebra ---------------------------------------------------------------

inline json algebra_to_json(const AlgebraSpec& alg) {
  json table = json::array();
  for (int s = 0; s < alg.dim(); ++s) {
    json row = json::array();
    for (int t = 0; t < alg.dim(); ++t) {
      const BasisProduct p = alg.product(s, t);
      row.push_back({{"index", p.index}, {"sign", static_cast<int>(p.sign)}});
    }
    table.push_back(std::move(row));
  }
  json conj = json::array();
  for (int s = 0; s < alg.dim(); ++s) conj.push_back(alg.conj_sign(s));
  return json{{"name", alg.name()},
              {"dim", alg.dim()},
              {"labels", alg.labels()},
              {"table", std::move(table)},
              {"conj_signs", std::move(conj)},
              {"associative", alg.associative()}};
}

/// Algebras deserialize by preset name; arbitrary structure tables are a
/// non-goal of the library.
inline const AlgebraSpec& algebra_from_json(const json& j) {
  const std::string name = j.is_string() ? j.get<std::string>()
                                         : j.at("name").get<std::string>();
  const AlgebraSpec* alg = AlgebraSpec::find(name);
  if (!alg) throw std::invalid_argument("unknown algebra '" + name + "'");
  return *alg;
}

// --- elements ----------------------------------------------------------------

template <class S>
json element_to_json(const Element<S>& e) {
  json coeffs = json::array();
  for (int s = 0; s < e.dim(); ++s) coeffs.push_back(scalar_to_json(e.coeff(s)));
  return json{{"algebra", e.algebra().name()}, {"coeffs", std::move(coeffs)}};
}

template <class S>
Element<S> element_from_json(const json& j) {
  const AlgebraSpec& alg = algebra_from_json(j.at("algebra"));
  const json& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != alg.dim())
    throw std::invalid_argument("coefficient count != algebra dim");
  typename Element<S>::Coeffs c(alg.dim());
  for (int s = 0; s < alg.dim(); ++s) c[s] = scalar_from_json<S>(coeffs[static_cast<size_t>(s)]);
  return Element<S>(alg, std::move(c));
}

// --- hypercomplex bases -------------------------------------------------------

template <class S>
json basis_to_json(const HypercomplexBasis<S>& b) {
  json vectors = json::array();
  for (const Element<S>& v : b.vectors) {
    json coeffs = json::array();
    for (int s = 0; s < v.dim(); ++s) coeffs.push_back(scalar_to_json(v.coeff(s)));
    vectors.push_back(std::move(coeffs));
  }
  return json{{"algebra", b.algebra->name()}, {"vectors", std::move(vectors)}};
}

template <class S>
HypercomplexBasis<S> basis_from_json(const json& j) {
  const AlgebraSpec& alg = algebra_from_json(j.at("algebra"));
  std::vector<Element<S>> vectors;
  for (const json& vj : j.at("vectors")) {
    typename Element<S>::Coeffs c(alg.dim());
    if (static_cast<int>(vj.size()) != alg.dim())
      throw std::invalid_argument("basis vector length != algebra dim");
    for (int s = 0; s < alg.dim(); ++s) c[s] = scalar_from_json<S>(vj[static_cast<size_t>(s)]);
    vectors.push_back(Element<S>(alg, std::move(c)));
  }
  return make_basis(std::move(vectors));
}

// --- torus points -------------------------------------------------------------

template <class S>
json torus_point_to_json(const TorusPoint<S>& J) {
  json blocks = json::array();
  for (const auto& blk : J.blocks) {
    json b = json::array();
    for (int i = 0; i < blk.size(); ++i) b.push_back(scalar_to_json(blk[i]));
    blocks.push_back(std::move(b));
  }
  return json{{"blocks", std::move(blocks)}};
}

template <class S>
TorusPoint<S> torus_point_from_json(const json& j) {
  TorusPoint<S> out;
  for (const json& bj : j.at("blocks")) {
    Eigen::Matrix<S, Eigen::Dynamic, 1> blk(static_cast<long>(bj.size()));
    for (size_t i = 0; i < bj.size(); ++i) blk[static_cast<long>(i)] = scalar_from_json<S>(bj[i]);
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

// --- fans ----------------------------------------------------------------------

template <class S>
json fan_to_json(const TFan<S>& fan) {
  return json{{"name", fan.name()},
              {"basis", basis_to_json(fan.basis())},
              {"steps", fan.steps()}};
}

// --- polynomial maps -------------------------------------------------------------
// {"vars": n, "terms": [{"exp": [...], "coeff": <Element>}]}

template <class S>
json polymap_to_json(const PolyMap<S>& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back({{"exp", e}, {"coeff", element_to_json(c)}});
  return json{{"vars", f.nvars()}, {"terms", std::move(terms)}};
}

template <class S>
PolyMap<S> polymap_from_json(const json& j) {
  const json& terms = j.at("terms");
  if (terms.empty()) throw std::invalid_argument("polymap JSON needs at least one term");
  const int nvars = j.at("vars").get<int>();
  const AlgebraSpec& alg = algebra_from_json(terms.at(0).at("coeff").at("algebra"));
  PolyMap<S> f(nvars, alg);
  for (const json& tj : terms)
    f.add_term(tj.at("exp").get<MultiIndex>(), element_from_json<S>(tj.at("coeff")));
  return f;
}

// --- reports --------------------------------------------------------------------

template <class S>
json regularity_report_to_json(const RegularityReport<S>& rep, bool include_residuals) {
  json samples = json::array();
  for (const auto& s : rep.samples) {
    json sj{{"J", torus_point_to_json(s.J)},
            {"zero", s.zero},
            {"residual_norm", s.residual_norm}};
    if (include_residuals && !s.zero) sj["residual"] = polymap_to_json(s.residual);
    samples.push_back(std::move(sj));
  }
  json out{{"fan", rep.fan_name},
           {"verdict", to_string(rep.verdict)},
           {"symbolic_supported", rep.symbolic_supported},
           {"symbolic_zero", rep.symbolic_zero},
           {"samples", std::move(samples)}};
  if (rep.counterexample >= 0) out["counterexample_index"] = rep.counterexample;
  if (!ScalarInfo<S>::is_exact) out["tol"] = rep.tol;
  return out;
}

template <class S>
json preserve_report_to_json(const PreserveReport<S>& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back({{"sample", v.sample},
                          {"monomial", v.monomial},
                          {"coefficient", element_to_json(v.coefficient)}});
  return json{{"preserving", rep.preserving}, {"violations", std::move(violations)}};
}

// --- files ---------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return json::parse(in);  // parse_error carries the byte position
}

}  // namespace treg
