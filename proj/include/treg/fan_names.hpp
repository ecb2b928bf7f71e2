#pragma once

#include <string>
#include <vector>

#include "treg/fan.hpp"

namespace treg {

/// Parsed fan name "ALGEBRA[:BASIS]:(t_0,...,t_tau)". Registered algebra
/// aliases: C, H, O, Cl0<n>, and H-MT (the nonstandard quaternion basis
/// (1,-k,j) completed by i). Clifford basis selectors: "paravectors"
/// (default) and "V<h>".
struct FanName {
  std::string algebra;
  std::string basis;
  std::vector<int> steps;
  std::string canonical;
};

FanName parse_fan_name(const std::string& text);

template <class S>
HypercomplexBasis<S> build_named_basis(const std::string& algebra, const std::string& basis) {
  if (algebra == "C") {
    const AlgebraSpec& a = AlgebraSpec::complex();
    return make_basis<S>({Element<S>::one(a), Element<S>::unit(a, 1)});
  }
  if (algebra == "H") {
    const AlgebraSpec& a = AlgebraSpec::quaternions();
    return make_basis<S>({Element<S>::one(a), Element<S>::unit(a, 1),
                          Element<S>::unit(a, 2), Element<S>::unit(a, 3)});
  }
  if (algebra == "H-MT") {
    const AlgebraSpec& a = AlgebraSpec::quaternions();
    return make_basis<S>({Element<S>::one(a), Element<S>::unit(a, 3, S(-1)),
                          Element<S>::unit(a, 2)});
  }
  if (algebra == "O") {
    const AlgebraSpec& a = AlgebraSpec::octonions();
    std::vector<Element<S>> v;
    for (int s = 0; s < 8; ++s) v.push_back(Element<S>::unit(a, s));
    return make_basis<S>(std::move(v));
  }
  if (algebra.rfind("Cl0", 0) == 0) {
    const int n = std::stoi(algebra.substr(3));
    if (basis.empty() || basis == "paravectors") return make_paravectors<S>(n);
    if (basis.size() > 1 && basis[0] == 'V')
      return make_vh<S>(n, std::stoi(basis.substr(1)));
    throw std::invalid_argument("unknown basis selector '" + basis + "'");
  }
  throw std::invalid_argument("unknown algebra alias '" + algebra + "'");
}

template <class S>
TFan<S> build_fan(const FanName& name) {
  return TFan<S>(build_named_basis<S>(name.algebra, name.basis), name.steps,
                 name.canonical);
}

template <class S>
TFan<S> build_fan(const std::string& text) {
  return build_fan<S>(parse_fan_name(text));
}

}  // namespace treg
