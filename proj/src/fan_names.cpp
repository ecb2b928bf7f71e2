#include "treg/fan_names.hpp"

#include <sstream>

namespace treg {

FanName parse_fan_name(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() < 2 || parts.size() > 3)
    throw std::invalid_argument("fan name must be ALGEBRA[:BASIS]:(t_0,...)");
  FanName out;
  out.algebra = parts[0];
  if (parts.size() == 3) out.basis = parts[1];
  const std::string& steps = parts.back();
  if (steps.size() < 3 || steps.front() != '(' || steps.back() != ')')
    throw std::invalid_argument("fan steps must look like (t_0,...,t_tau)");
  std::stringstream ss(steps.substr(1, steps.size() - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad step '" + tok + "'");
    out.steps.push_back(v);
  }
  if (out.steps.empty()) throw std::invalid_argument("fan steps list is empty");
  std::ostringstream canon;
  canon << out.algebra;
  if (!out.basis.empty()) canon << ":" << out.basis;
  canon << ":(";
  for (size_t i = 0; i < out.steps.size(); ++i) {
    if (i) canon << ",";
    canon << out.steps[i];
  }
  canon << ")";
  out.canonical = canon.str();
  return out;
}

}  // namespace treg
