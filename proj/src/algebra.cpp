#include "treg/algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace treg {

AlgebraSpec::AlgebraSpec(std::string name, std::vector<std::string> labels,
                         std::vector<BasisProduct> table,
                         std::vector<std::int8_t> conj_signs, bool associative)
    : name_(std::move(name)),
      dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      table_(std::move(table)),
      conj_signs_(std::move(conj_signs)),
      associative_(associative) {
  if (dim_ < 1) throw std::invalid_argument("AlgebraSpec: empty basis");
  if (table_.size() != static_cast<size_t>(dim_) * dim_)
    throw std::invalid_argument("AlgebraSpec: table size != dim^2");
  if (conj_signs_.size() != static_cast<size_t>(dim_))
    throw std::invalid_argument("AlgebraSpec: conj_signs size != dim");
  for (const BasisProduct& p : table_)
    if (p.sign != 0 && (p.index < 0 || p.index >= dim_))
      throw std::invalid_argument("AlgebraSpec: product index out of range");
}

namespace {

// Product of Clifford basis blades in Cl(0,n), blades as bitmasks.
// Sign: one factor -1 per generator transposition in the sorted merge, one
// factor -1 per repeated generator (e_s^2 = -1).
BasisProduct blade_product(unsigned s, unsigned t, int n) {
  int swaps = 0;
  for (int g = 0; g < n; ++g) {
    if (!(t & (1u << g))) continue;
    // generators of s strictly above g must jump over e_{g+1}
    unsigned above = s >> (g + 1);
    swaps += __builtin_popcount(above);
  }
  const int repeats = __builtin_popcount(s & t);
  const int sign = ((swaps + repeats) % 2 == 0) ? 1 : -1;
  return BasisProduct{static_cast<std::int32_t>(s ^ t), static_cast<std::int8_t>(sign)};
}

// Clifford conjugation on a grade-g blade: (-1)^{g(g+1)/2}.
std::int8_t blade_conj_sign(unsigned mask) {
  const int g = __builtin_popcount(mask);
  return static_cast<std::int8_t>(((g * (g + 1) / 2) % 2 == 0) ? 1 : -1);
}

std::string blade_label(unsigned mask, int n) {
  if (mask == 0) return "1";
  std::ostringstream os;
  os << "e";
  bool first = true;
  for (int g = 0; g < n; ++g) {
    if (!(mask & (1u << g))) continue;
    if (!first && n > 9) os << "_";
    os << (g + 1);
    first = false;
  }
  return os.str();
}

std::unique_ptr<AlgebraSpec> build_clifford(int n) {
  const int d = 1 << n;
  std::vector<std::string> labels(static_cast<size_t>(d));
  std::vector<std::int8_t> conj(static_cast<size_t>(d));
  std::vector<BasisProduct> table(static_cast<size_t>(d) * d);
  for (int s = 0; s < d; ++s) {
    labels[s] = blade_label(static_cast<unsigned>(s), n);
    conj[s] = blade_conj_sign(static_cast<unsigned>(s));
    for (int t = 0; t < d; ++t)
      table[static_cast<size_t>(s) * d + t] =
          blade_product(static_cast<unsigned>(s), static_cast<unsigned>(t), n);
  }
  std::ostringstream name;
  name << "Cl0" << n;
  return std::make_unique<AlgebraSpec>(name.str(), std::move(labels), std::move(table),
                                       std::move(conj), true);
}

std::unique_ptr<AlgebraSpec> build_complex() {
  std::vector<BasisProduct> table = {
      {0, 1}, {1, 1},   // 1*1, 1*i
      {1, 1}, {0, -1},  // i*1, i*i
  };
  return std::make_unique<AlgebraSpec>("C", std::vector<std::string>{"1", "i"},
                                       std::move(table), std::vector<std::int8_t>{1, -1},
                                       true);
}

// Cayley-Dickson double of the quaternions with (a,b)(c,d) = (ac - conj(d)b,
// da + b conj(c)), basis labels (1,i,j,k,l,li,lj,lk).
std::unique_ptr<AlgebraSpec> build_octonions() {
  const AlgebraSpec& h = AlgebraSpec::quaternions();
  const int hd = h.dim();
  const int d = 2 * hd;
  std::vector<BasisProduct> table(static_cast<size_t>(d) * d);
  auto put = [&](int s, int t, BasisProduct p) {
    table[static_cast<size_t>(s) * d + t] = p;
  };
  auto hconj = [&](int s) { return static_cast<int>(h.conj_sign(s)); };
  for (int s = 0; s < hd; ++s) {
    for (int t = 0; t < hd; ++t) {
      const BasisProduct st = h.product(s, t);
      const BasisProduct ts = h.product(t, s);
      // (h_s,0)(h_t,0) = (h_s h_t, 0)
      put(s, t, st);
      // (h_s,0)(0,h_t) = (0, h_t h_s)
      put(s, hd + t, BasisProduct{ts.index + hd, ts.sign});
      // (0,h_s)(h_t,0) = (0, h_s conj(h_t))
      put(hd + s, t,
          BasisProduct{st.index + hd, static_cast<std::int8_t>(st.sign * hconj(t))});
      // (0,h_s)(0,h_t) = (-conj(h_t) h_s, 0)
      put(hd + s, hd + t,
          BasisProduct{ts.index, static_cast<std::int8_t>(-ts.sign * hconj(t))});
    }
  }
  std::vector<std::string> labels = {"1", "i", "j", "k", "l", "li", "lj", "lk"};
  std::vector<std::int8_t> conj(static_cast<size_t>(d));
  for (int s = 0; s < hd; ++s) {
    conj[s] = h.conj_sign(s);
    conj[hd + s] = -1;  // (a,b)^c = (conj a, -b)
  }
  return std::make_unique<AlgebraSpec>("O", std::move(labels), std::move(table),
                                       std::move(conj), false);
}

constexpr int kMaxCliffordN = 10;

}  // namespace

const AlgebraSpec& AlgebraSpec::complex() {
  static const std::unique_ptr<AlgebraSpec> a = build_complex();
  return *a;
}

const AlgebraSpec& AlgebraSpec::quaternions() {
  // Cl(0,2) with labels renamed to the classical (1,i,j,k).
  static const std::unique_ptr<AlgebraSpec> a = [] {
    auto cl = build_clifford(2);
    std::vector<BasisProduct> table;
    std::vector<std::int8_t> conj;
    for (int s = 0; s < 4; ++s) {
      conj.push_back(static_cast<std::int8_t>(cl->conj_sign(s)));
      for (int t = 0; t < 4; ++t) table.push_back(cl->product(s, t));
    }
    return std::make_unique<AlgebraSpec>("H", std::vector<std::string>{"1", "i", "j", "k"},
                                         std::move(table), std::move(conj), true);
  }();
  return *a;
}

const AlgebraSpec& AlgebraSpec::octonions() {
  static const std::unique_ptr<AlgebraSpec> a = build_octonions();
  return *a;
}

const AlgebraSpec& AlgebraSpec::clifford(int n) {
  if (n < 1) throw std::invalid_argument("clifford: n must be >= 1");
  if (n > kMaxCliffordN)
    throw std::invalid_argument("clifford: n > 10 unsupported (dense table too large)");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<AlgebraSpec>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_clifford(n)).first;
  return *it->second;
}

const AlgebraSpec* AlgebraSpec::find(const std::string& name) {
  if (name == "C") return &complex();
  if (name == "H") return &quaternions();
  if (name == "O") return &octonions();
  if (name.rfind("Cl0", 0) == 0 && name.size() > 3) {
    try {
      const int n = std::stoi(name.substr(3));
      if (n >= 1 && n <= kMaxCliffordN) return &clifford(n);
    } catch (const std::exception&) {
      return nullptr;
    }
  }
  return nullptr;
}

}  // namespace treg
