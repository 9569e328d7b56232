#pragma once

// Period lattice of a (1,d)-polarized abelian surface, reduced to its finite
// combinatorial shadow: the alternating form E in the symplectic basis
// (lambda1, lambda2, mu1, mu2), torsion points as residue vectors, and torsion
// characters as exponent vectors mod n.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pgq2/error.hpp"

namespace pgq2 {

inline constexpr std::size_t kRank = 4;

using Vec4 = std::array<long long, kRank>;
using IntMatrix4 = std::array<std::array<long long, kRank>, kRank>;
using Residues = std::array<int, kRank>;

// Basis order used everywhere: lambda1, lambda2, mu1, mu2.
enum class BasisVector : std::size_t { lambda1 = 0, lambda2 = 1, mu1 = 2, mu2 = 3 };

inline Vec4 basis_vector(BasisVector b) {
  Vec4 v{};
  v[static_cast<std::size_t>(b)] = 1;
  return v;
}

inline int reduce_mod(long long x, int n) {
  long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Elementary divisor d of the polarization type (1, d).
struct PolarizationType {
  int d;

  explicit PolarizationType(int d_) : d(d_) {
    if (d < 1) throw input_error("polarization type requires d >= 1, got " + std::to_string(d));
  }
  friend bool operator==(const PolarizationType&, const PolarizationType&) = default;
};

class SymplecticLattice {
 public:
  explicit SymplecticLattice(PolarizationType type) : type_(type) {
    form_ = {};
    const long long d = type.d;
    form_[0][2] = 1;
    form_[1][3] = d;
    form_[2][0] = -1;
    form_[3][1] = -d;
  }

  int d() const { return type_.d; }
  PolarizationType type() const { return type_; }
  const IntMatrix4& form() const { return form_; }

  // x^T E y
  long long pairing(const Vec4& x, const Vec4& y) const {
    long long s = 0;
    for (std::size_t i = 0; i < kRank; ++i)
      for (std::size_t j = 0; j < kRank; ++j) s += x[i] * form_[i][j] * y[j];
    return s;
  }

 private:
  PolarizationType type_;
  IntMatrix4 form_;
};

inline SymplecticLattice make_lattice(int d) { return SymplecticLattice(PolarizationType(d)); }

inline void check_order_bound(int n) {
  if (n != 2 && n != 4) throw input_error("order bound must be 2 or 4, got " + std::to_string(n));
}

// The point sum_j coords_j * basis_j / n of A = C^2 / Lambda.
class TorsionPoint {
 public:
  TorsionPoint(int n, const Vec4& coords) : n_(n) {
    check_order_bound(n);
    for (std::size_t j = 0; j < kRank; ++j) coords_[j] = reduce_mod(coords[j], n);
  }

  int n() const { return n_; }
  const Residues& coords() const { return coords_; }

  TorsionPoint operator+(const TorsionPoint& o) const {
    if (o.n_ != n_) throw input_error("cannot add torsion points of different order bounds");
    Vec4 s{};
    for (std::size_t j = 0; j < kRank; ++j) s[j] = coords_[j] + o.coords_[j];
    return TorsionPoint(n_, s);
  }

  auto operator<=>(const TorsionPoint&) const = default;

 private:
  int n_;
  Residues coords_{};
};

// A character Lambda -> C^*, v |-> zeta_n^{<exponents, v>}, zeta_2 = -1, zeta_4 = i.
class Character {
 public:
  Character(int n, const Vec4& exponents) : n_(n) {
    check_order_bound(n);
    for (std::size_t j = 0; j < kRank; ++j) exp_[j] = reduce_mod(exponents[j], n);
  }

  static Character trivial(int n) { return Character(n, Vec4{}); }

  // From the +-1 value tuple (chi(lambda1), chi(lambda2), chi(mu1), chi(mu2)).
  static Character from_signs(const std::array<int, kRank>& signs) {
    Vec4 e{};
    for (std::size_t j = 0; j < kRank; ++j) {
      if (signs[j] != 1 && signs[j] != -1) throw input_error("sign tuple entries must be +1 or -1");
      e[j] = signs[j] == 1 ? 0 : 1;
    }
    return Character(2, e);
  }

  int n() const { return n_; }
  const Residues& exponents() const { return exp_; }

  bool is_trivial() const {
    return std::all_of(exp_.begin(), exp_.end(), [](int e) { return e == 0; });
  }

  int order() const {
    for (int k = 1; k <= n_; ++k) {
      bool ok = std::all_of(exp_.begin(), exp_.end(), [&](int e) { return (k * e) % n_ == 0; });
      if (ok) return k;
    }
    return n_;
  }

  Character operator*(const Character& o) const {
    if (o.n_ != n_) throw input_error("cannot multiply characters of different order bounds");
    Vec4 s{};
    for (std::size_t j = 0; j < kRank; ++j) s[j] = exp_[j] + o.exp_[j];
    return Character(n_, s);
  }

  // chi^2 as a 2-torsion character. For n = 4 the value zeta_4^{2e} = (-1)^e,
  // for n = 2 the square is trivial.
  Character square() const {
    if (n_ == 2) return trivial(2);
    Vec4 e{};
    for (std::size_t j = 0; j < kRank; ++j) e[j] = exp_[j];
    return Character(2, e);
  }

  // Same character viewed with order bound 4.
  Character lifted() const {
    if (n_ == 4) return *this;
    Vec4 e{};
    for (std::size_t j = 0; j < kRank; ++j) e[j] = 2 * exp_[j];
    return Character(4, e);
  }

  // Same character viewed with order bound 2, when its values are all +-1.
  std::optional<Character> as_order2() const {
    if (n_ == 2) return *this;
    Vec4 e{};
    for (std::size_t j = 0; j < kRank; ++j) {
      if (exp_[j] % 2 != 0) return std::nullopt;
      e[j] = exp_[j] / 2;
    }
    return Character(2, e);
  }

  // Values on lambda1, lambda2, mu1, mu2 in display form.
  std::vector<std::string> values() const {
    static constexpr std::array<std::string_view, 4> kI = {"1", "i", "-1", "-i"};
    std::vector<std::string> out;
    for (int e : exp_) out.emplace_back(n_ == 2 ? (e == 0 ? "1" : "-1") : kI[e]);
    return out;
  }

  auto operator<=>(const Character&) const = default;

 private:
  int n_;
  Residues exp_{};
};

inline std::string exponent_string(const Character& c) {
  std::string s;
  for (std::size_t j = 0; j < kRank; ++j) {
    if (j) s += ',';
    s += std::to_string(c.exponents()[j]);
  }
  return s;
}

inline std::vector<TorsionPoint> all_torsion_points(int n) {
  check_order_bound(n);
  std::vector<TorsionPoint> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) out.emplace_back(n, Vec4{a, b, c, d});
  return out;
}

inline std::vector<Character> all_characters(int n) {
  check_order_bound(n);
  std::vector<Character> out;
  for (const auto& p : all_torsion_points(n)) {
    const auto& r = p.coords();
    out.emplace_back(n, Vec4{r[0], r[1], r[2], r[3]});
  }
  return out;
}

// phi_2(x'/2) = (v |-> (-1)^{E(x', v)}).
inline Character phi2(const SymplecticLattice& lattice, const TorsionPoint& x) {
  if (x.n() != 2) throw input_error("phi2 is defined on 2-torsion points");
  Vec4 e{};
  const auto& form = lattice.form();
  for (std::size_t j = 0; j < kRank; ++j)
    for (std::size_t k = 0; k < kRank; ++k) e[j] += x.coords()[k] * form[k][j];
  return Character(2, e);
}

// K(L) intersected with A[2], i.e. ker phi_2.
inline std::vector<TorsionPoint> k_group(const SymplecticLattice& lattice) {
  std::vector<TorsionPoint> out;
  for (const auto& p : all_torsion_points(2))
    if (phi2(lattice, p).is_trivial()) out.push_back(p);
  return out;
}

// Sorted, without repeats.
inline std::vector<Character> im_phi2(const SymplecticLattice& lattice) {
  std::set<Character> image;
  for (const auto& p : all_torsion_points(2)) image.insert(phi2(lattice, p));
  return {image.begin(), image.end()};
}

inline bool is_in_im_phi2(const SymplecticLattice& lattice, const Character& c) {
  auto c2 = c.as_order2();
  if (!c2) return false;
  auto image = im_phi2(lattice);
  return std::binary_search(image.begin(), image.end(), *c2);
}

inline bool is_in_im_phi2_times(const SymplecticLattice& lattice, const Character& c) {
  return !c.is_trivial() && is_in_im_phi2(lattice, c);
}

// All b with 2b = lift(c) mod 4; always 16 of them.
inline std::vector<Character> square_roots(const Character& c) {
  if (c.n() != 2) throw input_error("square_roots expects a 2-torsion character");
  std::vector<Character> out;
  for (const auto& b : all_characters(4))
    if (b.square() == c) out.push_back(b);
  return out;
}

// The sixteen 2-torsion characters for d = 2, labelled chi0..chi3 (the image
// of phi_2) and psi1..psi12 (its complement), in the fixed display order.
class CharacterTable {
 public:
  explicit CharacterTable(const SymplecticLattice& lattice)
      : chi_((require_d2(lattice), make_chi())), psi_(make_psi()) {}

  const std::array<Character, 4>& chi() const { return chi_; }
  const std::array<Character, 12>& psi() const { return psi_; }
  const Character& chi(std::size_t i) const { return chi_.at(i); }
  // 1-based, as displayed.
  const Character& psi(std::size_t j) const { return psi_.at(j - 1); }

  std::optional<std::string> label_of(const Character& c) const {
    auto c2 = c.as_order2();
    if (!c2) return std::nullopt;
    for (std::size_t i = 0; i < chi_.size(); ++i)
      if (chi_[i] == *c2) return "chi" + std::to_string(i);
    for (std::size_t j = 0; j < psi_.size(); ++j)
      if (psi_[j] == *c2) return "psi" + std::to_string(j + 1);
    return std::nullopt;
  }

  std::optional<Character> find(std::string_view label) const {
    for (std::size_t i = 0; i < chi_.size(); ++i)
      if (label == "chi" + std::to_string(i)) return chi_[i];
    for (std::size_t j = 0; j < psi_.size(); ++j)
      if (label == "psi" + std::to_string(j + 1)) return psi_[j];
    return std::nullopt;
  }

  // chi0, chi1..chi3, psi1..psi12.
  std::vector<Character> all() const {
    std::vector<Character> out(chi_.begin(), chi_.end());
    out.insert(out.end(), psi_.begin(), psi_.end());
    return out;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < chi_.size(); ++i) out.push_back("chi" + std::to_string(i));
    for (std::size_t j = 1; j <= psi_.size(); ++j) out.push_back("psi" + std::to_string(j));
    return out;
  }

 private:
  static int require_d2(const SymplecticLattice& lattice) {
    if (lattice.d() != 2)
      throw input_error("the labelled character table exists only for d = 2, got d = " +
                        std::to_string(lattice.d()));
    return 0;
  }

  static std::array<Character, 4> make_chi() {
    using C = Character;
    return {C::from_signs({1, 1, 1, 1}), C::from_signs({1, 1, -1, 1}),
            C::from_signs({-1, 1, 1, 1}), C::from_signs({-1, 1, -1, 1})};
  }

  static std::array<Character, 12> make_psi() {
    using C = Character;
    return {C::from_signs({1, 1, 1, -1}),    C::from_signs({1, 1, -1, -1}),
            C::from_signs({1, -1, 1, 1}),    C::from_signs({1, -1, 1, -1}),
            C::from_signs({1, -1, -1, 1}),   C::from_signs({1, -1, -1, -1}),
            C::from_signs({-1, 1, 1, -1}),   C::from_signs({-1, 1, -1, -1}),
            C::from_signs({-1, -1, 1, 1}),   C::from_signs({-1, -1, 1, -1}),
            C::from_signs({-1, -1, -1, 1}),  C::from_signs({-1, -1, -1, -1})};
  }

  std::array<Character, 4> chi_;
  std::array<Character, 12> psi_;
};

inline CharacterTable character_table(const SymplecticLattice& lattice) { return CharacterTable(lattice); }

// "chi1" -> "χ₁", "psi12" -> "ψ₁₂".
inline std::string pretty_label(std::string_view label) {
  static constexpr std::array<std::string_view, 10> kSub = {"₀", "₁", "₂", "₃", "₄",
                                                            "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  std::string_view digits;
  if (label.starts_with("chi")) {
    out = "χ";
    digits = label.substr(3);
  } else if (label.starts_with("psi")) {
    out = "ψ";
    digits = label.substr(3);
  } else {
    return std::string(label);
  }
  for (char ch : digits) {
    if (ch < '0' || ch > '9') return std::string(label);
    out += kSub[static_cast<std::size_t>(ch - '0')];
  }
  return out;
}

template <class Json>
void to_json(Json& j, const Character& c) {
  j = Json::object();
  j["n"] = c.n();
  j["exp"] = c.exponents();
}

template <class Json>
Character character_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("exp"))
    throw input_error("character JSON must look like {\"n\": 2|4, \"exp\": [e1,e2,e3,e4]}");
  auto exps = j.at("exp").template get<std::vector<long long>>();
  if (exps.size() != kRank) throw input_error("character exponent vector must have 4 entries");
  return Character(j.at("n").template get<int>(), Vec4{exps[0], exps[1], exps[2], exps[3]});
}

// Serialized form plus the +-1 / i-power value tuple and, for d = 2, the label.
inline nlohmann::ordered_json character_display(const Character& c, const CharacterTable* table) {
  nlohmann::ordered_json j = c;
  j["values"] = c.values();
  if (table) {
    if (auto label = table->label_of(c); label && c.n() == 2) j["label"] = *label;
  }
  return j;
}

}  // namespace pgq2
