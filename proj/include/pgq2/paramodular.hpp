#pragma once

// Elements of the paramodular group G_Delta, Delta = diag(1, d): rational 4x4
// matrices with the paramodular integrality pattern whose lattice monodromy
// N = S^{-1} M^T S (S = diag(1, 1, 1, d)) is integral and preserves E.
//
// M acts on torsion characters by (M . chi)(v) = chi(N v), i.e. on exponent
// vectors by e |-> N^T e (mod n). This is a left action:
// act(M1 M2, c) = act(M1, act(M2, c)).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pgq2/error.hpp"
#include "pgq2/lattice.hpp"
#include "pgq2/rational.hpp"

namespace pgq2 {

// Entry (row, col) of a paramodular matrix must lie in multiplier * Z. For
// d = 2 the rows read  Z Z Z 2Z / 2Z Z 2Z 2Z / Z Z Z 2Z / Z 1/2Z Z Z.
inline Rational pattern_multiplier(PolarizationType type, std::size_t row, std::size_t col) {
  const Rational d(type.d);
  static constexpr int kPattern[4][4] = {{0, 0, 0, 1}, {1, 0, 1, 1}, {0, 0, 0, 1}, {0, -1, 0, 0}};
  switch (kPattern[row][col]) {
    case 1: return d;
    case -1: return Rational(1) / d;
    default: return Rational(1);
  }
}

inline std::string multiplier_label(const Rational& m) {
  if (m == 1) return "Z";
  if (is_integral(m)) return numerator(m).str() + "Z";
  return "1/" + denominator(m).str() + "Z";
}

inline RationalMatrix4 scaling_matrix(PolarizationType type) {
  RationalMatrix4 s = identity4<Rational>();
  s[3][3] = Rational(type.d);
  return s;
}

inline RationalMatrix4 form_matrix(PolarizationType type) {
  return to_rational(SymplecticLattice(type).form());
}

// N = S^{-1} M^T S, over Q (integral exactly when M is paramodular).
inline RationalMatrix4 monodromy_matrix(const RationalMatrix4& m, PolarizationType type) {
  const auto s = scaling_matrix(type);
  return multiply(multiply(inverse(s), transpose(m)), s);
}

struct Violation {
  std::size_t row;  // 1-based
  std::size_t column;
  std::string reason;
};

struct MembershipCertificate {
  bool pattern_ok = false;
  bool n_integral = false;
  bool symplectic_ok = false;
  std::optional<Violation> first_violation;
  // Present when n_integral.
  std::optional<IntegerMatrix4> monodromy;

  bool is_member() const { return pattern_ok && n_integral && symplectic_ok; }
};

inline MembershipCertificate is_member(const RationalMatrix4& m, PolarizationType type = PolarizationType(2)) {
  MembershipCertificate cert;
  auto note = [&](std::size_t i, std::size_t j, std::string reason) {
    if (!cert.first_violation) cert.first_violation = Violation{i + 1, j + 1, std::move(reason)};
  };

  cert.pattern_ok = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Rational mult = pattern_multiplier(type, i, j);
      if (!is_integral(m[i][j] / mult)) {
        note(i, j, "pattern: entry " + to_fraction_string(m[i][j]) + " is not in " + multiplier_label(mult));
        cert.pattern_ok = false;
      }
    }

  const RationalMatrix4 n = monodromy_matrix(m, type);
  cert.n_integral = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!is_integral(n[i][j])) {
        note(i, j, "monodromy: N entry " + to_fraction_string(n[i][j]) + " is not integral");
        cert.n_integral = false;
      }
  if (cert.n_integral) {
    IntegerMatrix4 ni;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) ni[i][j] = numerator(n[i][j]);
    cert.monodromy = ni;
  }

  const RationalMatrix4 e = form_matrix(type);
  const RationalMatrix4 pulled = multiply(multiply(transpose(n), e), n);
  cert.symplectic_ok = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (pulled[i][j] != e[i][j]) {
        note(i, j, "symplectic: (N^T E N) entry is " + to_fraction_string(pulled[i][j]) + ", E entry is " +
                       to_fraction_string(e[i][j]));
        cert.symplectic_ok = false;
      }
  return cert;
}

class ParamodularMatrix {
 public:
  // Throws input_error naming the first violation when m is not a member.
  static ParamodularMatrix from_entries(const RationalMatrix4& m, PolarizationType type = PolarizationType(2),
                                        std::string name = {}) {
    auto cert = is_member(m, type);
    if (!cert.is_member()) {
      const auto& v = *cert.first_violation;
      throw input_error("matrix is not in the paramodular group: (" + std::to_string(v.row) + "," +
                        std::to_string(v.column) + ") " + v.reason);
    }
    return ParamodularMatrix(m, type, *cert.monodromy, std::move(name));
  }

  const RationalMatrix4& entries() const { return entries_; }
  PolarizationType type() const { return type_; }
  const IntegerMatrix4& monodromy() const { return monodromy_; }
  const std::string& name() const { return name_; }

  ParamodularMatrix operator*(const ParamodularMatrix& o) const {
    if (!(o.type_ == type_)) throw input_error("cannot multiply matrices of different polarization types");
    RationalMatrix4 p = multiply(entries_, o.entries_);
    auto cert = is_member(p, type_);
    if (!cert.is_member()) throw consistency_error("product of paramodular matrices left the group");
    std::string name = name_.empty() || o.name_.empty() ? std::string{} : name_ + " * " + o.name_;
    return ParamodularMatrix(std::move(p), type_, *cert.monodromy, std::move(name));
  }

  ParamodularMatrix inverse() const {
    RationalMatrix4 inv = pgq2::inverse(entries_);
    auto cert = is_member(inv, type_);
    if (!cert.is_member()) throw consistency_error("inverse of a paramodular matrix left the group");
    return ParamodularMatrix(std::move(inv), type_, *cert.monodromy, name_.empty() ? name_ : name_ + "^-1");
  }

 private:
  ParamodularMatrix(RationalMatrix4 m, PolarizationType type, IntegerMatrix4 n, std::string name)
      : entries_(std::move(m)), type_(type), monodromy_(std::move(n)), name_(std::move(name)) {}

  RationalMatrix4 entries_;
  PolarizationType type_;
  IntegerMatrix4 monodromy_;
  std::string name_;
};

// Upper unitriangular, beta = [[b11, d b12], [d b12, d b22]].
inline ParamodularMatrix gen_b(long long b11, long long b12, long long b22,
                               PolarizationType type = PolarizationType(2)) {
  const long long d = type.d;
  Matrix4<long long> m = {{{1, 0, b11, d * b12}, {0, 1, d * b12, d * b22}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  return ParamodularMatrix::from_entries(to_rational(m), type,
                                         "M_b(" + std::to_string(b11) + "," + std::to_string(b12) + "," +
                                             std::to_string(b22) + ")");
}

// Block diagonal, delta = [[d11, d d12], [d21, d22]] in SL_2(Z).
inline ParamodularMatrix gen_d(long long d11, long long d12, long long d21, long long d22,
                               PolarizationType type = PolarizationType(2)) {
  const long long d = type.d;
  const long long det = d11 * d22 - d * d12 * d21;
  if (det != 1)
    throw input_error("M_d needs d11*d22 - " + std::to_string(d) + "*d12*d21 = 1, got " + std::to_string(det));
  Matrix4<long long> m = {{{d22, -d21, 0, 0}, {-d * d12, d11, 0, 0}, {0, 0, d11, d * d12}, {0, 0, d21, d22}}};
  return ParamodularMatrix::from_entries(to_rational(m), type,
                                         "M_d(" + std::to_string(d11) + "," + std::to_string(d12) + "," +
                                             std::to_string(d21) + "," + std::to_string(d22) + ")");
}

inline ParamodularMatrix gen_J(PolarizationType type = PolarizationType(2)) {
  RationalMatrix4 m{};
  for (auto& row : m)
    for (auto& x : row) x = 0;
  m[0][2] = 1;
  m[1][3] = type.d;
  m[2][0] = -1;
  m[3][1] = Rational(-1, type.d);
  return ParamodularMatrix::from_entries(m, type, "M_{1," + std::to_string(type.d) + "}");
}

// One instance of each parity case of the displayed generator families: M_b with
// b11, b12, b22 odd in turn, M_d with d21 odd / d12 odd, and M_{1,2}.
inline std::vector<ParamodularMatrix> standard_generators() {
  return {gen_b(1, 0, 0), gen_b(0, 1, 0), gen_b(0, 0, 1), gen_d(1, 0, 1, 1), gen_d(1, 1, 0, 1), gen_J()};
}

inline Character act(const ParamodularMatrix& m, const Character& c) {
  const auto& n = m.monodromy();
  const int mod = c.n();
  Vec4 out{};
  for (std::size_t i = 0; i < kRank; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < kRank; ++j) s += n[j][i] * c.exponents()[j];
    Integer r = s % mod;
    if (r < 0) r += mod;
    out[i] = r.convert_to<long long>();
  }
  return Character(mod, out);
}

inline Character act(const RationalMatrix4& m, PolarizationType type, const Character& c) {
  return act(ParamodularMatrix::from_entries(m, type), c);
}

// (Q, Q^{1/2}) with Q of order dividing 2 and root^2 = Q.
class RootPair {
 public:
  RootPair(Character base, Character root) : base_(std::move(base)), root_(std::move(root)) {
    if (base_.n() != 2) throw input_error("pair base must be a 2-torsion character (n = 2)");
    if (root_.n() != 4) throw input_error("pair root must be given with n = 4");
    if (!(root_.square() == base_))
      throw input_error("root [" + exponent_string(root_) + "] does not square to base [" + exponent_string(base_) +
                        "]");
  }

  const Character& base() const { return base_; }
  const Character& root() const { return root_; }

  auto operator<=>(const RootPair&) const = default;

 private:
  Character base_;
  Character root_;
};

inline RootPair act_pair(const ParamodularMatrix& m, const RootPair& pair) {
  Character base = act(m, pair.base());
  Character root = act(m, pair.root());
  if (!(root.square() == base)) throw consistency_error("mod-4 and mod-2 actions disagree on a root pair");
  return RootPair(std::move(base), std::move(root));
}

// Every pair (Q, Q^{1/2}) with Q in im phi_2^x; 3 x 16 = 48 for d = 2.
inline std::vector<RootPair> root_pairs(const SymplecticLattice& lattice) {
  std::vector<RootPair> out;
  for (const auto& q : im_phi2(lattice)) {
    if (q.is_trivial()) continue;
    for (const auto& r : square_roots(q)) out.emplace_back(q, r);
  }
  return out;
}

template <class Json>
void to_json(Json& j, const MembershipCertificate& c) {
  j = Json::object();
  j["member"] = c.is_member();
  j["pattern_ok"] = c.pattern_ok;
  j["n_integral"] = c.n_integral;
  j["symplectic_ok"] = c.symplectic_ok;
  if (c.first_violation) {
    Json v = Json::object();
    v["row"] = c.first_violation->row;
    v["column"] = c.first_violation->column;
    v["reason"] = c.first_violation->reason;
    j["first_violation"] = v;
  } else {
    j["first_violation"] = nullptr;
  }
  if (c.monodromy) {
    Json rows = Json::array();
    for (const auto& row : *c.monodromy) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(x.str());
      rows.push_back(r);
    }
    j["N"] = rows;
  }
}

template <class Json>
void to_json(Json& j, const ParamodularMatrix& m) {
  j = Json::object();
  if (!m.name().empty()) j["name"] = m.name();
  j["d"] = m.type().d;
  j["entries"] = to_fraction_strings(m.entries());
}

}  // namespace pgq2
