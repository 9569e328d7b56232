#pragma once

// Riemann-Roch bookkeeping on the abelian surface A (NS(A) = Z L, L^2 = 4),
// on the blow-up B of A at the origin (K_B = E, E^2 = -1, chi(O_B) = 0) and
// on smooth curves.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgq2/error.hpp"
#include "pgq2/lattice.hpp"

namespace pgq2 {

inline constexpr long long kLSquared = 4;

// rank, c1 = a L, c2.
struct ChernDatum {
  long long rank = 1;
  long long a = 0;
  long long c2 = 0;

  ChernDatum() = default;
  ChernDatum(long long r, long long a_, long long c2_) : rank(r), a(a_), c2(c2_) {
    if (rank < 1) throw input_error("rank must be >= 1, got " + std::to_string(rank));
  }
  friend bool operator==(const ChernDatum&, const ChernDatum&) = default;
};

// Td(A) = 1, so chi = ch_2 = (c1^2 - 2 c2) / 2.
inline long long chi_abelian(const ChernDatum& v) { return (kLSquared * v.a * v.a - 2 * v.c2) / 2; }

inline void require_rank2(const ChernDatum& v, const char* op) {
  if (v.rank != 2) throw input_error(std::string(op) + " needs a rank 2 datum, got rank " + std::to_string(v.rank));
}

// Roots 2x, x+y, 2y: e1 = 3 s, e2 = 2 s^2 + 4 p.
inline ChernDatum sym2(const ChernDatum& v) {
  require_rank2(v, "sym2");
  return {3, 3 * v.a, 2 * kLSquared * v.a * v.a + 4 * v.c2};
}

// Roots 3x, 2x+y, x+2y, 3y: e1 = 6 s, e2 = 11 s^2 + 10 p.
inline ChernDatum sym3(const ChernDatum& v) {
  require_rank2(v, "sym3");
  return {4, 6 * v.a, 11 * kLSquared * v.a * v.a + 10 * v.c2};
}

inline ChernDatum dual(const ChernDatum& v) { return {v.rank, -v.a, v.c2}; }

inline ChernDatum det(const ChernDatum& v) { return {1, v.a, 0}; }

// v (x) L^m. Degree-0 twists are m = 0.
inline ChernDatum tensor_line(const ChernDatum& v, long long m) {
  const long long r = v.rank;
  return {r, v.a + r * m, v.c2 + (r - 1) * kLSquared * v.a * m + r * (r - 1) / 2 * kLSquared * m * m};
}

// Colength of the fat point I_o^k.
inline long long fat_point_colength(long long k) {
  if (k < 0) throw input_error("fat point order must be >= 0");
  return k * (k + 1) / 2;
}

// chi(V (x) I_o^k)
inline long long chi_with_fat_point(const ChernDatum& v, long long k) {
  return chi_abelian(v) - v.rank * fat_point_colength(k);
}

// The rank 2 bundle with c1 = L, c2 = 1.
inline ChernDatum bundle_F() { return {2, 1, 1}; }

// S^k F (x) (det F)^-1 (x) Q; Q carries no Chern data.
inline ChernDatum sym2_twisted() { return tensor_line(sym2(bundle_F()), -1); }
inline ChernDatum sym3_twisted() { return tensor_line(sym3(bundle_F()), -1); }

// a sigma^* L + b E on B.
struct BlowupLineBundle {
  long long a = 0;
  long long b = 0;
  friend bool operator==(const BlowupLineBundle&, const BlowupLineBundle&) = default;
};

inline long long self_intersection(const BlowupLineBundle& D) { return kLSquared * D.a * D.a - D.b * D.b; }
inline long long dot_canonical(const BlowupLineBundle& D) { return -D.b; }

inline long long chi_blowup_line(const BlowupLineBundle& D) {
  return (self_intersection(D) - dot_canonical(D)) / 2;
}

// Adjunction; meaningful only if D is a smooth irreducible curve.
inline long long genus_blowup_divisor(const BlowupLineBundle& D) {
  return 1 + (self_intersection(D) + dot_canonical(D)) / 2;
}

inline long long curve_rr(long long g, long long deg) {
  if (g < 0) throw input_error("genus must be >= 0, got " + std::to_string(g));
  return deg + 1 - g;
}

inline const BlowupLineBundle kLBInverse{-1, 2};  // L_B^{-1} = -(sigma^* L - 2E)
inline const BlowupLineBundle kPencilClass{2, -4};

// Surface invariants of B.
inline constexpr long long kBlowupK2 = -1;
inline constexpr long long kBlowupEuler = 1;

// chi(T_X) = (7 K^2 - 5 e) / 6 on a surface.
inline long long chi_tangent(long long K2, long long euler) {
  const long long num = 7 * K2 - 5 * euler;
  if (num % 6 != 0) throw input_error("7K^2 - 5e is not divisible by 6");
  return num / 6;
}

// chi(T_B (x) M) = chi(T_B) + c1(T_B).M + 2 (M^2 - M.K) / 2, c1(T_B) = -E.
inline long long chi_tangent_twisted(const BlowupLineBundle& M) {
  const long long c1_dot_m = M.b;  // (-E).(aL + bE) = b
  return chi_tangent(kBlowupK2, kBlowupEuler) + c1_dot_m + (self_intersection(M) - dot_canonical(M));
}

// 0 -> S -> M -> Q -> 0 at the level of chi.
struct SequenceCheck {
  std::string name;
  std::string sequence;
  long long sub = 0;
  long long quotient = 0;
  long long middle = 0;
  bool holds() const { return sub + quotient == middle; }
};

inline std::vector<SequenceCheck> exact_sequence_checks() {
  const ChernDatum F = bundle_F();
  const ChernDatum L{1, 1, 0};
  const ChernDatum L2{1, 2, 0};
  std::vector<SequenceCheck> out;
  out.push_back({"F extension", "0 -> O_A -> F -> L (x) I_p -> 0", chi_abelian(ChernDatum{1, 0, 0}),
                 chi_with_fat_point(L, 1), chi_abelian(F)});
  out.push_back({"Eagon-Northcott S2", "0 -> F^v -> S^2F (x) det F^v (x) Q -> L (x) Q^3 (x) I_p^2 -> 0",
                 chi_abelian(dual(F)), chi_with_fat_point(L, 2), chi_abelian(sym2_twisted())});
  out.push_back({"Eagon-Northcott S3",
                 "0 -> S^2F (x) det F^v (x) Q^-1 -> S^3F (x) det F^v (x) Q^-1 -> L^2 (x) Q^-1 (x) I_o^3 -> 0",
                 chi_abelian(sym2_twisted()), chi_with_fat_point(L2, 3), chi_abelian(sym3_twisted())});
  out.push_back({"beta_* T", "beta_* T_B = T_B + T_B (x) L_B^-1", chi_tangent(kBlowupK2, kBlowupEuler),
                 chi_tangent_twisted(kLBInverse), chi_tangent(kBlowupK2, kBlowupEuler) + chi_tangent_twisted(kLBInverse)});
  return out;
}

// ---------------------------------------------------------------------------
// Cohomology ledger. The h-vectors are quoted values keyed on a torsion
// condition; only chi is recomputed.

enum class Membership { any, trivial, in_im_times, not_in_im_times, in_im, not_in_im };

inline std::string membership_text(Membership m, const std::string& var) {
  switch (m) {
    case Membership::any: return "any " + var;
    case Membership::trivial: return var + " = O_A";
    case Membership::in_im_times: return var + " in im phi_2^x";
    case Membership::not_in_im_times: return var + " not in im phi_2^x";
    case Membership::in_im: return var + " in im phi_2";
    case Membership::not_in_im: return var + " not in im phi_2";
  }
  return {};
}

inline bool membership_holds(Membership m, const SymplecticLattice& lattice, const Character& c) {
  switch (m) {
    case Membership::any: return true;
    case Membership::trivial: return c.is_trivial();
    case Membership::in_im_times: return is_in_im_phi2_times(lattice, c);
    case Membership::not_in_im_times: return !is_in_im_phi2_times(lattice, c);
    case Membership::in_im: return is_in_im_phi2(lattice, c);
    case Membership::not_in_im: return !is_in_im_phi2(lattice, c);
  }
  return false;
}

struct LedgerRow {
  std::string object;
  std::string space;        // A, B or D (genus 3 curve in |sigma^*(2L) - 4E|)
  std::string variable;     // the torsion bundle the condition is on
  Membership condition = Membership::any;
  std::optional<long long> h0, h1, h2;
  long long chi = 0;        // recomputed
  std::string chi_route;

  bool complete() const { return h0 && h1 && h2; }
  std::optional<long long> h_chi() const {
    if (!complete()) return std::nullopt;
    return *h0 - *h1 + *h2;
  }
  std::string condition_text() const { return membership_text(condition, variable); }
};

struct ReplayCheck {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool holds() const { return lhs == rhs; }
};

struct Ledger {
  std::vector<LedgerRow> rows;
  std::vector<ReplayCheck> replays;
  std::vector<SequenceCheck> sequences;

  const LedgerRow& find(const std::string& object, const SymplecticLattice& lattice, const Character& c) const {
    const LedgerRow* hit = nullptr;
    for (const auto& r : rows)
      if (r.object == object && membership_holds(r.condition, lattice, c)) {
        if (hit) throw consistency_error("two ledger rows apply to " + object);
        hit = &r;
      }
    if (!hit) throw input_error("no ledger row for " + object + " at " + exponent_string(c));
    return *hit;
  }
};

inline Ledger dimension_ledger() {
  using M = Membership;
  const ChernDatum F = bundle_F();
  const ChernDatum L{1, 1, 0};
  const ChernDatum L2{1, 2, 0};
  const long long chi_D0 = curve_rr(genus_blowup_divisor(kPencilClass), 0);

  Ledger led;
  auto add = [&](std::string object, std::string space, std::string var, M cond, std::optional<long long> h0,
                 std::optional<long long> h1, std::optional<long long> h2, long long chi, std::string route) {
    led.rows.push_back({std::move(object), std::move(space), std::move(var), cond, h0, h1, h2, chi, std::move(route)});
  };

  add("F", "A", "Q", M::any, 1, 0, 0, chi_abelian(F), "HRR on A");
  add("S^2F (x) det F^v (x) Q", "A", "Q", M::not_in_im_times, 0, 0, 0, chi_abelian(sym2_twisted()), "HRR, splitting principle");
  add("S^2F (x) det F^v (x) Q", "A", "Q", M::in_im_times, 1, 2, 1, chi_abelian(sym2_twisted()), "HRR, splitting principle");
  add("S^3F (x) det F^v (x) Q", "A", "Q", M::any, 2, 0, 0, chi_abelian(sym3_twisted()), "HRR, splitting principle");
  add("L (x) Q' (x) I_p^2", "A", "Q' (x) Q^-1", M::not_in_im_times, 0, std::nullopt, std::nullopt,
      chi_with_fat_point(L, 2), "HRR minus fat point colength");
  add("L (x) Q' (x) I_p^2", "A", "Q' (x) Q^-1", M::in_im_times, 1, std::nullopt, std::nullopt,
      chi_with_fat_point(L, 2), "HRR minus fat point colength");
  // From the Eagon-Northcott sequence for S^3F and the S^2F rows.
  add("L^2 (x) Q^-1 (x) I_o^3", "A", "Q^-1", M::not_in_im_times, 2, 0, 0, chi_with_fat_point(L2, 3),
      "HRR minus fat point colength");
  add("L^2 (x) Q^-1 (x) I_o^3", "A", "Q^-1", M::in_im_times, 3, 1, 0, chi_with_fat_point(L2, 3),
      "HRR minus fat point colength");
  add("L^2 (x) Q (x) I_o^4", "A", "Q", M::trivial, 2, std::nullopt, std::nullopt, chi_with_fat_point(L2, 4),
      "HRR minus fat point colength");
  add("L^2 (x) Q (x) I_o^4", "A", "Q", M::in_im_times, 1, std::nullopt, std::nullopt, chi_with_fat_point(L2, 4),
      "HRR minus fat point colength");
  add("L^2 (x) Q (x) I_o^4", "A", "Q", M::not_in_im, 0, std::nullopt, std::nullopt, chi_with_fat_point(L2, 4),
      "HRR minus fat point colength");
  add("T_B", "B", "Q", M::any, 0, 4, 2, chi_tangent(kBlowupK2, kBlowupEuler), "(7K^2 - 5e)/6");
  add("L_B^-1", "B", "Q", M::any, 0, 0, 1, chi_blowup_line(kLBInverse), "RR on B");
  add("T_B (x) L_B^-1", "B", "Q", M::any, 0, 0, 2, chi_tangent_twisted(kLBInverse), "HRR for a twisted rank 2 bundle");
  add("beta_* T_B", "B", "Q", M::any, 0, 4, 4,
      chi_tangent(kBlowupK2, kBlowupEuler) + chi_tangent_twisted(kLBInverse), "sum of the two eigensheaves");
  add("O_D(Q)", "D", "Q", M::trivial, 1, 3, std::nullopt, chi_D0, "RR on a genus 3 curve");
  add("O_D(Q)", "D", "Q", M::in_im_times, 1, 3, std::nullopt, chi_D0, "RR on a genus 3 curve");
  add("O_D(Q)", "D", "Q", M::not_in_im, 0, 2, std::nullopt, chi_D0, "RR on a genus 3 curve");

  // Curves have no h2.
  for (auto& r : led.rows)
    if (r.space == "D") r.h2 = 0;

  for (const auto& r : led.rows) {
    if (auto hc = r.h_chi(); hc && *hc != r.chi)
      throw consistency_error("ledger row " + r.object + " [" + r.condition_text() + "]: h-vector gives chi " +
                              std::to_string(*hc) + " but Riemann-Roch gives " + std::to_string(r.chi));
    if (!r.complete() && r.h0 && r.h1 && *r.h0 - *r.h1 != r.chi)
      throw consistency_error("ledger row " + r.object + ": h0 - h1 disagrees with chi");
  }

  auto row = [&](const std::string& object, M cond) -> const LedgerRow& {
    for (const auto& r : led.rows)
      if (r.object == object && r.condition == cond) return r;
    throw consistency_error("missing ledger row " + object);
  };
  const auto& s2_out = row("S^2F (x) det F^v (x) Q", M::not_in_im_times);
  const auto& s2_in = row("S^2F (x) det F^v (x) Q", M::in_im_times);
  const auto& s3 = row("S^3F (x) det F^v (x) Q", M::any);
  const auto& l2_out = row("L^2 (x) Q^-1 (x) I_o^3", M::not_in_im_times);
  const auto& l2_in = row("L^2 (x) Q^-1 (x) I_o^3", M::in_im_times);
  const auto& tb = row("T_B", M::any);
  const auto& lbi = row("L_B^-1", M::any);
  const auto& tbl = row("T_B (x) L_B^-1", M::any);
  const auto& bt = row("beta_* T_B", M::any);
  const auto& od_in = row("O_D(Q)", M::in_im_times);
  const auto& od_out = row("O_D(Q)", M::not_in_im);

  // 0 -> H0(S2) -> H0(S3) -> H0(L^2 Q^-1 I^3) -> H1(S2) -> H1(S3) = 0, and H1(L^2..) = H2(S2).
  for (const auto* p : {&s2_out, &s2_in}) {
    const auto& s2 = *p;
    const auto& target = p == &s2_out ? l2_out : l2_in;
    const std::string tag = p == &s2_out ? " [Q^-1 not in im phi_2^x]" : " [Q^-1 in im phi_2^x]";
    led.replays.push_back({"h0(L^2 Q^-1 I_o^3) = h0(S3) - h0(S2) + h1(S2)" + tag, *target.h0,
                           *s3.h0 - *s2.h0 + *s2.h1});
    led.replays.push_back({"h1(L^2 Q^-1 I_o^3) = h2(S2)" + tag, *target.h1, *s2.h2});
  }
  // h1(D, O_D(Q)) = h0(L^2 (x) Q^-1 (x) I_o^3) for non-trivial Q.
  led.replays.push_back({"h1(O_D(Q)) = h0(L^2 Q^-1 I_o^3) [Q in im phi_2^x]", *od_in.h1, *l2_in.h0});
  led.replays.push_back({"h1(O_D(Q)) = h0(L^2 Q^-1 I_o^3) [Q not in im phi_2]", *od_out.h1, *l2_out.h0});
  // h^i(T_B (x) L_B^-1) = 2 h^i(L_B^-1).
  led.replays.push_back({"h0(T_B L_B^-1) = 2 h0(L_B^-1)", *tbl.h0, 2 * *lbi.h0});
  led.replays.push_back({"h1(T_B L_B^-1) = 2 h1(L_B^-1)", *tbl.h1, 2 * *lbi.h1});
  led.replays.push_back({"h2(T_B L_B^-1) = 2 h2(L_B^-1)", *tbl.h2, 2 * *lbi.h2});
  led.replays.push_back({"chi(T_B L_B^-1) = 2 chi(L_B^-1)", tbl.chi, 2 * lbi.chi});
  // beta_* T_B splits into invariant and anti-invariant parts.
  led.replays.push_back({"h0(beta_* T_B) = h0(T_B) + h0(T_B L_B^-1)", *bt.h0, *tb.h0 + *tbl.h0});
  led.replays.push_back({"h1(beta_* T_B) = h1(T_B) + h1(T_B L_B^-1)", *bt.h1, *tb.h1 + *tbl.h1});
  led.replays.push_back({"h2(beta_* T_B) = h2(T_B) + h2(T_B L_B^-1)", *bt.h2, *tb.h2 + *tbl.h2});
  led.replays.push_back({"chi(beta_* T_B) = chi(T_B) + chi(T_B L_B^-1)", bt.chi, tb.chi + tbl.chi});

  led.sequences = exact_sequence_checks();

  for (const auto& r : led.replays)
    if (!r.holds())
      throw consistency_error("ledger replay failed: " + r.name + " (" + std::to_string(r.lhs) +
                              " != " + std::to_string(r.rhs) + ")");
  for (const auto& s : led.sequences)
    if (!s.holds()) throw consistency_error("chi is not additive on " + s.name);
  return led;
}

// dim |L^2 (x) Q (x) I_o^4|; nullopt when the system is empty.
inline std::optional<long long> dim_L2_Q_I4(const SymplecticLattice& lattice, const Character& q) {
  const auto& r = dimension_ledger().find("L^2 (x) Q (x) I_o^4", lattice, q);
  if (*r.h0 == 0) return std::nullopt;
  return *r.h0 - 1;
}

template <class Json>
void to_json(Json& j, const ChernDatum& v) {
  j = Json::object();
  j["rank"] = v.rank;
  j["a"] = v.a;
  j["c2"] = v.c2;
}

template <class Json>
void to_json(Json& j, const LedgerRow& r) {
  j = Json::object();
  j["object"] = r.object;
  j["space"] = r.space;
  j["condition"] = r.condition_text();
  auto opt = [](const std::optional<long long>& x) { return x ? Json(*x) : Json(nullptr); };
  j["h0"] = opt(r.h0);
  j["h1"] = opt(r.h1);
  j["h2"] = opt(r.h2);
  j["chi"] = r.chi;
  j["chi_route"] = r.chi_route;
}

template <class Json>
void to_json(Json& j, const SequenceCheck& s) {
  j = Json::object();
  j["name"] = s.name;
  j["sequence"] = s.sequence;
  j["chi_sub"] = s.sub;
  j["chi_quotient"] = s.quotient;
  j["chi_middle"] = s.middle;
  j["holds"] = s.holds();
}

template <class Json>
void to_json(Json& j, const ReplayCheck& r) {
  j = Json::object();
  j["check"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["holds"] = r.holds();
}

template <class Json>
void to_json(Json& j, const Ledger& led) {
  j = Json::object();
  j["rows"] = led.rows;
  j["replays"] = led.replays;
  j["sequences"] = led.sequences;
}

}  // namespace pgq2
