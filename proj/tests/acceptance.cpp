// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "golden_commands.hpp"
#include "pgq2/chern.hpp"
#include "pgq2/classifier.hpp"
#include "pgq2/cli.hpp"
#include "pgq2/doublecover.hpp"
#include "pgq2/orbits.hpp"
#include "pgq2/paramodular.hpp"

using namespace pgq2;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void need(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

RationalMatrix4 standard_J() {
  RationalMatrix4 j{};
  for (auto& r : j)
    for (auto& x : r) x = 0;
  j[0][2] = 1;
  j[1][3] = 1;
  j[2][0] = -1;
  j[3][1] = -1;
  return j;
}

bool throws_input_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const input_error&) {
    return true;
  }
  return false;
}

Outcome orbit_sizes() {
  Outcome o;
  const CharacterTable table(make_lattice(2));
  const auto gens = standard_generators();
  auto sizes = orbits_all(characters2_set(table), std::span<const ParamodularMatrix>(gens), act_on_character).sizes();
  std::sort(sizes.begin(), sizes.end());
  o.need(sizes == std::vector<std::size_t>{1, 3, 12}, "orbit sizes differ from {1,3,12}");
  return o;
}

Outcome permutation_goldens() {
  Outcome o;
  const CharacterTable table(make_lattice(2));
  const auto set = psi_set(table);
  const std::vector<std::string> want = {"(2 8)(5 11)(6 12)",       "(1 7)(2 8)(4 10)(6 12)",
                                         "(1 4)(2 6)(7 10)(8 12)",  "(3 9)(4 10)(5 11)(6 12)",
                                         "(1 2)(4 6)(7 8)(10 12)",  "(1 3)(2 9)(5 7)(6 10)(8 11)"};
  const auto gens = standard_generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto got = permutation_of(gens[k], set, act_on_character).cycle_string();
    o.need(got == want[k], gens[k].name() + " gives " + got);
  }
  return o;
}

Outcome transitivity() {
  Outcome o;
  const CharacterTable table(make_lattice(2));
  const auto set = psi_set(table);
  std::vector<Permutation> perms;
  for (const auto& g : standard_generators()) perms.push_back(permutation_of(g, set, act_on_character));
  const auto rep = group_closure(perms, 12);
  o.need(rep.transitive, "T is not transitive");
  o.need(!rep.truncated, "closure truncated");
  o.detail = o.ok ? "|T| = " + std::to_string(rep.order) : o.detail;
  return o;
}

Outcome pair_orbit() {
  Outcome o;
  const auto lattice = make_lattice(2);
  const CharacterTable table(lattice);
  const auto gens = standard_generators();
  const auto part = orbits_all(pairs_set(lattice, table), std::span<const ParamodularMatrix>(gens), act_on_pair);
  o.need(part.blocks.size() == 1 && part.blocks[0].size() == 48, "pairs split into " +
                                                                      std::to_string(part.blocks.size()) + " orbits");
  try {
    component_report();
  } catch (const std::exception& e) {
    o.need(false, e.what());
  }
  return o;
}

Outcome membership() {
  Outcome o;
  const PolarizationType d2(2);
  for (const auto& g : {gen_b(1, 0, 0), gen_b(2, -1, 3), gen_d(1, 0, 1, 1), gen_d(3, 1, 1, 1), gen_J()})
    o.need(is_member(g.entries(), d2).is_member(), g.name() + " rejected");
  o.need(throws_input_error([] { gen_d(1, 1, 1, 1); }), "gen_d accepted det != 1");

  std::mt19937 rng(2024);
  auto gens = standard_generators();
  for (std::size_t k = 0, n = gens.size(); k < n; ++k) gens.push_back(gens[k].inverse());
  std::uniform_int_distribution<std::size_t> cell(0, 3), pick(0, gens.size() - 1);
  std::uniform_int_distribution<long long> small(-3, 3);
  int rejected = 0;
  for (int t = 0; t < 50; ++t) {
    auto w = ParamodularMatrix::from_entries(identity4<Rational>());
    for (int k = 0; k < 5; ++k) w = w * gens[pick(rng)];
    RationalMatrix4 m = w.entries();
    const std::size_t i = cell(rng), j = cell(rng);
    m[i][j] += Rational(t % 2 ? 1 : -1, 3);
    const auto cert = is_member(m, d2);
    if (!cert.is_member() && cert.first_violation && cert.first_violation->row == i + 1 &&
        cert.first_violation->column == j + 1 && cert.first_violation->reason.starts_with("pattern:"))
      ++rejected;
  }
  for (int t = 0; t < 50;) {
    RationalMatrix4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m[i][j] = pattern_multiplier(d2, i, j) * small(rng);
    if (multiply(multiply(m, standard_J()), transpose(m)) == standard_J()) continue;
    ++t;
    const auto cert = is_member(m, d2);
    if (!cert.is_member() && cert.pattern_ok && cert.first_violation &&
        cert.first_violation->reason.starts_with("symplectic:"))
      ++rejected;
  }
  o.need(rejected == 100, std::to_string(rejected) + "/100 violators rejected with a correct certificate");
  return o;
}

Outcome chi_ledger() {
  Outcome o;
  o.need(chi_abelian(bundle_F()) == 1, "chi(F)");
  o.need(chi_abelian(tensor_line(sym2(bundle_F()), -1)) == 0, "chi(S^2F (x) det F^v (x) Q)");
  o.need(chi_abelian(tensor_line(sym3(bundle_F()), -1)) == 2, "chi(S^3F (x) det F^v (x) Q)");
  o.need(chi_blowup_line(kLBInverse) == 1, "chi(L_B^-1)");
  o.need(chi_blowup_line(kPencilClass) == -2, "chi(pencil class)");
  o.need(genus_blowup_divisor({2, -4}) == 3, "genus of (2,-4)");
  return o;
}

Outcome eagon_northcott() {
  Outcome o;
  const auto seqs = exact_sequence_checks();
  int found = 0;
  for (const auto& s : seqs) {
    if (s.name.find("Eagon-Northcott") == std::string::npos) continue;
    ++found;
    o.need(s.holds(), s.name + " fails");
  }
  o.need(found == 2, "expected two Eagon-Northcott checks");
  o.need(seqs.at(1).sub == 1 && seqs.at(1).quotient == -1 && seqs.at(1).middle == 0, "S^2 values");
  o.need(seqs.at(2).sub == 0 && seqs.at(2).quotient == 2 && seqs.at(2).middle == 2, "S^3 values");
  return o;
}

Outcome double_cover() {
  Outcome o;
  const auto quad = invariants(4, SingularityForest({{"o", 4, std::nullopt}}));
  o.need(quad.chi == 1 && quad.K2_minimal == 6, "quadruple point");
  const auto dbl = invariants(4, SingularityForest({{"a", 2, std::nullopt}, {"b", 2, std::nullopt}}));
  o.need(dbl.chi == 2 && dbl.K2_resolved == 8, "double points");
  o.need(!dbl.notes.empty() && dbl.notes[0].find("K^2 = 4") != std::string::npos, "double point note");
  for (const auto& nodes : std::vector<std::vector<SingularityNode>>{
           {{"p", 2, std::nullopt}, {"q", 4, "p"}},
           {{"o", 4, std::nullopt}, {"p", 2, std::nullopt}, {"q", 4, "p"}},
           {{"p", 4, std::nullopt}, {"q", 6, "p"}, {"r", 2, std::nullopt}, {"s", 4, "r"}, {"x", 2, std::nullopt}}}) {
    const long long L2 = 40;
    const auto inv = invariants(L2, SingularityForest(nodes));
    o.need(inv.has_33_pair, "odd pair not detected");
    o.need(inv.minimality_note.find("K^2 = " + std::to_string(inv.K2_minimal)) != std::string::npos,
           "minimal-model note missing");
  }
  const auto p33 = invariants(4, SingularityForest({{"p", 2, std::nullopt}, {"q", 4, "p"}}));
  o.need(p33.K2_minimal == 7 && p33.minimality_note.find("K^2 = 7") != std::string::npos, "[3,3] note K^2 = 7");
  return o;
}

Outcome classification_table() {
  Outcome o;
  std::map<SurfaceType, std::size_t> counts;
  std::set<SurfaceType> nontrivial;
  for (const auto& [q, r] : valid_pairs()) {
    const auto t = classify(q, r).type;
    ++counts[t];
    if (!r.is_trivial()) nontrivial.insert(t);
  }
  o.need(nontrivial.size() == 3, "types for nontrivial roots: " + std::to_string(nontrivial.size()));
  const std::map<SurfaceType, std::array<long long, 4>> want = {
      {SurfaceType::Ia, {12, 5, 4, 4}}, {SurfaceType::Ib, {3, 3, 4, 4}}, {SurfaceType::II, {48, 5, 3, 3}}};
  for (const auto& [t, w] : want) {
    const auto r = surface_report(t);
    o.need(static_cast<long long>(counts[t]) == w[0], to_string(t) + " count " + std::to_string(counts[t]));
    o.need(static_cast<long long>(r.moduli.cover_degree) == w[0], to_string(t) + " cover degree");
    o.need(r.pg == 2 && r.q == 2 && r.K2 == 6, to_string(t) + " (pg,q,K2)");
    o.need(r.pencil_genus == w[1], to_string(t) + " pencil genus");
    o.need(r.h1_TS == w[2] && r.h1_TS == 3 + r.h0_N_beta, to_string(t) + " h1(T_S)");
    o.need(r.moduli.dimension == w[3], to_string(t) + " moduli dimension");
  }
  moduli_decomposition();
  return o;
}

Outcome orbit_invariance() {
  Outcome o;
  std::size_t violations = 0, checked = 0;
  for (const auto& g : standard_generators())
    for (const auto& [q, r] : valid_pairs()) {
      const auto m = act_pair(g, RootPair(q, r));
      ++checked;
      if (classify(m.base(), m.root()).type != classify(q, r).type) ++violations;
    }
  o.need(violations == 0, std::to_string(violations) + " violations");
  if (o.ok) o.detail = std::to_string(checked) + " checks, 0 violations";
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& g : testing::golden_commands()) {
    const auto args = testing::resolve(g.args, PGQ2_GOLDEN_DIR);
    std::ostringstream a, b, ea, eb;
    const int ca = cli::run(args, a, ea), cb = cli::run(args, b, eb);
    o.need(ca == 0 && cb == 0, g.file + " exited nonzero");
    o.need(a.str() == b.str(), g.file + " differs between runs");
    std::ifstream in(std::string(PGQ2_GOLDEN_DIR) + "/" + g.file, std::ios::binary);
    std::ostringstream want;
    want << in.rdbuf();
    o.need(a.str() == want.str(), g.file + " differs from the checked-in golden");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"orbit sizes {1,3,12} on the 16 order-2 characters", orbit_sizes},
      {"six permutation goldens", permutation_goldens},
      {"T is transitive on 12 letters", transitivity},
      {"single 48-pair orbit", pair_orbit},
      {"membership of generators and 100 violators", membership},
      {"Euler characteristic ledger", chi_ledger},
      {"Eagon-Northcott additivity", eagon_northcott},
      {"double cover invariants", double_cover},
      {"classification table", classification_table},
      {"classification constant on orbits", orbit_invariance},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
