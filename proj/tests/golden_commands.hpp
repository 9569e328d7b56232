#pragma once

// CLI invocations with checked-in expected output under tests/golden.
// "@" in an argument is replaced by the golden directory.

#include <string>
#include <vector>

namespace pgq2::testing {

struct GoldenCommand {
  std::string file;
  std::vector<std::string> args;
};

inline const std::string kIdentity = "1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1";

inline std::vector<GoldenCommand> golden_commands() {
  return {
      {"orbits_characters2.json", {"orbits", "--set", "characters2", "--generators", "paper6"}},
      {"orbits_psi12.json", {"orbits", "--set", "psi12"}},
      {"orbits_psi12.txt", {"--format", "text", "orbits", "--set", "psi12"}},
      {"orbits_pairs48.json", {"orbits", "--set", "pairs48"}},
      {"membership_identity.json", {"membership", "--matrix", kIdentity}},
      {"membership_third.json", {"membership", "--matrix", "1,0,0,0,0,1,0,0,0,0,1,0,0,1/3,0,1"}},
      {"act_chi1.json", {"act", "--matrix", "0,0,1,0,0,0,0,2,-1,0,0,0,0,-1/2,0,0", "--char", "chi1"}},
      {"classify_II.json", {"classify", "--Q", "chi1", "--root", "0,0,1,0"}},
      {"classify_Ia.json", {"classify", "--Q", "chi0", "--root", "psi5"}},
      {"classify_Ib.txt", {"--format", "text", "classify", "--Q", "chi0", "--root", "chi1"}},
      {"classify_PG3.json", {"classify", "--Q", "chi0", "--root", "0,0,0,0"}},
      {"classify_invalid.json", {"classify", "--Q", "psi1", "--root", "0,0,0,1"}},
      {"invariants_quadruple.json", {"invariants", "--forest", "@/forest_quadruple.json"}},
      {"invariants_33.json", {"invariants", "--forest", "@/forest_33.json"}},
      {"invariants_double_points.json", {"invariants", "--forest", "@/forest_double_points.json"}},
      {"chern_F.json", {"chern", "--rank", "2", "--a", "1", "--c2", "1"}},
      {"chern_sym3.json", {"chern", "--transform", "sym3", "--twist", "-1"}},
      {"chern_blowup.json", {"chern", "--blowup", "2,-4"}},
      {"moduli.json", {"moduli"}},
      {"ledger.json", {"ledger"}},
  };
}

inline std::vector<std::string> resolve(std::vector<std::string> args, const std::string& dir) {
  for (auto& a : args)
    if (a.starts_with("@")) a = dir + a.substr(1);
  return args;
}

}  // namespace pgq2::testing
