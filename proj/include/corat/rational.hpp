#pragma once
#include <optional>
#include <string>
#include <vector>

#include "corat/pairing.hpp"

namespace corat {

// The pullback square computing the largest submodule of a module that
// carries a compatible coaction, together with the recovered coaction data.
//
// theta : V -> hom(A, V) is the action transpose; tmap : C (x) V -> hom(A, V)
// compares candidate coactions.  The rational part is the canonical submodule
// p1 : rat -> V covered by the pullback of (theta, tmap).  When tmap is mono
// the pullback projection itself is the inclusion and p2 is its second leg;
// otherwise the carrier is the image of the projection, p2 (if any) is a
// solved comparison with theta . p1 == tmap . p2, and `warning` explains what
// degraded.
struct RationalStructure {
  ModMorphism theta;
  ModMorphism tmap;
  PullbackData square;
  FinMod rat;
  ModMorphism p1;
  std::optional<ModMorphism> p2;
  ModuleAction restricted;               // action of A restricted to rat
  std::optional<ModMorphism> coaction;   // rat -> C (x) rat with tmap_rat . x = theta_rat
  bool coaction_unique = false;
  bool comodule_ok = false;              // recovered coaction passes comodule laws
  std::optional<std::string> warning;
};

// Action transpose: theta(v) = (a -> a.v).  Throws InvalidStructure when the
// module fails its laws.
ModMorphism action_transpose(const ModuleAction& m);

// Same, after checking the module lives over the pairing's algebra.
ModMorphism theta_canonical(const LeftPairing& p, const ModuleAction& m);

// Coaction comparison map C (x) V -> hom(A, V); built through the hom-unit
// route, so it independently cross-checks alpha_component (they must agree).
ModMorphism t_component(const LeftPairing& p, const FinMod& v);

RationalStructure rational_part(const LeftPairing& p, const ModuleAction& m);

struct RationalModuleCheck {
  bool rational = false;                 // p1 is an isomorphism
  std::optional<ModMorphism> coaction;   // V -> C (x) V when rational, = p2 . p1^-1
};
RationalModuleCheck is_rational_module(const LeftPairing& p, const ModuleAction& m);

// rational_part of the restricted module is everything: Rat(Rat(M)) = Rat(M).
bool rat_idempotence_check(const LeftPairing& p, const ModuleAction& m);

// Rat commutes with submodules: Rat(M0) = incl^-1(Rat(M)) as submodules of M0.
// incl must be a mono action-compatible map M0 -> M.
bool rat_submodule_pullback_check(const LeftPairing& p, const ModuleAction& m,
                                  const ModuleAction& m0, const ModMorphism& incl);

// Module obtained from the comodule by phi is rational and the coaction
// recovered from its rational structure equals the original exactly.
bool equivalence_roundtrip(const LeftPairing& p, const Comodule& n);

// Brute force: enumerate V and keep the elements v for which theta(v) lifts
// through tmap.  Throws TooLarge/InfiniteRing via enumerate_elements.
std::vector<Elem> rational_elements_oracle(const LeftPairing& p, const ModuleAction& m,
                                           std::int64_t bound);

}  // namespace corat
