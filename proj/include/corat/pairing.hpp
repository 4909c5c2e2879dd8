#pragma once
#include <string>
#include <vector>

#include "corat/structures.hpp"

namespace corat {

// A left pairing t : A (x) C -> R of an algebra against a coalgebra.
// Laws: t is multiplicative against the convolution-style composite
//   t.(mult (x) C) = t.(A (x) t (x) C).(A (x) A (x) comult)
// and unital: t.(unit (x) C) = counit (via the unit identifications).
struct LeftPairing {
  Algebra alg;
  Coalgebra coa;
  ModMorphism pair;  // tensor(alg.carrier, coa.carrier) -> R
};

// A test object with a display name, used for rationality/purity families.
struct FamilyMember {
  std::string name;
  FinMod obj;
};

// Per-family-member behaviour of the comparison maps alpha_Y, plus the
// verdict (rational = every alpha_Y mono) and a projectivity indicator for
// the coalgebra carrier.
struct RationalityReport {
  std::vector<FamilyMember> family;
  std::vector<bool> mono, epi, iso;
  bool rational = false;
  bool carrier_projective = false;
};

Report check_left_pairing(const LeftPairing& p);

// The pairing of hom(C, R) against C by evaluation; the algebra is the
// convolution dual.
LeftPairing eval_pairing(const Coalgebra& c);

// sigma_Y : A (x) (C (x) Y) -> Y, contraction of the pairing against the
// first two factors.
ModMorphism sigma_component(const LeftPairing& p, const FinMod& y);

// alpha_Y : C (x) Y -> hom(A, Y), transpose of sigma_Y.
ModMorphism alpha_component(const LeftPairing& p, const FinMod& y);

// For f : X -> C (x) Y, the associated action-style map A (x) X -> Y.
ModMorphism beta_map(const LeftPairing& p, const ModMorphism& f, const FinMod& y);

// Default test family: R, the coalgebra carrier, its dual carrier, and every
// cyclic module Z/d for d | m (over Q just the first three).
std::vector<FamilyMember> default_family(const Coalgebra& c);
std::vector<FamilyMember> default_family(const LeftPairing& p);

RationalityReport is_rational(const LeftPairing& p);
RationalityReport is_rational(const LeftPairing& p, const std::vector<FamilyMember>& family);

// Comodule -> module along the pairing: action = sigma_V . (A (x) coaction).
// Carriers and underlying maps are untouched, so the functor is faithful.
// Throws InvalidStructure when the comodule fails its laws.
ModuleAction phi_functor(const LeftPairing& p, const Comodule& m);

// gamma(t) : C -> hom(A, R), the other transpose of the pairing.
ModMorphism gamma_of_pairing(const LeftPairing& p);

// g (x) X stays mono for every family member X.
bool is_pure(const ModMorphism& g, const std::vector<FamilyMember>& family);

// The canonical map V (x) X -> hom(hom(V, R), X) is iso for every family
// member X.  Over Z/m this holds exactly for projective V.
bool is_nuclear(const FinMod& v, const std::vector<FamilyMember>& family);

// Precompose the algebra side with an algebra morphism phi : B -> A, or the
// coalgebra side with a coalgebra morphism psi : D -> C.  Throws NotAMorphism
// when the map fails to preserve the structure.
LeftPairing transport_pairing_along_algebra_morphism(const LeftPairing& p, const Algebra& b,
                                                     const ModMorphism& phi);
LeftPairing transport_pairing_along_coalgebra_morphism(const LeftPairing& p, const Coalgebra& d,
                                                       const ModMorphism& psi);

// Submodule of hom(V, W) consisting of the action-compatible maps
// (kernel of phi -> action_W . (A (x) phi) - phi . action_V).
SubData module_morphism_space(const ModuleAction& m, const ModuleAction& n);

// Submodule of hom(V, W) consisting of the coaction-compatible maps.
SubData comodule_morphism_space(const Comodule& m, const Comodule& n);

}  // namespace corat
