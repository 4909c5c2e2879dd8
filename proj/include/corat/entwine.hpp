#pragma once
#include <string>
#include <utility>
#include <vector>

#include "corat/pairing.hpp"
#include "corat/report.hpp"
#include "corat/structures.hpp"

namespace corat {

// An algebra A and a coalgebra C over the same ring, intertwined by a map
// lambda : A (x) C -> C (x) A subject to four compatibility squares (with the
// unit, the counit, the comultiplication and the multiplication).
struct Entwining {
  Algebra alg;
  Coalgebra coa;
  ModMorphism lambda;
};

// A carrier that is simultaneously an A-module and a C-comodule, the two
// structures commuting past each other through lambda:
//   coaction . action = (C (x) action) . (lambda (x) V) . (A (x) coaction).
struct EntwinedModule {
  Entwining ent;
  FinMod carrier;
  ModMorphism coaction;  // V -> C (x) V
  ModMorphism action;    // A (x) V -> V
};

// The algebra representing entwined maps out of C:  E = hom(C, A) with
// evaluation beta, a convolution-style product m_E twisted by lambda, unit
// e_E = (c -> counit(c) 1_A), and the algebra embedding i(a) = (c -> counit(c) a).
// h_l / h_r are the induced A-actions on E through i.
struct EntwiningPackage {
  Entwining ent;
  FinMod E;
  ModMorphism beta;  // E (x) C -> A
  ModMorphism e_E;   // R -> E
  ModMorphism m_E;   // E (x) E -> E
  ModMorphism i;     // A -> E
  ModMorphism h_l;   // A (x) E -> E
  ModMorphism h_r;   // E (x) A -> E
  Algebra alg;       // (E, m_E, e_E) packaged for module constructions
};

Report check_entwining(const Entwining& e);
Report check_entwined_module(const EntwinedModule& m);

// lambda moves scalars across untouched: A = R, lambda = unit identifications.
Entwining trivial_entwining(const Coalgebra& c);
// lambda = swap; entwines any algebra with any coalgebra over the same ring.
Entwining twist_entwining(const Algebra& a, const Coalgebra& c);
// (C (x) A, comult (x) A, (C (x) mult) . (lambda (x) A)) is always entwined.
EntwinedModule canonical_entwined_module(const Entwining& e);

// Throws InvalidStructure unless e passes check_entwining.
EntwiningPackage representing_object(const Entwining& e);
// Unique g : V -> E with beta . (g (x) C) = f, for f : V (x) C -> A.
// V is passed explicitly, as in curry.
ModMorphism beta_factor(const EntwiningPackage& pkg, const ModMorphism& f, const FinMod& v);

// The E-action ine = action . (beta (x) V) . (E (x) coaction) on the carrier.
ModuleAction xi_functor(const EntwiningPackage& pkg, const EntwinedModule& m);

// Base change along i : A -> E.
ModuleAction restrict_along_i(const EntwiningPackage& pkg, const ModuleAction& n);

struct InducedModule {
  ModuleAction mod;  // E-module E (x)_A V
  ModMorphism q;     // quotient E (x) V -> E (x)_A V coequalising the two A-actions
};
InducedModule induce_module(const EntwiningPackage& pkg, const ModuleAction& v);

struct HomAModule {
  ModuleAction mod;  // E-module of A-linear maps E -> V
  ModMorphism incl;  // inclusion into hom(E, V), equalising the two A-actions
};
HomAModule hom_A_module(const EntwiningPackage& pkg, const ModuleAction& v);

// Unit V -> E (x)_A V and counit E (x)_A N|_A -> N of the base-change adjunction.
ModMorphism induction_unit(const EntwiningPackage& pkg, const InducedModule& ind,
                           const ModuleAction& v);
ModMorphism induction_counit(const EntwiningPackage& pkg, const ModuleAction& n);

// Transpose C (x) V -> hom(E, V) of the evaluation-then-act composite; its
// corestriction onto hom_A_module lands in the A-linear maps.
ModMorphism alpha_prime(const EntwiningPackage& pkg, const ModuleAction& v);
// The factorization of alpha_prime through the inclusion of hom_A_module.
// Throws FactorizationFailed if it does not exist (it always must).
ModMorphism alpha_corestricted(const EntwiningPackage& pkg, const HomAModule& h,
                               const ModuleAction& v);

// Pairing data induced by the entwining: the algebra E acting through
// induction, with the comparison maps alpha_prime as rationality certificates.
struct EntwiningPairingData {
  EntwiningPackage pkg;
  std::vector<std::pair<std::string, ModuleAction>> family;  // free A-modules used for tests
  std::vector<bool> mono;  // alpha_prime mono per family member
  bool rational = false;   // all mono
};
EntwiningPairingData pairing_of_entwining(const Entwining& e);

// Free A-module A (x) Y for each default family carrier Y; collapses to the
// carriers themselves when A is the base ring.
std::vector<std::pair<std::string, ModuleAction>> default_entwined_family(
    const EntwiningPackage& pkg);

// Checks alpha_prime is mono on the family (else throws NotApplicable), then
// verifies the E-module obtained through xi determines the entwined structure:
// its transpose lifts uniquely through alpha_prime and the lifted coaction plus
// the i-restricted action reproduce m exactly.
bool entwined_equivalence_roundtrip(const Entwining& e, const EntwinedModule& m);

}  // namespace corat
