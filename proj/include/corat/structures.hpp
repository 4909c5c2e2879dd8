#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corat/finmod.hpp"
#include "corat/report.hpp"

namespace corat {

// An associative unital algebra on a finitely generated module:
// mult : carrier (x) carrier -> carrier, unit : R -> carrier.
struct Algebra {
  FinMod carrier;
  ModMorphism mult;
  ModMorphism unit;
};

// A coassociative counital coalgebra:
// comult : carrier -> carrier (x) carrier, counit : carrier -> R.
struct Coalgebra {
  FinMod carrier;
  ModMorphism comult;
  ModMorphism counit;
};

// A left module over `alg`: action : alg.carrier (x) carrier -> carrier.
struct ModuleAction {
  Algebra alg;
  FinMod carrier;
  ModMorphism action;
};

// A left comodule over `coa`: coaction : carrier -> coa.carrier (x) carrier.
struct Comodule {
  Coalgebra coa;
  FinMod carrier;
  ModMorphism coaction;
};

// Pretty-print an element as a coordinate vector.
std::string elem_str(const Elem& e);

// First source generator (if any) on which two parallel morphisms disagree,
// described as a human-readable witness; nullopt when the morphisms are equal.
// Throws TypeMismatch when the morphisms are not parallel.
std::optional<std::string> morphism_diff(const ModMorphism& a, const ModMorphism& b);

// Law checkers.  Endpoint shape problems throw TypeMismatch; law failures are
// reported per law with a witness generator.
Report check_algebra(const Algebra& a);
Report check_coalgebra(const Coalgebra& c);
Report check_module(const ModuleAction& m);
Report check_comodule(const Comodule& m);

// Structure-preserving-map predicates (f : a.carrier -> b.carrier, etc.).
bool is_algebra_morphism(const Algebra& a, const Algebra& b, const ModMorphism& f);
bool is_coalgebra_morphism(const Coalgebra& a, const Coalgebra& b, const ModMorphism& f);
bool is_module_morphism(const ModuleAction& a, const ModuleAction& b, const ModMorphism& f);
bool is_comodule_morphism(const Comodule& a, const Comodule& b, const ModMorphism& f);

// Rank-one coalgebra with a single group-like generator g: comult g = g (x) g,
// counit g = 1.
Coalgebra group_like(const BaseRing& ring);

// n x n comatrix coalgebra: free carrier on generators e(i,j),
// comult e(i,j) = sum_k e(i,k) (x) e(k,j), counit e(i,j) = [i == j].
Coalgebra comatrix(int n, const BaseRing& ring);

// Coalgebra over Z/4 on Z/2<x> + Z/4<g> with comult x = x(x)g + g(x)x,
// comult g = g(x)g, counit x = 0, counit g = 1.  Its dual algebra has a
// non-projective carrier, which makes the evaluation pairing non-rational.
Coalgebra mixed_order_coalgebra_z4();

// The base ring as an algebra on the rank-one free module.
Algebra unit_algebra(const BaseRing& ring);

// R^n with componentwise multiplication; unit = (1, ..., 1).
Algebra product_ring_algebra(const BaseRing& ring, int n);

// Convolution algebra on hom(carrier, R): (f * g)(c) = sum f(c2) g(c1) over
// comult c = sum c1 (x) c2; unit is the counit.
Algebra dual_algebra(const Coalgebra& c);

// An algebra acting on itself by multiplication.
ModuleAction regular_module(const Algebra& a);

// A coalgebra coacting on itself by comultiplication.
Comodule regular_comodule(const Coalgebra& c);

// Cofree comodule on y: carrier = c (x) y, coaction = (comult (x) y).
Comodule cofree_comodule(const Coalgebra& c, const FinMod& y);

// Bounded randomized search for valid coalgebra structures on the module with
// the given invariant factors (at most 2).  Deterministic in `seed`; samples
// `tries` candidate structure tensors, keeps those passing check_coalgebra,
// and stops after `want` hits.
std::vector<Coalgebra> search_coalgebras(const BaseRing& ring,
                                         const std::vector<std::int64_t>& factors,
                                         std::uint64_t seed, int tries, int want);

}  // namespace corat
