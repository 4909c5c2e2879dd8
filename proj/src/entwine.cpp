#include "corat/entwine.hpp"

#include "corat/error.hpp"
#include "corat/rational.hpp"

namespace corat {

namespace {

void need(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrKind::TypeMismatch, what);
}

void law(Report& rep, const std::string& name, const ModMorphism& lhs, const ModMorphism& rhs) {
  rep.add(name, lhs == rhs, morphism_diff(lhs, rhs));
}

void require_valid(const Report& rep, const std::string& what) {
  if (rep.ok()) return;
  const LawResult* bad = rep.first_failure();
  throw Error(ErrKind::InvalidStructure,
              what + " fails law: " + (bad ? bad->law : std::string("?")));
}

// (E (x) E) (x) C -> A: split the argument, evaluate the second factor, move
// the result across lambda, evaluate the first factor, multiply.
ModMorphism product_evaluation(const Entwining& ent, const FinMod& e, const ModMorphism& beta) {
  const FinMod& a = ent.alg.carrier;
  const FinMod& c = ent.coa.carrier;
  ModMorphism step = assoc(e, e, c);
  step = compose(tensor_mor(identity(e), tensor_mor(identity(e), ent.coa.comult)), step);
  step = compose(tensor_mor(identity(e), assoc_inv(e, c, c)), step);
  step = compose(tensor_mor(identity(e), tensor_mor(beta, identity(c))), step);
  step = compose(tensor_mor(identity(e), ent.lambda), step);
  step = compose(assoc_inv(e, c, a), step);
  step = compose(tensor_mor(beta, identity(a)), step);
  return compose(ent.alg.mult, step);
}

}  // namespace

Report check_entwining(const Entwining& e) {
  const FinMod& a = e.alg.carrier;
  const FinMod& c = e.coa.carrier;
  need(a.ring == c.ring, "entwining endpoints over different rings");
  need(e.lambda.source == tensor(a, c) && e.lambda.target == tensor(c, a),
       "lambda endpoints must be A (x) C -> C (x) A");
  require_valid(check_algebra(e.alg), "entwining algebra");
  require_valid(check_coalgebra(e.coa), "entwining coalgebra");
  Report rep;
  // inserting 1_A and entwining = placing 1_A on the right
  law(rep, "unit compatibility",
      compose(e.lambda, tensor_mor(e.alg.unit, identity(c))),
      compose(tensor_mor(identity(c), e.alg.unit), compose(runit_inv(c), lunit(c))));
  // entwining then dropping C = dropping C directly
  law(rep, "counit compatibility",
      compose(lunit(a), compose(tensor_mor(e.coa.counit, identity(a)), e.lambda)),
      compose(runit(a), tensor_mor(identity(a), e.coa.counit)));
  // entwine then comultiply = comultiply then entwine both halves
  {
    ModMorphism lhs = compose(tensor_mor(e.coa.comult, identity(a)), e.lambda);
    ModMorphism rhs = compose(assoc_inv(a, c, c), tensor_mor(identity(a), e.coa.comult));
    rhs = compose(tensor_mor(e.lambda, identity(c)), rhs);
    rhs = compose(assoc(c, a, c), rhs);
    rhs = compose(tensor_mor(identity(c), e.lambda), rhs);
    rhs = compose(assoc_inv(c, c, a), rhs);
    law(rep, "comultiplication compatibility", lhs, rhs);
  }
  // multiply then entwine = entwine both factors then multiply
  {
    ModMorphism lhs = compose(e.lambda, tensor_mor(e.alg.mult, identity(c)));
    ModMorphism rhs = compose(tensor_mor(identity(a), e.lambda), assoc(a, a, c));
    rhs = compose(assoc_inv(a, c, a), rhs);
    rhs = compose(tensor_mor(e.lambda, identity(a)), rhs);
    rhs = compose(assoc(c, a, a), rhs);
    rhs = compose(tensor_mor(identity(c), e.alg.mult), rhs);
    law(rep, "multiplication compatibility", lhs, rhs);
  }
  return rep;
}

Report check_entwined_module(const EntwinedModule& m) {
  const Entwining& e = m.ent;
  const FinMod& a = e.alg.carrier;
  const FinMod& c = e.coa.carrier;
  const FinMod& v = m.carrier;
  require_valid(check_entwining(e), "entwining");
  need(m.coaction.source == v && m.coaction.target == tensor(c, v), "coaction endpoints");
  need(m.action.source == tensor(a, v) && m.action.target == v, "action endpoints");
  Report rep = check_module(ModuleAction{e.alg, v, m.action});
  for (const LawResult& r : check_comodule(Comodule{e.coa, v, m.coaction}).laws)
    rep.laws.push_back(r);
  ModMorphism lhs = compose(m.coaction, m.action);
  ModMorphism rhs = compose(tensor_mor(e.lambda, identity(v)), assoc_inv(a, c, v));
  rhs = compose(assoc(c, a, v), rhs);
  rhs = compose(tensor_mor(identity(c), m.action), rhs);
  rhs = compose(rhs, tensor_mor(identity(a), m.coaction));
  law(rep, "action/coaction interchange", lhs, rhs);
  return rep;
}

Entwining trivial_entwining(const Coalgebra& c) {
  Algebra a = unit_algebra(c.carrier.ring);
  return Entwining{a, c, compose(runit_inv(c.carrier), lunit(c.carrier))};
}

Entwining twist_entwining(const Algebra& a, const Coalgebra& c) {
  return Entwining{a, c, swap_mor(a.carrier, c.carrier)};
}

EntwinedModule canonical_entwined_module(const Entwining& e) {
  const FinMod& a = e.alg.carrier;
  const FinMod& c = e.coa.carrier;
  FinMod v = tensor(c, a);
  ModMorphism coact = compose(assoc(c, c, a), tensor_mor(e.coa.comult, identity(a)));
  ModMorphism act = compose(tensor_mor(e.lambda, identity(a)), assoc_inv(a, c, a));
  act = compose(assoc(c, a, a), act);
  act = compose(tensor_mor(identity(c), e.alg.mult), act);
  return EntwinedModule{e, v, coact, act};
}

EntwiningPackage representing_object(const Entwining& ent) {
  require_valid(check_entwining(ent), "entwining");
  const FinMod& a = ent.alg.carrier;
  const FinMod& c = ent.coa.carrier;
  const FinMod u = FinMod::unit(a.ring);
  EntwiningPackage pkg;
  pkg.ent = ent;
  pkg.E = hom_module(c, a);
  pkg.beta = eval_mor(c, a);
  pkg.e_E = curry(compose(ent.alg.unit, compose(ent.coa.counit, lunit(c))), u, c);
  pkg.m_E = curry(product_evaluation(ent, pkg.E, pkg.beta), tensor(pkg.E, pkg.E), c);
  pkg.i = curry(compose(runit(a), tensor_mor(identity(a), ent.coa.counit)), a, c);
  pkg.h_l = compose(pkg.m_E, tensor_mor(pkg.i, identity(pkg.E)));
  pkg.h_r = compose(pkg.m_E, tensor_mor(identity(pkg.E), pkg.i));
  pkg.alg = Algebra{pkg.E, pkg.m_E, pkg.e_E};
  return pkg;
}

ModMorphism beta_factor(const EntwiningPackage& pkg, const ModMorphism& f, const FinMod& v) {
  if (!(f.target == pkg.ent.alg.carrier))
    throw Error(ErrKind::TypeMismatch, "beta_factor expects a map into the algebra carrier");
  return curry(f, v, pkg.ent.coa.carrier);
}

ModuleAction xi_functor(const EntwiningPackage& pkg, const EntwinedModule& m) {
  require_valid(check_entwined_module(m), "entwined module");
  const FinMod& v = m.carrier;
  const FinMod& c = pkg.ent.coa.carrier;
  ModMorphism act = compose(assoc_inv(pkg.E, c, v), tensor_mor(identity(pkg.E), m.coaction));
  act = compose(tensor_mor(pkg.beta, identity(v)), act);
  act = compose(m.action, act);
  return ModuleAction{pkg.alg, v, act};
}

ModuleAction restrict_along_i(const EntwiningPackage& pkg, const ModuleAction& n) {
  need(n.alg.carrier == pkg.E && n.alg.mult == pkg.m_E, "not a module over E");
  return ModuleAction{pkg.ent.alg, n.carrier,
                      compose(n.action, tensor_mor(pkg.i, identity(n.carrier)))};
}

InducedModule induce_module(const EntwiningPackage& pkg, const ModuleAction& v) {
  need(v.alg.carrier == pkg.ent.alg.carrier && v.alg.mult == pkg.ent.alg.mult,
       "not a module over A");
  require_valid(check_module(v), "module");
  const FinMod& w = v.carrier;
  const FinMod& a = pkg.ent.alg.carrier;
  ModMorphism through_e = tensor_mor(pkg.h_r, identity(w));
  ModMorphism through_v = compose(tensor_mor(identity(pkg.E), v.action), assoc(pkg.E, a, w));
  QuotData qd = coequaliser(through_e, through_v);
  ModMorphism up = compose(tensor_mor(pkg.m_E, identity(w)), assoc_inv(pkg.E, pkg.E, w));
  up = compose(qd.proj, up);
  std::optional<ModMorphism> act = factor_through_epi(up, tensor_mor(identity(pkg.E), qd.proj));
  if (!act) throw Error(ErrKind::FactorizationFailed, "induced action does not descend");
  return InducedModule{ModuleAction{pkg.alg, qd.obj, *act}, qd.proj};
}

HomAModule hom_A_module(const EntwiningPackage& pkg, const ModuleAction& v) {
  need(v.alg.carrier == pkg.ent.alg.carrier && v.alg.mult == pkg.ent.alg.mult,
       "not a module over A");
  require_valid(check_module(v), "module");
  const FinMod& w = v.carrier;
  const FinMod& a = pkg.ent.alg.carrier;
  FinMod h = hom_module(pkg.E, w);
  FinMod ae = tensor(a, pkg.E);
  // phi -> phi . (a acting on E)   versus   phi -> (a (x) e -> a . phi(e))
  ModMorphism lhs = hom_pre(pkg.h_l, w);
  ModMorphism step = compose(assoc(a, pkg.E, h), swap_mor(h, ae));
  step = compose(tensor_mor(identity(a), swap_mor(pkg.E, h)), step);
  step = compose(tensor_mor(identity(a), eval_mor(pkg.E, w)), step);
  step = compose(v.action, step);
  ModMorphism rhs = curry(step, h, ae);
  SubData sub = equaliser(lhs, rhs);
  // E acts by opposite right translation of the argument: (e . phi)(e') = phi(e' e)
  ModMorphism pre = compose(assoc(h, pkg.E, pkg.E),
                            tensor_mor(swap_mor(pkg.E, h), identity(pkg.E)));
  pre = compose(tensor_mor(identity(h), compose(pkg.m_E, swap_mor(pkg.E, pkg.E))), pre);
  pre = compose(eval_mor(pkg.E, w), pre);
  ModMorphism act_big = curry(pre, tensor(pkg.E, h), pkg.E);
  std::optional<ModMorphism> act = factor_through_mono(
      compose(act_big, tensor_mor(identity(pkg.E), sub.incl)), sub.incl);
  if (!act) throw Error(ErrKind::FactorizationFailed, "hom action does not restrict");
  return HomAModule{ModuleAction{pkg.alg, sub.obj, *act}, sub.incl};
}

ModMorphism induction_unit(const EntwiningPackage& pkg, const InducedModule& ind,
                           const ModuleAction& v) {
  const FinMod& w = v.carrier;
  return compose(ind.q, compose(tensor_mor(pkg.e_E, identity(w)), lunit_inv(w)));
}

ModMorphism induction_counit(const EntwiningPackage& pkg, const ModuleAction& n) {
  InducedModule ind = induce_module(pkg, restrict_along_i(pkg, n));
  std::optional<ModMorphism> k = factor_through_epi(n.action, ind.q);
  if (!k)
    throw Error(ErrKind::FactorizationFailed, "action does not descend to the induced module");
  return *k;
}

ModMorphism alpha_prime(const EntwiningPackage& pkg, const ModuleAction& v) {
  need(v.alg.carrier == pkg.ent.alg.carrier && v.alg.mult == pkg.ent.alg.mult,
       "not a module over A");
  const FinMod& w = v.carrier;
  const FinMod& c = pkg.ent.coa.carrier;
  FinMod cw = tensor(c, w);
  ModMorphism f = compose(tensor_mor(pkg.beta, identity(w)), assoc_inv(pkg.E, c, w));
  f = compose(v.action, f);  // E (x) (C (x) W) -> W
  return curry(compose(f, swap_mor(cw, pkg.E)), cw, pkg.E);
}

ModMorphism alpha_corestricted(const EntwiningPackage& pkg, const HomAModule& h,
                               const ModuleAction& v) {
  ModMorphism ap = alpha_prime(pkg, v);
  std::optional<ModMorphism> fac = factor_through_mono(ap, h.incl);
  if (!fac)
    throw Error(ErrKind::FactorizationFailed, "alpha does not land in the A-linear maps");
  return *fac;
}

std::vector<std::pair<std::string, ModuleAction>> default_entwined_family(
    const EntwiningPackage& pkg) {
  const Algebra& alg = pkg.ent.alg;
  const FinMod& a = alg.carrier;
  bool base_ring = a == FinMod::unit(a.ring);
  std::vector<std::pair<std::string, ModuleAction>> out;
  for (const FamilyMember& fm : default_family(pkg.ent.coa)) {
    if (base_ring) {
      out.emplace_back(fm.name, ModuleAction{alg, fm.obj, lunit(fm.obj)});
    } else {
      FinMod free = tensor(a, fm.obj);
      ModMorphism act = compose(tensor_mor(alg.mult, identity(fm.obj)), assoc_inv(a, a, fm.obj));
      out.emplace_back("A (x) " + fm.name, ModuleAction{alg, free, act});
    }
  }
  return out;
}

EntwiningPairingData pairing_of_entwining(const Entwining& e) {
  EntwiningPairingData data;
  data.pkg = representing_object(e);
  data.family = default_entwined_family(data.pkg);
  data.rational = true;
  for (const auto& [name, m] : data.family) {
    bool mono = is_mono(alpha_prime(data.pkg, m));
    data.mono.push_back(mono);
    data.rational = data.rational && mono;
  }
  return data;
}

bool entwined_equivalence_roundtrip(const Entwining& e, const EntwinedModule& m) {
  need(m.ent.lambda == e.lambda, "module is not over this entwining");
  EntwiningPairingData data = pairing_of_entwining(e);
  if (!data.rational)
    throw Error(ErrKind::NotApplicable, "alpha_prime is not mono on the test family");
  const EntwiningPackage& pkg = data.pkg;
  ModuleAction xi = xi_functor(pkg, m);
  ModuleAction va = restrict_along_i(pkg, xi);
  ModMorphism theta = action_transpose(xi);  // V -> hom(E, V)
  ModMorphism ap = alpha_prime(pkg, va);     // C (x) V -> hom(E, V)
  PullbackData pb = pullback(theta, ap);
  if (!is_epi(pb.p1)) return false;  // some vector fails to lift
  ModMorphism post = hom_post(m.carrier, ap);
  std::optional<Elem> lift = solve_elem(post, hom_encode(theta));
  if (!lift) return false;
  if (kernel(post).obj.ngens() != 0) return false;  // ambiguous lift
  ModMorphism rec = hom_decode(m.carrier, ap.source, *lift);
  return rec == m.coaction && va.action == m.action;
}

}  // namespace corat
