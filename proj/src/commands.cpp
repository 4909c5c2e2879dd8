#include "corat/commands.hpp"

#include <set>
#include <sstream>

#include "corat/rational.hpp"

namespace corat {

using json = nlohmann::ordered_json;

namespace {

json entry_json(const mpq_class& e) {
  if (e.get_den() == 1 && e.get_num().fits_slong_p())
    return json(static_cast<std::int64_t>(e.get_num().get_si()));
  return json(e.get_str());
}

json factors_json(const FinMod& m) {
  json a = json::array();
  for (auto d : m.factors) a.push_back(d);
  return a;
}

json mor_json(const ModMorphism& f) {
  json j;
  j["source_factors"] = factors_json(f.source);
  j["target_factors"] = factors_json(f.target);
  json entries = json::array();
  for (int i = 0; i < f.target.ngens(); ++i)
    for (int jx = 0; jx < f.source.ngens(); ++jx) entries.push_back(entry_json(f.at(i, jx)));
  j["entries"] = entries;
  return j;
}

// Turn a law-checker report into one check line, witnesses from failed laws.
void add_laws(CmdReport& r, const std::string& name, const Report& rep) {
  std::vector<std::string> ws;
  for (const auto& l : rep.laws)
    if (!l.ok) ws.push_back(l.law + (l.witness ? " (" + *l.witness + ")" : ""));
  r.add(name, rep.ok(), std::move(ws));
}

Report check_of_kind(const StructureFile& f, const std::string& name, const std::string& kind) {
  if (kind == "algebra") return check_algebra(algebra_of(f, name));
  if (kind == "coalgebra") return check_coalgebra(coalgebra_of(f, name));
  if (kind == "module") return check_module(module_of(f, name));
  if (kind == "comodule") return check_comodule(comodule_of(f, name));
  if (kind == "pairing") return check_left_pairing(pairing_of(f, name));
  if (kind == "entwining") return check_entwining(entwining_of(f, name));
  return check_entwined_module(entwined_module_of(f, name));
}

std::set<Elem> elem_set(std::vector<Elem> v) { return std::set<Elem>(v.begin(), v.end()); }

bool same_algebra(const Algebra& a, const Algebra& b) {
  return a.carrier == b.carrier && a.mult == b.mult && a.unit == b.unit;
}

}  // namespace

void CmdReport::add(std::string name, bool ok, std::vector<std::string> witnesses) {
  checks.push_back({std::move(name), ok ? "pass" : "fail", std::move(witnesses)});
}

void CmdReport::add_na(std::string name, std::string reason) {
  checks.push_back({std::move(name), "not-applicable", {std::move(reason)}});
}

bool CmdReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == "fail") return false;
  return true;
}

json CmdReport::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  json cs = json::array();
  for (const auto& c : checks) {
    json line;
    line["name"] = c.name;
    line["status"] = c.status;
    json ws = json::array();
    for (const auto& w : c.witnesses) ws.push_back(w);
    line["witnesses"] = ws;
    cs.push_back(line);
  }
  j["checks"] = cs;
  j["artifacts"] = artifacts;
  json warns = json::array();
  for (const auto& w : warnings) warns.push_back(w);
  j["warnings"] = warns;
  return j;
}

std::string CmdReport::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  for (const auto& c : checks) {
    out << "  [" << c.status << "] " << c.name << "\n";
    for (const auto& w : c.witnesses) out << "    - " << w << "\n";
  }
  for (const auto& w : warnings) out << "  warning: " << w << "\n";
  if (!artifacts.empty()) out << "artifacts:\n" << artifacts.dump(2) << "\n";
  return out.str();
}

int exit_code(const CmdReport& r) { return r.all_pass() ? 0 : 1; }

CmdReport cmd_validate(const StructureFile& f, const CmdOptions&) {
  CmdReport r;
  r.command = "validate";
  r.warnings = f.warnings;
  for (const auto& [name, e] : f.structures)
    add_laws(r, e.kind + " '" + name + "'", check_of_kind(f, name, e.kind));
  r.artifacts["objects"] = f.objects.size();
  r.artifacts["morphisms"] = f.morphisms.size();
  r.artifacts["structures"] = f.structures.size();
  return r;
}

CmdReport cmd_dual(const StructureFile& f, const std::string& coalgebra, const CmdOptions&) {
  CmdReport r;
  r.command = "dual";
  r.warnings = f.warnings;
  Coalgebra c = coalgebra_of(f, coalgebra);
  Report laws = check_coalgebra(c);
  add_laws(r, "coalgebra '" + coalgebra + "'", laws);
  if (!laws.ok()) {
    r.add_na("convolution algebra", "coalgebra laws failed");
    return r;
  }
  Algebra d = dual_algebra(c);
  add_laws(r, "convolution algebra", check_algebra(d));
  r.artifacts["carrier_factors"] = factors_json(d.carrier);
  r.artifacts["mult"] = mor_json(d.mult);
  r.artifacts["unit"] = mor_json(d.unit);
  return r;
}

CmdReport cmd_rat(const StructureFile& f, const std::string& pairing, const std::string& module,
                  const CmdOptions& opt) {
  CmdReport r;
  r.command = "rat";
  r.warnings = f.warnings;
  LeftPairing p = pairing_of(f, pairing);
  ModuleAction m = module_of(f, module);
  if (!same_algebra(m.alg, p.alg))
    throw Error(ErrKind::Parse,
                "module '" + module + "' is not over the algebra of pairing '" + pairing + "'");
  Report plaws = check_left_pairing(p);
  Report mlaws = check_module(m);
  add_laws(r, "pairing '" + pairing + "'", plaws);
  add_laws(r, "module '" + module + "'", mlaws);
  if (!plaws.ok() || !mlaws.ok()) {
    r.add_na("restricted action", "input laws failed");
    r.add_na("oracle agreement", "input laws failed");
    return r;
  }
  RationalStructure st = rational_part(p, m);
  if (st.warning) r.warnings.push_back(*st.warning);
  add_laws(r, "restricted action", check_module(st.restricted));

  // Cross-check against the brute-force set {v : theta(v) lifts through t}.
  std::set<Elem> want = elem_set(rational_elements_oracle(p, m, opt.bound));
  std::set<Elem> got;
  for (const auto& v : enumerate_elements(st.rat, static_cast<std::uint64_t>(opt.bound)))
    got.insert(apply_mor(st.p1, v));
  std::vector<std::string> ws;
  if (got != want) {
    ws.push_back("computed " + std::to_string(got.size()) + " elements, brute force found " +
                 std::to_string(want.size()));
    for (const auto& v : want)
      if (!got.count(v)) {
        ws.push_back("missing " + elem_str(v));
        break;
      }
    for (const auto& v : got)
      if (!want.count(v)) {
        ws.push_back("extra " + elem_str(v));
        break;
      }
  }
  r.add("oracle agreement", got == want, std::move(ws));

  r.artifacts["ambient_factors"] = factors_json(m.carrier);
  r.artifacts["rat_factors"] = factors_json(st.rat);
  r.artifacts["inclusion"] = mor_json(st.p1);
  r.artifacts["proper_submodule"] = !is_iso(st.p1).iso;
  r.artifacts["coaction"] = st.coaction ? mor_json(*st.coaction) : json(nullptr);
  r.artifacts["coaction_unique"] = st.coaction_unique;
  r.artifacts["comodule_lawful"] = st.comodule_ok;
  return r;
}

CmdReport cmd_entwine(const StructureFile& f, const std::string& entwining, const CmdOptions&) {
  CmdReport r;
  r.command = "entwine";
  r.warnings = f.warnings;
  Entwining e = entwining_of(f, entwining);
  Report laws = check_entwining(e);
  add_laws(r, "entwining '" + entwining + "'", laws);
  if (!laws.ok()) {
    r.add_na("representing algebra", "entwining laws failed");
    r.add_na("algebra embedding", "entwining laws failed");
    return r;
  }
  EntwiningPackage pkg = representing_object(e);
  add_laws(r, "representing algebra", check_algebra(pkg.alg));
  r.add("algebra embedding", is_algebra_morphism(e.alg, pkg.alg, pkg.i));
  r.artifacts["E_factors"] = factors_json(pkg.E);
  r.artifacts["mult"] = mor_json(pkg.m_E);
  r.artifacts["unit"] = mor_json(pkg.e_E);
  r.artifacts["embedding"] = mor_json(pkg.i);
  return r;
}

CmdReport cmd_xi(const StructureFile& f, const std::string& entwined_module, const CmdOptions&) {
  CmdReport r;
  r.command = "xi";
  r.warnings = f.warnings;
  EntwinedModule m = entwined_module_of(f, entwined_module);
  Report laws = check_entwined_module(m);
  add_laws(r, "entwined module '" + entwined_module + "'", laws);
  if (!laws.ok()) {
    r.add_na("induced module", "entwined module laws failed");
    return r;
  }
  EntwiningPackage pkg = representing_object(m.ent);
  ModuleAction xi = xi_functor(pkg, m);
  add_laws(r, "induced module", check_module(xi));
  r.artifacts["E_factors"] = factors_json(pkg.E);
  r.artifacts["carrier_factors"] = factors_json(xi.carrier);
  r.artifacts["action"] = mor_json(xi.action);
  return r;
}

CmdReport cmd_rational_report(const StructureFile& f, const std::string& pairing,
                              const CmdOptions& opt) {
  CmdReport r;
  r.command = "rational_report";
  r.warnings = f.warnings;
  LeftPairing p = pairing_of(f, pairing);
  add_laws(r, "pairing '" + pairing + "'", check_left_pairing(p));
  std::vector<FamilyMember> family = default_family(p);
  if (!opt.family.empty()) {
    std::vector<FamilyMember> picked;
    for (const auto& id : opt.family) {
      bool found = false;
      for (const auto& fm : family)
        if (fm.name == id) {
          picked.push_back(fm);
          found = true;
          break;
        }
      if (!found) throw Error(ErrKind::Parse, "no family member named '" + id + "'");
    }
    family = std::move(picked);
  }
  RationalityReport rr = is_rational(p, family);
  json fam = json::array();
  for (std::size_t i = 0; i < rr.family.size(); ++i) {
    json line;
    line["name"] = rr.family[i].name;
    line["mono"] = static_cast<bool>(rr.mono[i]);
    line["epi"] = static_cast<bool>(rr.epi[i]);
    line["iso"] = static_cast<bool>(rr.iso[i]);
    fam.push_back(line);
  }
  r.artifacts["family"] = fam;
  r.artifacts["rational"] = rr.rational;
  r.artifacts["carrier_projective"] = rr.carrier_projective;
  return r;
}

}  // namespace corat
