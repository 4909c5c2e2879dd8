#include "corat/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace corat {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrKind::Parse, msg); }

std::string fm_str(const FinMod& m) {
  std::string s = m.ring.str() + "{";
  for (int i = 0; i < m.ngens(); ++i) {
    if (i) s += ",";
    s += std::to_string(m.factors[i]);
  }
  return s + "}";
}

BaseRing parse_ring(const std::string& s) {
  if (s == "Q") return BaseRing::rationals();
  if (s.rfind("Z/", 0) == 0) {
    const std::string tail = s.substr(2);
    if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos) {
      try {
        std::int64_t m = std::stoll(tail);
        if (m >= 2) return BaseRing::zmod(m);
      } catch (const std::exception&) {
      }
    }
  }
  bad("field 'ring': expected \"Q\" or \"Z/<m>\" with m >= 2, got \"" + s + "\"");
}

mpq_class parse_entry(const json& v, const BaseRing& ring, const std::string& where) {
  if (v.is_number_integer()) return mpq_class(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string() && !ring.is_zmod()) {
    const std::string s = v.get<std::string>();
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || q.get_den() == 0)
      bad(where + ": bad rational literal \"" + s + "\"");
    q.canonicalize();
    return q;
  }
  bad(where + (ring.is_zmod() ? ": matrix entry must be an integer"
                              : ": matrix entry must be an integer or \"p/q\" string"));
}

json entry_json(const mpq_class& e) {
  if (e.get_den() == 1 && e.get_num().fits_slong_p())
    return json(static_cast<std::int64_t>(e.get_num().get_si()));
  return json(e.get_str());
}

Endpoint parse_endpoint(const json& v, const std::string& where) {
  if (v.is_string()) return Endpoint::of_name(v.get<std::string>());
  if (v.is_object()) {
    if (v.size() != 1) bad(where + ": endpoint object must have exactly one key");
    const auto it = v.begin();
    const std::string key = it.key();
    if (key == "unit") {
      if (!it.value().is_boolean() || !it.value().get<bool>())
        bad(where + ": 'unit' must be true");
      return Endpoint::unit();
    }
    if (key == "tensor" || key == "hom") {
      if (!it.value().is_array() || it.value().size() != 2)
        bad(where + ": '" + key + "' takes an array of exactly two endpoints");
      Endpoint a = parse_endpoint(it.value()[0], where);
      Endpoint b = parse_endpoint(it.value()[1], where);
      return key == "tensor" ? Endpoint::tensor(std::move(a), std::move(b))
                             : Endpoint::hom(std::move(a), std::move(b));
    }
    bad(where + ": unknown endpoint form '" + key + "'");
  }
  bad(where + ": endpoint must be an object name or a unit/tensor/hom object");
}

json endpoint_json(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Name:
      return json(e.name);
    case Endpoint::Kind::Unit:
      return json{{"unit", true}};
    case Endpoint::Kind::Tensor:
      return json{{"tensor", json::array({endpoint_json(e.args[0]), endpoint_json(e.args[1])})}};
    case Endpoint::Kind::Hom:
      return json{{"hom", json::array({endpoint_json(e.args[0]), endpoint_json(e.args[1])})}};
  }
  bad("unreachable endpoint kind");
}

// kind -> canonical field list
const std::vector<std::pair<std::string, std::vector<std::string>>> kKinds = {
    {"algebra", {"carrier", "mult", "unit"}},
    {"coalgebra", {"carrier", "comult", "counit"}},
    {"module", {"algebra", "carrier", "action"}},
    {"comodule", {"coalgebra", "carrier", "coaction"}},
    {"pairing", {"algebra", "coalgebra", "pair"}},
    {"entwining", {"algebra", "coalgebra", "lambda"}},
    {"entwined_module", {"entwining", "carrier", "coaction", "action"}},
};

const std::vector<std::string>* fields_of_kind(const std::string& kind) {
  for (const auto& [k, fs] : kKinds)
    if (k == kind) return &fs;
  return nullptr;
}

const FinMod& object_ref(const StructureFile& f, const std::string& name,
                         const std::string& where) {
  const FinMod* m = f.find_object(name);
  if (!m) bad(where + ": unknown object '" + name + "'");
  return *m;
}

const NamedMorphism& morphism_ref(const StructureFile& f, const std::string& name,
                                  const std::string& where) {
  const NamedMorphism* m = f.find_morphism(name);
  if (!m) bad(where + ": unknown morphism '" + name + "'");
  return *m;
}

const StructureEntry& structure_ref(const StructureFile& f, const std::string& name,
                                    const std::string& kind, const std::string& where) {
  const StructureEntry* e = f.find_structure(name);
  if (!e) bad(where + ": unknown structure '" + name + "'");
  if (e->kind != kind)
    bad(where + ": structure '" + name + "' is a " + e->kind + ", expected a " + kind);
  return *e;
}

void check_mor_shape(const StructureFile& f, const std::string& sname, const std::string& field,
                     const std::string& mname, const FinMod& src, const FinMod& dst) {
  const std::string where = "structure '" + sname + "' field '" + field + "'";
  const NamedMorphism& nm = morphism_ref(f, mname, where);
  if (!(nm.mor.source == src && nm.mor.target == dst))
    bad(where + ": morphism '" + mname + "' has type " + fm_str(nm.mor.source) + " -> " +
        fm_str(nm.mor.target) + ", expected " + fm_str(src) + " -> " + fm_str(dst));
}

// Resolve + shape-check one declared structure (references must already be
// loaded; structure-to-structure references are acyclic by kind).
void validate_structure(const StructureFile& f, const std::string& name,
                        const StructureEntry& e) {
  const std::string where = "structure '" + name + "'";
  const FinMod u = FinMod::unit(f.ring);
  if (e.kind == "algebra") {
    const FinMod& car = object_ref(f, e.ref("carrier"), where + " field 'carrier'");
    check_mor_shape(f, name, "mult", e.ref("mult"), tensor(car, car), car);
    check_mor_shape(f, name, "unit", e.ref("unit"), u, car);
  } else if (e.kind == "coalgebra") {
    const FinMod& car = object_ref(f, e.ref("carrier"), where + " field 'carrier'");
    check_mor_shape(f, name, "comult", e.ref("comult"), car, tensor(car, car));
    check_mor_shape(f, name, "counit", e.ref("counit"), car, u);
  } else if (e.kind == "module") {
    const StructureEntry& a =
        structure_ref(f, e.ref("algebra"), "algebra", where + " field 'algebra'");
    const FinMod& acar = object_ref(f, a.ref("carrier"), where + " (algebra carrier)");
    const FinMod& car = object_ref(f, e.ref("carrier"), where + " field 'carrier'");
    check_mor_shape(f, name, "action", e.ref("action"), tensor(acar, car), car);
  } else if (e.kind == "comodule") {
    const StructureEntry& c =
        structure_ref(f, e.ref("coalgebra"), "coalgebra", where + " field 'coalgebra'");
    const FinMod& ccar = object_ref(f, c.ref("carrier"), where + " (coalgebra carrier)");
    const FinMod& car = object_ref(f, e.ref("carrier"), where + " field 'carrier'");
    check_mor_shape(f, name, "coaction", e.ref("coaction"), car, tensor(ccar, car));
  } else if (e.kind == "pairing" || e.kind == "entwining") {
    const StructureEntry& a =
        structure_ref(f, e.ref("algebra"), "algebra", where + " field 'algebra'");
    const StructureEntry& c =
        structure_ref(f, e.ref("coalgebra"), "coalgebra", where + " field 'coalgebra'");
    const FinMod& acar = object_ref(f, a.ref("carrier"), where + " (algebra carrier)");
    const FinMod& ccar = object_ref(f, c.ref("carrier"), where + " (coalgebra carrier)");
    if (e.kind == "pairing")
      check_mor_shape(f, name, "pair", e.ref("pair"), tensor(acar, ccar), u);
    else
      check_mor_shape(f, name, "lambda", e.ref("lambda"), tensor(acar, ccar),
                      tensor(ccar, acar));
  } else if (e.kind == "entwined_module") {
    const StructureEntry& ent =
        structure_ref(f, e.ref("entwining"), "entwining", where + " field 'entwining'");
    const StructureEntry& a =
        structure_ref(f, ent.ref("algebra"), "algebra", where + " (entwining algebra)");
    const StructureEntry& c =
        structure_ref(f, ent.ref("coalgebra"), "coalgebra", where + " (entwining coalgebra)");
    const FinMod& acar = object_ref(f, a.ref("carrier"), where + " (algebra carrier)");
    const FinMod& ccar = object_ref(f, c.ref("carrier"), where + " (coalgebra carrier)");
    const FinMod& car = object_ref(f, e.ref("carrier"), where + " field 'carrier'");
    check_mor_shape(f, name, "coaction", e.ref("coaction"), car, tensor(ccar, car));
    check_mor_shape(f, name, "action", e.ref("action"), tensor(acar, car), car);
  }
}

}  // namespace

const std::string& StructureEntry::ref(const std::string& field) const {
  for (const auto& [k, v] : fields)
    if (k == field) return v;
  bad("structure entry has no field '" + field + "'");
}

const FinMod* StructureFile::find_object(const std::string& name) const {
  for (const auto& [k, v] : objects)
    if (k == name) return &v;
  return nullptr;
}

const NamedMorphism* StructureFile::find_morphism(const std::string& name) const {
  for (const auto& [k, v] : morphisms)
    if (k == name) return &v;
  return nullptr;
}

const StructureEntry* StructureFile::find_structure(const std::string& name) const {
  for (const auto& [k, v] : structures)
    if (k == name) return &v;
  return nullptr;
}

FinMod resolve_endpoint(const StructureFile& f, const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Name:
      return object_ref(f, e.name, "endpoint");
    case Endpoint::Kind::Unit:
      return FinMod::unit(f.ring);
    case Endpoint::Kind::Tensor:
      return tensor(resolve_endpoint(f, e.args[0]), resolve_endpoint(f, e.args[1]));
    case Endpoint::Kind::Hom:
      return hom_module(resolve_endpoint(f, e.args[0]), resolve_endpoint(f, e.args[1]));
  }
  bad("unreachable endpoint kind");
}

StructureFile parse_structure_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    bad(std::string("JSON syntax: ") + ex.what());
  }
  if (!doc.is_object()) bad("top level: expected a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "schema_version" && key != "ring" && key != "objects" && key != "morphisms" &&
        key != "structures")
      bad("top level: unknown field '" + key + "'");
  if (doc.contains("schema_version") &&
      (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1))
    bad("field 'schema_version': this tool reads version 1");
  if (!doc.contains("ring") || !doc["ring"].is_string())
    bad("field 'ring': required string is missing");

  StructureFile f;
  f.ring = parse_ring(doc["ring"].get<std::string>());

  if (doc.contains("objects")) {
    if (!doc["objects"].is_object()) bad("field 'objects': expected an object");
    for (const auto& [name, val] : doc["objects"].items()) {
      const std::string where = "object '" + name + "'";
      if (name.empty()) bad("objects: empty name");
      if (f.find_object(name)) bad(where + ": duplicate name");
      if (!val.is_array()) bad(where + ": expected an array of invariant factors");
      std::vector<std::int64_t> factors;
      for (const auto& x : val) {
        if (!x.is_number_integer()) bad(where + ": factors must be integers");
        factors.push_back(x.get<std::int64_t>());
      }
      try {
        f.objects.emplace_back(name, FinMod::of(f.ring, std::move(factors)));
      } catch (const Error& e) {
        bad(where + ": " + e.what());
      }
    }
  }

  if (doc.contains("morphisms")) {
    if (!doc["morphisms"].is_object()) bad("field 'morphisms': expected an object");
    for (const auto& [name, val] : doc["morphisms"].items()) {
      const std::string where = "morphism '" + name + "'";
      if (name.empty()) bad("morphisms: empty name");
      if (f.find_morphism(name)) bad(where + ": duplicate name");
      if (!val.is_object()) bad(where + ": expected an object");
      for (const auto& [key, _] : val.items())
        if (key != "source" && key != "target" && key != "matrix")
          bad(where + ": unknown field '" + key + "'");
      if (!val.contains("source") || !val.contains("target") || !val.contains("matrix"))
        bad(where + ": fields 'source', 'target', 'matrix' are required");
      NamedMorphism nm;
      nm.source = parse_endpoint(val["source"], where + " field 'source'");
      nm.target = parse_endpoint(val["target"], where + " field 'target'");
      FinMod src, dst;
      try {
        src = resolve_endpoint(f, nm.source);
        dst = resolve_endpoint(f, nm.target);
      } catch (const Error& e) {
        bad(where + ": " + e.what());
      }
      if (!val["matrix"].is_array())
        bad(where + " field 'matrix': expected a flat row-major array");
      const std::size_t want =
          static_cast<std::size_t>(src.ngens()) * static_cast<std::size_t>(dst.ngens());
      if (val["matrix"].size() != want)
        bad(where + " field 'matrix': expected " + std::to_string(want) + " entries (" +
            std::to_string(dst.ngens()) + " rows x " + std::to_string(src.ngens()) +
            " cols), got " + std::to_string(val["matrix"].size()));
      std::vector<mpq_class> entries;
      entries.reserve(want);
      for (std::size_t ix = 0; ix < want; ++ix)
        entries.push_back(parse_entry(val["matrix"][ix], f.ring,
                                      where + " field 'matrix' entry " + std::to_string(ix)));
      try {
        nm.mor = mor(src, dst, entries);
      } catch (const Error& e) {
        bad(where + " field 'matrix': " + e.what());
      }
      for (int i = 0; i < dst.ngens(); ++i)
        for (int j = 0; j < src.ngens(); ++j) {
          const mpq_class& given = entries[static_cast<std::size_t>(i) * src.ngens() + j];
          const mpq_class stored = nm.mor.at(i, j);
          if (given != stored)
            f.warnings.push_back(where + ": entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") reduced from " + given.get_str() +
                                 " to " + stored.get_str());
        }
      f.morphisms.emplace_back(name, std::move(nm));
    }
  }

  if (doc.contains("structures")) {
    if (!doc["structures"].is_object()) bad("field 'structures': expected an object");
    for (const auto& [name, val] : doc["structures"].items()) {
      const std::string where = "structure '" + name + "'";
      if (name.empty()) bad("structures: empty name");
      if (f.find_structure(name)) bad(where + ": duplicate name");
      if (!val.is_object() || !val.contains("kind") || !val["kind"].is_string())
        bad(where + ": expected an object with a 'kind' string");
      StructureEntry e;
      e.kind = val["kind"].get<std::string>();
      const std::vector<std::string>* fields = fields_of_kind(e.kind);
      if (!fields) bad(where + ": unknown kind '" + e.kind + "'");
      for (const auto& [key, _] : val.items()) {
        if (key == "kind") continue;
        bool known = false;
        for (const auto& fname : *fields) known = known || key == fname;
        if (!known) bad(where + ": unknown field '" + key + "' for kind " + e.kind);
      }
      for (const auto& fname : *fields) {
        if (!val.contains(fname) || !val[fname].is_string())
          bad(where + ": field '" + fname + "' (a name) is required for kind " + e.kind);
        e.fields.emplace_back(fname, val[fname].get<std::string>());
      }
      f.structures.emplace_back(name, std::move(e));
    }
  }

  for (const auto& [name, e] : f.structures) validate_structure(f, name, e);
  return f;
}

StructureFile load_structure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_structure_file(ss.str());
}

std::string serialize_structure_file(const StructureFile& f) {
  json doc;
  doc["schema_version"] = 1;
  doc["ring"] = f.ring.str();
  json objs = json::object();
  for (const auto& [name, m] : f.objects) {
    json fs = json::array();
    for (auto d : m.factors) fs.push_back(d);
    objs[name] = fs;
  }
  doc["objects"] = objs;
  json mors = json::object();
  for (const auto& [name, nm] : f.morphisms) {
    json entry;
    entry["source"] = endpoint_json(nm.source);
    entry["target"] = endpoint_json(nm.target);
    json mat = json::array();
    for (int i = 0; i < nm.mor.target.ngens(); ++i)
      for (int j = 0; j < nm.mor.source.ngens(); ++j) mat.push_back(entry_json(nm.mor.at(i, j)));
    entry["matrix"] = mat;
    mors[name] = entry;
  }
  doc["morphisms"] = mors;
  json sts = json::object();
  for (const auto& [name, e] : f.structures) {
    json entry;
    entry["kind"] = e.kind;
    for (const auto& [k, v] : e.fields) entry[k] = v;
    sts[name] = entry;
  }
  doc["structures"] = sts;
  return doc.dump(2) + "\n";
}

void save_structure_file(const StructureFile& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write file '" + path + "'");
  out << serialize_structure_file(f);
}

Algebra algebra_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "algebra", "algebra_of");
  return Algebra{object_ref(f, e.ref("carrier"), name),
                 morphism_ref(f, e.ref("mult"), name).mor,
                 morphism_ref(f, e.ref("unit"), name).mor};
}

Coalgebra coalgebra_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "coalgebra", "coalgebra_of");
  return Coalgebra{object_ref(f, e.ref("carrier"), name),
                   morphism_ref(f, e.ref("comult"), name).mor,
                   morphism_ref(f, e.ref("counit"), name).mor};
}

ModuleAction module_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "module", "module_of");
  return ModuleAction{algebra_of(f, e.ref("algebra")),
                      object_ref(f, e.ref("carrier"), name),
                      morphism_ref(f, e.ref("action"), name).mor};
}

Comodule comodule_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "comodule", "comodule_of");
  return Comodule{coalgebra_of(f, e.ref("coalgebra")),
                  object_ref(f, e.ref("carrier"), name),
                  morphism_ref(f, e.ref("coaction"), name).mor};
}

LeftPairing pairing_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "pairing", "pairing_of");
  return LeftPairing{algebra_of(f, e.ref("algebra")), coalgebra_of(f, e.ref("coalgebra")),
                     morphism_ref(f, e.ref("pair"), name).mor};
}

Entwining entwining_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "entwining", "entwining_of");
  return Entwining{algebra_of(f, e.ref("algebra")), coalgebra_of(f, e.ref("coalgebra")),
                   morphism_ref(f, e.ref("lambda"), name).mor};
}

EntwinedModule entwined_module_of(const StructureFile& f, const std::string& name) {
  const StructureEntry& e = structure_ref(f, name, "entwined_module", "entwined_module_of");
  return EntwinedModule{entwining_of(f, e.ref("entwining")),
                        object_ref(f, e.ref("carrier"), name),
                        morphism_ref(f, e.ref("coaction"), name).mor,
                        morphism_ref(f, e.ref("action"), name).mor};
}

}  // namespace corat
