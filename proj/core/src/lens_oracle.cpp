#include "qhb/lens_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "qhb/errors.hpp"

namespace qhb {

LensSpace::LensSpace(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_ < 1) throw DomainError("lens space needs p >= 1, got " + p_.str());
  if (q_ < 0 || q_ >= p_) throw DomainError("lens space needs 0 <= q < p, got " + p_.str() + "/" + q_.str());
  if (boost::multiprecision::gcd(p_, q_) != 1) {
    throw DomainError("lens space needs gcd(p,q) = 1, got " + p_.str() + "/" + q_.str());
  }
}

WeightString LensSpace::string() const {
  if (is_s3()) return WeightString{};
  return expand(Fraction(p_, q_));
}

std::string LensSpace::to_string() const { return "L(" + p_.str() + "," + q_.str() + ")"; }

std::vector<Integer> symmetry_orbit(const LensSpace& lens) {
  if (lens.is_s3()) return {Integer(0)};
  const Integer& p = lens.p();
  const Integer inv = mod_inverse(lens.q(), p);
  std::vector<Integer> orbit{lens.q(), p - lens.q(), inv, p - inv};
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

std::string FamilyInstance::to_string() const {
  std::string out = family + "(";
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i) out += ',';
    out += parameters[i].first + "=" + parameters[i].second.str();
  }
  return out + ")";
}

std::string LensVerdict::family_name() const {
  if (!bounds) return {};
  return family ? family->family : std::string("S3");
}

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& origin, const std::string& what) {
  throw DataAssetMissing("family asset " + origin + ": " + what);
}

std::string require_string(const json& obj, const char* key, const std::string& origin) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string()) {
    invalid(origin, std::string("missing string field '") + key + "'");
  }
  return obj.at(key).get<std::string>();
}

Expression compile_field(const std::string& text, const std::vector<std::string>& slots, const std::string& origin,
                         const std::string& where) {
  try {
    return Expression::compile(text, slots);
  } catch (const SyntaxError& e) {
    invalid(origin, where + ": " + e.what());
  }
}

std::size_t last_slot(const Expression& e) { return e.slots_used().empty() ? 0 : e.slots_used().back(); }

// Enumerates admissible parameter tuples in lexicographic order. `visit`
// returns true to stop. With a target, parameters are pruned on the
// p-expression, which is non-decreasing in each parameter.
bool enumerate(const FamilySpec& family, const Integer& cap, const Integer* target,
               const std::function<bool(const std::vector<Integer>&)>& visit) {
  const std::size_t count = family.parameters.size();
  std::vector<Integer> values(count, 0);
  std::function<bool(std::size_t)> recurse = [&](std::size_t i) -> bool {
    if (i == count) return visit(values);
    const std::span<const Integer> bound_values(values.data(), count);
    Integer lo = family.parameters[i].min.evaluate(bound_values);
    Integer hi = cap;
    if (family.parameters[i].max) hi = std::min(hi, family.parameters[i].max->evaluate(bound_values));
    for (Integer v = lo; v <= hi; ++v) {
      values[i] = v;
      if (target && !family.p.slots_used().empty() && last_slot(family.p) == i) {
        const Integer pv = family.p.evaluate(bound_values);
        if (pv > *target) break;
        if (pv < *target) continue;
      }
      bool ok = true;
      for (const auto& c : family.constraints) {
        if (!c.slots_used().empty() && last_slot(c) == i && !c.holds(bound_values)) {
          ok = false;
          break;
        }
      }
      if (ok && recurse(i + 1)) return true;
    }
    values[i] = 0;
    return false;
  };
  return recurse(0);
}

FamilyInstance make_instance(const FamilySpec& family, const std::vector<Integer>& values, const std::string& origin) {
  for (const auto& c : family.constraints)
    if (!c.holds(values)) return {};
  FamilyInstance inst;
  inst.family = family.name;
  for (std::size_t i = 0; i < values.size(); ++i) inst.parameters.emplace_back(family.parameters[i].name, values[i]);
  inst.p = family.p.evaluate(values);
  inst.q = family.q.evaluate(values);
  if (inst.p < 2 || inst.q <= 0 || inst.q >= inst.p || boost::multiprecision::gcd(inst.p, inst.q) != 1) {
    invalid(origin, "family " + family.name + " produced invalid (p,q) = (" + inst.p.str() + "," + inst.q.str() +
                        ") at " + inst.to_string());
  }
  return inst;
}

}  // namespace

FamilyData FamilyData::parse(std::string_view json_text, std::string origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid(origin, std::string("not valid JSON: ") + e.what());
  }
  FamilyData data;
  data.origin_ = std::move(origin);
  const std::string schema = require_string(doc, "schema", data.origin_);
  if (schema != "qhb.lens_families/1") invalid(data.origin_, "unsupported schema '" + schema + "'");
  data.version_ = require_string(doc, "version", data.origin_);
  if (!doc.contains("families") || !doc.at("families").is_array() || doc.at("families").empty()) {
    invalid(data.origin_, "'families' must be a non-empty array");
  }
  for (const auto& rec : doc.at("families")) {
    FamilySpec spec{require_string(rec, "name", data.origin_), {}, {}, {}, {}, {}, {}};
    const std::string where = "family " + spec.name;
    if (rec.contains("description") && rec.at("description").is_string()) spec.description = rec.at("description");
    if (!rec.contains("parameters") || !rec.at("parameters").is_array() || rec.at("parameters").empty()) {
      invalid(data.origin_, where + ": 'parameters' must be a non-empty array");
    }
    std::vector<std::string> names;
    for (const auto& param : rec.at("parameters")) names.push_back(require_string(param, "name", data.origin_));
    std::vector<std::string> earlier;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& param = rec.at("parameters")[i];
      if (std::find(earlier.begin(), earlier.end(), names[i]) != earlier.end()) {
        invalid(data.origin_, where + ": duplicate parameter " + names[i]);
      }
      FamilyParameter fp{names[i],
                         compile_field(require_string(param, "min", data.origin_), earlier, data.origin_,
                                       where + " min of " + names[i]),
                         std::nullopt};
      if (param.contains("max")) {
        fp.max = compile_field(require_string(param, "max", data.origin_), earlier, data.origin_,
                               where + " max of " + names[i]);
      }
      spec.parameters.push_back(std::move(fp));
      earlier.push_back(names[i]);
    }
    if (rec.contains("constraints")) {
      if (!rec.at("constraints").is_array()) invalid(data.origin_, where + ": 'constraints' must be an array");
      for (const auto& c : rec.at("constraints")) {
        if (!c.is_string()) invalid(data.origin_, where + ": constraints must be strings");
        spec.constraints.push_back(compile_field(c.get<std::string>(), names, data.origin_, where + " constraint"));
      }
    }
    spec.p = compile_field(require_string(rec, "p", data.origin_), names, data.origin_, where + " p");
    spec.q = compile_field(require_string(rec, "q", data.origin_), names, data.origin_, where + " q");
    if (rec.contains("bound")) {
      spec.bound = compile_field(require_string(rec, "bound", data.origin_), {"p"}, data.origin_, where + " bound");
    }
    data.families_.push_back(std::move(spec));
  }
  return data;
}

FamilyData FamilyData::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataAssetMissing("family asset " + path.string() + " cannot be read");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

std::filesystem::path FamilyData::default_path(const std::filesystem::path& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv("QHB_FAMILIES"); env && *env) return env;
#ifdef QHB_INSTALLED_FAMILIES
  if (std::filesystem::exists(QHB_INSTALLED_FAMILIES)) return QHB_INSTALLED_FAMILIES;
#endif
#ifdef QHB_SOURCE_FAMILIES
  return QHB_SOURCE_FAMILIES;
#else
  return "lisca_families.json";
#endif
}

std::optional<FamilyInstance> FamilyData::find(const Integer& p, const std::vector<Integer>& qs) const {
  for (const auto& family : families_) {
    const Integer p_slot[] = {p};
    const Integer cap = family.bound ? family.bound->evaluate(p_slot) : p;
    std::optional<FamilyInstance> hit;
    enumerate(family, cap, &p, [&](const std::vector<Integer>& values) {
      FamilyInstance inst = make_instance(family, values, origin_);
      if (inst.family.empty() || inst.p != p) return false;
      if (std::find(qs.begin(), qs.end(), inst.q) == qs.end()) return false;
      hit = std::move(inst);
      return true;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

std::vector<FamilyInstance> FamilyData::instances(const Integer& max_param) const {
  std::vector<FamilyInstance> out;
  for (const auto& family : families_) {
    enumerate(family, max_param, nullptr, [&](const std::vector<Integer>& values) {
      FamilyInstance inst = make_instance(family, values, origin_);
      if (!inst.family.empty()) out.push_back(std::move(inst));
      return false;
    });
  }
  return out;
}

LensVerdict bounds_qhb(const LensSpace& lens, const FamilyData& data) {
  if (lens.is_s3()) return {true, std::nullopt};
  auto hit = data.find(lens.p(), symmetry_orbit(lens));
  if (!hit) return {false, std::nullopt};
  return {true, std::move(hit)};
}

SquareFilter square_filter(const LensSpace& lens) {
  return is_perfect_square(lens.p()) ? SquareFilter::Passes : SquareFilter::FailsNecessary;
}

NecessityReport embedding_necessity(const LensSpace& lens, const SearchLimits& limits) {
  if (lens.p() < 2) throw DomainError("embedding necessity needs p >= 2");
  NecessityReport report;
  report.direct = find_embedding(gram(expand(Fraction(lens.p(), lens.q()))), limits);
  report.reversed = find_embedding(gram(expand(Fraction(lens.p(), lens.p() - lens.q()))), limits);
  report.verdict = (report.direct && report.reversed) ? Necessity::Inconclusive : Necessity::No;
  return report;
}

}  // namespace qhb
