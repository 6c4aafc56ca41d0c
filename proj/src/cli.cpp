#include "maxitive/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "maxitive/generators.hpp"

namespace maxitive::cli {

namespace {

// Largest point accepted in cofinite documents.
constexpr Point kMaxCodedPoint = Point{1} << 20;
// Subfamilies of at most this many compact-closed sets are checked exhaustively.
constexpr std::size_t kMaxIntersectionFamily = 12;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& j = field(obj, key, where);
  if (!j.is_array()) bad(where + "." + key, "expected an array");
  return j;
}

std::uint64_t unsigned_of(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    bad(where, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

using LabelIndex = std::map<std::string, Element>;

Element label_of(const json& j, const LabelIndex& index, const std::string& where) {
  const std::string label = string_of(j, where);
  const auto it = index.find(label);
  if (it == index.end()) bad(where, "unknown element '" + label + "'");
  return it->second;
}

Point point_of(const json& j, std::uint64_t limit, const std::string& where) {
  const std::uint64_t x = unsigned_of(j, where);
  if (x >= limit) bad(where, "point " + std::to_string(x) + " is out of range");
  return static_cast<Point>(x);
}

PointSet point_set_of(const json& j, std::size_t points, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of points");
  PointSet s = 0;
  for (std::size_t i = 0; i < j.size(); ++i)
    s |= PointSet{1} << point_of(j[i], points, where + "[" + std::to_string(i) + "]");
  return s;
}

CodedSet coded_set_of(const json& j, const std::string& where) {
  const std::string polarity = string_of(field(j, "polarity", where), where + ".polarity");
  std::vector<Point> exceptions;
  const json& ex = array_field(j, "exceptions", where);
  for (std::size_t i = 0; i < ex.size(); ++i)
    exceptions.push_back(point_of(ex[i], kMaxCodedPoint, where + ".exceptions[" + std::to_string(i) + "]"));
  if (polarity == "fin") return CodedSet::finite(exceptions);
  if (polarity == "cofin") return CodedSet::cofinite(exceptions);
  bad(where + ".polarity", "expected 'fin' or 'cofin'");
}

json point_set_json(PointSet s) {
  json out = json::array();
  for_each_bit(s, [&](Element x) { out.push_back(x); });
  return out;
}

json coded_set_json(const CodedSet& g) {
  return {{"polarity", g.is_finite() ? "fin" : "cofin"}, {"exceptions", g.exceptions()}};
}

MeasureSpec measure_spec_of(const json& j, const InstanceDocument& doc, const LabelIndex& index,
                            const std::string& where) {
  MeasureSpec spec;
  const std::string kind = string_of(field(j, "kind", where), where + ".kind");
  if (kind == "tabular") {
    if (doc.cofinite) bad(where, "tabular measures need a finite ground set");
    spec.kind = MeasureSpec::Kind::tabular;
    const json& values = array_field(j, "values", where);
    std::set<PointSet> seen;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string at = where + ".values[" + std::to_string(i) + "]";
      if (!values[i].is_array() || values[i].size() != 2) bad(at, "expected [set, label]");
      const PointSet s = point_set_of(values[i][0], doc.points, at);
      if (!seen.insert(s).second) bad(at, "duplicate set " + format_point_set(s));
      spec.values.emplace_back(s, label_of(values[i][1], index, at));
    }
  } else if (kind == "parametric") {
    if (!doc.cofinite) bad(where, "parametric measures need the cofinite ground model");
    spec.kind = MeasureSpec::Kind::parametric;
    if (j.contains("exceptions")) {
      const json& ex = array_field(j, "exceptions", where);
      for (std::size_t i = 0; i < ex.size(); ++i) {
        const std::string at = where + ".exceptions[" + std::to_string(i) + "]";
        if (!ex[i].is_array() || ex[i].size() != 2) bad(at, "expected [point, label]");
        const Point x = point_of(ex[i][0], kMaxCodedPoint, at);
        if (spec.exceptions.count(x)) bad(at, "duplicate point " + std::to_string(x));
        spec.exceptions[x] = label_of(ex[i][1], index, at);
      }
    }
    spec.default_level = label_of(field(j, "default", where), index, where + ".default");
    spec.residual = label_of(field(j, "residual", where), index, where + ".residual");
  } else {
    bad(where + ".kind", "expected 'tabular' or 'parametric'");
  }
  return spec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Documents

InstanceDocument parse_instance(const json& root) {
  InstanceDocument doc;
  const json& format = field(root, "format", "document");
  if (!format.is_number_integer() || format.get<std::int64_t>() != 1) {
    bad("document.format", "unsupported format (expected 1)");
  }

  const json& lattice = field(root, "lattice", "document");
  const json& elements = array_field(lattice, "elements", "lattice");
  if (elements.empty()) bad("lattice.elements", "at least one element is required");
  LabelIndex index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string label = string_of(elements[i], "lattice.elements[" + std::to_string(i) + "]");
    if (!index.emplace(label, static_cast<Element>(i)).second) {
      bad("lattice.elements", "duplicate label '" + label + "'");
    }
    doc.elements.push_back(label);
  }
  const json& leq = array_field(lattice, "leq", "lattice");
  for (std::size_t i = 0; i < leq.size(); ++i) {
    const std::string at = "lattice.leq[" + std::to_string(i) + "]";
    if (!leq[i].is_array() || leq[i].size() != 2) bad(at, "expected [lower, upper]");
    doc.leq.emplace_back(label_of(leq[i][0], index, at), label_of(leq[i][1], index, at));
  }

  const json& ground = field(root, "ground", "document");
  const std::string kind = string_of(field(ground, "kind", "ground"), "ground.kind");
  if (kind == "finite") {
    const std::uint64_t n = unsigned_of(field(ground, "n", "ground"), "ground.n");
    if (n > kMaxPoints) bad("ground.n", "at most " + std::to_string(kMaxPoints) + " points");
    doc.points = static_cast<std::size_t>(n);
    const json& paving = array_field(root, "paving", "document");
    for (std::size_t i = 0; i < paving.size(); ++i)
      doc.paving.push_back(point_set_of(paving[i], doc.points, "paving[" + std::to_string(i) + "]"));
  } else if (kind == "cofinite") {
    doc.cofinite = true;
    if (root.contains("paving")) bad("paving", "the cofinite model has a fixed family");
  } else {
    bad("ground.kind", "expected 'finite' or 'cofinite'");
  }

  if (root.contains("measures")) {
    const json& measures = root["measures"];
    if (!measures.is_object()) bad("measures", "expected an object");
    for (const auto& [name, body] : measures.items())
      doc.measures.emplace_back(name, measure_spec_of(body, doc, index, "measures." + name));
  }
  if (root.contains("seed")) doc.seed = unsigned_of(root["seed"], "seed");
  if (root.contains("sets")) {
    if (!doc.cofinite) bad("sets", "extra sets are only read on the cofinite model");
    const json& sets = root["sets"];
    if (!sets.is_array()) bad("sets", "expected an array");
    for (std::size_t i = 0; i < sets.size(); ++i)
      doc.sets.push_back(coded_set_of(sets[i], "sets[" + std::to_string(i) + "]"));
  }
  return doc;
}

InstanceDocument load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_instance(root);
}

json to_json(const InstanceDocument& doc) {
  json out;
  out["format"] = 1;
  json leq = json::array();
  for (const auto& [a, b] : doc.leq) leq.push_back({doc.elements.at(a), doc.elements.at(b)});
  out["lattice"] = {{"elements", doc.elements}, {"leq", leq}};
  if (doc.cofinite) {
    out["ground"] = {{"kind", "cofinite"}};
  } else {
    out["ground"] = {{"kind", "finite"}, {"n", doc.points}};
    json paving = json::array();
    for (PointSet s : doc.paving) paving.push_back(point_set_json(s));
    out["paving"] = paving;
  }
  json measures = json::object();
  for (const auto& [name, spec] : doc.measures) {
    if (spec.kind == MeasureSpec::Kind::tabular) {
      json values = json::array();
      for (const auto& [s, v] : spec.values) values.push_back({point_set_json(s), doc.elements.at(v)});
      measures[name] = {{"kind", "tabular"}, {"values", values}};
    } else {
      json exceptions = json::array();
      for (const auto& [x, v] : spec.exceptions) exceptions.push_back({x, doc.elements.at(v)});
      measures[name] = {{"kind", "parametric"},
                        {"exceptions", exceptions},
                        {"default", doc.elements.at(spec.default_level)},
                        {"residual", doc.elements.at(spec.residual)}};
    }
  }
  out["measures"] = measures;
  if (doc.seed) out["seed"] = *doc.seed;
  if (!doc.sets.empty()) {
    json sets = json::array();
    for (const CodedSet& g : doc.sets) sets.push_back(coded_set_json(g));
    out["sets"] = sets;
  }
  return out;
}

InstanceDocument document_of(const std::vector<std::pair<std::string, Measure>>& measures,
                             std::optional<std::uint64_t> seed) {
  if (measures.empty()) throw std::invalid_argument("document_of needs at least one measure");
  InstanceDocument doc;
  doc.seed = seed;
  const Lattice& l = lattice_of(measures.front().second);
  doc.elements = l.labels();
  for (Element a = 0; a < l.size(); ++a)
    for (Element b = 0; b < l.size(); ++b)
      if (l.less(a, b)) doc.leq.emplace_back(a, b);
  for (const auto& [name, m] : measures) {
    MeasureSpec spec;
    if (const auto* t = std::get_if<TabularMeasure>(&m)) {
      doc.points = t->family().points();
      doc.paving = t->family().members();
      for (std::size_t i = 0; i < t->family().size(); ++i)
        spec.values.emplace_back(t->family().member(i), t->at(i));
    } else {
      const auto& p = std::get<ParametricMeasure>(m);
      doc.cofinite = true;
      spec.kind = MeasureSpec::Kind::parametric;
      spec.exceptions = p.exceptions();
      spec.default_level = p.default_level();
      spec.residual = p.residual();
    }
    doc.measures.emplace_back(name, std::move(spec));
  }
  return doc;
}

namespace {

Measure build_measure(const MeasureSpec& spec, const LatticePtr& lattice, const FamilyPtr& family,
                      const std::string& name) {
  if (spec.kind == MeasureSpec::Kind::parametric) {
    return ParametricMeasure(lattice, spec.exceptions, spec.default_level, spec.residual);
  }
  std::vector<std::optional<Element>> slots(family->size());
  for (const auto& [s, v] : spec.values) {
    const auto i = family->index_of(s);
    if (!i) {
      throw MeasureError(MeasureError::Kind::set_not_in_paving,
                         name + ": " + format_point_set(s) + " is not a member of the paving");
    }
    slots[*i] = v;
  }
  std::vector<Element> values;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      throw MeasureError(MeasureError::Kind::invalid_value,
                         name + ": no value for " + format_point_set(family->member(i)));
    }
    values.push_back(*slots[i]);
  }
  TabularMeasure nu(lattice, family, std::move(values));
  const MaxitivityReport report = validate_maxitive(nu);
  if (!report.ok()) throw MeasureError(MeasureError::Kind::not_maxitive, name + ": " + report.detail);
  return nu;
}

}  // namespace

Instance build_instance(const InstanceDocument& doc) {
  Instance inst;
  inst.lattice = std::make_shared<const Lattice>(
      Lattice::from_pairs(doc.elements.size(), doc.leq, doc.elements));
  if (!doc.cofinite) inst.family = std::make_shared<const SetFamily>(SetFamily::paving(doc.points, doc.paving));
  for (const auto& [name, spec] : doc.measures)
    inst.measures.emplace_back(name, build_measure(spec, inst.lattice, inst.family, name));
  return inst;
}

// ---------------------------------------------------------------------------
// validate

std::optional<Level> parse_level(const std::string& name) {
  if (name == "poset") return Level::poset;
  if (name == "lattice") return Level::lattice;
  if (name == "domain") return Level::domain;
  if (name == "frame") return Level::frame;
  return std::nullopt;
}

namespace {

std::string level_name(Level level) {
  switch (level) {
    case Level::poset: return "poset";
    case Level::lattice: return "lattice";
    case Level::domain: return "domain";
    case Level::frame: return "frame";
  }
  return "";
}

struct CheckList {
  json items = json::array();
  bool ok = true;
  std::string first_failure;

  void add(const std::string& name, bool passed, json witness = nullptr, const std::string& detail = "") {
    json item{{"name", name}, {"ok", passed}};
    if (!witness.is_null()) item["witness"] = std::move(witness);
    if (!detail.empty()) item["detail"] = detail;
    items.push_back(std::move(item));
    if (!passed && ok) {
      ok = false;
      first_failure = name + (detail.empty() || detail == name ? "" : " (" + detail + ")");
    }
  }
};

json labels_json(const Lattice& l, const std::vector<Element>& elements) {
  json out = json::array();
  for (Element x : elements) out.push_back(l.label(x));
  return out;
}

void add_order_check(CheckList& checks, const Lattice& l, const std::string& name, const OrderCheck& c) {
  checks.add(name, c.ok, c.ok ? json(nullptr) : labels_json(l, c.witness), c.detail);
}

json witness_sets(const std::vector<PointSet>& sets) {
  json out = json::array();
  for (PointSet s : sets) out.push_back(point_set_json(s));
  return out;
}

struct Validation {
  CheckList checks;
  json properties = json::object();
  std::optional<Instance> instance;
};

Validation run_validation(const InstanceDocument& doc, Level level) {
  Validation v;
  CheckList& checks = v.checks;
  Instance inst;
  try {
    inst.lattice = std::make_shared<const Lattice>(
        Lattice::from_pairs(doc.elements.size(), doc.leq, doc.elements));
    checks.add("partial order", true);
  } catch (const OrderError& e) {
    checks.add("partial order", false, nullptr, e.what());
  }

  if (inst.lattice) {
    const Lattice& l = *inst.lattice;
    if (level >= Level::lattice) add_order_check(checks, l, "lattice", check_lattice(l));
    if (level >= Level::domain) {
      add_order_check(checks, l, "continuity", check_continuity(l));
      add_order_check(checks, l, "domain", check_domain(l));
    }
    if (level >= Level::frame) {
      add_order_check(checks, l, "distributivity", check_distributive(l));
      add_order_check(checks, l, "local completeness", check_locally_complete(l));
    }
  }

  if (doc.cofinite) {
    checks.add("paving", true);
    v.properties["boolean_algebra"] = true;
  } else {
    try {
      inst.family = std::make_shared<const SetFamily>(SetFamily::paving(doc.points, doc.paving));
      checks.add("paving", true);
      v.properties["boolean_algebra"] = is_boolean_algebra(*inst.family);
      v.properties["topology"] = is_topology(*inst.family);
    } catch (const SpaceError& e) {
      checks.add("paving", false, nullptr, e.what());
    }
  }

  const bool model_ok = inst.lattice && (doc.cofinite || inst.family);
  for (const auto& [name, spec] : doc.measures) {
    const std::string check = "maxitive " + name;
    if (!model_ok) {
      checks.add(check, false, nullptr, "the lattice or the paving is invalid");
      continue;
    }
    if (spec.kind == MeasureSpec::Kind::tabular) {
      // Rebuilt here to report the witness sets of a failed cover.
      try {
        std::vector<Element> values(inst.family->size(), inst.lattice->bottom());
        std::vector<bool> given(inst.family->size(), false);
        for (const auto& [s, x] : spec.values) {
          const auto i = inst.family->index_of(s);
          if (!i) {
            throw MeasureError(MeasureError::Kind::set_not_in_paving,
                               format_point_set(s) + " is not a member of the paving");
          }
          values[*i] = x;
          given[*i] = true;
        }
        for (std::size_t i = 0; i < given.size(); ++i) {
          if (!given[i]) {
            throw MeasureError(MeasureError::Kind::invalid_value,
                               "no value for " + format_point_set(inst.family->member(i)));
          }
        }
        TabularMeasure nu(inst.lattice, inst.family, std::move(values));
        const MaxitivityReport report = validate_maxitive(nu);
        checks.add(check, report.ok(), report.ok() ? json(nullptr) : witness_sets(report.witness),
                   report.detail);
        if (report.ok()) inst.measures.emplace_back(name, std::move(nu));
      } catch (const MeasureError& e) {
        checks.add(check, false, nullptr, e.what());
      }
    } else {
      try {
        inst.measures.emplace_back(
            name, ParametricMeasure(inst.lattice, spec.exceptions, spec.default_level, spec.residual));
        checks.add(check, true);
      } catch (const MeasureError& e) {
        checks.add(check, false, nullptr, e.what());
      }
    }
  }
  if (checks.ok) v.instance = std::move(inst);
  return v;
}

CommandResult validation_failure(const std::string& command, Validation& v) {
  CommandResult r;
  r.exit_code = kExitFailure;
  r.report = {{"command", command}, {"ok", false}, {"stage", "validation"}, {"checks", v.checks.items}};
  r.summary = command + ": validation failed: " + v.checks.first_failure;
  return r;
}

}  // namespace

CommandResult cmd_validate(const InstanceDocument& doc, Level level) {
  Validation v = run_validation(doc, level);
  CommandResult r;
  r.exit_code = v.checks.ok ? kExitOk : kExitFailure;
  r.report = {{"command", "validate"},
              {"level", level_name(level)},
              {"model", doc.cofinite ? "cofinite" : "finite"},
              {"ok", v.checks.ok},
              {"checks", v.checks.items},
              {"properties", v.properties}};
  r.summary = v.checks.ok ? "validate: " + std::to_string(v.checks.items.size()) + " checks passed"
                          : "validate: failed: " + v.checks.first_failure;
  return r;
}

// ---------------------------------------------------------------------------
// decompose

namespace {

json parametric_json(const ParametricMeasure& nu) {
  const Lattice& l = nu.lattice();
  json exceptions = json::array();
  for (const auto& [x, v] : nu.exceptions()) exceptions.push_back({x, l.label(v)});
  return {{"exceptions", exceptions},
          {"default", l.label(nu.default_level())},
          {"residual", l.label(nu.residual())}};
}

json density_json(const DensityDiagnosis& d) {
  return {{"completely_maxitive", d.completely_maxitive},
          {"inner_continuous", d.inner_continuous},
          {"density", d.density},
          {"agree", d.agree()}};
}

std::vector<CodedSet> sample_sets(const ParametricMeasure& nu, const std::vector<CodedSet>& extra) {
  std::vector<CodedSet> out = representative_sets(nu.support());
  for (const CodedSet& g : extra)
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

json decompose_tabular(const TabularMeasure& nu, const std::set<Part>& parts) {
  const Lattice& l = nu.lattice();
  std::optional<TabularMeasure> reg, res, sing;
  if (parts.count(Part::regular)) reg = regular_part(nu);
  if (parts.count(Part::residual)) res = residual_part(nu);
  if (parts.count(Part::singular)) sing = singular_part(nu);
  json rows = json::array();
  for (std::size_t i = 0; i < nu.family().size(); ++i) {
    json row{{"set", point_set_json(nu.family().member(i))}, {"nu", l.label(nu.at(i))}};
    if (reg) row["regular"] = l.label(reg->at(i));
    if (res) row["residual"] = l.label(res->at(i));
    if (sing) row["singular"] = l.label(sing->at(i));
    rows.push_back(std::move(row));
  }
  return {{"model", "finite"},
          {"sets", rows},
          {"density", density_json(has_density(nu))},
          {"tight", is_tight(nu)}};
}

json decompose_parametric(const ParametricMeasure& nu, const std::set<Part>& parts,
                          const std::vector<CodedSet>& extra, Point window, bool& agree) {
  const Lattice& l = nu.lattice();
  std::optional<ParametricMeasure> reg, res, sing;
  if (parts.count(Part::regular)) reg = regular_part(nu);
  if (parts.count(Part::residual)) res = residual_part(nu);
  if (parts.count(Part::singular)) sing = singular_part(nu);

  const Point w = window ? window : default_window(nu);
  std::optional<StableWindow> oracle;
  json window_report;
  if (w + StableWindow::kStep <= WindowOracle::kMaxWindow && w > (nu.support().empty() ? 0 : nu.support().back())) {
    oracle.emplace(nu, w);
    window_report = {{"size", w}};
  } else {
    window_report = {{"size", w}, {"skipped", "support does not fit the oracle window"}};
  }

  json rows = json::array();
  json closed = {{"nu", parametric_json(nu)}};
  bool windows_agree = true;
  auto cross = [&](WindowQuery q, const CodedSet& g, Element value) {
    if (!oracle) return;
    const std::vector<Point>& ex = g.exceptions();
    if (!ex.empty() && ex.back() >= w) return;
    windows_agree = windows_agree && oracle->evaluate(q, g) == value;
  };
  for (const CodedSet& g : sample_sets(nu, extra)) {
    json row{{"set", coded_set_json(g)}, {"nu", l.label(nu(g))}};
    if (reg) {
      row["regular"] = l.label((*reg)(g));
      cross(WindowQuery::regular, g, (*reg)(g));
    }
    if (res) {
      row["residual"] = l.label((*res)(g));
      cross(WindowQuery::residual, g, (*res)(g));
    }
    if (sing) {
      row["singular"] = l.label((*sing)(g));
      cross(WindowQuery::singular, g, (*sing)(g));
    }
    rows.push_back(std::move(row));
  }
  if (reg) closed["regular"] = parametric_json(*reg);
  if (res) closed["residual"] = parametric_json(*res);
  if (sing) closed["singular"] = parametric_json(*sing);
  if (oracle) {
    windows_agree = windows_agree && oracle->completely_maxitive() == has_density(nu).completely_maxitive &&
                    (oracle->tightness_meet() == l.bottom()) == is_tight(nu);
    window_report["agree"] = windows_agree;
  }
  agree = agree && windows_agree;
  return {{"model", "cofinite"},
          {"sets", rows},
          {"closed_forms", closed},
          {"window", window_report},
          {"density", density_json(has_density(nu))},
          {"tight", is_tight(nu)}};
}

std::string join_names(const std::set<Part>& parts) {
  std::string out;
  for (Part p : parts) out += (out.empty() ? "" : ",") + to_string(p);
  return out;
}

}  // namespace

CommandResult cmd_decompose(const InstanceDocument& doc, const DecomposeOptions& options) {
  if (!options.measure.empty() &&
      std::none_of(doc.measures.begin(), doc.measures.end(),
                   [&](const auto& m) { return m.first == options.measure; })) {
    throw InputError("no measure named '" + options.measure + "'");
  }
  if (options.window > WindowOracle::kMaxWindow) {
    throw InputError("window must be at most " + std::to_string(WindowOracle::kMaxWindow));
  }
  Validation v = run_validation(doc, Level::frame);
  if (!v.instance) return validation_failure("decompose", v);
  const Instance& inst = *v.instance;

  CommandResult r;
  json measures = json::object();
  bool agree = true;
  for (const auto& [name, m] : inst.measures) {
    if (!options.measure.empty() && name != options.measure) continue;
    try {
      if (const auto* t = std::get_if<TabularMeasure>(&m)) {
        measures[name] = decompose_tabular(*t, options.parts);
      } else {
        measures[name] = decompose_parametric(std::get<ParametricMeasure>(m), options.parts, doc.sets,
                                              options.window, agree);
      }
    } catch (const MeasureError& e) {
      if (e.kind() != MeasureError::Kind::not_boolean_algebra) throw;
      r.exit_code = kExitFailure;
      r.report = {{"command", "decompose"},
                  {"ok", false},
                  {"error", {{"kind", "not-boolean-algebra"}, {"measure", name}, {"detail", e.what()}}}};
      r.summary = "decompose: " + name + ": the singular part needs a Boolean algebra";
      return r;
    }
  }
  r.exit_code = agree ? kExitOk : kExitFailure;
  r.report = {{"command", "decompose"},
              {"ok", agree},
              {"parts", json::array()},
              {"measures", measures}};
  for (Part p : options.parts) r.report["parts"].push_back(to_string(p));
  r.summary = "decompose: " + std::to_string(measures.size()) + " measure(s), parts " +
              join_names(options.parts) + (agree ? "" : ", window oracle disagrees");
  return r;
}

// ---------------------------------------------------------------------------
// laws

namespace {

// Failure detail, or nothing when every checked family passes.
std::optional<std::string> intersection_failure(const TabularMeasure& nu) {
  std::vector<PointSet> h = derive_families(nu.family()).compact_closed;
  if (h.size() > kMaxIntersectionFamily) h.resize(kMaxIntersectionFamily);
  const bool tight = is_tight(nu);
  for (std::uint32_t pick = 1; pick < (std::uint32_t{1} << h.size()); ++pick) {
    std::vector<PointSet> sets;
    for_each_bit(pick, [&](Element i) { sets.push_back(h[i]); });
    PointSet meet = nu.family().universe();
    for (PointSet s : sets) meet &= s;
    if (std::find(sets.begin(), sets.end(), meet) == sets.end()) continue;
    if (!check_filtered_intersections_H(nu, sets).equal) {
      return "compact-closed family with intersection " + format_point_set(meet);
    }
    if (tight && !check_filtered_intersections_F_tight(nu, sets).equal) {
      return "closed family with intersection " + format_point_set(meet);
    }
  }
  return std::nullopt;
}

std::optional<std::string> intersection_failure(const ParametricMeasure& nu) {
  const std::vector<Point> support = nu.support();
  const Point f = fresh_point(support);
  std::vector<CodedSet> finite_chain;
  for (Point k = 4; k-- > 0;) {
    std::vector<Point> pts = support;
    for (Point x = f; x < f + k; ++x) pts.push_back(x);
    finite_chain.push_back(CodedSet::finite(pts));
  }
  if (!check_filtered_intersections_H(nu, finite_chain).equal) return "finite chain above the support";
  if (is_tight(nu)) {
    std::vector<CodedSet> closed_chain;
    for (Point k = 0; k < 4; ++k) {
      std::vector<Point> excluded;
      for (Point x = 0; x <= f + k; ++x) excluded.push_back(x);
      closed_chain.push_back(CodedSet::cofinite(excluded));
    }
    if (!check_filtered_intersections_F_tight(nu, closed_chain).equal) return "decreasing cofinite chain";
  }
  return std::nullopt;
}

std::optional<std::string> measure_law_failure(const Measure& m, std::string& which) {
  return std::visit(
      [&](const auto& nu) -> std::optional<std::string> {
        which = "density agreement";
        const DensityDiagnosis d = has_density(nu);
        if (!d.agree()) return "completely maxitive " + std::to_string(d.completely_maxitive) +
                               ", inner continuous " + std::to_string(d.inner_continuous) +
                               ", density " + std::to_string(d.density);
        which = "density corollaries";
        if (!check_density_corollaries(nu).consistent()) return "the density corollaries disagree";
        which = "filtered intersections";
        return intersection_failure(nu);
      },
      m);
}

}  // namespace

CommandResult cmd_laws(const InstanceDocument& doc, const LawsOptions& options) {
  for (int rule : options.rules) {
    if (rule < 1 || rule > 10) throw InputError("unknown rule " + std::to_string(rule));
  }
  Validation v = run_validation(doc, Level::frame);
  if (!v.instance) return validation_failure("laws", v);
  const Instance& inst = *v.instance;

  std::size_t passed = 0;
  std::size_t failed = 0;
  json matrix = json::array();
  for (const auto& [a, nu] : inst.measures) {
    for (const auto& [b, tau] : inst.measures) {
      json rules = json::array();
      for (const RuleResult& rr : check_calculus_rules(nu, tau, options.rules)) {
        json item{{"rule", rr.rule}, {"statement", rr.statement}, {"applicable", rr.applicable}};
        if (rr.applicable) {
          item["passed"] = rr.passed;
          rr.passed ? ++passed : ++failed;
          if (!rr.passed) item["witness"] = rr.witness;
        }
        rules.push_back(std::move(item));
      }
      matrix.push_back({{"nu", a}, {"tau", b}, {"rules", rules}});
    }
  }
  json measures = json::object();
  for (const auto& [name, m] : inst.measures) {
    std::string which;
    const std::optional<std::string> failure = measure_law_failure(m, which);
    if (failure) {
      ++failed;
      measures[name] = {{"ok", false}, {"check", which}, {"witness", *failure}};
    } else {
      passed += 3;
      measures[name] = {{"ok", true}};
    }
  }
  CommandResult r;
  r.exit_code = failed == 0 ? kExitOk : kExitFailure;
  r.report = {{"command", "laws"}, {"ok", failed == 0}, {"rules", matrix}, {"measures", measures}};
  r.summary = "laws: " + std::to_string(passed) + " passed, " + std::to_string(failed) + " failed";
  return r;
}

// ---------------------------------------------------------------------------
// fuzz

std::optional<FuzzOptions::Model> parse_model(const std::string& name) {
  if (name == "both") return FuzzOptions::Model::both;
  if (name == "finite") return FuzzOptions::Model::finite;
  if (name == "cofinite") return FuzzOptions::Model::cofinite;
  return std::nullopt;
}

namespace {

struct Tally {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  json counterexamples = json::array();

  // Runs one named check; exceptions count as failures.
  template <class F>
  void run(const std::string& name, const InstanceDocument& doc, F&& check) {
    std::optional<std::string> failure;
    try {
      failure = check();
    } catch (const StabilizationFailure& e) {
      failure = std::string("window oracle: ") + e.what();
    } catch (const MeasureError& e) {
      failure = e.what();
    } catch (const OrderError& e) {
      failure = e.what();
    } catch (const SpaceError& e) {
      failure = e.what();
    }
    auto& [pass, fail] = counts[name];
    if (!failure) {
      ++pass;
      return;
    }
    ++fail;
    counterexamples.push_back({{"check", name}, {"detail", *failure}, {"instance", to_json(doc)}});
  }
};

std::optional<std::string> rules_failure(const Measure& nu, const Measure& tau) {
  for (const RuleResult& r : check_calculus_rules(nu, tau))
    if (r.applicable && !r.passed) return "rule " + std::to_string(r.rule) + ": " + r.witness;
  return std::nullopt;
}

std::optional<std::string> when(bool failed, const std::string& detail) {
  return failed ? std::optional<std::string>(detail) : std::nullopt;
}

void fuzz_finite(Rng& rng, std::uint64_t seed, const FuzzOptions& options, Tally& tally) {
  const EnumerationBudget& budget = options.budget;
  const std::size_t points = 1 + draw(rng, std::min<std::size_t>(3, budget.max_points));
  const auto family = std::make_shared<const SetFamily>(random_paving(rng, points, 1 + draw(rng, 3)));
  const std::vector<LatticePtr> frames = frame_catalog(budget.max_lattice);
  if (frames.empty()) throw BudgetExceeded("the lattice budget admits no frame");
  const LatticePtr lattice = frames[draw(rng, frames.size())];
  const std::vector<TabularMeasure> all = enumerate_maxitive_measures(family, lattice, budget);
  const TabularMeasure& nu = all[draw(rng, all.size())];
  const TabularMeasure& tau = all[draw(rng, all.size())];
  std::vector<Element> noise(family->size());
  for (Element& x : noise) x = static_cast<Element>(draw(rng, lattice->size()));
  const TabularMeasure table(lattice, family, noise);
  const InstanceDocument doc = document_of({{"nu", nu}, {"tau", tau}}, seed);

  tally.run("maxitivity oracle", doc, [&] {
    return when(validate_maxitive(table).ok() != is_maxitive_by_definition(table),
                "cover check and definition disagree on a random table");
  });
  tally.run("ideal round trip", doc, [&] {
    const IdealFamily ideals = to_canonical_ideals(nu);
    return when(!is_right_continuous(ideals).ok || !(from_ideals(ideals).measure == nu),
                "canonical ideals do not reproduce nu");
  });
  tally.run("extension maximality", doc, [&] {
    const TabularMeasure star = extend_to_estar(nu);
    for (const TabularMeasure& mu : enumerate_extensions(nu, budget))
      if (!pointwise_leq(mu, star)) return std::optional<std::string>("an extension exceeds nu*");
    return std::optional<std::string>();
  });
  tally.run("density agreement", doc, [&] {
    const DensityDiagnosis d = has_density(nu);
    return when(!d.agree() || !d.verdict(), "finite measure without a consistent density");
  });
  tally.run("calculus rules", doc, [&] { return rules_failure(nu, tau); });
  tally.run("density corollaries", doc,
            [&] { return when(!check_density_corollaries(nu).consistent(), "corollaries disagree"); });
  tally.run("filtered intersections", doc, [&] { return intersection_failure(nu); });
  std::vector<Part> parts{Part::regular, Part::residual};
  if (is_boolean_algebra(*family)) parts.push_back(Part::singular);
  for (Part part : parts) {
    tally.run("extremality " + to_string(part), doc, [&] {
      const ExtremalityResult r = verify_extremality(nu, part, all);
      return when(!r.ok, r.detail);
    });
  }
}

void fuzz_cofinite(Rng& rng, std::uint64_t seed, const FuzzOptions& options, Tally& tally) {
  std::vector<LatticePtr> frames;
  for (std::size_t n = 2; n <= options.budget.max_lattice; ++n)
    frames.push_back(std::make_shared<const Lattice>(Lattice::chain(n)));
  if (options.budget.max_lattice >= 4) frames.push_back(std::make_shared<const Lattice>(Lattice::boolean(2)));
  if (frames.empty()) throw BudgetExceeded("the lattice budget admits no frame");
  const LatticePtr lattice = frames[draw(rng, frames.size())];
  const ParametricMeasure nu = draw(rng, 4) == 0 ? random_tight_parametric(rng, lattice)
                                                  : random_parametric(rng, lattice);
  const ParametricMeasure tau = random_parametric(rng, lattice);
  const InstanceDocument doc = document_of({{"nu", nu}, {"tau", tau}}, seed);

  tally.run("density agreement", doc, [&] {
    const DensityDiagnosis d = has_density(nu);
    return when(!d.agree(), "density verdicts disagree");
  });
  tally.run("tight measures have densities", doc,
            [&] { return when(is_tight(nu) && !has_density(nu).verdict(), "tight without a density"); });
  tally.run("calculus rules", doc, [&] { return rules_failure(nu, tau); });
  tally.run("density corollaries", doc,
            [&] { return when(!check_density_corollaries(nu).consistent(), "corollaries disagree"); });
  tally.run("filtered intersections", doc, [&] { return intersection_failure(nu); });
  tally.run("window oracle", doc, [&]() -> std::optional<std::string> {
    const Point w = options.window ? options.window : default_window(nu);
    if (w > options.budget.max_window) throw BudgetExceeded("window " + std::to_string(w) + " exceeds the budget");
    const StableWindow oracle(nu, w);
    const ParametricMeasure reg = regular_part(nu);
    const ParametricMeasure res = residual_part(nu);
    const ParametricMeasure sing = singular_part(nu);
    for (const CodedSet& g : representative_sets(nu.support())) {
      if (oracle.evaluate(WindowQuery::extension, g) != extend_star(nu, g)) return "nu* at " + g.to_string();
      if (oracle.evaluate(WindowQuery::regular, g) != reg(g)) return "regular part at " + g.to_string();
      if (oracle.evaluate(WindowQuery::residual, g) != res(g)) return "residual part at " + g.to_string();
      if (oracle.evaluate(WindowQuery::singular, g) != sing(g)) return "singular part at " + g.to_string();
    }
    if ((oracle.tightness_meet() == lattice->bottom()) != is_tight(nu)) return "tightness";
    if (oracle.completely_maxitive() != has_density(nu).completely_maxitive) return "complete maxitivity";
    return std::nullopt;
  });
}

}  // namespace

CommandResult cmd_fuzz(const FuzzOptions& options) {
  try {
    options.budget.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (options.count > options.budget.instance_cap) {
    throw InputError("count " + std::to_string(options.count) + " exceeds the instance cap " +
                     std::to_string(options.budget.instance_cap));
  }
  if (options.window > WindowOracle::kMaxWindow - StableWindow::kStep) {
    throw InputError("window must be at most " + std::to_string(WindowOracle::kMaxWindow - StableWindow::kStep));
  }

  Rng master(options.seed);
  Tally tally;
  std::size_t finite = 0;
  std::size_t cofinite = 0;
  for (std::size_t i = 0; i < options.count; ++i) {
    const std::uint64_t seed = master();
    Rng rng(seed);
    bool use_finite = options.model == FuzzOptions::Model::finite;
    if (options.model == FuzzOptions::Model::both) use_finite = draw(rng, 2) == 0;
    if (use_finite) {
      ++finite;
      fuzz_finite(rng, seed, options, tally);
    } else {
      ++cofinite;
      fuzz_cofinite(rng, seed, options, tally);
    }
  }

  std::size_t passed = 0;
  std::size_t failed = 0;
  json checks = json::object();
  for (const auto& [name, pf] : tally.counts) {
    checks[name] = {{"passed", pf.first}, {"failed", pf.second}};
    passed += pf.first;
    failed += pf.second;
  }
  CommandResult r;
  r.exit_code = failed == 0 ? kExitOk : kExitFailure;
  const char* model = options.model == FuzzOptions::Model::both     ? "both"
                      : options.model == FuzzOptions::Model::finite ? "finite"
                                                                    : "cofinite";
  r.report = {{"command", "fuzz"},
              {"seed", options.seed},
              {"count", options.count},
              {"model", model},
              {"instances", {{"finite", finite}, {"cofinite", cofinite}}},
              {"checks", checks},
              {"ok", failed == 0},
              {"counterexamples", tally.counterexamples}};
  r.summary = "fuzz: " + std::to_string(options.count) + " instances (seed " + std::to_string(options.seed) +
              "), " + std::to_string(passed) + " checks passed, " + std::to_string(failed) + " failed";
  return r;
}

}  // namespace maxitive::cli
