#include "oramod/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "oramod/error.hpp"

namespace oramod::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const json& field(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) bad(where + " must be a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) bad(where + " has no \"" + key + "\" field");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(as_string(s, where + " entry"));
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// "[p,q]", "p,q", "[]" or a JSON-encoded label array.
std::vector<std::string> labels_from_string(const std::string& src) {
  if (src.find('"') != std::string::npos) return string_array(parse_json(src, "element"), "element " + src);
  std::string s = trim(src);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') bad("element " + src + " is missing a closing bracket");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) bad("element " + src + " has an empty label");
    out.push_back(item);
  }
  return out;
}

std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base) {
  std::filesystem::path p(ref);
  return p.is_relative() ? base / p : p;
}

}  // namespace

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(what + " is not valid JSON: " + e.what());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

Poset poset_from_json(const json& doc) {
  auto labels = string_array(field(doc, "elements", "poset"), "poset \"elements\"");
  std::vector<LabelPair> pairs;
  if (doc.contains("le")) {
    const auto& le = doc["le"];
    if (!le.is_array()) bad("poset \"le\" must be an array of pairs");
    for (const auto& p : le) {
      auto two = string_array(p, "poset \"le\" pair");
      if (two.size() != 2) bad("poset \"le\" pairs need exactly two labels");
      pairs.emplace_back(two[0], two[1]);
    }
  }
  return Poset::from_relation(std::move(labels), pairs);
}

json poset_to_json(const Poset& poset) {
  json le = json::array();
  for (const auto& [a, b] : poset.strict_pairs()) le.push_back({a, b});
  return {{"elements", poset.labels()}, {"le", le}};
}

Poset poset_from_ref(const json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) {
    const auto path = resolve(ref.get<std::string>(), base);
    return poset_from_json(load_json(path));
  }
  return poset_from_json(ref);
}

Element element_from_json(const Frame& frame, const json& e) {
  const auto labels = e.is_string() ? labels_from_string(e.get<std::string>()) : string_array(e, "element");
  return frame.from_labels(labels);
}

json element_to_json(const Frame& frame, Element e) { return frame.labels_of(e); }

std::vector<std::uint32_t> table_from_json(const Frame& frame, const json& table) {
  std::vector<std::pair<json, json>> entries;
  if (table.is_object()) {
    for (const auto& [k, v] : table.items()) entries.emplace_back(json(k), v);
  } else if (table.is_array()) {
    for (const auto& kv : table) {
      if (!kv.is_array() || kv.size() != 2) bad("table entries must be [element, image] pairs");
      entries.emplace_back(kv[0], kv[1]);
    }
  } else {
    bad("\"table\" must be an object or an array of pairs");
  }
  constexpr auto kUnset = std::uint32_t(-1);
  std::vector<std::uint32_t> out(frame.size(), kUnset);
  for (const auto& [k, v] : entries) {
    const Element x = element_from_json(frame, k);
    if (out[x.index()] != kUnset) bad("table lists " + frame.render(x) + " twice");
    out[x.index()] = element_from_json(frame, v).index();
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == kUnset) bad("table has no entry for " + frame.render(frame.at(i)));
  }
  return out;
}

json table_to_json(const Frame& frame, std::span<const std::uint32_t> table) {
  json out = json::object();
  for (std::size_t i = 0; i < table.size(); ++i) {
    out[frame.render(frame.at(i))] = element_to_json(frame, frame.at(table[i]));
  }
  return out;
}

NucleusFile nucleus_file_from_json(const json& doc, const std::filesystem::path& base) {
  NucleusFile out;
  out.table = field(doc, "table", "nucleus file");
  if (doc.contains("frame")) out.poset = poset_from_ref(doc["frame"], base);
  return out;
}

ContainerFile container_file_from_json(const json& doc, const std::filesystem::path& base) {
  ContainerFile out{std::nullopt, doc};
  field(doc, "shapes", "container file");
  if (doc.contains("frame")) out.poset = poset_from_ref(doc["frame"], base);
  return out;
}

IndexedPropContainer container_from_json(const Frame& frame, const json& doc) {
  const auto shapes = string_array(field(doc, "shapes", "container"), "container \"shapes\"");
  const std::set<std::string> known(shapes.begin(), shapes.end());
  const json& pred = field(doc, "pred", "container");
  const json empty = json::object();
  const json& extent = doc.contains("extent") ? doc["extent"] : empty;
  for (const auto* m : {&pred, &extent}) {
    if (!m->is_object()) bad("container \"pred\" and \"extent\" must be objects");
    for (const auto& [k, _] : m->items()) {
      if (!known.count(k)) bad("container mentions unknown shape '" + k + "'");
    }
  }
  std::vector<Query> queries;
  for (const auto& a : shapes) {
    if (!pred.contains(a)) bad("container has no pred for shape '" + a + "'");
    const Element e = extent.contains(a) ? element_from_json(frame, extent[a]) : frame.top();
    queries.push_back({a, e, element_from_json(frame, pred[a])});
  }
  IndexedPropContainer c(frame, std::move(queries));
  if (!validate_container(c)) throw Error(ErrorCode::InvalidContainer, "some pred is not below its extent");
  return c;
}

json container_to_json(const IndexedPropContainer& c) {
  const Frame& f = c.frame();
  json shapes = json::array();
  json extent = json::object();
  json pred = json::object();
  for (const auto& q : c.queries()) {
    shapes.push_back(q.label);
    extent[q.label] = element_to_json(f, q.extent);
    pred[q.label] = element_to_json(f, q.pred);
  }
  return {{"shapes", shapes}, {"extent", extent}, {"pred", pred}};
}

SetContainer set_container_from_json(const json& doc) {
  auto shapes = string_array(field(doc, "shapes", "set container"), "set container \"shapes\"");
  const json& pos = field(doc, "positions", "set container");
  if (!pos.is_object()) bad("set container \"positions\" must be an object");
  std::map<std::string, std::vector<std::string>> positions;
  for (const auto& [k, v] : pos.items()) positions[k] = string_array(v, "positions of '" + k + "'");
  return SetContainer(std::move(shapes), positions);
}

json set_container_to_json(const SetContainer& c) {
  json pos = json::object();
  for (std::size_t a = 0; a < c.shape_count(); ++a) pos[c.shape(a)] = c.positions(a);
  return {{"shapes", c.shapes()}, {"positions", pos}};
}

Tree tree_from_json(const SetContainer& c, const json& doc, std::vector<std::string>& values) {
  auto invalid = [](const std::string& what) { throw Error(ErrorCode::InvalidTree, what); };
  if (!doc.is_object()) invalid("tree must be an object");
  if (doc.contains("leaf")) {
    if (doc.size() != 1) invalid("a leaf has no other fields");
    const auto label = as_string(doc["leaf"], "leaf value");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == label) return Tree::leaf(static_cast<Value>(i));
    }
    if (values.size() >= kMaxValues) invalid("more than 64 distinct leaf values");
    values.push_back(label);
    return Tree::leaf(static_cast<Value>(values.size() - 1));
  }
  if (!doc.contains("node")) invalid("tree needs a \"leaf\" or a \"node\"");
  const auto shape = as_string(doc["node"], "node shape");
  const auto a = c.shape_index(shape);
  if (!a) invalid("unknown shape '" + shape + "'");
  const json empty = json::object();
  const json& kids = doc.contains("children") ? doc["children"] : empty;
  if (!kids.is_object()) invalid("\"children\" must be an object");
  if (kids.size() != c.arity(*a)) invalid("node " + shape + " needs one child per position");
  std::vector<Tree> children;
  for (const auto& u : c.positions(*a)) {
    if (!kids.contains(u)) invalid("node " + shape + " has no child at position '" + u + "'");
    children.push_back(tree_from_json(c, kids[u], values));
  }
  return Tree::node(*a, std::move(children));
}

json tree_to_json(const SetContainer& c, const Tree& t, const std::vector<std::string>& values) {
  if (t.is_leaf()) return {{"leaf", values.at(t.value())}};
  json kids = json::object();
  const auto& pos = c.positions(t.shape());
  for (std::size_t i = 0; i < pos.size(); ++i) kids[pos[i]] = tree_to_json(c, t.children()[i], values);
  return {{"node", c.shape(t.shape())}, {"children", kids}};
}

void load_constants(Pca& pca, const json& doc, std::uint64_t fuel) {
  if (!doc.is_object() || !doc.contains("constants")) return;
  const json& cs = doc["constants"];
  if (cs.is_array()) {
    for (const auto& name : string_array(cs, "\"constants\"")) pca.declare(name);
    return;
  }
  if (!cs.is_object()) bad("\"constants\" must be an array of names or an object of rule tables");
  // Declare first so rules may mention any constant in the file.
  for (const auto& [name, _] : cs.items()) pca.declare(name);
  for (const auto& [name, rules] : cs.items()) {
    if (!rules.is_array()) bad("rules of " + name + " must be an array of [arg, result] pairs");
    const Term c = pca.constant(name);
    for (const auto& r : rules) {
      auto two = string_array(r, "rule of " + name);
      if (two.size() != 2) bad("rules of " + name + " must be [arg, result] pairs");
      pca.add_rule(c, pca.parse(two[0]), pca.parse(two[1]), fuel);
    }
  }
}

ExtWeihrauchPredicate weihrauch_from_json(const Pca& pca, const json& doc, std::uint64_t fuel) {
  const json& entries = field(doc, "entries", "predicate file");
  if (!entries.is_array()) bad("\"entries\" must be an array");
  std::vector<ExtWeihrauchPredicate::RawEntry> raw;
  for (const auto& e : entries) {
    const Term r = pca.parse(as_string(field(e, "instance", "entry"), "instance"));
    const json& fams = field(e, "families", "entry");
    if (!fams.is_array()) bad("\"families\" must be an array of arrays");
    std::vector<std::vector<Term>> families;
    for (const auto& fam : fams) {
      std::vector<Term> terms;
      for (const auto& src : string_array(fam, "family")) terms.push_back(pca.parse(src));
      families.push_back(std::move(terms));
    }
    raw.emplace_back(r, std::move(families));
  }
  return ExtWeihrauchPredicate::build(pca, raw, fuel);
}

PartitionedAssemblyPredicate assembly_from_json(const Pca& pca, const json& doc, std::uint64_t fuel) {
  const auto elements = string_array(field(doc, "elements", "assembly file"), "\"elements\"");
  const json& rho = field(doc, "rho", "assembly file");
  const json empty = json::object();
  const json& pred = doc.contains("pred") ? doc["pred"] : empty;
  if (!rho.is_object() || !pred.is_object()) bad("\"rho\" and \"pred\" must be objects");
  const std::set<std::string> known(elements.begin(), elements.end());
  for (const auto* m : {&rho, &pred}) {
    for (const auto& [k, _] : m->items()) {
      if (!known.count(k)) bad("assembly mentions unknown element '" + k + "'");
    }
  }
  std::vector<PartitionedAssemblyPredicate::RawElement> raw;
  for (const auto& x : elements) {
    if (!rho.contains(x)) bad("element '" + x + "' has no realizer");
    std::vector<Term> p;
    if (pred.contains(x)) {
      for (const auto& src : string_array(pred[x], "pred of '" + x + "'")) p.push_back(pca.parse(src));
    }
    raw.emplace_back(x, pca.parse(as_string(rho[x], "rho of '" + x + "'")), std::move(p));
  }
  return PartitionedAssemblyPredicate::build(pca, raw, fuel);
}

std::vector<Term> terms_from_json(const Pca& pca, const json& doc) {
  const json& arr = doc.is_object() ? field(doc, "set", "realizer set file") : doc;
  std::vector<Term> out;
  for (const auto& src : string_array(arr, "realizer set")) out.push_back(pca.parse(src));
  return out;
}

json theorem_report_to_json(const TheoremReport& r, bool timings) {
  json out = {{"theorem", r.theorem}, {"checked", r.checked}, {"failed", r.failed}, {"failures", r.failures},
              {"seed", r.seed},       {"mode", r.mode},       {"complete", r.complete}};
  if (timings) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

json suite_report_to_json(const SuiteReport& r) {
  return {{"suite", r.suite}, {"cases", r.cases}, {"failed", r.failed}, {"failures", r.failures}, {"seed", r.seed}};
}

json weihrauch_report_to_json(const WeihrauchReport& r) {
  json obligations = json::array();
  for (const auto& o : r.obligations) {
    obligations.push_back({{"description", o.description}, {"status", std::string(to_string(o.status))}});
  }
  json path = json::array();
  if (r.witness) path.push_back(r.obligations[*r.witness].description);
  return {{"verdict", std::string(to_string(r.verdict))}, {"path", path}, {"obligations", obligations}};
}

json certificate_to_json(const Certificate& c) {
  json out = {{"term", c.term.str()}, {"kind", c.leaf ? "leaf" : "node"}, {"payload", c.payload.str()}};
  if (!c.leaf) {
    json kids = json::array();
    for (const auto& ch : c.children) {
      kids.push_back({{"answer", ch.answer.str()}, {"certificate", certificate_to_json(ch.certificate)}});
    }
    out["alternative"] = c.alternative;
    out["children"] = kids;
  }
  return out;
}

json membership_to_json(const MembershipVerdict& v) {
  json out = {{"verdict", std::string(to_string(v.kind))}, {"path", v.path}};
  if (!v.reason.empty()) out["reason"] = v.reason;
  if (v.certificate) out["certificate"] = certificate_to_json(*v.certificate);
  return out;
}

}  // namespace oramod::io
