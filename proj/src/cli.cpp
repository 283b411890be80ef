#include "oramod/cli.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "oramod/error.hpp"
#include "oramod/io.hpp"
#include "oramod/nucleus.hpp"
#include "oramod/oracle.hpp"
#include "oramod/pca.hpp"
#include "oramod/realizers.hpp"
#include "oramod/theorems.hpp"
#include "oramod/trees.hpp"

namespace oramod::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct Options {
  std::string format = "text";
  std::string output;
  bool timings = false;
  std::uint64_t seed = 1;

  std::string poset;
  std::vector<std::string> nuclei;
  std::vector<std::string> containers;

  std::string theorem;
  std::size_t samples = 500;
  std::size_t max_shapes = 2;
  std::size_t budget = 0;
  bool has_budget = false;
  std::size_t time_limit_ms = 0;

  std::size_t cases = 1000;
  std::vector<std::string> suites;
  std::string tree;

  std::string term;
  std::string constants;
  std::uint64_t fuel = Pca::kDefaultFuel;
  std::size_t depth = 8;
  std::string f, g, l1, l2, pred, s;
};

struct Outcome {
  json body = json::object();
  std::vector<std::string> text;
  int status = kPass;
  /// (checks, failed) for commands that check something.
  std::optional<std::pair<std::size_t, std::size_t>> summary;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

fs::path dir_of(const std::string& path) { return fs::path(path).parent_path(); }

std::vector<Element> as_elements(const Frame& frame, std::span<const std::uint32_t> table) {
  std::vector<Element> out;
  for (auto i : table) out.push_back(frame.at(i));
  return out;
}

/// --poset wins; otherwise the frame named inside an input file.
Frame frame_for(const Options& o, const std::optional<Poset>& fallback) {
  if (!o.poset.empty()) return Frame::downsets(io::poset_from_json(io::load_json(o.poset)));
  if (fallback) return Frame::downsets(*fallback);
  usage("no frame given: pass --poset or name a \"frame\" in the input file");
}

bool same_poset(const Poset& a, const Poset& b) {
  return a.labels() == b.labels() && a.strict_pairs() == b.strict_pairs();
}

std::string join_lines(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

// frame

Outcome frame_build(const Options& o) {
  Outcome out;
  const Poset poset = io::poset_from_json(io::load_json(o.poset));
  const Frame frame = Frame::downsets(poset);
  json elements = json::array();
  out.text.push_back("poset: " + std::to_string(poset.size()) + " elements, frame: " +
                     std::to_string(frame.size()) + " elements");
  for (auto e : frame.elements()) {
    elements.push_back(io::element_to_json(frame, e));
    out.text.push_back("  " + std::to_string(e.index()) + "  " + frame.render(e));
  }
  out.body = {{"poset", io::poset_to_json(poset)}, {"size", frame.size()}, {"elements", elements}};
  // Covering pairs are cubic in the carrier; skip them on big frames.
  if (frame.size() <= 128) {
    json covers = json::array();
    std::vector<std::string> shown;
    for (std::uint32_t a = 0; a < frame.size(); ++a) {
      for (std::uint32_t b = 0; b < frame.size(); ++b) {
        if (a == b || !frame.leq_index(a, b)) continue;
        bool between = false;
        for (std::uint32_t c = 0; c < frame.size() && !between; ++c) {
          between = c != a && c != b && frame.leq_index(a, c) && frame.leq_index(c, b);
        }
        if (between) continue;
        covers.push_back({io::element_to_json(frame, frame.at(a)), io::element_to_json(frame, frame.at(b))});
        shown.push_back(frame.render(frame.at(a)) + " < " + frame.render(frame.at(b)));
      }
    }
    out.body["covers"] = covers;
    out.text.push_back("covers: " + join_lines(shown, ", "));
  }
  return out;
}

// nuclei

Outcome nuclei_enumerate(const Options& o) {
  Outcome out;
  const Frame frame = frame_for(o, std::nullopt);
  const auto all = enumerate_nuclei(frame);
  json list = json::array();
  out.text.push_back(std::to_string(all.size()) + " nuclei");
  for (const auto& j : all) {
    list.push_back({{"table", io::table_to_json(frame, j.table())}, {"fixed_points", fixed_points_frame(j).frame.size()}});
    out.text.push_back("  " + describe_table(frame, j.table()));
  }
  out.body = {{"count", all.size()}, {"nuclei", list}};
  return out;
}

struct LoadedTable {
  Frame frame;
  std::vector<std::uint32_t> table;
};

std::vector<LoadedTable> load_tables(const Options& o) {
  if (o.nuclei.empty()) usage("pass at least one --nucleus");
  std::vector<io::NucleusFile> files;
  for (const auto& path : o.nuclei) files.push_back(io::nucleus_file_from_json(io::load_json(path), dir_of(path)));
  const Frame frame = frame_for(o, files.front().poset);
  std::vector<LoadedTable> out;
  for (const auto& f : files) out.push_back({frame, io::table_from_json(frame, f.table)});
  return out;
}

Outcome nuclei_validate(const Options& o) {
  Outcome out;
  const auto tables = load_tables(o);
  json results = json::array();
  std::size_t failed = 0;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& [frame, table] = tables[i];
    const auto elems = as_elements(frame, table);
    const auto report = validate_nucleus(frame, elems);
    json violations = json::array();
    out.text.push_back(o.nuclei[i] + ": " + describe_table(frame, table) + (report.valid ? "  valid" : "  INVALID"));
    for (const auto& v : report.violations) {
      std::vector<std::string> w;
      for (auto e : v.witness) w.push_back(frame.render(e));
      violations.push_back({{"law", std::string(to_string(v.law))}, {"witness", w}});
      out.text.push_back("    " + std::string(to_string(v.law)) + " fails at " + join_lines(w, ", "));
    }
    if (!report.valid) ++failed;
    results.push_back({{"file", o.nuclei[i]}, {"table", io::table_to_json(frame, table)}, {"valid", report.valid},
                       {"violations", violations}});
  }
  out.body = {{"results", results}};
  out.summary = {{tables.size(), failed}};
  out.status = failed ? kCheckFailed : kPass;
  return out;
}

Outcome nuclei_sup(const Options& o) {
  Outcome out;
  const auto tables = load_tables(o);
  const Frame& frame = tables.front().frame;
  std::vector<Nucleus> js;
  for (const auto& t : tables) js.push_back(Nucleus::from_table(frame, as_elements(frame, t.table)));
  const Nucleus sup = sup_nuclei(frame, js);
  out.body = {{"inputs", js.size()}, {"sup", io::table_to_json(frame, sup.table())}};
  out.text.push_back("sup of " + std::to_string(js.size()) + " nuclei: " + describe_table(frame, sup.table()));
  return out;
}

// oracle

struct LoadedContainers {
  Frame frame;
  std::vector<IndexedPropContainer> containers;
};

LoadedContainers load_containers(const Options& o) {
  std::vector<io::ContainerFile> files;
  for (const auto& path : o.containers) files.push_back(io::container_file_from_json(io::load_json(path), dir_of(path)));
  std::optional<Poset> fallback = files.front().poset;
  const Frame frame = frame_for(o, fallback);
  if (o.poset.empty()) {
    for (std::size_t i = 1; i < files.size(); ++i) {
      if (files[i].poset && !same_poset(*files[i].poset, frame.poset())) {
        throw Error(ErrorCode::FrameMismatch, o.containers[i] + " names a different frame");
      }
    }
  }
  LoadedContainers out{frame, {}};
  for (const auto& f : files) out.containers.push_back(io::container_from_json(frame, f.doc));
  return out;
}

Outcome oracle_compute(const Options& o) {
  Outcome out;
  if (o.containers.size() != 1) usage("oracle compute takes exactly one --container");
  const auto [frame, cs] = load_containers(o);
  const auto& c = cs.front();
  const Nucleus j = oracle_modality(c);
  const auto inst = instance_prenucleus(c);
  out.body = {{"container", io::container_to_json(c)},
              {"instance", io::table_to_json(frame, inst.table)},
              {"oracle", io::table_to_json(frame, j.table())}};
  out.text.push_back("container: " + describe(c));
  out.text.push_back("single query: " + describe_table(frame, inst.table));
  out.text.push_back("oracle: " + describe_table(frame, j.table()));
  return out;
}

Outcome oracle_compare(const Options& o) {
  Outcome out;
  if (o.containers.empty() || o.containers.size() > 2) usage("oracle compare takes one or two --container");
  const auto [frame, cs] = load_containers(o);
  if (cs.size() == 1) {
    const Nucleus a = oracle_modality(cs[0]);
    const Nucleus b = oracle_modality_bruteforce(cs[0]);
    const bool agree = a == b;
    out.body = {{"kleene", io::table_to_json(frame, a.table())},
                {"bruteforce", io::table_to_json(frame, b.table())},
                {"agree", agree}};
    out.text.push_back("kleene:     " + describe_table(frame, a.table()));
    out.text.push_back("bruteforce: " + describe_table(frame, b.table()));
    out.text.push_back(agree ? "agree" : "DISAGREE");
    out.summary = {{1, agree ? 0 : 1}};
    out.status = agree ? kPass : kCheckFailed;
    return out;
  }
  const Nucleus a = oracle_modality(cs[0]);
  const Nucleus b = oracle_modality(cs[1]);
  const bool ab = nucleus_leq(a, b);
  const bool ba = nucleus_leq(b, a);
  const bool ri = instance_reducible(cs[0], cs[1]);
  const bool ir = instance_reducible(cs[1], cs[0]);
  out.body = {{"left", io::table_to_json(frame, a.table())},
              {"right", io::table_to_json(frame, b.table())},
              {"left_leq_right", ab},
              {"right_leq_left", ba},
              {"left_instance_reducible", ri},
              {"right_instance_reducible", ir}};
  out.text.push_back("left:  " + describe_table(frame, a.table()));
  out.text.push_back("right: " + describe_table(frame, b.table()));
  out.text.push_back(std::string("left <= right: ") + (ab ? "yes" : "no") + ", right <= left: " + (ba ? "yes" : "no"));
  out.text.push_back(std::string("left instance reducible to right: ") + (ri ? "yes" : "no") +
                     ", right to left: " + (ir ? "yes" : "no"));
  return out;
}

// verify

Outcome verify(const Options& o) {
  Outcome out;
  std::vector<Theorem> suite;
  if (o.theorem == "all") {
    suite = all_theorems();
  } else if (auto t = parse_theorem(o.theorem)) {
    suite.push_back(*t);
  } else {
    usage("unknown theorem '" + o.theorem + "'");
  }
  VerifyBudget budget;
  budget.seed = o.seed;
  budget.samples = o.samples;
  budget.max_shapes = o.max_shapes;
  if (o.has_budget) budget.max_instances = o.budget;
  if (o.time_limit_ms) budget.time_limit = std::chrono::milliseconds(o.time_limit_ms);

  std::optional<Poset> fallback;
  std::vector<io::NucleusFile> files;
  for (const auto& path : o.nuclei) files.push_back(io::nucleus_file_from_json(io::load_json(path), dir_of(path)));
  if (!files.empty()) fallback = files.front().poset;
  const Frame frame = frame_for(o, fallback);
  for (const auto& f : files) budget.extra_tables.push_back(io::table_from_json(frame, f.table));

  const auto reports = verify_theorems(frame, suite, budget);
  json list = json::array();
  std::size_t checks = 0;
  std::size_t failed = 0;
  bool incomplete = false;
  for (const auto& r : reports) {
    list.push_back(io::theorem_report_to_json(r, o.timings));
    checks += r.checked;
    failed += r.failed;
    incomplete = incomplete || !r.complete;
    std::ostringstream line;
    line << r.theorem << ": " << r.checked - r.failed << "/" << r.checked << " pass (" << r.mode
         << (r.complete ? "" : ", incomplete") << ")";
    out.text.push_back(line.str());
    for (const auto& msg : r.failures) out.text.push_back("    " + msg);
  }
  out.body = {{"reports", list}};
  out.summary = {{checks, failed}};
  out.status = failed ? kCheckFailed : incomplete ? kUnknown : kPass;
  return out;
}

// trees

Outcome trees_suite(const Options& o) {
  Outcome out;
  const auto reports = run_tree_suites(o.seed, o.cases, {}, o.suites);
  json list = json::array();
  std::size_t checks = 0;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    list.push_back(io::suite_report_to_json(r));
    checks += r.cases;
    failed += r.failed;
    out.text.push_back(r.suite + ": " + std::to_string(r.cases - r.failed) + "/" + std::to_string(r.cases) + " pass");
    for (const auto& msg : r.failures) out.text.push_back("    " + msg);
  }
  out.body = {{"reports", list}};
  out.summary = {{checks, failed}};
  out.status = failed ? kCheckFailed : kPass;
  return out;
}

Outcome trees_check(const Options& o) {
  Outcome out;
  if (o.containers.size() != 1) usage("trees check takes exactly one --container");
  const SetContainer c = io::set_container_from_json(io::load_json(o.containers.front()));
  const json doc = io::load_json(o.tree);
  std::vector<std::string> values;
  if (doc.is_object() && doc.contains("values")) {
    for (const auto& v : doc["values"]) values.push_back(v.get<std::string>());
  }
  const json& tree_doc = doc.is_object() && doc.contains("tree") ? doc["tree"] : doc;
  const Tree t = io::tree_from_json(c, tree_doc, values);
  validate_tree(c, t, values.size());
  const auto members = member_set(c, t, values.size());
  std::vector<std::string> member_labels;
  for (std::size_t x = 0; x < values.size(); ++x) {
    if ((members >> x) & 1U) member_labels.push_back(values[x]);
  }
  const auto eq = equifoliate(c, t, values.size());
  out.body = {{"tree", io::tree_to_json(c, t, values)},
              {"values", values},
              {"members", member_labels},
              {"equifoliate", eq.equifoliate},
              {"depth", t.depth()}};
  std::vector<std::string> legend;
  for (std::size_t x = 0; x < values.size(); ++x) legend.push_back(std::to_string(x) + "=" + values[x]);
  out.text.push_back("tree: " + render_tree(c, t));
  out.text.push_back("values: " + join_lines(legend, ", "));
  out.text.push_back("members: {" + join_lines(member_labels, ", ") + "}");
  if (eq.equifoliate) {
    const auto d = delta(c, EquiTree::certify(c, t, values.size()));
    const std::string dv = d.kind == CanonicalSheafElement::Kind::Collapsed ? "collapsed" : values.at(d.value);
    out.body["delta"] = dv;
    out.text.push_back("equifoliate, delta = " + dv);
  } else {
    const auto& w = *eq.witness;
    std::vector<std::size_t> path = w.path;
    out.body["witness"] = {{"value", values.at(w.x)}, {"in", w.u}, {"not_in", w.v}, {"path", path}};
    out.text.push_back("not equifoliate: " + values.at(w.x) + " is a member below position " + std::to_string(w.u) +
                       " but not below position " + std::to_string(w.v));
  }
  out.summary = {{1, eq.equifoliate ? 0 : 1}};
  out.status = eq.equifoliate ? kPass : kCheckFailed;
  return out;
}

// realizability

Outcome pca_eval(const Options& o) {
  Outcome out;
  Pca pca;
  if (!o.constants.empty()) io::load_constants(pca, io::load_json(o.constants), o.fuel);
  const Term t = pca.parse(o.term);
  const auto r = pca.eval(t, o.fuel);
  out.body = {{"term", t.str()}, {"fuel", o.fuel}, {"steps", r.steps}, {"defined", r.defined()}};
  out.body["value"] = r.value ? json(r.value->str()) : json(nullptr);
  if (r.value) {
    out.text.push_back(t.str() + "  ~>  " + r.value->str() + "  (" + std::to_string(r.steps) + " steps)");
  } else {
    out.text.push_back(t.str() + " has no normal form within fuel " + std::to_string(o.fuel));
  }
  out.status = r.value ? kPass : kUnknown;
  return out;
}

Outcome weihrauch_check(const Options& o) {
  Outcome out;
  Pca pca;
  const json fdoc = io::load_json(o.f);
  const json gdoc = io::load_json(o.g);
  io::load_constants(pca, fdoc, o.fuel);
  io::load_constants(pca, gdoc, o.fuel);
  const auto f = io::weihrauch_from_json(pca, fdoc, o.fuel);
  const auto g = io::weihrauch_from_json(pca, gdoc, o.fuel);
  const Term l1 = pca.parse(o.l1);
  const Term l2 = pca.parse(o.l2);
  const auto rep = check_weihrauch(pca, f, g, l1, l2, o.fuel);
  out.body = io::weihrauch_report_to_json(rep);
  out.body["l1"] = l1.str();
  out.body["l2"] = l2.str();
  out.text.push_back("verdict: " + std::string(to_string(rep.verdict)));
  std::size_t failed = 0;
  for (std::size_t i = 0; i < rep.obligations.size(); ++i) {
    const auto& ob = rep.obligations[i];
    if (ob.status != ObligationStatus::Holds) ++failed;
    out.text.push_back(std::string(rep.witness == i ? "  > " : "    ") + std::string(to_string(ob.status)) + "  " +
                       ob.description);
  }
  out.summary = {{rep.obligations.size(), failed}};
  out.status = rep.verdict == Verdict::Accepted ? kPass : rep.verdict == Verdict::Rejected ? kCheckFailed : kUnknown;
  return out;
}

void render_certificate(const Certificate& c, const std::string& indent, std::vector<std::string>& lines) {
  if (c.leaf) {
    lines.push_back(indent + "leaf " + c.payload.str());
    return;
  }
  lines.push_back(indent + "node " + c.payload.str() + " (alternative " + std::to_string(c.alternative) + ")");
  for (const auto& ch : c.children) {
    lines.push_back(indent + "  answer " + ch.answer.str() + ":");
    render_certificate(ch.certificate, indent + "    ", lines);
  }
}

Outcome oracle_tree_check(const Options& o) {
  Outcome out;
  Pca pca;
  const json pdoc = io::load_json(o.pred);
  const json sdoc = io::load_json(o.s);
  io::load_constants(pca, pdoc, o.fuel);
  io::load_constants(pca, sdoc, o.fuel);
  const RealizerSet s = normalized_set(pca, io::terms_from_json(pca, sdoc), o.fuel);
  const Term t = pca.parse(o.term);
  const MembershipBudget budget{o.depth, o.fuel};

  MembershipVerdict v;
  std::string kind;
  if (pdoc.is_object() && pdoc.contains("entries")) {
    kind = "weihrauch";
    const auto f = io::weihrauch_from_json(pca, pdoc, o.fuel);
    v = check_oracle_membership_w(pca, f, s, t, budget);
    if (v.certificate && !recheck_certificate_w(pca, f, s, t, *v.certificate, o.fuel)) {
      throw Error(ErrorCode::InternalInvariantViolation, "membership certificate failed its re-check");
    }
  } else if (pdoc.is_object() && pdoc.contains("elements")) {
    kind = "assembly";
    const auto p = io::assembly_from_json(pca, pdoc, o.fuel);
    v = check_oracle_membership_asm(pca, p, s, t, budget);
    if (v.certificate && !recheck_certificate_asm(pca, p, s, t, *v.certificate, o.fuel)) {
      throw Error(ErrorCode::InternalInvariantViolation, "membership certificate failed its re-check");
    }
  } else {
    usage(o.pred + " is neither a predicate file (\"entries\") nor an assembly file (\"elements\")");
  }
  out.body = io::membership_to_json(v);
  out.body["predicate"] = kind;
  out.text.push_back("verdict: " + std::string(to_string(v.kind)));
  if (!v.reason.empty()) out.text.push_back("reason: " + v.reason);
  for (const auto& step : v.path) out.text.push_back("  via " + step);
  if (v.certificate) render_certificate(*v.certificate, "  ", out.text);
  const bool member = v.kind == MembershipKind::Member;
  out.summary = {{1, member ? 0 : 1}};
  out.status = member ? kPass : v.kind == MembershipKind::NotMember ? kCheckFailed : kUnknown;
  return out;
}

// Rendering.

std::string render(const Options& o, const std::string& command, const Outcome& out, double elapsed_ms) {
  if (o.format == "json") {
    json header = {{"command", command}, {"seed", o.seed}, {"version", kVersion}};
    if (o.timings) header["elapsed_ms"] = elapsed_ms;
    json doc = {{"header", header}, {"body", out.body}, {"exit_status", out.status}};
    if (out.summary) doc["summary"] = {{"checks", out.summary->first}, {"failed", out.summary->second}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "oramod " << kVersion << "  " << command << "  seed " << o.seed;
  if (o.timings) s << "  " << elapsed_ms << " ms";
  s << "\n";
  for (const auto& line : out.text) s << line << "\n";
  if (out.summary) {
    s << out.summary->first << " checks";
    if (out.summary->second) s << ", " << out.summary->second << " failed";
    s << "\n";
  }
  return s.str();
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kUnknown;
    case ErrorCode::InternalInvariantViolation: return kInternal;
    default: return kUsage;
  }
}

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", o.output, "Write the report to this file");
  cmd->add_flag("--timings", o.timings, "Include wall-clock times (breaks byte-identical output)");
  cmd->add_option("--seed", o.seed, "Seed for all randomness");
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Finite models of oracle modalities, nuclei and realizability", "oramod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string command;
  std::function<Outcome(const Options&)> handler;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  std::function<Outcome(const Options&)> fn) {
    CLI::App* cmd = parent->add_subcommand(name, desc);
    common_flags(cmd, o);
    cmd->callback([&, cmd, fn] {
      command = (cmd->get_parent() == &app ? "" : cmd->get_parent()->get_name() + " ") + cmd->get_name();
      handler = fn;
    });
    return cmd;
  };
  auto group = [&](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };

  auto* frame = group("frame", "Downset frames of finite posets");
  leaf(frame, "build", "Build and list the frame of a poset", frame_build)
      ->add_option("--poset", o.poset, "Poset file")->required();

  auto* nuclei = group("nuclei", "Nuclei on a frame");
  leaf(nuclei, "enumerate", "List every nucleus", nuclei_enumerate)
      ->add_option("--poset", o.poset, "Poset file")->required();
  for (auto [name, desc, fn] : {std::tuple{"validate", "Check nucleus files against the laws", nuclei_validate},
                                std::tuple{"sup", "Least nucleus above the given ones", nuclei_sup}}) {
    auto* cmd = leaf(nuclei, name, desc, fn);
    cmd->add_option("--poset", o.poset, "Poset file (defaults to the nucleus file's frame)");
    cmd->add_option("--nucleus", o.nuclei, "Nucleus file")->required();
  }

  auto* oracle = group("oracle", "Oracle modalities of containers");
  for (auto [name, desc, fn] :
       {std::tuple{"compute", "Oracle modality of a container", oracle_compute},
        std::tuple{"compare", "Compare two implementations, or two containers", oracle_compare}}) {
    auto* cmd = leaf(oracle, name, desc, fn);
    cmd->add_option("--poset", o.poset, "Poset file (defaults to the container's frame)");
    cmd->add_option("--container", o.containers, "Container file")->required();
  }

  {
    auto* cmd = leaf(&app, "verify", "Check the theorems relating containers and nuclei", verify);
    cmd->add_option("theorem", o.theorem, "retraction|forcing|oracle-leq|sup|least-above|surjection|"
                                          "instance-vs-forcing|all")
        ->required();
    cmd->add_option("--poset", o.poset, "Poset file");
    cmd->add_option("--nucleus", o.nuclei, "Extra table for the retraction check");
    cmd->add_option("--samples", o.samples, "Random instances when the exhaustive family is too large");
    cmd->add_option("--max-shapes", o.max_shapes, "Queries per container in exhaustive families");
    cmd->add_option("--budget", o.budget, "Cap on checked instances per theorem")
        ->each([&](const std::string&) { o.has_budget = true; });
    cmd->add_option("--time-limit", o.time_limit_ms, "Per-theorem time limit in ms");
  }

  auto* trees = group("trees", "Oracle computation trees over set containers");
  {
    auto* cmd = leaf(trees, "suite", "Run the seeded tree property suites", trees_suite);
    cmd->add_option("--cases", o.cases, "Cases per suite");
    cmd->add_option("--suite", o.suites, "Run only this suite");
    auto* chk = leaf(trees, "check", "Members, equifoliation and delta of one tree", trees_check);
    chk->add_option("--container", o.containers, "Set-container file")->required();
    chk->add_option("--tree", o.tree, "Tree file")->required();
  }

  auto* pca = group("pca", "Combinatory algebra");
  {
    auto* cmd = leaf(pca, "eval", "Reduce a term to normal form", pca_eval);
    cmd->add_option("--term", o.term, "Term source")->required();
    cmd->add_option("--fuel", o.fuel, "Reduction steps");
    cmd->add_option("--constants", o.constants, "File with a \"constants\" field");
  }

  auto* weihrauch = group("weihrauch", "Extended Weihrauch predicates");
  {
    auto* cmd = leaf(weihrauch, "check", "Check supplied reducers l1, l2 for f <= g", weihrauch_check);
    cmd->add_option("--f", o.f, "Predicate file for f")->required();
    cmd->add_option("--g", o.g, "Predicate file for g")->required();
    cmd->add_option("--l1", o.l1, "Instance reducer")->required();
    cmd->add_option("--l2", o.l2, "Solution reducer")->required();
    cmd->add_option("--fuel", o.fuel, "Reduction steps per evaluation");
  }

  auto* otree = group("oracle-tree", "Realizers of oracle computation trees");
  {
    auto* cmd = leaf(otree, "check", "Bounded membership of a realizer", oracle_tree_check);
    cmd->add_option("--pred", o.pred, "Predicate or assembly file")->required();
    cmd->add_option("--s", o.s, "Realizer set file")->required();
    cmd->add_option("--term", o.term, "Realizer source")->required();
    cmd->add_option("--fuel", o.fuel, "Reduction steps per evaluation");
    cmd->add_option("--depth", o.depth, "Tree depth bound");
  }

  // Hidden: exercises the internal-error path end to end.
  auto* selftest = group("selftest", "");
  selftest->group("");
  leaf(selftest, "invariant", "", [](const Options&) -> Outcome {
    throw Error(ErrorCode::InternalInvariantViolation, "selftest: deliberate invariant violation");
  });

  RunResult result;
  std::vector<std::string> argv_store{"oramod"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help or --version.
      const CLI::App* shown = &app;
      for (auto subs = app.get_subcommands(); !subs.empty(); subs = shown->get_subcommands()) shown = subs.front();
      result.output = dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : shown->help();
      return result;
    }
    result.exit_code = kUsage;
    result.diagnostics = std::string("usage error: ") + e.what() + "\nrun with --help for the grammar\n";
    return result;
  }

  if (command == "verify") command += " " + o.theorem;
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = handler(o);
  } catch (const Error& e) {
    result.exit_code = exit_for(e.code());
    if (result.exit_code != kInternal) {
      result.diagnostics = std::string("error: ") + e.what() + "\n";
      return result;
    }
    out = {};
    out.status = kInternal;
    out.body = {{"error", e.what()},
                {"bug_report", {{"arguments", args}, {"version", kVersion}, {"command", command}}}};
    out.text = {std::string("internal error: ") + e.what(), "please report this with the arguments below",
                "  oramod " + join_lines(args, " ")};
    result.diagnostics = std::string("internal error: ") + e.what() + "\n";
  } catch (const json::exception& e) {
    result.exit_code = kUsage;
    result.diagnostics = std::string("error: malformed input: ") + e.what() + "\n";
    return result;
  } catch (const std::exception& e) {
    out = {};
    out.status = kInternal;
    out.body = {{"error", e.what()},
                {"bug_report", {{"arguments", args}, {"version", kVersion}, {"command", command}}}};
    out.text = {std::string("internal error: ") + e.what(), "please report this with the arguments below",
                "  oramod " + join_lines(args, " ")};
    result.diagnostics = std::string("internal error: ") + e.what() + "\n";
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  result.exit_code = out.status;
  result.output = render(o, command, out, elapsed);
  if (!o.output.empty()) {
    try {
      io::write_text(o.output, result.output);
      result.wrote_file = true;
    } catch (const Error& e) {
      result.exit_code = kUsage;
      result.diagnostics += std::string("error: ") + e.what() + "\n";
    }
  }
  return result;
}

}  // namespace oramod::cli
