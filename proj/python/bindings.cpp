#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oramod/cli.hpp"
#include "oramod/error.hpp"
#include "oramod/frame.hpp"
#include "oramod/nucleus.hpp"
#include "oramod/oracle.hpp"
#include "oramod/pca.hpp"
#include "oramod/sheaf.hpp"
#include "oramod/theorems.hpp"
#include "oramod/trees.hpp"

namespace py = pybind11;
using namespace oramod;

namespace {

using Labels = std::vector<std::string>;
using Table = std::vector<std::uint32_t>;
// (label, extent, pred); a missing extent means top.
using QuerySpec = std::tuple<std::string, std::optional<Labels>, Labels>;

Frame make_frame(const Labels& elements, const std::vector<LabelPair>& le) {
  return Frame::downsets(Poset::from_relation(elements, le));
}

std::vector<Element> elements_of(const Frame& f, const Table& t) {
  if (t.size() != f.size()) throw Error(ErrorCode::ArityError, "table needs one entry per element");
  std::vector<Element> out;
  for (auto i : t) out.push_back(f.at(i));
  return out;
}

IndexedPropContainer container(const Frame& f, const std::vector<QuerySpec>& qs) {
  std::vector<Query> out;
  for (const auto& [label, extent, pred] : qs) {
    out.push_back({label, extent ? f.from_labels(*extent) : f.top(), f.from_labels(pred)});
  }
  IndexedPropContainer c(f, std::move(out));
  if (!validate_container(c)) throw Error(ErrorCode::InvalidContainer, "some pred is not below its extent");
  return c;
}

Table table_of(const Nucleus& j) { return {j.table().begin(), j.table().end()}; }

py::dict theorem_dict(const TheoremReport& r) {
  py::dict d;
  d["theorem"] = r.theorem;
  d["checked"] = r.checked;
  d["failed"] = r.failed;
  d["failures"] = r.failures;
  d["seed"] = r.seed;
  d["mode"] = r.mode;
  d["complete"] = r.complete;
  return d;
}

}  // namespace

PYBIND11_MODULE(_oramod, m) {
  m.doc() = "Finite models of oracle modalities, nuclei and realizability";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<Error>(m, "OramodError", PyExc_ValueError);

  py::class_<Frame>(m, "Frame")
      .def(py::init(&make_frame), py::arg("elements"), py::arg("le") = std::vector<LabelPair>{})
      .def("__len__", &Frame::size)
      .def_property_readonly("top", &Frame::top_index)
      .def("labels", [](const Frame& f, std::size_t i) { return f.labels_of(f.at(i)); })
      .def("index", [](const Frame& f, const Labels& l) { return f.from_labels(l).index(); })
      .def("render", [](const Frame& f, std::size_t i) { return f.render(f.at(i)); })
      .def("leq", [](const Frame& f, std::size_t a, std::size_t b) { return f.leq(f.at(a), f.at(b)); })
      .def("meet", [](const Frame& f, std::size_t a, std::size_t b) { return f.meet(f.at(a), f.at(b)).index(); })
      .def("join", [](const Frame& f, std::size_t a, std::size_t b) { return f.join(f.at(a), f.at(b)).index(); })
      .def("implies", [](const Frame& f, std::size_t a, std::size_t b) { return f.implies(f.at(a), f.at(b)).index(); })
      .def("neg", [](const Frame& f, std::size_t a) { return f.neg(f.at(a)).index(); })
      .def("describe", [](const Frame& f, const Table& t) { return describe_table(f, t); });

  m.def("enumerate_nuclei", [](const Frame& f) {
    std::vector<Table> out;
    for (const auto& j : enumerate_nuclei(f)) out.push_back(table_of(j));
    return out;
  });
  m.def("validate_nucleus", [](const Frame& f, const Table& t) {
    const auto r = validate_nucleus(f, elements_of(f, t));
    std::vector<std::string> laws;
    for (const auto& v : r.violations) laws.emplace_back(to_string(v.law));
    return py::make_tuple(r.valid, laws);
  }, "Returns (valid, names of the violated laws).");
  m.def("sup_nuclei", [](const Frame& f, const std::vector<Table>& ts) {
    std::vector<Nucleus> js;
    for (const auto& t : ts) js.push_back(Nucleus::from_table(f, elements_of(f, t)));
    return table_of(sup_nuclei(f, js));
  });

  m.def("oracle_modality", [](const Frame& f, const std::vector<QuerySpec>& qs) {
    return table_of(oracle_modality(container(f, qs)));
  }, py::arg("frame"), py::arg("queries"), "queries: (label, extent labels or None for top, pred labels).");
  m.def("oracle_modality_bruteforce", [](const Frame& f, const std::vector<QuerySpec>& qs) {
    return table_of(oracle_modality_bruteforce(container(f, qs)));
  });
  m.def("lem_oracle", [](const Frame& f) { return table_of(oracle_modality(lem_container(f))); });
  m.def("retract", [](const Frame& f, const Table& t) {
    return table_of(oracle_modality(pred_of_nucleus(Nucleus::from_table(f, elements_of(f, t)))));
  }, "oracle(pred(j)) for a nucleus table j.");

  m.def("verify", [](const Frame& f, const std::vector<std::string>& theorems, std::uint64_t seed, std::size_t samples) {
    std::vector<Theorem> suite;
    for (const auto& id : theorems) {
      if (id == "all") {
        suite = all_theorems();
        break;
      }
      auto t = parse_theorem(id);
      if (!t) throw Error(ErrorCode::InvalidInput, "unknown theorem '" + id + "'");
      suite.push_back(*t);
    }
    VerifyBudget b;
    b.seed = seed;
    b.samples = samples;
    py::list out;
    for (const auto& r : verify_theorems(f, suite, b)) out.append(theorem_dict(r));
    return out;
  }, py::arg("frame"), py::arg("theorems") = std::vector<std::string>{"all"}, py::arg("seed") = 1,
        py::arg("samples") = 500);

  m.def("tree_suites", [](std::uint64_t seed, std::size_t cases, const std::vector<std::string>& only) {
    py::list out;
    for (const auto& r : run_tree_suites(seed, cases, {}, only)) {
      py::dict d;
      d["suite"] = r.suite;
      d["cases"] = r.cases;
      d["failed"] = r.failed;
      d["failures"] = r.failures;
      d["seed"] = r.seed;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 1, py::arg("cases") = 1000, py::arg("only") = std::vector<std::string>{});

  m.def("sheaf_classify", [](const std::vector<bool>& p, std::size_t xsize) {
    const auto c = sheaf_classify(p, xsize);
    py::dict d;
    d["kind"] = std::string(to_string(c.kind));
    d["is_sheaf"] = c.is_sheaf;
    d["violated"] = c.violated ? py::object(py::str(std::string(to_string(*c.violated)))) : py::none();
    d["structure"] = c.structure ? py::object(py::cast(c.structure->table)) : py::none();
    return d;
  });

  py::class_<Pca>(m, "Pca")
      .def(py::init<>())
      .def("declare", [](Pca& p, const std::string& name) { p.declare(name); })
      .def("add_rule", [](Pca& p, const std::string& c, const std::string& arg, const std::string& result,
                          std::uint64_t fuel) { p.add_rule(p.constant(c), p.parse(arg), p.parse(result), fuel); },
           py::arg("constant"), py::arg("arg"), py::arg("result"), py::arg("fuel") = Pca::kDefaultFuel)
      .def("normalize", [](const Pca& p, const std::string& src) { return p.parse(src).str(); })
      .def("eval", [](const Pca& p, const std::string& src, std::uint64_t fuel) {
        const auto r = p.eval(p.parse(src), fuel);
        return py::make_tuple(r.value ? py::object(py::str(r.value->str())) : py::none(), r.steps);
      }, py::arg("term"), py::arg("fuel") = Pca::kDefaultFuel, "Returns (normal form or None, steps).");

  m.def("run", [](const std::vector<std::string>& args) {
    const auto r = cli::run(args);
    return py::make_tuple(r.exit_code, r.output, r.diagnostics);
  }, "Runs the command-line front end in process; returns (exit code, report, diagnostics).");
}
