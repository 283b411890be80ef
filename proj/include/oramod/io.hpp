#pragma once

// JSON readers and writers for the on-disk formats: posets, nuclei,
// containers, set containers and trees, realizability predicates, and the
// report payloads emitted by the command-line runner.
//
// Readers throw InvalidInput (or a more specific code) on malformed
// documents and IoError when a file cannot be read.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "oramod/frame.hpp"
#include "oramod/nucleus.hpp"
#include "oramod/oracle.hpp"
#include "oramod/realizers.hpp"
#include "oramod/theorems.hpp"
#include "oramod/trees.hpp"

namespace oramod::io {

using json = nlohmann::json;

json load_json(const std::filesystem::path& path);
json parse_json(const std::string& text, const std::string& what);
void write_text(const std::filesystem::path& path, const std::string& text);

// Frames.

Poset poset_from_json(const json& doc);
json poset_to_json(const Poset& poset);
/// A poset reference is either an inline poset object or a path, resolved
/// against `base` when relative.
Poset poset_from_ref(const json& ref, const std::filesystem::path& base);

/// Accepts a label array ["p","q"] or its rendering "[p,q]".
Element element_from_json(const Frame& frame, const json& e);
json element_to_json(const Frame& frame, Element e);

// Nuclei.

/// Raw table indexed by carrier position. Every element must appear exactly
/// once as a key; the table is not checked against the nucleus laws.
std::vector<std::uint32_t> table_from_json(const Frame& frame, const json& table);
json table_to_json(const Frame& frame, std::span<const std::uint32_t> table);

struct NucleusFile {
  std::optional<Poset> poset;  // absent when the file has no "frame"
  json table;
};
NucleusFile nucleus_file_from_json(const json& doc, const std::filesystem::path& base);

// Containers.

struct ContainerFile {
  std::optional<Poset> poset;
  json doc;
};
ContainerFile container_file_from_json(const json& doc, const std::filesystem::path& base);
IndexedPropContainer container_from_json(const Frame& frame, const json& doc);
json container_to_json(const IndexedPropContainer& c);

// Set containers and trees. Tree values are labels; `values` maps value
// indices to labels and grows as new labels are met.

SetContainer set_container_from_json(const json& doc);
json set_container_to_json(const SetContainer& c);
Tree tree_from_json(const SetContainer& c, const json& doc, std::vector<std::string>& values);
json tree_to_json(const SetContainer& c, const Tree& t, const std::vector<std::string>& values);

// Realizability. An optional "constants" field declares constants, either as
// an array of names or as an object from name to [[arg, result], ...].

void load_constants(Pca& pca, const json& doc, std::uint64_t fuel);
ExtWeihrauchPredicate weihrauch_from_json(const Pca& pca, const json& doc, std::uint64_t fuel);
PartitionedAssemblyPredicate assembly_from_json(const Pca& pca, const json& doc, std::uint64_t fuel);
/// An array of term sources, or an object with a "set" array.
std::vector<Term> terms_from_json(const Pca& pca, const json& doc);

// Reports.

json theorem_report_to_json(const TheoremReport& r, bool timings);
json suite_report_to_json(const SuiteReport& r);
json weihrauch_report_to_json(const WeihrauchReport& r);
json certificate_to_json(const Certificate& c);
json membership_to_json(const MembershipVerdict& v);

}  // namespace oramod::io
