#pragma once

// Change impact, product-line variant assembly from a library of assured
// modules, and concern tracing.

#include "contractcase/argument.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace contractcase {

// "changed" means same id, different content_hash.
struct StructureDiff {
    std::set<Identifier> changed_specs, added_specs, removed_specs;
    std::set<Identifier> changed_refinements, added_refinements, removed_refinements;
    // Added, removed, or content-changed components.
    std::set<Identifier> changed_components;
    std::set<Identifier> added_components, removed_components;
    std::set<Identifier> changed_contracts, added_contracts, removed_contracts;
    // Owning component in the new structure, for added and changed contracts.
    std::map<Identifier, Identifier> new_contract_owner;

    bool empty() const;
    bool operator==(const StructureDiff&) const = default;
};

StructureDiff diff_structures(const SpecificationStructure& old_structure,
                              const SpecificationStructure& new_structure);

// Partitions the union of old and new module ids.
struct ImpactReport {
    std::set<Identifier> reusable;
    std::set<Identifier> needs_reverification;
    std::set<Identifier> added;
    std::set<Identifier> removed;

    bool operator==(const ImpactReport&) const = default;
};

ImpactReport impact(const AssuranceCase& old_case, const StructureDiff& diff);

std::string impact_to_text(const ImpactReport& report);
std::string impact_to_json(const ImpactReport& report);

enum class ModuleKind { Component, Refinement };

std::string_view to_string(ModuleKind kind) noexcept;

// Library key of a module: the hash of its contracts' full content, or of its
// refinement including both endpoint specifications.
std::string module_key(const SpecificationStructure& structure, const ComponentModule& module);
std::string module_key(const SpecificationStructure& structure, const RefinementModule& module);

struct LibraryRecord {
    std::string key;
    Identifier module;
    ModuleKind kind = ModuleKind::Component;
    std::vector<Identifier> interface_premises;
    std::vector<Identifier> interface_conclusions;
    std::vector<ArgumentNode> nodes;
    std::vector<Inference> inferences;
    std::vector<Identifier> axioms;            // local claim ids
    std::map<Identifier, ClaimStatus> status;  // claim status when assured

    bool operator==(const LibraryRecord&) const = default;
};

// Content-addressed store of assured modules. Const members only read and may
// be called concurrently; insertions need a single writer.
class ModuleLibrary {
public:
    const LibraryRecord* find(const std::string& key) const;
    void insert(LibraryRecord record);
    // Records every module of the case with its current content and status.
    void harvest(const AssuranceCase& c);

    const std::map<std::string, LibraryRecord>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    // Directory layout: index.json plus one <key>.json per record.
    static ModuleLibrary load(const std::filesystem::path& dir);
    void save(const std::filesystem::path& dir) const;

private:
    std::map<std::string, LibraryRecord> entries_;
};

std::string record_to_json(const LibraryRecord& record);
LibraryRecord record_from_json(std::string_view text);

enum class Provenance { Cached, New };

std::string_view to_string(Provenance p) noexcept;

struct VariantAssembly {
    AssuranceCase assurance_case;
    std::map<Identifier, Provenance> provenance;
    // Status snapshots imported verbatim from cached records.
    StatusMap imported_status;

    const AssuranceArchitecture& architecture() const { return assurance_case.architecture(); }
};

// Requires strict validity. Throws LibraryCorruptionError when a key matches a
// record of a different module shape.
VariantAssembly assemble_variant(const ModuleLibrary& library,
                                 const SpecificationStructure& structure);

// Modules contributing to a concern: owners of every specification backward
// reachable from the covered guarantees, plus the refinement modules of the
// traversed refinement edges.
std::set<Identifier> concern_modules(const AssuranceCase& c, const std::string& concern);

} // namespace contractcase
