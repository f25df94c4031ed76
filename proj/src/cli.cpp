#include "contractcase/cli.hpp"

#include "contractcase/dsl.hpp"
#include "contractcase/error.hpp"
#include "contractcase/export.hpp"
#include "contractcase/persist.hpp"
#include "contractcase/reuse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace contractcase {
namespace {

namespace fs = std::filesystem;

struct IoError : Error {
    using Error::Error;
};

// Already reported on the error stream.
struct Failed {};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
}

bool has_extension(const std::string& path, std::string_view ext) {
    return fs::path(path).extension() == ext;
}

std::string document_kind(const std::string& text) {
    const auto doc = json::parse_text(text);
    return json::string_field(doc, "document", "input document");
}

ValidationMode parse_mode(const std::string& mode) {
    return mode == "lenient" ? ValidationMode::Lenient : ValidationMode::Strict;
}

class Session {
public:
    Session(std::ostream& out, std::ostream& err, bool color) : out_(out), err_(err), color_(color) {}

    SpecificationStructure load_structure(const std::string& path) {
        const auto text = read_file(path);
        if (has_extension(path, ".cbd")) {
            auto result = parse(text, path);
            if (!result.ok()) {
                for (const auto& e : result.errors) err_ << format(e) << "\n";
                throw Failed{};
            }
            return std::move(*result.structure);
        }
        const auto kind = document_kind(text);
        if (kind == "structure") return from_json(text);
        if (kind == "case") return case_from_json(text).structure();
        throw SchemaError(path + ": expected a structure or case document, found '" + kind + "'");
    }

    AssuranceCase load_case(const std::string& path) {
        if (!has_extension(path, ".cbd")) {
            const auto text = read_file(path);
            if (document_kind(text) == "case") return case_from_json(text);
        }
        return AssuranceCase::from_structure(load_structure(path));
    }

    void report(const std::vector<Diagnostic>& diagnostics) {
        for (const auto& d : diagnostics) err_ << format(d, color_) << "\n";
    }

    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

private:
    std::ostream& out_;
    std::ostream& err_;
    bool color_;
};

int cmd_validate(Session& s, const std::string& path, const std::string& mode,
                 const std::string& format_name) {
    const auto structure = s.load_structure(path);
    const auto diagnostics = validate(structure, parse_mode(mode));
    if (format_name == "json")
        s.out() << diagnostics_to_json(diagnostics);
    else
        s.report(diagnostics);
    return has_errors(diagnostics) ? kExitFailed : kExitOk;
}

int cmd_compile(Session& s, const std::string& path, const std::string& out_dir,
                const std::string& mode) {
    const auto structure = s.load_structure(path);
    const auto m = parse_mode(mode);
    const auto diagnostics = validate(structure, m);
    s.report(diagnostics);
    if (has_errors(diagnostics)) return kExitFailed;
    const auto architecture = derive_architecture(structure, m);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "architecture.json", architecture_to_json(architecture));
    s.out() << "architecture.json\n";
    for (const auto& t : instantiate_all(architecture, structure)) {
        write_file(fs::path(out_dir) / (t.module + ".json"), template_to_json(t));
        s.out() << t.module << ".json\n";
    }
    return kExitOk;
}

int cmd_render(Session& s, const std::string& path, const std::string& view, bool status,
               const std::vector<std::string>& modules) {
    RenderOptions options;
    options.view = *parse_view(view);
    options.include_status = status;
    if (!modules.empty()) options.module_filter = std::set<Identifier>(modules.begin(), modules.end());
    s.out() << render(s.load_case(path), options);
    return kExitOk;
}

int cmd_status(Session& s, const std::string& path) {
    const auto c = s.load_case(path);
    s.out() << to_report(c);
    const auto roots = root_guarantees(c);
    const auto status = evaluate_status(c);
    const bool all = !roots.empty() && std::all_of(roots.begin(), roots.end(), [&](const NodeRef& g) {
        return status.at(g) == ClaimStatus::Supported;
    });
    return all ? kExitOk : kExitFailed;
}

int cmd_impact(Session& s, const std::string& old_path, const std::string& new_path,
               const std::string& format_name) {
    const auto old_case = s.load_case(old_path);
    const auto new_structure = s.load_structure(new_path);
    const auto r = impact(old_case, diff_structures(old_case.structure(), new_structure));
    s.out() << (format_name == "json" ? impact_to_json(r) : impact_to_text(r));
    return kExitOk;
}

int cmd_assemble(Session& s, const std::string& library_dir, const std::string& path,
                 const std::string& out_path) {
    const auto library = ModuleLibrary::load(library_dir);
    const auto v = assemble_variant(library, s.load_structure(path));
    std::size_t cached = 0;
    for (const auto& [module, p] : v.provenance) {
        s.out() << module << " " << to_string(p) << "\n";
        if (p == Provenance::Cached) ++cached;
    }
    s.out() << "cached: " << cached << ", new: " << v.provenance.size() - cached << "\n";
    if (!out_path.empty()) write_file(out_path, case_to_json(v.assurance_case));
    return kExitOk;
}

int cmd_concerns(Session& s, const std::string& path, const std::string& concern) {
    for (const auto& m : concern_modules(s.load_case(path), concern)) s.out() << m << "\n";
    return kExitOk;
}

int cmd_fmt(Session& s, const std::string& path) {
    s.out() << serialize(s.load_structure(path));
    return kExitOk;
}

int cmd_init(Session& s, const std::string& path, const std::string& out_path) {
    emit(case_to_json(AssuranceCase::from_structure(s.load_structure(path))), out_path, s.out());
    return kExitOk;
}

int cmd_attach(Session& s, const std::string& case_path, const std::string& fragment_path,
               const std::string& out_path) {
    const auto c = s.load_case(case_path);
    const auto set = fragments_from_json(read_file(fragment_path));
    emit(case_to_json(apply_fragments(c, set)), out_path, s.out());
    return kExitOk;
}

int cmd_publish(Session& s, const std::string& case_path, const std::string& library_dir) {
    const auto c = s.load_case(case_path);
    auto library = ModuleLibrary::load(library_dir);
    const auto before = library.size();
    library.harvest(c);
    library.save(library_dir);
    s.out() << "published " << c.architecture().module_ids().size() << " modules ("
            << library.size() - before << " new records)\n";
    return kExitOk;
}

bool env_color() {
    const char* v = std::getenv("CONTRACTCASE_COLOR");
    return v && std::string_view(v) == "1";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_cli(args, out, err, env_color());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool color) {
    CLI::App app{"Contract-based design to modular assurance case compiler", "contractcase"};
    app.require_subcommand(1);
    const auto modes = CLI::IsMember({"strict", "lenient"});
    const auto formats = CLI::IsMember({"text", "json"});

    std::string path, path2, mode = "strict", fmt = "text", out_path, view = "architecture";
    std::vector<std::string> modules;
    bool status = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check a structure and print diagnostics");
    validate_cmd->add_option("path", path, ".cbd or JSON structure")->required();
    validate_cmd->add_option("--mode", mode)->check(modes);
    validate_cmd->add_option("--format", fmt)->check(formats);

    auto* compile_cmd = app.add_subcommand("compile", "Write the architecture and module templates");
    compile_cmd->add_option("path", path)->required();
    compile_cmd->add_option("--out", out_path, "Output directory")->required();
    compile_cmd->add_option("--mode", mode)->check(modes);

    auto* render_cmd = app.add_subcommand("render", "Print a DOT diagram");
    render_cmd->add_option("path", path, "Structure or case")->required();
    render_cmd->add_option("--view", view)
        ->check(CLI::IsMember({"architecture", "argument", "specgraph"}));
    render_cmd->add_flag("--status", status, "Append claim status to labels");
    render_cmd->add_option("--module", modules, "Restrict the argument view to modules");

    auto* status_cmd = app.add_subcommand("status", "Print the status report; fails unless every root guarantee is supported");
    status_cmd->add_option("path", path)->required();

    auto* impact_cmd = app.add_subcommand("impact", "Classify modules after a structure change");
    impact_cmd->add_option("old", path, "Old structure or case")->required();
    impact_cmd->add_option("new", path2, "New structure")->required();
    impact_cmd->add_option("--format", fmt)->check(formats);

    auto* assemble_cmd = app.add_subcommand("assemble", "Assemble a variant from a module library");
    assemble_cmd->add_option("library", path2, "Library directory")->required();
    assemble_cmd->add_option("path", path)->required();
    assemble_cmd->add_option("--out", out_path, "Write the assembled case here");

    auto* concerns_cmd = app.add_subcommand("concerns", "List modules contributing to a concern");
    concerns_cmd->add_option("path", path)->required();
    concerns_cmd->add_option("name", path2)->required();

    auto* fmt_cmd = app.add_subcommand("fmt", "Print the canonical DSL form");
    fmt_cmd->add_option("path", path)->required();

    auto* init_cmd = app.add_subcommand("init", "Create a case from a structure");
    init_cmd->add_option("path", path)->required();
    init_cmd->add_option("--out", out_path);

    auto* attach_cmd = app.add_subcommand("attach", "Apply a fragment document to a case");
    attach_cmd->add_option("case", path)->required();
    attach_cmd->add_option("fragment", path2)->required();
    attach_cmd->add_option("--out", out_path);

    auto* publish_cmd = app.add_subcommand("publish", "Store the modules of a case in a library");
    publish_cmd->add_option("case", path)->required();
    publish_cmd->add_option("library", path2)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    Session s(out, err, color);
    try {
        if (validate_cmd->parsed()) return cmd_validate(s, path, mode, fmt);
        if (compile_cmd->parsed()) return cmd_compile(s, path, out_path, mode);
        if (render_cmd->parsed()) return cmd_render(s, path, view, status, modules);
        if (status_cmd->parsed()) return cmd_status(s, path);
        if (impact_cmd->parsed()) return cmd_impact(s, path, path2, fmt);
        if (assemble_cmd->parsed()) return cmd_assemble(s, path2, path, out_path);
        if (concerns_cmd->parsed()) return cmd_concerns(s, path, path2);
        if (fmt_cmd->parsed()) return cmd_fmt(s, path);
        if (init_cmd->parsed()) return cmd_init(s, path, out_path);
        if (attach_cmd->parsed()) return cmd_attach(s, path, path2, out_path);
        if (publish_cmd->parsed()) return cmd_publish(s, path, path2);
    } catch (const Failed&) {
        return kExitFailed;
    } catch (const ArchitectureError& e) {
        s.report(e.diagnostics());
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    } catch (const CaseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace contractcase
