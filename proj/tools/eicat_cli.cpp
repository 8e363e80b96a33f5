// Command line front end: validate and analyze category files, build the
// canonical modules, export fixtures, run the full verification pipeline,
// and issue ad-hoc Ext and resolution queries.
//
// Exit codes: 0 all requested verdicts positive, 1 at least one verdict
// negative, 2 usage or parse error.

#include <CLI11.hpp>

#include "eicat/builders.hpp"
#include "eicat/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace eicat;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedCategory {
    CategoryFile file;
    FiniteCategory cat;
    FieldSpec field;
};

LoadedCategory load(const std::string& path, const std::string& field_flag) {
    LoadedCategory out{parse_category_file(read_file(path)), fixture("g2"), FieldSpec{}};
    auto v = load_category(out.file);
    if (!v.ok()) {
        std::ostringstream os;
        os << "category file is not a valid category:";
        for (const auto& issue : v.issues) os << "\n  " << issue.axiom << ": " << issue.witness;
        throw FieldError(os.str());
    }
    out.cat = *std::move(v.category);
    out.field = field_flag.empty() ? out.file.field : parse_field_spec(field_flag);
    return out;
}

template <class F>
void dump_module(std::ostream& os, const Module<F>& m, const std::string& title) {
    const FiniteCategory& c = m.cat();
    os << "module: " << title << "\n";
    os << "field: " << m.field().spec().name() << "\n";
    os << "total-dim: " << m.total_dim() << "\n";
    const auto order = object_order(c);
    os << "dims:";
    for (std::size_t x : order) os << " " << c.object_name(x) << "=" << m.dims[x];
    os << "\nbasis:\n";
    for (std::size_t x : order) {
        os << "  " << c.object_name(x) << ":";
        for (std::size_t j = 0; j < m.dims[x]; ++j) os << " " << m.label(x, j);
        os << "\n";
    }
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        os << "action of " << c.morphism_name(f) << " (" << c.object_name(c.source(f)) << " -> "
           << c.object_name(c.target(f)) << "):\n";
        if (m.act[f].rows() == 0 || m.act[f].cols() == 0)
            os << "(empty " << m.act[f].rows() << "x" << m.act[f].cols() << ")\n";
        else
            os << m.act[f].str();
    }
}

template <class F>
Module<F> named_module(const Algebra<F>& alg, const std::string& which, std::size_t index) {
    if (which == "trivial") return trivial_module(alg);
    if (which == "K") return arrow_module(alg);
    if (which == "E") return augmented_arrow_module(alg).module;
    if (which == "regular") return regular_module(alg);
    if (which == "column") return column_projective(alg, index);
    if (which.rfind("column:", 0) == 0) {
        std::size_t t = 0;
        try {
            t = std::stoul(which.substr(7));
        } catch (...) {
            throw FieldError("bad column index in " + which);
        }
        return column_projective(alg, t);
    }
    throw FieldError("unknown module name: " + which +
                     " (expected trivial, K, E, regular, column, column:<t>)");
}

template <class F>
int cmd_build_t(const LoadedCategory& lc, F field, const std::string& which, std::size_t index) {
    auto alg = build_algebra(lc.cat, field);
    dump_module(std::cout, named_module(alg, which, index), which);
    return 0;
}

template <class F>
int cmd_ext_t(const LoadedCategory& lc, F field, const std::string& mname,
              const std::string& nname, std::size_t degree) {
    auto alg = build_algebra(lc.cat, field);
    auto m = named_module(alg, mname, 1);
    auto n = named_module(alg, nname, 1);
    std::cout << "Ext^" << degree << "(" << mname << ", " << nname
              << ") = " << ext_dim(m, n, degree) << "\n";
    return 0;
}

template <class F>
int cmd_resolve_t(const LoadedCategory& lc, F field, const std::string& mname,
                  std::size_t length) {
    auto alg = build_algebra(lc.cat, field);
    auto m = named_module(alg, mname, 1);
    auto res = projective_resolution(m, length);
    std::cout << "resolution of " << mname << " (length " << res.length
              << (res.terminated ? ", terminated" : ", truncated") << ")\n";
    const FiniteCategory& c = lc.cat;
    for (std::size_t d = 0; d < res.steps.size(); ++d) {
        std::cout << "P_" << d << ": total=" << res.steps[d].total_dim() << " dims:";
        for (std::size_t x : object_order(c))
            std::cout << " " << c.object_name(x) << "=" << res.steps[d].dims[x];
        std::cout << "\n";
    }
    return 0;
}

template <class Fn>
int with_field(FieldSpec spec, Fn&& fn) {
    if (spec.is_rationals()) return fn(RationalField{});
    return fn(PrimeField(spec.p));
}

int cmd_analyze(const LoadedCategory& lc) {
    const FiniteCategory& c = lc.cat;
    bool negative = false;
    auto verdict = [&](const std::string& name, bool ok, const std::string& extra = "") {
        std::cout << name << ": " << (ok ? "yes" : "no");
        if (!extra.empty()) std::cout << " (" << extra << ")";
        std::cout << "\n";
        if (!ok) negative = true;
    };
    std::cout << "objects: " << c.object_count() << "\nmorphisms: " << c.morphism_count() << "\n";
    const auto p = category_properties(c);
    verdict("EI", p.is_ei);
    verdict("skeletal", p.is_skeletal);
    std::cout << "connected: " << (p.is_connected ? "yes" : "no") << "\n";
    if (!p.is_ei || !p.is_skeletal) {
        std::cout << "analysis stops: category is not skeletal EI\n";
        return 1;
    }
    {
        const auto order = object_order(c);
        std::cout << "object-order:";
        for (std::size_t x : order) std::cout << " " << c.object_name(x);
        std::cout << "\n";
    }
    if (auto z = smallest_object(c)) {
        std::cout << "smallest-object: " << c.object_name(*z) << "\norbits-from-smallest:";
        for (std::size_t x = 0; x < c.object_count(); ++x)
            std::cout << " " << c.object_name(x) << "="
                      << hom_action_report(c, *z, x).orbit_count;
        std::cout << "\n";
    } else {
        std::cout << "smallest-object: none\n";
        if (auto pr = minimal_pair_with_upper_bound(object_poset(c)))
            std::cout << "minimal-pair: " << c.object_name(pr->a) << " " << c.object_name(pr->b)
                      << " below " << c.object_name(pr->c) << "\n";
    }
    const auto fr = check_freeness(c);
    const bool ufp = check_ufp(c);
    verdict("free", fr.free);
    verdict("ufp-agrees", fr.free == ufp);
    if (fr.witness)
        std::cout << "freeness-witness: " << c.morphism_name(fr.witness->alpha) << " via ("
                  << c.morphism_name(fr.witness->left.first) << ", "
                  << c.morphism_name(fr.witness->left.second) << ") and ("
                  << c.morphism_name(fr.witness->right.first) << ", "
                  << c.morphism_name(fr.witness->right.second) << ")\n";
    const bool ground = with_field(lc.field, [&](auto field) {
        return projective_over_ground(c, field).overall ? 0 : 1;
    }) == 0;
    verdict("projective-over-k", ground, "field " + lc.field.name());
    return negative ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite EI category algebra toolkit"};
    app.require_subcommand(1);

    std::string path, field_flag, which, mname, nname, fixture_name;
    std::size_t bound = 8, index = 1, degree = 1, length = 8;
    std::uint64_t seed = 1;
    std::vector<std::string> probes;
    bool json = false;

    auto add_common = [&](CLI::App* sub, bool with_file = true) {
        if (with_file) sub->add_option("file", path, "category file")->required();
        sub->add_option("--field", field_flag, "field override: q or f<p>");
    };

    auto* v_cmd = app.add_subcommand("validate", "check the category axioms of a file");
    add_common(v_cmd);

    auto* a_cmd = app.add_subcommand("analyze", "structural analysis: properties, order, freeness");
    add_common(a_cmd);

    auto* b_cmd = app.add_subcommand("build", "construct a module and dump its matrices");
    add_common(b_cmd);
    b_cmd->add_option("which", which, "E | K | trivial | regular | column")->required();
    b_cmd->add_option("--index", index, "column index t (object order, 1-based)");

    auto* e_cmd = app.add_subcommand("export", "print a named fixture as a category file");
    e_cmd->add_option("fixture", fixture_name, "arrow | g2 | z2orb | kron | diamond | collapse")
        ->required();
    e_cmd->add_option("--field", field_flag, "field to record in the file (default q)");

    auto* verify_cmd = app.add_subcommand("verify", "run the full verification pipeline");
    add_common(verify_cmd);
    verify_cmd->add_option("--bound", bound, "resolution / dimension bound (default 8)");
    verify_cmd->add_option("--seed", seed, "seed for randomized searches (default 1)");
    verify_cmd->add_option("--probe", probes, "extra MCM probe: trivial | K | regular | column:<t>");
    verify_cmd->add_flag("--json", json, "emit the machine-readable report");

    auto* ext_cmd = app.add_subcommand("ext", "ad-hoc Ext dimension query");
    add_common(ext_cmd);
    ext_cmd->add_option("M", mname, "module: trivial | K | E | regular | column:<t>")->required();
    ext_cmd->add_option("N", nname, "module: trivial | K | E | regular | column:<t>")->required();
    ext_cmd->add_option("i", degree, "cohomological degree, i >= 1")->required();

    auto* r_cmd = app.add_subcommand("resolve", "print a projective resolution");
    add_common(r_cmd);
    r_cmd->add_option("M", mname, "module: trivial | K | E | regular | column:<t>")->required();
    r_cmd->add_option("--length", length, "maximum length (default 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (v_cmd->parsed()) {
            auto file = parse_category_file(read_file(path));
            auto v = load_category(file);
            if (v.ok()) {
                std::cout << "valid: " << v.category->object_count() << " objects, "
                          << v.category->morphism_count() << " morphisms\n";
                return 0;
            }
            std::cout << "invalid: " << v.issues.size() << " axiom violation(s)\n";
            for (const auto& issue : v.issues)
                std::cout << "  " << issue.axiom << ": " << issue.witness << "\n";
            return 1;
        }
        if (a_cmd->parsed()) return cmd_analyze(load(path, field_flag));
        if (b_cmd->parsed()) {
            auto lc = load(path, field_flag);
            return with_field(lc.field,
                              [&](auto field) { return cmd_build_t(lc, field, which, index); });
        }
        if (e_cmd->parsed()) {
            const FieldSpec fs =
                field_flag.empty() ? FieldSpec::rationals() : parse_field_spec(field_flag);
            std::cout << export_category_file(fixture(fixture_name), fs);
            return 0;
        }
        if (verify_cmd->parsed()) {
            auto file = parse_category_file(read_file(path));
            PipelineOptions opts;
            if (!field_flag.empty()) opts.field_override = parse_field_spec(field_flag);
            opts.bound = bound;
            opts.seed = seed;
            opts.extra_probes = probes;
            auto rep = run_pipeline_file(file, path, opts);
            std::cout << (json ? rep.json() : rep.text());
            return rep.all_positive() ? 0 : 1;
        }
        if (ext_cmd->parsed()) {
            if (degree == 0) throw FieldError("degree must be at least 1");
            auto lc = load(path, field_flag);
            return with_field(lc.field, [&](auto field) {
                return cmd_ext_t(lc, field, mname, nname, degree);
            });
        }
        if (r_cmd->parsed()) {
            auto lc = load(path, field_flag);
            return with_field(lc.field, [&](auto field) {
                return cmd_resolve_t(lc, field, mname, length);
            });
        }
    } catch (const NotFreeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const FieldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
