#pragma once

// Line-oriented category file format with explicit section headers:
//
//   VERSION 1
//   FIELD q            (or f2, f3, f<p>)
//   OBJECTS
//   <name>             one per line, input order
//   MORPHISMS
//   <name> <source> <target>
//   IDENTITIES
//   <object> <morphism>
//   COMP
//   <g> <f> <gf>       meaning g after f equals gf
//
// '#' starts a comment; blank lines are ignored. Compositions where either
// factor is an identity are implied and omitted. Export emits the canonical
// form, so export(parse(text)) reproduces a canonical file byte for byte.

#include "eicat/category.hpp"
#include "eicat/field.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace eicat {

class ParseError : public FieldError {
  public:
    ParseError(std::size_t line, const std::string& what)
        : FieldError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

struct CategoryFile {
    int version = 1;
    FieldSpec field;
    RawCategory raw;  // compositions as stated in the file (identities implied)
};

inline FieldSpec parse_field_spec(const std::string& token) {
    if (token == "q" || token == "Q") return FieldSpec::rationals();
    if ((token.size() > 1) && (token[0] == 'f' || token[0] == 'F')) {
        std::uint64_t p = 0;
        for (std::size_t i = 1; i < token.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(token[i])))
                throw FieldError("bad field spec: " + token);
            p = p * 10 + static_cast<std::uint64_t>(token[i] - '0');
        }
        return FieldSpec::prime(p);
    }
    throw FieldError("bad field spec: " + token + " (expected q or f<p>)");
}

inline CategoryFile parse_category_file(const std::string& text) {
    CategoryFile out;
    enum class Section { none, objects, morphisms, identities, comp } section = Section::none;
    bool saw_version = false, saw_field = false;

    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (!saw_version) {
            if (tok[0] != "VERSION" || tok.size() != 2)
                throw ParseError(lineno, "expected VERSION header");
            try {
                out.version = std::stoi(tok[1]);
            } catch (...) {
                throw ParseError(lineno, "bad version number: " + tok[1]);
            }
            if (out.version != 1) throw ParseError(lineno, "unsupported version " + tok[1]);
            saw_version = true;
            continue;
        }
        if (tok[0] == "FIELD") {
            if (tok.size() != 2) throw ParseError(lineno, "FIELD takes one token");
            try {
                out.field = parse_field_spec(tok[1]);
            } catch (const FieldError& e) {
                throw ParseError(lineno, e.what());
            }
            saw_field = true;
            continue;
        }
        if (tok[0] == "OBJECTS" || tok[0] == "MORPHISMS" || tok[0] == "IDENTITIES" ||
            tok[0] == "COMP") {
            if (tok.size() != 1) throw ParseError(lineno, tok[0] + " takes no tokens");
            section = tok[0] == "OBJECTS"     ? Section::objects
                      : tok[0] == "MORPHISMS" ? Section::morphisms
                      : tok[0] == "IDENTITIES" ? Section::identities
                                               : Section::comp;
            continue;
        }
        switch (section) {
            case Section::none:
                throw ParseError(lineno, "content before any section header");
            case Section::objects:
                if (tok.size() != 1) throw ParseError(lineno, "object lines hold one name");
                out.raw.objects.push_back(tok[0]);
                break;
            case Section::morphisms:
                if (tok.size() != 3)
                    throw ParseError(lineno, "morphism lines are: name source target");
                out.raw.morphisms.push_back({tok[0], tok[1], tok[2]});
                break;
            case Section::identities:
                if (tok.size() != 2)
                    throw ParseError(lineno, "identity lines are: object morphism");
                out.raw.identities.emplace_back(tok[0], tok[1]);
                break;
            case Section::comp:
                if (tok.size() != 3) throw ParseError(lineno, "comp lines are: g f gf");
                out.raw.compositions.push_back({tok[0], tok[1], tok[2]});
                break;
        }
    }
    if (!saw_version) throw ParseError(lineno, "missing VERSION header");
    if (!saw_field) throw ParseError(lineno, "missing FIELD header");
    return out;
}

// Canonical serialization: sections in fixed order, morphisms in input
// order, COMP listing exactly the composable pairs of non-identities in
// (outer, inner) index order.
inline std::string export_category_file(const FiniteCategory& c, FieldSpec field) {
    std::ostringstream os;
    os << "VERSION 1\n";
    os << "FIELD " << (field.is_rationals() ? "q" : "f" + std::to_string(field.p)) << "\n";
    os << "OBJECTS\n";
    for (std::size_t x = 0; x < c.object_count(); ++x) os << c.object_name(x) << "\n";
    os << "MORPHISMS\n";
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        os << c.morphism_name(f) << " " << c.object_name(c.source(f)) << " "
           << c.object_name(c.target(f)) << "\n";
    os << "IDENTITIES\n";
    for (std::size_t x = 0; x < c.object_count(); ++x)
        os << c.object_name(x) << " " << c.morphism_name(c.identity(x)) << "\n";
    os << "COMP\n";
    for (std::size_t g = 0; g < c.morphism_count(); ++g) {
        if (c.is_identity(g)) continue;
        for (std::size_t f = 0; f < c.morphism_count(); ++f) {
            if (c.is_identity(f) || !c.composable(g, f)) continue;
            os << c.morphism_name(g) << " " << c.morphism_name(f) << " "
               << c.morphism_name(c.compose(g, f)) << "\n";
        }
    }
    return os.str();
}

// Parse + implied identities + validation in one step.
inline CategoryValidation load_category(const CategoryFile& file) {
    return FiniteCategory::validate(with_identity_compositions(file.raw));
}

} // namespace eicat
