#pragma once

// End-to-end verification pipeline: validation, category properties,
// freeness with the UFP cross-check, ground projectivity, Gorenstein
// detection, construction of the canonical modules, the exact sequence,
// projectivity of the arrow module, Gorenstein-projectivity of the
// augmented module, the MCM-approximation certificate, the splitting
// analysis and the trivial-module verdict. Reports carry one stage per
// line, are fully deterministic for a given input, and serialize to text
// and JSON.

#include "eicat/builders.hpp"
#include "eicat/catfile.hpp"
#include "eicat/homology.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace eicat {

enum class StageStatus { pass, fail, skip };

struct StageResult {
    std::string name;
    StageStatus status = StageStatus::skip;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> data;

    void put(std::string key, std::string value) {
        data.emplace_back(std::move(key), std::move(value));
    }
};

struct PipelineOptions {
    std::optional<FieldSpec> field_override;
    std::size_t bound = 8;
    std::uint64_t seed = 1;
    std::vector<std::string> extra_probes;  // trivial | K | regular | column:<t>
};

struct PipelineReport {
    std::string source;
    FieldSpec field;
    std::size_t bound = 8;
    std::uint64_t seed = 1;
    std::vector<StageResult> stages;

    bool all_positive() const {
        for (const auto& s : stages)
            if (s.status == StageStatus::fail) return false;
        return true;
    }

    std::string text() const {
        std::ostringstream os;
        os << "category: " << source << "\n";
        os << "field: " << field.name() << "\n";
        os << "bound: " << bound << "\n";
        os << "seed: " << seed << "\n\n";
        for (const auto& s : stages) {
            const char* tag = s.status == StageStatus::pass   ? "[PASS]"
                              : s.status == StageStatus::fail ? "[FAIL]"
                                                              : "[SKIP]";
            os << tag << " " << s.name;
            for (std::size_t i = s.name.size(); i < 18; ++i) os << ' ';
            os << s.detail << "\n";
            for (const auto& [k, v] : s.data) {
                std::istringstream vs(v);
                std::string line;
                bool first = true;
                while (std::getline(vs, line)) {
                    os << "         " << (first ? k + ": " : std::string(k.size() + 2, ' '))
                       << line << "\n";
                    first = false;
                }
            }
        }
        os << "\noverall: " << (all_positive() ? "POSITIVE" : "NEGATIVE") << "\n";
        return os.str();
    }

    std::string json() const {
        nlohmann::ordered_json j;
        j["source"] = source;
        j["field"] = field.name();
        j["bound"] = bound;
        j["seed"] = seed;
        j["stages"] = nlohmann::ordered_json::array();
        for (const auto& s : stages) {
            nlohmann::ordered_json js;
            js["name"] = s.name;
            js["status"] = s.status == StageStatus::pass   ? "pass"
                           : s.status == StageStatus::fail ? "fail"
                                                           : "skip";
            js["detail"] = s.detail;
            js["data"] = nlohmann::ordered_json::array();
            for (const auto& [k, v] : s.data)
                js["data"].push_back(nlohmann::ordered_json{{"key", k}, {"value", v}});
            j["stages"].push_back(js);
        }
        j["overall"] = all_positive() ? "positive" : "negative";
        return j.dump(2) + "\n";
    }
};

namespace detail {

template <class F>
std::string dims_string(const Module<F>& m) {
    std::ostringstream os;
    for (std::size_t x = 0; x < m.dims.size(); ++x) {
        if (x) os << ' ';
        os << m.cat().object_name(x) << "=" << m.dims[x];
    }
    return os.str();
}

template <class F>
std::string hom_string(const ModuleHom<F>& h) {
    std::ostringstream os;
    const auto& c = h.source.cat();
    for (std::size_t x = 0; x < h.comps.size(); ++x) {
        if (h.comps[x].rows() == 0 || h.comps[x].cols() == 0) continue;
        os << c.object_name(x) << ":\n" << h.comps[x].str();
    }
    std::string s = os.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s.empty() ? "(zero)" : s;
}

template <class F>
void run_pipeline_t(PipelineReport& rep, const RawCategory& raw, F field,
                    const PipelineOptions& opts) {
    const std::size_t bound = opts.bound;
    auto stage = [&rep](const std::string& name) -> StageResult& {
        rep.stages.push_back(StageResult{name, StageStatus::skip, "", {}});
        return rep.stages.back();
    };
    auto skip_rest = [&](const std::vector<std::string>& names, const std::string& why) {
        for (const auto& n : names) {
            StageResult& s = stage(n);
            s.detail = "skipped: " + why;
        }
    };

    // 1. validate
    StageResult& val = stage("validate");
    auto v = FiniteCategory::validate(with_identity_compositions(raw));
    if (!v.ok()) {
        val.status = StageStatus::fail;
        val.detail = std::to_string(v.issues.size()) + " axiom violation(s)";
        for (const auto& issue : v.issues) val.put(issue.axiom, issue.witness);
        skip_rest({"properties", "free", "projective-over-k", "gorenstein", "build-E", "build-K",
                   "ses-exact", "K-projective", "E-gp", "mcm-special", "splitting", "trivial-gp"},
                  "category invalid");
        return;
    }
    const FiniteCategory cat = *v.category;
    val.status = StageStatus::pass;
    val.detail = "objects=" + std::to_string(cat.object_count()) +
                 " morphisms=" + std::to_string(cat.morphism_count());

    // 2. properties
    StageResult& props = stage("properties");
    const CategoryProperties p = category_properties(cat);
    props.detail = std::string("EI=") + (p.is_ei ? "yes" : "no") +
                   " skeletal=" + (p.is_skeletal ? "yes" : "no") +
                   " connected=" + (p.is_connected ? "yes" : "no");
    props.status = (p.is_ei && p.is_skeletal) ? StageStatus::pass : StageStatus::fail;
    if (props.status == StageStatus::fail) {
        skip_rest({"free", "projective-over-k", "gorenstein", "build-E", "build-K", "ses-exact",
                   "K-projective", "E-gp", "mcm-special", "splitting", "trivial-gp"},
                  "category is not skeletal EI");
        return;
    }
    {
        const auto order = object_order(cat);
        std::string ord;
        for (std::size_t i = 0; i < order.size(); ++i)
            ord += (i ? " " : "") + cat.object_name(order[i]);
        props.put("object-order", ord);
    }

    // 3. freeness with UFP cross-check
    StageResult& fr = stage("free");
    const FreenessResult free_res = check_freeness(cat);
    const bool ufp = check_ufp(cat);
    if (free_res.free != ufp) {
        fr.status = StageStatus::fail;
        fr.detail = "internal inconsistency: pairwise criterion and UFP disagree";
        return;
    }
    fr.status = free_res.free ? StageStatus::pass : StageStatus::fail;
    fr.detail = free_res.free ? "pairwise criterion and UFP both hold"
                              : "not free (UFP cross-check agrees)";
    if (free_res.witness) {
        const auto& w = *free_res.witness;
        fr.put("witness", cat.morphism_name(w.alpha) + " = " +
                              cat.morphism_name(w.left.second) + " after " +
                              cat.morphism_name(w.left.first) + " = " +
                              cat.morphism_name(w.right.second) + " after " +
                              cat.morphism_name(w.right.first) + ", no mediating morphism");
    }

    // 4. projectivity over the ground field
    StageResult& pg = stage("projective-over-k");
    const GroundProjectivityReport ground = projective_over_ground(cat, field);
    pg.status = ground.overall ? StageStatus::pass : StageStatus::fail;
    {
        std::size_t sides = 0, good = 0;
        for (const auto& pr : ground.pairs) {
            sides += 2;
            good += (pr.left_projective ? 1 : 0) + (pr.right_projective ? 1 : 0);
            if (!pr.left_projective || !pr.right_projective)
                pg.put("failing-pair",
                       "Hom(" + cat.object_name(pr.source) + ", " + cat.object_name(pr.target) +
                           ")" + (pr.left_projective ? "" : " [left]") +
                           (pr.right_projective ? "" : " [right]"));
        }
        pg.detail = std::to_string(good) + "/" + std::to_string(sides) +
                    " hom-set sides projective";
    }

    // 5. Gorenstein detection
    StageResult& gor = stage("gorenstein");
    auto alg = build_algebra(cat, field);
    const GorensteinReport<F> grep = gorenstein_report(alg, bound);
    auto id_str = [&](const std::optional<std::size_t>& d) {
        return d ? std::to_string(*d) : (">" + std::to_string(bound));
    };
    gor.detail = "id_left=" + id_str(grep.id_left) + " id_right=" + id_str(grep.id_right);
    if (grep.is_gorenstein) {
        gor.status = grep.sides_equal ? StageStatus::pass : StageStatus::fail;
        gor.detail += " d=" + std::to_string(grep.d);
    } else {
        gor.status = StageStatus::fail;
        gor.detail += " (not Gorenstein within bound)";
    }
    const bool gor_certified = grep.is_gorenstein && grep.sides_equal;
    const std::size_t gp_depth = gor_certified ? grep.d : bound;

    // 6-7. canonical modules
    StageResult& be = stage("build-E");
    std::optional<AugmentationSequence<F>> seq;
    if (free_res.free) {
        seq = augmentation_sequence(alg);
        be.status = StageStatus::pass;
        be.detail = "dims: " + dims_string(seq->total);
    } else {
        be.detail = "skipped: category not free";
    }
    StageResult& bk = stage("build-K");
    const Module<F> kmod = arrow_module(alg);
    bk.status = StageStatus::pass;
    bk.detail = "dims: " + dims_string(kmod);

    // 8. exact sequence
    StageResult& ses = stage("ses-exact");
    if (seq) {
        ses.status = seq->exact() ? StageStatus::pass : StageStatus::fail;
        ses.detail = seq->exact()
                         ? "0 -> K -> E -> k -> 0 exact at every object"
                         : "exactness certificate failed";
    } else {
        ses.detail = "skipped: category not free";
    }

    // 9. projectivity of K
    StageResult& kp = stage("K-projective");
    const auto k_cert = is_projective(kmod);
    kp.status = k_cert.projective ? StageStatus::pass : StageStatus::fail;
    kp.detail = k_cert.projective ? "section of the greedy cover found"
                                  : "no section of the greedy cover exists";

    // 10. Gorenstein projectivity of E
    StageResult& egp = stage("E-gp");
    std::optional<GPCertificate<F>> e_gp;
    if (seq) {
        e_gp = is_gorenstein_projective(seq->total, gor_certified, gp_depth);
        egp.status = e_gp->positive() ? StageStatus::pass : StageStatus::fail;
        std::ostringstream d;
        if (e_gp->positive()) {
            if (e_gp->depth == 0)
                d << "ev bijective (d=0: Ext vanishing automatic)";
            else
                d << "Ext^1.." << e_gp->depth << "(E,A)=0 both sides, ev bijective";
            if (e_gp->verdict == GPCertificate<F>::Verdict::inconclusive_yes)
                d << " [inconclusive: algebra not certified Gorenstein, tested to depth "
                  << e_gp->depth << "]";
        } else {
            d << e_gp->failure;
        }
        egp.detail = d.str();
        if (e_gp->embedding)
            egp.put("embedding-dims", dims_string(e_gp->embedding->target));
    } else {
        egp.detail = "skipped: category not free";
    }

    // 11. MCM approximation certificate
    StageResult& mcm = stage("mcm-special");
    if (seq) {
        std::vector<std::pair<std::string, Module<F>>> probes;
        const auto order = object_order(cat);
        for (std::size_t t = 1; t <= order.size(); ++t)
            probes.emplace_back("C" + std::to_string(t), column_projective(alg, t));
        probes.emplace_back("E", seq->total);
        for (const auto& name : opts.extra_probes) {
            if (name == "trivial") probes.emplace_back("trivial", trivial_module(alg));
            else if (name == "K") probes.emplace_back("K", kmod);
            else if (name == "regular") probes.emplace_back("regular", regular_module(alg));
            else if (name.rfind("column:", 0) == 0) {
                std::size_t t = 0;
                try {
                    t = std::stoul(name.substr(7));
                } catch (...) {
                    throw FieldError("bad probe index: " + name);
                }
                probes.emplace_back(name, column_projective(alg, t));
            } else throw FieldError("unknown probe: " + name);
        }
        const MCMCertificate<F> cert =
            certify_mcm_approximation(seq->projection, probes, bound, gor_certified, gp_depth);
        const bool ok = cert.special && cert.all_factor && cert.source_gp.positive();
        mcm.status = ok ? StageStatus::pass : StageStatus::fail;
        std::ostringstream d;
        d << "ker pi pd=" << (cert.kernel_pd ? std::to_string(*cert.kernel_pd) : ">" + std::to_string(bound));
        d << "; probes:";
        for (const auto& pr : cert.probes)
            d << " " << pr.name << "=" << pr.factored << "/" << pr.hom_dim;
        mcm.detail = d.str();
    } else {
        mcm.detail = "skipped: category not free";
    }

    // 12. splitting analysis
    StageResult& split = stage("splitting");
    if (seq) {
        auto z = smallest_object(cat);
        std::ostringstream d;
        bool one_orbit = z.has_value();
        if (z) {
            d << "smallest=" << cat.object_name(*z) << " orbits:";
            for (std::size_t x = 0; x < cat.object_count(); ++x) {
                const auto rep_x = hom_action_report(cat, *z, x);
                d << " " << cat.object_name(x) << "=" << rep_x.orbit_count;
                if (rep_x.orbit_count != 1) one_orbit = false;
            }
        } else {
            d << "no smallest object";
        }
        const SectionSearch<F> found = find_section(seq->projection);
        split.status = found.section ? StageStatus::pass : StageStatus::fail;
        d << "; section " << (found.section ? "found" : "does not exist (complete search)");
        split.detail = d.str();
        if (found.section) {
            split.put("section", hom_string(*found.section));
            if (z && one_orbit) {
                auto s = smallest_object_section(*seq);
                split.put("explicit-section",
                          std::string("orbit-representative independent: ") +
                              (s.representative_independent ? "yes" : "no"));
            }
        }
    } else {
        split.detail = "skipped: category not free";
    }

    // 13. trivial module
    StageResult& tgp = stage("trivial-gp");
    const GPCertificate<F> t_gp = is_gorenstein_projective(trivial_module(alg), gor_certified,
                                                           gp_depth);
    tgp.status = t_gp.positive() ? StageStatus::pass : StageStatus::fail;
    if (t_gp.positive()) {
        tgp.detail = "Ext vanishing and ev bijective";
        if (t_gp.verdict == GPCertificate<F>::Verdict::inconclusive_yes)
            tgp.detail += " [inconclusive: algebra not certified Gorenstein]";
    } else {
        tgp.detail = t_gp.failure;
    }
}

} // namespace detail

inline PipelineReport run_pipeline(const RawCategory& raw, const std::string& source,
                                   FieldSpec field, const PipelineOptions& opts = {}) {
    PipelineReport rep;
    rep.source = source;
    rep.field = field;
    rep.bound = opts.bound;
    rep.seed = opts.seed;
    if (field.is_rationals())
        detail::run_pipeline_t(rep, raw, RationalField{}, opts);
    else
        detail::run_pipeline_t(rep, raw, PrimeField(field.p), opts);
    return rep;
}

inline PipelineReport run_pipeline_file(const CategoryFile& file, const std::string& source,
                                        const PipelineOptions& opts = {}) {
    const FieldSpec field = opts.field_override.value_or(file.field);
    return run_pipeline(file.raw, source, field, opts);
}

} // namespace eicat
