#pragma once

// Duality machinery. The algebra dual of a module M is Hom_A(M, A) as a
// module over the opposite algebra; its piece at an object u is the space
// of module maps M -> C_u into the column at u, since the column is exactly
// the span of the morphisms with source u inside the regular module. The
// evaluation map into the double dual is built column by column from the
// concrete pairing ev(m)(f) = f(m).

#include "eicat/module.hpp"

namespace eicat {

template <class F>
struct DualModuleData {
    Algebra<F> op_alg;
    Module<F> dual;  // over op_alg
    // per object u of the original category: basis of Hom(M, C_u),
    // aligned with the basis of dual at u
    std::vector<std::vector<ModuleHom<F>>> hom_basis;
};

template <class F>
DualModuleData<F> dual_data(const Module<F>& m) {
    const FiniteCategory& c = m.cat();
    const F& k = m.field();
    DualModuleData<F> out{opposite_algebra(m.alg), Module<F>{}, {}};
    const FiniteCategory& oc = out.op_alg.cat();

    std::vector<Module<F>> columns;
    for (std::size_t u = 0; u < c.object_count(); ++u)
        columns.push_back(representable_module(m.alg, u));
    for (std::size_t u = 0; u < c.object_count(); ++u)
        out.hom_basis.push_back(hom_space(m, columns[u]));

    Module<F>& dual = out.dual;
    dual.alg = out.op_alg;
    for (std::size_t u = 0; u < c.object_count(); ++u)
        dual.dims.push_back(out.hom_basis[u].size());

    // op morphism gamma: v -> u (gamma: u -> v in C) sends h to the family
    // y -> (delta -> delta o gamma) o h_y, a map M -> C_u.
    for (std::size_t gamma = 0; gamma < c.morphism_count(); ++gamma) {
        const std::size_t u = c.source(gamma), v = c.target(gamma);
        Matrix<F> mat(k, dual.dims[oc.target(gamma)], dual.dims[oc.source(gamma)]);
        for (std::size_t i = 0; i < out.hom_basis[v].size(); ++i) {
            std::vector<Matrix<F>> comps;
            for (std::size_t y = 0; y < c.object_count(); ++y) {
                const auto& from = c.hom(v, y);
                const auto& to = c.hom(u, y);
                Matrix<F> pre(k, to.size(), from.size());
                for (std::size_t j = 0; j < from.size(); ++j) {
                    const std::size_t composed = c.compose(from[j], gamma);
                    for (std::size_t r = 0; r < to.size(); ++r)
                        if (to[r] == composed) pre(r, j) = k.one();
                }
                comps.push_back(pre * out.hom_basis[v][i].comps[y]);
            }
            ModuleHom<F> moved{m, columns[u], std::move(comps)};
            Vec<F> coords = hom_coordinates(moved, out.hom_basis[u]);
            for (std::size_t r = 0; r < coords.size(); ++r) mat(r, i) = coords[r];
        }
        dual.act.push_back(std::move(mat));
    }
    if (auto err = functoriality_violation(dual))
        throw FieldError("dual_data: dual is not a module (internal error): " + *err);
    return out;
}

template <class F>
Module<F> dual_module(const Module<F>& m) {
    return dual_data(m).dual;
}

// k-linear dual: same dimensions, transposed actions, over the opposite
// algebra. Applying it twice gives back the original matrices.
template <class F>
Module<F> vector_dual(const Module<F>& m) {
    Module<F> d{opposite_algebra(m.alg), m.dims, {}, {}};
    for (const auto& a : m.act) d.act.push_back(a.transposed());
    if (auto err = functoriality_violation(d))
        throw FieldError("vector_dual: not a module (internal error): " + *err);
    return d;
}

template <class F>
struct Evaluation {
    Module<F> bidual;   // over the original algebra
    ModuleHom<F> ev;    // M -> M**
    bool injective = false, surjective = false, bijective = false;
};

template <class F>
Evaluation<F> evaluation_map(const Module<F>& m) {
    const FiniteCategory& c = m.cat();
    const F& k = m.field();
    DualModuleData<F> d1 = dual_data(m);
    DualModuleData<F> d2 = dual_data(d1.dual);

    // the double opposite has the same tables as the original category, so
    // the bidual transfers verbatim to a module over the original algebra
    Evaluation<F> out{Module<F>{m.alg, d2.dual.dims, d2.dual.act, {}}, ModuleHom<F>{}, false,
                      false, false};
    if (auto err = functoriality_violation(out.bidual))
        throw FieldError("evaluation_map: bidual transfer failed (internal error): " + *err);

    const FiniteCategory& oc = d1.op_alg.cat();
    std::vector<Module<F>> op_columns;
    for (std::size_t x = 0; x < c.object_count(); ++x)
        op_columns.push_back(representable_module(d1.op_alg, x));

    std::vector<Matrix<F>> comps;
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        Matrix<F> mat(k, out.bidual.dims[x], m.dims[x]);
        for (std::size_t j = 0; j < m.dims[x]; ++j) {
            // the family u -> (h -> h_x(m_j)) : M*(u) -> kHom(u, x)
            std::vector<Matrix<F>> fam;
            for (std::size_t u = 0; u < oc.object_count(); ++u) {
                const auto& hom_ux = c.hom(u, x);  // same list and order as oc.hom(x, u)
                Matrix<F> fm(k, hom_ux.size(), d1.dual.dims[u]);
                for (std::size_t i = 0; i < d1.dual.dims[u]; ++i)
                    for (std::size_t r = 0; r < hom_ux.size(); ++r)
                        fm(r, i) = d1.hom_basis[u][i].comps[x](r, j);
                fam.push_back(std::move(fm));
            }
            ModuleHom<F> phi{d1.dual, op_columns[x], std::move(fam)};
            Vec<F> coords = hom_coordinates(phi, d2.hom_basis[x]);
            for (std::size_t r = 0; r < coords.size(); ++r) mat(r, j) = coords[r];
        }
        comps.push_back(std::move(mat));
    }
    out.ev = ModuleHom<F>{m, out.bidual, std::move(comps)};
    if (!out.ev.is_natural())
        throw FieldError("evaluation_map: evaluation is not natural (internal error)");
    out.injective = out.ev.is_injective();
    out.surjective = out.ev.is_surjective();
    out.bijective = out.injective && out.surjective;
    return out;
}

} // namespace eicat
