#pragma once

// Finite dimensional modules over a category algebra, kept in functor form:
// one space per object, one matrix per morphism. Module homomorphisms are
// per-object matrix families satisfying naturality; hom spaces, kernels,
// images, quotients and direct sums are all computed per object with the
// exact linear kernels from matrix.hpp.

#include "eicat/algebra.hpp"
#include "eicat/matrix.hpp"

#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace eicat {

template <class F>
struct Module {
    Algebra<F> alg;
    std::vector<std::size_t> dims;                  // per object, input index
    std::vector<Matrix<F>> act;                     // per morphism: dims[tgt] x dims[src]
    std::vector<std::vector<std::string>> labels;   // per object basis labels (may be empty)

    const FiniteCategory& cat() const { return alg.cat(); }
    const F& field() const { return alg.field; }

    std::size_t total_dim() const {
        return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    }
    std::size_t offset(std::size_t x) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < x; ++i) off += dims[i];
        return off;
    }

    std::string label(std::size_t x, std::size_t j) const {
        if (x < labels.size() && j < labels[x].size()) return labels[x][j];
        return cat().object_name(x) + ":b" + std::to_string(j);
    }

    // Action of a basis morphism on the total space (scattered block).
    Matrix<F> total_matrix(std::size_t m) const {
        Matrix<F> out(field(), total_dim(), total_dim());
        const std::size_t ro = offset(cat().target(m)), co = offset(cat().source(m));
        for (std::size_t i = 0; i < act[m].rows(); ++i)
            for (std::size_t j = 0; j < act[m].cols(); ++j) out(ro + i, co + j) = act[m](i, j);
        return out;
    }

    bool operator==(const Module& other) const {
        return dims == other.dims && act == other.act;
    }
};

// Functoriality check: identities act as identities and composition is
// respected on every composable pair. Returns the first violation.
template <class F>
std::optional<std::string> functoriality_violation(const Module<F>& m) {
    const FiniteCategory& c = m.cat();
    if (m.dims.size() != c.object_count() || m.act.size() != c.morphism_count())
        return "module data does not match the category";
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        if (m.act[f].rows() != m.dims[c.target(f)] || m.act[f].cols() != m.dims[c.source(f)])
            return "matrix shape mismatch at " + c.morphism_name(f);
    for (std::size_t x = 0; x < c.object_count(); ++x)
        if (!(m.act[c.identity(x)] == Matrix<F>::identity(m.field(), m.dims[x])))
            return "identity of " + c.object_name(x) + " does not act as the identity";
    for (std::size_t g = 0; g < c.morphism_count(); ++g)
        for (std::size_t f = 0; f < c.morphism_count(); ++f) {
            if (!c.composable(g, f)) continue;
            if (!(m.act[c.compose(g, f)] == m.act[g] * m.act[f]))
                return "composition violated on (" + c.morphism_name(g) + ", " +
                       c.morphism_name(f) + ")";
        }
    return std::nullopt;
}

template <class F>
Module<F> module_from_functor(const Algebra<F>& alg, std::vector<std::size_t> dims,
                              std::vector<Matrix<F>> act,
                              std::vector<std::vector<std::string>> labels = {}) {
    Module<F> m{alg, std::move(dims), std::move(act), std::move(labels)};
    if (auto err = functoriality_violation(m)) throw FieldError("module_from_functor: " + *err);
    return m;
}

template <class F>
Module<F> zero_module(const Algebra<F>& alg) {
    const FiniteCategory& c = alg.cat();
    std::vector<Matrix<F>> act(c.morphism_count(), Matrix<F>(alg.field, 0, 0));
    return Module<F>{alg, std::vector<std::size_t>(c.object_count(), 0), std::move(act), {}};
}

// Representable module at an object: y -> kHom(x, y), morphisms acting by
// postcomposition. These are the projective columns of the algebra.
template <class F>
Module<F> representable_module(const Algebra<F>& alg, std::size_t x) {
    const FiniteCategory& c = alg.cat();
    const F& k = alg.field;
    std::vector<std::size_t> dims(c.object_count());
    std::vector<std::vector<std::string>> labels(c.object_count());
    for (std::size_t y = 0; y < c.object_count(); ++y) {
        dims[y] = c.hom(x, y).size();
        for (std::size_t g : c.hom(x, y)) labels[y].push_back(c.morphism_name(g));
    }
    std::vector<Matrix<F>> act;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto& from = c.hom(x, c.source(f));
        const auto& to = c.hom(x, c.target(f));
        Matrix<F> mat(k, to.size(), from.size());
        for (std::size_t j = 0; j < from.size(); ++j) {
            const std::size_t composed = c.compose(f, from[j]);
            for (std::size_t i = 0; i < to.size(); ++i)
                if (to[i] == composed) mat(i, j) = k.one();
        }
        act.push_back(std::move(mat));
    }
    return Module<F>{alg, std::move(dims), std::move(act), std::move(labels)};
}

// t-th column projective in the fixed object order, t = 1..n.
template <class F>
Module<F> column_projective(const Algebra<F>& alg, std::size_t t) {
    const auto order = object_order(alg.cat());
    if (t < 1 || t > order.size()) throw FieldError("column_projective: index out of range");
    return representable_module(alg, order[t - 1]);
}

// The algebra as a left module over itself: the piece at an object is
// spanned by the morphisms with that target, acted on by postcomposition.
template <class F>
Module<F> regular_module(const Algebra<F>& alg) {
    const FiniteCategory& c = alg.cat();
    const F& k = alg.field;
    std::vector<std::vector<std::size_t>> basis(c.object_count());
    for (std::size_t f = 0; f < c.morphism_count(); ++f) basis[c.target(f)].push_back(f);
    std::vector<std::size_t> dims(c.object_count());
    std::vector<std::vector<std::string>> labels(c.object_count());
    for (std::size_t y = 0; y < c.object_count(); ++y) {
        dims[y] = basis[y].size();
        for (std::size_t b : basis[y]) labels[y].push_back(c.morphism_name(b));
    }
    std::vector<Matrix<F>> act;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto& from = basis[c.source(f)];
        const auto& to = basis[c.target(f)];
        Matrix<F> mat(k, to.size(), from.size());
        for (std::size_t j = 0; j < from.size(); ++j) {
            const std::size_t composed = c.compose(f, from[j]);
            for (std::size_t i = 0; i < to.size(); ++i)
                if (to[i] == composed) mat(i, j) = k.one();
        }
        act.push_back(std::move(mat));
    }
    return Module<F>{alg, std::move(dims), std::move(act), std::move(labels)};
}

template <class F>
struct ModuleHom {
    Module<F> source, target;
    std::vector<Matrix<F>> comps;  // per object: target.dims[x] x source.dims[x]

    const F& field() const { return source.field(); }

    bool is_natural() const {
        const FiniteCategory& c = source.cat();
        for (std::size_t f = 0; f < c.morphism_count(); ++f) {
            const std::size_t x = c.source(f), y = c.target(f);
            if (!(target.act[f] * comps[x] == comps[y] * source.act[f])) return false;
        }
        return true;
    }

    bool is_injective() const {
        for (std::size_t x = 0; x < comps.size(); ++x)
            if (rank(comps[x]) != source.dims[x]) return false;
        return true;
    }
    bool is_surjective() const {
        for (std::size_t x = 0; x < comps.size(); ++x)
            if (rank(comps[x]) != target.dims[x]) return false;
        return true;
    }
    bool is_bijective() const { return is_injective() && is_surjective(); }
    bool is_zero() const {
        for (const auto& m : comps)
            if (!m.is_zero()) return false;
        return true;
    }

    // All component entries, object by object, row major.
    Vec<F> flatten() const {
        Vec<F> out;
        for (const auto& m : comps)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
        return out;
    }
};

template <class F>
ModuleHom<F> make_hom(Module<F> source, Module<F> target, std::vector<Matrix<F>> comps) {
    ModuleHom<F> h{std::move(source), std::move(target), std::move(comps)};
    if (h.comps.size() != h.source.dims.size()) throw FieldError("make_hom: component count");
    for (std::size_t x = 0; x < h.comps.size(); ++x)
        if (h.comps[x].rows() != h.target.dims[x] || h.comps[x].cols() != h.source.dims[x])
            throw FieldError("make_hom: component shape at " + h.source.cat().object_name(x));
    if (!h.is_natural()) throw FieldError("make_hom: family is not natural");
    return h;
}

template <class F>
ModuleHom<F> identity_hom(const Module<F>& m) {
    std::vector<Matrix<F>> comps;
    for (std::size_t x = 0; x < m.dims.size(); ++x)
        comps.push_back(Matrix<F>::identity(m.field(), m.dims[x]));
    return ModuleHom<F>{m, m, std::move(comps)};
}

template <class F>
ModuleHom<F> zero_hom(const Module<F>& source, const Module<F>& target) {
    std::vector<Matrix<F>> comps;
    for (std::size_t x = 0; x < source.dims.size(); ++x)
        comps.push_back(Matrix<F>(source.field(), target.dims[x], source.dims[x]));
    return ModuleHom<F>{source, target, std::move(comps)};
}

template <class F>
ModuleHom<F> compose_homs(const ModuleHom<F>& g, const ModuleHom<F>& f) {
    if (!(g.source == f.target)) throw FieldError("compose_homs: middle modules differ");
    std::vector<Matrix<F>> comps;
    for (std::size_t x = 0; x < f.comps.size(); ++x) comps.push_back(g.comps[x] * f.comps[x]);
    return ModuleHom<F>{f.source, g.target, std::move(comps)};
}

// Basis of the space of natural families M -> N, found by solving the
// naturality constraints for all morphisms at once. Deterministic: the
// kernel basis of the constraint matrix in unknown order.
template <class F>
std::vector<ModuleHom<F>> hom_space(const Module<F>& m, const Module<F>& n) {
    const FiniteCategory& c = m.cat();
    const F& k = m.field();
    if (!m.alg.same_as(n.alg)) throw FieldError("hom_space: modules over different algebras");

    std::vector<std::size_t> var_off(c.object_count() + 1, 0);
    for (std::size_t x = 0; x < c.object_count(); ++x)
        var_off[x + 1] = var_off[x] + n.dims[x] * m.dims[x];
    const std::size_t nvars = var_off.back();
    auto var = [&](std::size_t x, std::size_t i, std::size_t j) {
        return var_off[x] + i * m.dims[x] + j;
    };

    std::size_t neqs = 0;
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        neqs += n.dims[c.target(f)] * m.dims[c.source(f)];

    Matrix<F> sys(k, neqs, nvars);
    std::size_t row = 0;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t x = c.source(f), y = c.target(f);
        for (std::size_t r = 0; r < n.dims[y]; ++r)
            for (std::size_t cc = 0; cc < m.dims[x]; ++cc) {
                // (N(f) h_x)(r,cc) - (h_y M(f))(r,cc) = 0
                for (std::size_t l = 0; l < n.dims[x]; ++l)
                    sys(row, var(x, l, cc)) =
                        k.add(sys(row, var(x, l, cc)), n.act[f](r, l));
                for (std::size_t l = 0; l < m.dims[y]; ++l)
                    sys(row, var(y, r, l)) =
                        k.sub(sys(row, var(y, r, l)), m.act[f](l, cc));
                ++row;
            }
    }

    auto sol = solve_linear(sys, Vec<F>(neqs, k.zero()));
    std::vector<ModuleHom<F>> basis;
    for (const auto& v : sol.kernel_basis) {
        std::vector<Matrix<F>> comps;
        for (std::size_t x = 0; x < c.object_count(); ++x) {
            Matrix<F> mat(k, n.dims[x], m.dims[x]);
            for (std::size_t i = 0; i < n.dims[x]; ++i)
                for (std::size_t j = 0; j < m.dims[x]; ++j) mat(i, j) = v[var(x, i, j)];
            comps.push_back(std::move(mat));
        }
        basis.push_back(ModuleHom<F>{m, n, std::move(comps)});
    }
    return basis;
}

// Coordinates of a hom in a given basis of the same hom space.
template <class F>
Vec<F> hom_coordinates(const ModuleHom<F>& h, const std::vector<ModuleHom<F>>& basis) {
    const F& k = h.field();
    const Vec<F> target = h.flatten();
    if (basis.empty()) {
        for (const auto& e : target)
            if (!k.is_zero(e)) throw FieldError("hom_coordinates: hom outside empty basis");
        return {};
    }
    std::vector<Vec<F>> cols;
    for (const auto& b : basis) cols.push_back(b.flatten());
    Matrix<F> mat = Matrix<F>::from_cols(k, cols, target.size());
    auto sol = solve_linear(mat, target);
    if (!sol.particular) throw FieldError("hom_coordinates: hom is not in the span of the basis");
    return *sol.particular;
}

template <class F>
ModuleHom<F> hom_combination(const std::vector<ModuleHom<F>>& basis, const Vec<F>& coeffs) {
    if (basis.empty()) throw FieldError("hom_combination: empty basis");
    const F& k = basis[0].field();
    ModuleHom<F> out = zero_hom(basis[0].source, basis[0].target);
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t x = 0; x < out.comps.size(); ++x)
            out.comps[x] = out.comps[x] + basis[b].comps[x].scaled(coeffs[b]);
    return out;
}

template <class F>
struct SubmoduleResult {
    Module<F> module;
    ModuleHom<F> inclusion;  // into the ambient module
};

namespace detail {

// Expresses v in the span of the given basis columns (must be solvable).
template <class F>
Vec<F> coords_in_basis(const F& k, const std::vector<Vec<F>>& basis, const Vec<F>& v) {
    if (basis.empty()) {
        for (const auto& e : v)
            if (!k.is_zero(e)) throw FieldError("coords_in_basis: vector outside zero space");
        return {};
    }
    Matrix<F> mat = Matrix<F>::from_cols(k, basis, v.size());
    auto sol = solve_linear(mat, v);
    if (!sol.particular) throw FieldError("coords_in_basis: vector not in span");
    return *sol.particular;
}

// Induced matrices on per-object subspaces: subspace bases must be stable
// under the ambient action.
template <class F>
std::vector<Matrix<F>> induced_action(const Module<F>& ambient,
                                      const std::vector<std::vector<Vec<F>>>& basis) {
    const FiniteCategory& c = ambient.cat();
    const F& k = ambient.field();
    std::vector<Matrix<F>> act;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t x = c.source(f), y = c.target(f);
        Matrix<F> mat(k, basis[y].size(), basis[x].size());
        for (std::size_t j = 0; j < basis[x].size(); ++j) {
            Vec<F> img = ambient.act[f].apply(basis[x][j]);
            Vec<F> coords = coords_in_basis(k, basis[y], img);
            for (std::size_t i = 0; i < basis[y].size(); ++i) mat(i, j) = coords[i];
        }
        act.push_back(std::move(mat));
    }
    return act;
}

} // namespace detail

// Kernel of a hom as a submodule of its source. Per-object kernels are
// stable under the action by naturality.
template <class F>
SubmoduleResult<F> kernel_module(const ModuleHom<F>& h) {
    const FiniteCategory& c = h.source.cat();
    const F& k = h.field();
    std::vector<std::vector<Vec<F>>> basis(c.object_count());
    for (std::size_t x = 0; x < c.object_count(); ++x)
        basis[x] = solve_linear(h.comps[x], Vec<F>(h.target.dims[x], k.zero())).kernel_basis;

    Module<F> ker{h.source.alg, {}, detail::induced_action(h.source, basis), {}};
    for (const auto& b : basis) ker.dims.push_back(b.size());
    std::vector<Matrix<F>> inc;
    for (std::size_t x = 0; x < c.object_count(); ++x)
        inc.push_back(Matrix<F>::from_cols(k, basis[x], h.source.dims[x]));
    return {ker, ModuleHom<F>{ker, h.source, std::move(inc)}};
}

// Image of a hom as a submodule of its target. Deterministic basis: the
// first independent image columns in order.
template <class F>
SubmoduleResult<F> image_module(const ModuleHom<F>& h) {
    const FiniteCategory& c = h.source.cat();
    const F& k = h.field();
    std::vector<std::vector<Vec<F>>> basis(c.object_count());
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        std::vector<Vec<F>> rows;
        for (std::size_t j = 0; j < h.source.dims[x]; ++j) {
            Vec<F> cand = h.comps[x].col(j);
            if (rows.empty() ||
                !in_span(k, rref(Matrix<F>::from_rows(k, rows, cand.size())), cand)) {
                bool nonzero = false;
                for (const auto& e : cand)
                    if (!k.is_zero(e)) nonzero = true;
                if (nonzero) rows.push_back(cand);
            }
        }
        basis[x] = rows;
    }
    Module<F> img{h.target.alg, {}, detail::induced_action(h.target, basis), {}};
    for (const auto& b : basis) img.dims.push_back(b.size());
    std::vector<Matrix<F>> inc;
    for (std::size_t x = 0; x < c.object_count(); ++x)
        inc.push_back(Matrix<F>::from_cols(k, basis[x], h.target.dims[x]));
    return {img, ModuleHom<F>{img, h.target, std::move(inc)}};
}

template <class F>
struct QuotientResult {
    Module<F> module;
    ModuleHom<F> projection;  // from the ambient module
};

// Quotient of a module by the image of an inclusion. Representatives are
// the first standard basis vectors independent modulo the submodule.
template <class F>
QuotientResult<F> quotient_module(const Module<F>& m, const ModuleHom<F>& sub_inclusion) {
    const FiniteCategory& c = m.cat();
    const F& k = m.field();
    if (!(sub_inclusion.target == m)) throw FieldError("quotient_module: inclusion target mismatch");

    std::vector<std::vector<Vec<F>>> sub(c.object_count()), reps(c.object_count());
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        for (std::size_t j = 0; j < sub_inclusion.source.dims[x]; ++j)
            sub[x].push_back(sub_inclusion.comps[x].col(j));
        std::vector<Vec<F>> full;
        for (std::size_t j = 0; j < m.dims[x]; ++j) {
            Vec<F> e(m.dims[x], k.zero());
            e[j] = k.one();
            full.push_back(std::move(e));
        }
        reps[x] = quotient_basis(k, full, sub[x], m.dims[x]);
    }

    // coordinates modulo the submodule: solve against [reps | sub]
    auto quo_coords = [&](std::size_t x, const Vec<F>& v) {
        std::vector<Vec<F>> cols = reps[x];
        for (const auto& s : sub[x]) cols.push_back(s);
        Vec<F> coords = detail::coords_in_basis(k, cols, v);
        coords.resize(reps[x].size());
        return coords;
    };

    Module<F> q{m.alg, {}, {}, {}};
    for (const auto& r : reps) q.dims.push_back(r.size());
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t x = c.source(f), y = c.target(f);
        Matrix<F> mat(k, q.dims[y], q.dims[x]);
        for (std::size_t j = 0; j < q.dims[x]; ++j) {
            Vec<F> coords = quo_coords(y, m.act[f].apply(reps[x][j]));
            for (std::size_t i = 0; i < q.dims[y]; ++i) mat(i, j) = coords[i];
        }
        q.act.push_back(std::move(mat));
    }
    std::vector<Matrix<F>> proj;
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        Matrix<F> mat(k, q.dims[x], m.dims[x]);
        for (std::size_t j = 0; j < m.dims[x]; ++j) {
            Vec<F> e(m.dims[x], k.zero());
            e[j] = k.one();
            Vec<F> coords = quo_coords(x, e);
            for (std::size_t i = 0; i < q.dims[x]; ++i) mat(i, j) = coords[i];
        }
        proj.push_back(std::move(mat));
    }
    return {q, ModuleHom<F>{m, q, std::move(proj)}};
}

template <class F>
struct DirectSum {
    Module<F> module;
    std::vector<ModuleHom<F>> injections;
    std::vector<ModuleHom<F>> projections;
};

template <class F>
DirectSum<F> direct_sum(const std::vector<Module<F>>& parts) {
    if (parts.empty()) throw FieldError("direct_sum: no summands");
    const FiniteCategory& c = parts[0].cat();
    const F& k = parts[0].field();
    Module<F> sum{parts[0].alg, std::vector<std::size_t>(c.object_count(), 0), {}, {}};
    for (const auto& p : parts)
        for (std::size_t x = 0; x < c.object_count(); ++x) sum.dims[x] += p.dims[x];
    sum.labels.assign(c.object_count(), {});
    for (std::size_t pi = 0; pi < parts.size(); ++pi)
        for (std::size_t x = 0; x < c.object_count(); ++x)
            for (std::size_t j = 0; j < parts[pi].dims[x]; ++j)
                sum.labels[x].push_back("s" + std::to_string(pi + 1) + "." +
                                        parts[pi].label(x, j));
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t x = c.source(f), y = c.target(f);
        Matrix<F> mat(k, sum.dims[y], sum.dims[x]);
        std::size_t ro = 0, co = 0;
        for (const auto& p : parts) {
            for (std::size_t i = 0; i < p.dims[y]; ++i)
                for (std::size_t j = 0; j < p.dims[x]; ++j) mat(ro + i, co + j) = p.act[f](i, j);
            ro += p.dims[y];
            co += p.dims[x];
        }
        sum.act.push_back(std::move(mat));
    }

    DirectSum<F> out{sum, {}, {}};
    std::vector<std::size_t> off(c.object_count(), 0);
    for (const auto& p : parts) {
        std::vector<Matrix<F>> inj, proj;
        for (std::size_t x = 0; x < c.object_count(); ++x) {
            Matrix<F> in(k, sum.dims[x], p.dims[x]);
            Matrix<F> pr(k, p.dims[x], sum.dims[x]);
            for (std::size_t j = 0; j < p.dims[x]; ++j) {
                in(off[x] + j, j) = k.one();
                pr(j, off[x] + j) = k.one();
            }
            inj.push_back(std::move(in));
            proj.push_back(std::move(pr));
        }
        out.injections.push_back(ModuleHom<F>{p, sum, std::move(inj)});
        out.projections.push_back(ModuleHom<F>{sum, p, std::move(proj)});
        for (std::size_t x = 0; x < c.object_count(); ++x) off[x] += p.dims[x];
    }
    return out;
}

struct Generator {
    std::size_t object;
    std::size_t index;  // basis index inside the object piece
};

// Greedy generating set: scan basis vectors object by object (object order
// when defined, input order otherwise) and keep each vector not already in
// the submodule generated by the kept ones.
template <class F>
std::vector<Generator> greedy_generators(const Module<F>& m) {
    const FiniteCategory& c = m.cat();
    const F& k = m.field();
    std::vector<std::size_t> scan;
    try {
        scan = object_order(c);
    } catch (const FieldError&) {
        for (std::size_t x = 0; x < c.object_count(); ++x) scan.push_back(x);
    }

    std::vector<std::vector<Vec<F>>> span(c.object_count());
    auto in_current_span = [&](std::size_t x, const Vec<F>& v) {
        if (m.dims[x] == 0) return true;
        if (span[x].empty()) {
            for (const auto& e : v)
                if (!k.is_zero(e)) return false;
            return true;
        }
        return in_span(k, rref(Matrix<F>::from_rows(k, span[x], m.dims[x])), v);
    };

    std::vector<Generator> gens;
    for (std::size_t x : scan) {
        for (std::size_t j = 0; j < m.dims[x]; ++j) {
            Vec<F> e(m.dims[x], k.zero());
            e[j] = k.one();
            if (in_current_span(x, e)) continue;
            gens.push_back({x, j});
            for (std::size_t f = 0; f < c.morphism_count(); ++f) {
                if (c.source(f) != x) continue;
                Vec<F> img = m.act[f].apply(e);
                if (!in_current_span(c.target(f), img)) span[c.target(f)].push_back(img);
            }
        }
    }
    return gens;
}

template <class F>
struct ProjectiveCover {
    Module<F> cover;  // direct sum of representables, one per generator
    ModuleHom<F> onto;
    std::vector<Generator> generators;
};

// Cover by representables along a greedy generating set. The hom sends the
// canonical generator of the summand at x to the chosen basis vector, i.e.
// gamma in Hom(x, y) maps to M(gamma) applied to it.
template <class F>
ProjectiveCover<F> projective_cover_greedy(const Module<F>& m) {
    const FiniteCategory& c = m.cat();
    const F& k = m.field();
    const auto gens = greedy_generators(m);
    if (gens.empty()) {
        Module<F> z = zero_module(m.alg);
        return {z, ModuleHom<F>{z, m, [&] {
                    std::vector<Matrix<F>> comps;
                    for (std::size_t x = 0; x < c.object_count(); ++x)
                        comps.push_back(Matrix<F>(k, m.dims[x], 0));
                    return comps;
                }()},
                gens};
    }
    std::vector<Module<F>> parts;
    for (const auto& g : gens) parts.push_back(representable_module(m.alg, g.object));
    DirectSum<F> ds = direct_sum(parts);

    std::vector<Matrix<F>> comps;
    for (std::size_t y = 0; y < c.object_count(); ++y) {
        Matrix<F> mat(k, m.dims[y], ds.module.dims[y]);
        std::size_t col = 0;
        for (const auto& g : gens)
            for (std::size_t gi : c.hom(g.object, y)) {
                Vec<F> e(m.dims[g.object], k.zero());
                e[g.index] = k.one();
                Vec<F> img = m.act[gi].apply(e);
                for (std::size_t i = 0; i < m.dims[y]; ++i) mat(i, col) = img[i];
                ++col;
            }
        comps.push_back(std::move(mat));
    }
    return {ds.module, ModuleHom<F>{ds.module, m, std::move(comps)}, gens};
}

template <class F>
struct SectionSearch {
    std::optional<ModuleHom<F>> section;  // s with theta o s = id
    std::size_t solution_space_dim = 0;   // dimension of the affine solution set when nonempty
};

// Complete linear search for a section of a surjection theta: M -> N: the
// naturality constraints of s and theta_x s_x = id are solved as one exact
// system, so an empty result proves no section exists.
template <class F>
SectionSearch<F> find_section(const ModuleHom<F>& theta) {
    const FiniteCategory& c = theta.source.cat();
    const F& k = theta.field();
    if (!theta.is_surjective()) throw FieldError("find_section: map is not surjective");
    const Module<F>& m = theta.source;
    const Module<F>& n = theta.target;

    std::vector<std::size_t> var_off(c.object_count() + 1, 0);
    for (std::size_t x = 0; x < c.object_count(); ++x)
        var_off[x + 1] = var_off[x] + m.dims[x] * n.dims[x];
    const std::size_t nvars = var_off.back();
    auto var = [&](std::size_t x, std::size_t i, std::size_t j) {
        return var_off[x] + i * n.dims[x] + j;  // s_x is m.dims[x] rows by n.dims[x] cols
    };

    std::size_t neqs = 0;
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
        neqs += m.dims[c.target(f)] * n.dims[c.source(f)];
    for (std::size_t x = 0; x < c.object_count(); ++x) neqs += n.dims[x] * n.dims[x];

    Matrix<F> sys(k, neqs, nvars);
    Vec<F> rhs(neqs, k.zero());
    std::size_t row = 0;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t x = c.source(f), y = c.target(f);
        // M(f) s_x = s_y N(f)
        for (std::size_t r = 0; r < m.dims[y]; ++r)
            for (std::size_t cc = 0; cc < n.dims[x]; ++cc) {
                for (std::size_t l = 0; l < m.dims[x]; ++l)
                    sys(row, var(x, l, cc)) = k.add(sys(row, var(x, l, cc)), m.act[f](r, l));
                for (std::size_t l = 0; l < n.dims[y]; ++l)
                    sys(row, var(y, r, l)) = k.sub(sys(row, var(y, r, l)), n.act[f](l, cc));
                ++row;
            }
    }
    for (std::size_t x = 0; x < c.object_count(); ++x)
        for (std::size_t r = 0; r < n.dims[x]; ++r)
            for (std::size_t cc = 0; cc < n.dims[x]; ++cc) {
                // (theta_x s_x)(r, cc) = delta(r, cc)
                for (std::size_t l = 0; l < m.dims[x]; ++l)
                    sys(row, var(x, l, cc)) = k.add(sys(row, var(x, l, cc)), theta.comps[x](r, l));
                if (r == cc) rhs[row] = k.one();
                ++row;
            }

    auto sol = solve_linear(sys, rhs);
    SectionSearch<F> out;
    if (!sol.particular) return out;
    out.solution_space_dim = sol.kernel_basis.size();
    std::vector<Matrix<F>> comps;
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        Matrix<F> mat(k, m.dims[x], n.dims[x]);
        for (std::size_t i = 0; i < m.dims[x]; ++i)
            for (std::size_t j = 0; j < n.dims[x]; ++j) mat(i, j) = (*sol.particular)[var(x, i, j)];
        comps.push_back(std::move(mat));
    }
    out.section = ModuleHom<F>{n, m, std::move(comps)};
    return out;
}

// Module isomorphism search: necessary dimension checks first, then an
// invertible element of Hom(M, N) is looked for, exhaustively over small
// prime fields and with seeded random coefficients otherwise.
template <class F>
std::optional<ModuleHom<F>> find_isomorphism(const Module<F>& m, const Module<F>& n,
                                             std::uint64_t seed = 1) {
    if (m.dims != n.dims) return std::nullopt;
    if (m.total_dim() == 0) return zero_hom(m, n);
    auto basis = hom_space(m, n);
    if (basis.empty()) return std::nullopt;
    if (hom_space(n, m).size() != basis.size()) return std::nullopt;

    const F& k = m.field();
    const std::size_t r = basis.size();
    const std::uint64_t p = k.characteristic();

    double combos = 1;
    for (std::size_t i = 0; i < r && p != 0; ++i) combos *= static_cast<double>(p);
    if (p != 0 && combos <= 65536.0) {
        std::vector<std::uint64_t> idx(r, 0);
        while (true) {
            Vec<F> coeffs;
            bool all_zero = true;
            for (std::size_t i = 0; i < r; ++i) {
                coeffs.push_back(k.from_int(static_cast<long long>(idx[i])));
                if (idx[i]) all_zero = false;
            }
            if (!all_zero) {
                ModuleHom<F> h = hom_combination(basis, coeffs);
                if (h.is_bijective()) return h;
            }
            std::size_t d = 0;
            while (d < r && ++idx[d] == p) idx[d++] = 0;
            if (d == r) break;
        }
        return std::nullopt;
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coeff(-10, 10);
    for (int trial = 0; trial < 512; ++trial) {
        Vec<F> coeffs;
        for (std::size_t i = 0; i < r; ++i) coeffs.push_back(k.from_int(coeff(rng)));
        ModuleHom<F> h = hom_combination(basis, coeffs);
        if (h.is_bijective()) return h;
    }
    return std::nullopt;
}

} // namespace eicat
