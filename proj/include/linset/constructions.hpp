#pragma once

#include "linset/linear_set.hpp"
#include "linset/subspace.hpp"

namespace linset {

/// Dual of the power basis (1, λ, …, λ^{n−1}) under the trace form:
/// dual_j = δ^{-1} γ_j with δ = f'(λ), pairing to the Kronecker delta.
struct DualBasis {
    Element lambda;
    Element delta;
    std::vector<Element> gammas;
    std::vector<Element> dual;
};

/// g·⟨1, a, …, a^{len-1}⟩.
Subspace power_span(const CtxPtr& ctx, code_t a, int len, code_t g = 1);

/// U = {(x, Tr(x)) : x ∈ F_{q^n}}, rank n.
Subspace trace_graph(const CtxPtr& ctx);

/// U = ⟨1,λ,…,λ^{t1−1}⟩ × ⟨1,λ,…,λ^{t2−1}⟩; needs t1+t2 ≤ deg(λ)+1.
Subspace jvdv(const Element& lambda, int t1, int t2);

DualBasis dual_basis(const Element& lambda);

/// δ^{-1}⟨1,λ,…,λ^{n-ℓ-1}⟩ = ⟨1,λ,…,λ^{ℓ-1}⟩^⊥.
Subspace power_span_dual(const Element& lambda, int ell);

/// U = {(s + b·u1, u2) : s ∈ S̄, (u1,u2) ∈ U′} with U′ over the embedded
/// F_{q^t} and S̄ an F_{q^t}-subspace with S̄ ∩ bF_{q^t} = {0}.
Subspace lift(const Subspace& uprime, int t, const Subspace& sbar, code_t b);

/// U = (S̄ ⊕ b⟨1,…,μ^{m−1}⟩) × ⟨1,…,μ^{j−1}⟩; minimum-size family.
Subspace min_size_family(const Element& mu, const Subspace& sbar, code_t b, int m, int j);

/// lift() of a scattered L_{U′}; the result is an i-club.
Subspace iclub_lift(const Subspace& uprime, int t, const Subspace& sbar, code_t b);

/// Deterministic F_{q^t}-subspace of F_{q^t}-dimension l avoiding F_{q^t} itself.
Subspace canonical_qt_subspace(const CtxPtr& ctx, int t, int l);

/// First element b (in code order) with S̄ ∩ bF_{q^t} = {0}.
code_t default_b(const CtxPtr& ctx, const Subspace& sbar, int t);

} // namespace linset
