#pragma once

#include <array>
#include <vector>

#include "linset/field.hpp"

namespace linset {

/// F_q-subspace of F_{q^n} (Line ambient) or F_{q^n}^2 (Plane ambient),
/// stored as a reduced row-echelon basis matrix over F_q. Equal subspaces
/// have bit-identical matrices, so equality is matrix equality.
class Subspace {
public:
    enum class Ambient { Line = 1, Plane = 2 };

    static Subspace zero(CtxPtr ctx, Ambient amb);
    static Subspace full_line(const CtxPtr& ctx);
    static Subspace span_line(const CtxPtr& ctx, const std::vector<code_t>& vecs);
    static Subspace span_plane(const CtxPtr& ctx, const std::vector<std::array<code_t, 2>>& vecs);
    /// Raw F_q rows (length n or 2n); reduced to canonical form.
    static Subspace from_rows(CtxPtr ctx, Ambient amb, std::vector<std::vector<fq_t>> rows);

    const CtxPtr& ctx() const { return ctx_; }
    Ambient ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }
    const std::vector<std::vector<fq_t>>& rows() const { return rows_; }

    /// Field element of one component of a basis row.
    code_t row_code(int r, int component = 0) const;
    std::vector<code_t> basis_line() const;
    std::vector<std::array<code_t, 2>> basis_plane() const;

    bool contains_row(const std::vector<fq_t>& v) const;
    bool contains_code(code_t x) const; // Line ambient
    bool is_zero() const { return rows_.empty(); }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ctx_.get() == b.ctx_.get() && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    /// {a·s : s ∈ S}, Line ambient, a ≠ 0.
    Subspace scale(code_t a) const;
    /// {s^{p^i} : s ∈ S}; componentwise on Plane ambient.
    Subspace frob_image(long long i) const;

private:
    Subspace(CtxPtr ctx, Ambient amb, int ncols) : ctx_(std::move(ctx)), ambient_(amb), ncols_(ncols) {}
    CtxPtr ctx_;
    Ambient ambient_;
    int ncols_;
    std::vector<std::vector<fq_t>> rows_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// F_q-span of all pairwise products, ⟨ST⟩.
Subspace product_space(const Subspace& s, const Subspace& t);

/// Annihilator under the trace form Tr(ab).
Subspace trace_dual(const Subspace& s);

/// Largest t | n such that S is an F_{q^t}-subspace; 1 for every nonzero S.
int subfield_linearity(const Subspace& s);

/// The intermediate field F_{q^t} as a Line subspace, t | n.
Subspace intermediate_field_subspace(const CtxPtr& ctx, int t);

/// S × T as a Plane subspace: rows (s, 0) and (0, t).
Subspace cartesian(const Subspace& s, const Subspace& t);

/// True iff every coordinate of every basis row lies in the embedded F_{q^t}.
bool coords_in_subfield(const Subspace& u, int t);

/// In-place reduced row echelon form over F_q; returns the rank. Zero rows
/// are removed and rows are ordered by pivot column.
int rref(const FieldCtx& ctx, std::vector<std::vector<fq_t>>& rows);

} // namespace linset
