#include "linset/subspace.hpp"

#include <algorithm>

namespace linset {

int rref(const FieldCtx& ctx, std::vector<std::vector<fq_t>>& rows) {
    if (rows.empty()) return 0;
    const int ncols = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
        int pr = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(rows[rank], rows[pr]);
        fq_t iv = ctx.fq_inv(rows[rank][c]);
        if (iv != 1)
            for (int cc = c; cc < ncols; ++cc) rows[rank][cc] = ctx.fq_mul(iv, rows[rank][cc]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            fq_t f = rows[r][c];
            for (int cc = c; cc < ncols; ++cc)
                rows[r][cc] = ctx.fq_sub(rows[r][cc], ctx.fq_mul(f, rows[rank][cc]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

namespace {

std::vector<fq_t> line_row(const FieldCtx& ctx, code_t x) { return ctx.coords(x); }

std::vector<fq_t> plane_row(const FieldCtx& ctx, code_t x, code_t y) {
    std::vector<fq_t> r = ctx.coords(x);
    std::vector<fq_t> r2 = ctx.coords(y);
    r.insert(r.end(), r2.begin(), r2.end());
    return r;
}

} // namespace

Subspace Subspace::zero(CtxPtr ctx, Ambient amb) {
    int ncols = (amb == Ambient::Line ? 1 : 2) * ctx->n();
    return Subspace(std::move(ctx), amb, ncols);
}

Subspace Subspace::full_line(const CtxPtr& ctx) {
    std::vector<code_t> basis;
    for (int i = 0; i < ctx->n(); ++i) basis.push_back(ctx->pow(ctx->lambda(), i));
    return span_line(ctx, basis);
}

Subspace Subspace::span_line(const CtxPtr& ctx, const std::vector<code_t>& vecs) {
    std::vector<std::vector<fq_t>> rows;
    rows.reserve(vecs.size());
    for (code_t v : vecs) rows.push_back(line_row(*ctx, v));
    return from_rows(ctx, Ambient::Line, std::move(rows));
}

Subspace Subspace::span_plane(const CtxPtr& ctx, const std::vector<std::array<code_t, 2>>& vecs) {
    std::vector<std::vector<fq_t>> rows;
    rows.reserve(vecs.size());
    for (auto& v : vecs) rows.push_back(plane_row(*ctx, v[0], v[1]));
    return from_rows(ctx, Ambient::Plane, std::move(rows));
}

Subspace Subspace::from_rows(CtxPtr ctx, Ambient amb, std::vector<std::vector<fq_t>> rows) {
    int ncols = (amb == Ambient::Line ? 1 : 2) * ctx->n();
    for (auto& r : rows)
        if (static_cast<int>(r.size()) != ncols) throw MixedAmbient("row length does not match ambient");
    Subspace s(std::move(ctx), amb, ncols);
    rref(*s.ctx_, rows);
    s.rows_ = std::move(rows);
    return s;
}

code_t Subspace::row_code(int r, int component) const {
    const int n = ctx_->n();
    std::vector<fq_t> c(rows_[r].begin() + component * n, rows_[r].begin() + (component + 1) * n);
    return ctx_->from_coords(c);
}

std::vector<code_t> Subspace::basis_line() const {
    std::vector<code_t> b;
    for (int r = 0; r < dim(); ++r) b.push_back(row_code(r, 0));
    return b;
}

std::vector<std::array<code_t, 2>> Subspace::basis_plane() const {
    std::vector<std::array<code_t, 2>> b;
    for (int r = 0; r < dim(); ++r) b.push_back({row_code(r, 0), row_code(r, 1)});
    return b;
}

bool Subspace::contains_row(const std::vector<fq_t>& v) const {
    std::vector<fq_t> w = v;
    // Reduce against the echelon basis.
    for (const auto& row : rows_) {
        int pc = 0;
        while (pc < ncols_ && row[pc] == 0) ++pc;
        if (pc < ncols_ && w[pc] != 0) {
            fq_t f = w[pc];
            for (int c = pc; c < ncols_; ++c) w[c] = ctx_->fq_sub(w[c], ctx_->fq_mul(f, row[c]));
        }
    }
    return std::all_of(w.begin(), w.end(), [](fq_t x) { return x == 0; });
}

bool Subspace::contains_code(code_t x) const {
    if (ambient_ != Ambient::Line) throw MixedAmbient("contains_code needs Line ambient");
    return contains_row(line_row(*ctx_, x));
}

Subspace Subspace::scale(code_t a) const {
    if (ambient_ != Ambient::Line) throw MixedAmbient("scale needs Line ambient");
    if (a == 0) throw ZeroScalar("scaling by zero collapses the subspace");
    std::vector<code_t> basis;
    for (int r = 0; r < dim(); ++r) basis.push_back(ctx_->mul(a, row_code(r, 0)));
    return span_line(ctx_, basis);
}

Subspace Subspace::frob_image(long long i) const {
    std::vector<std::vector<fq_t>> rows;
    for (int r = 0; r < dim(); ++r) {
        if (ambient_ == Ambient::Line)
            rows.push_back(line_row(*ctx_, ctx_->frob(row_code(r, 0), i)));
        else
            rows.push_back(plane_row(*ctx_, ctx_->frob(row_code(r, 0), i), ctx_->frob(row_code(r, 1), i)));
    }
    return from_rows(ctx_, ambient_, std::move(rows));
}

namespace {
void check_pair(const Subspace& a, const Subspace& b) {
    if (a.ctx().get() != b.ctx().get() || a.ambient() != b.ambient())
        throw MixedAmbient("subspaces from different contexts or ambients");
}
} // namespace

Subspace sum(const Subspace& a, const Subspace& b) {
    check_pair(a, b);
    std::vector<std::vector<fq_t>> rows = a.rows();
    rows.insert(rows.end(), b.rows().begin(), b.rows().end());
    return Subspace::from_rows(a.ctx(), a.ambient(), std::move(rows));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    check_pair(a, b);
    // Zassenhaus: rref of [A|A; B|0]; rows with zero left block carry the
    // intersection in the right block.
    const int m = a.ncols();
    std::vector<std::vector<fq_t>> big;
    for (const auto& r : a.rows()) {
        std::vector<fq_t> row(2 * m, 0);
        std::copy(r.begin(), r.end(), row.begin());
        std::copy(r.begin(), r.end(), row.begin() + m);
        big.push_back(std::move(row));
    }
    for (const auto& r : b.rows()) {
        std::vector<fq_t> row(2 * m, 0);
        std::copy(r.begin(), r.end(), row.begin());
        big.push_back(std::move(row));
    }
    rref(*a.ctx(), big);
    std::vector<std::vector<fq_t>> inter;
    for (const auto& row : big) {
        bool left_zero = std::all_of(row.begin(), row.begin() + m, [](fq_t x) { return x == 0; });
        if (left_zero) inter.emplace_back(row.begin() + m, row.end());
    }
    return Subspace::from_rows(a.ctx(), a.ambient(), std::move(inter));
}

Subspace product_space(const Subspace& s, const Subspace& t) {
    check_pair(s, t);
    if (s.ambient() != Subspace::Ambient::Line) throw MixedAmbient("product_space needs Line ambient");
    const auto& ctx = s.ctx();
    std::vector<code_t> prods;
    for (code_t x : s.basis_line())
        for (code_t y : t.basis_line()) prods.push_back(ctx->mul(x, y));
    return Subspace::span_line(ctx, prods);
}

Subspace trace_dual(const Subspace& s) {
    if (s.ambient() != Subspace::Ambient::Line) throw MixedAmbient("trace_dual needs Line ambient");
    const auto& ctx = s.ctx();
    const int n = ctx->n();
    // Gram matrix of the coordinate basis under Tr(ab).
    std::vector<std::vector<fq_t>> gram(n, std::vector<fq_t>(n));
    std::vector<code_t> basis(n);
    for (int i = 0; i < n; ++i) {
        std::vector<fq_t> c(n, 0);
        c[i] = 1;
        basis[i] = ctx->from_coords(c);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) gram[i][j] = gram[j][i] = ctx->trace_form(basis[i], basis[j]);
    // Constraints: (row · G) a = 0 for each basis row of S.
    std::vector<std::vector<fq_t>> cons;
    for (const auto& row : s.rows()) {
        std::vector<fq_t> c(n, 0);
        for (int j = 0; j < n; ++j) {
            fq_t acc = 0;
            for (int i = 0; i < n; ++i) acc = ctx->fq_add(acc, ctx->fq_mul(row[i], gram[i][j]));
            c[j] = acc;
        }
        cons.push_back(std::move(c));
    }
    int rank = rref(*ctx, cons);
    // Nullspace of the constraint matrix.
    std::vector<int> pivots(rank);
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < rank; ++r) {
        int pc = 0;
        while (cons[r][pc] == 0) ++pc;
        pivots[r] = pc;
        is_pivot[pc] = true;
    }
    std::vector<std::vector<fq_t>> null_rows;
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<fq_t> v(n, 0);
        v[fc] = 1;
        for (int r = 0; r < rank; ++r) v[pivots[r]] = ctx->fq_neg(cons[r][fc]);
        null_rows.push_back(std::move(v));
    }
    return Subspace::from_rows(ctx, Subspace::Ambient::Line, std::move(null_rows));
}

int subfield_linearity(const Subspace& s) {
    if (s.is_zero()) throw BadParams("subfield_linearity needs a nonzero subspace");
    const auto& ctx = s.ctx();
    const int n = ctx->n();
    for (int t = n; t > 1; --t) {
        if (n % t != 0 || s.dim() % t != 0) continue;
        code_t w = ctx->subfield_generator(t);
        if (s.scale(w) == s) return t;
    }
    return 1;
}

Subspace intermediate_field_subspace(const CtxPtr& ctx, int t) {
    code_t w = ctx->subfield_generator(t);
    std::vector<code_t> basis;
    for (int i = 0; i < t; ++i) basis.push_back(ctx->pow(w, i));
    Subspace s = Subspace::span_line(ctx, basis);
    if (s.dim() != t) throw InternalContradiction("intermediate field basis degenerate");
    return s;
}

Subspace cartesian(const Subspace& s, const Subspace& t) {
    if (s.ctx().get() != t.ctx().get()) throw MixedAmbient("cartesian needs one context");
    if (s.ambient() != Subspace::Ambient::Line || t.ambient() != Subspace::Ambient::Line)
        throw MixedAmbient("cartesian needs Line factors");
    std::vector<std::array<code_t, 2>> vecs;
    for (code_t x : s.basis_line()) vecs.push_back({x, 0});
    for (code_t y : t.basis_line()) vecs.push_back({0, y});
    return Subspace::span_plane(s.ctx(), vecs);
}

bool coords_in_subfield(const Subspace& u, int t) {
    const auto& ctx = u.ctx();
    const int comps = u.ambient() == Subspace::Ambient::Line ? 1 : 2;
    for (int r = 0; r < u.dim(); ++r)
        for (int c = 0; c < comps; ++c) {
            code_t x = u.row_code(r, c);
            if (ctx->frob(x, static_cast<long long>(ctx->e()) * t) != x) return false;
        }
    return true;
}

} // namespace linset
