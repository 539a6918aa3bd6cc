#include "linset/constructions.hpp"

namespace linset {

namespace {

/// Componentwise scaling of a Plane subspace by a nonzero field element.
Subspace plane_scale(const Subspace& u, code_t a) {
    const auto& ctx = u.ctx();
    std::vector<std::array<code_t, 2>> vecs;
    for (auto& v : u.basis_plane()) vecs.push_back({ctx->mul(a, v[0]), ctx->mul(a, v[1])});
    return Subspace::span_plane(ctx, vecs);
}

void check_subfield_params(const CtxPtr& ctx, int t) {
    if (t < 2 || ctx->n() % t != 0 || ctx->n() / t < 2)
        throw BadParams("t must be a proper divisor of n with 2 <= t <= n/2");
}

} // namespace

Subspace power_span(const CtxPtr& ctx, code_t a, int len, code_t g) {
    std::vector<code_t> vecs;
    code_t c = g;
    for (int i = 0; i < len; ++i) {
        vecs.push_back(c);
        c = ctx->mul(c, a);
    }
    return Subspace::span_line(ctx, vecs);
}

Subspace trace_graph(const CtxPtr& ctx) {
    const int n = ctx->n();
    std::vector<std::array<code_t, 2>> vecs;
    for (int i = 0; i < n; ++i) {
        std::vector<fq_t> c(n, 0);
        c[i] = 1;
        code_t x = ctx->from_coords(c);
        vecs.push_back({x, static_cast<code_t>(ctx->trace(x))});
    }
    Subspace u = Subspace::span_plane(ctx, vecs);
    if (u.dim() != n) throw InternalContradiction("trace graph is rank deficient");
    return u;
}

Subspace jvdv(const Element& lambda, int t1, int t2) {
    const auto& ctx = lambda.ctx();
    const int s = ctx->degree(lambda.code());
    if (s < 2) throw BadParams("lambda must generate a proper extension");
    if (t1 < 1 || t2 < 1 || t1 + t2 > s + 1)
        throw BadParams("need t1, t2 >= 1 and t1 + t2 <= deg(lambda) + 1");
    std::vector<std::array<code_t, 2>> vecs;
    code_t c = 1;
    for (int i = 0; i < t1; ++i) {
        vecs.push_back({c, 0});
        c = ctx->mul(c, lambda.code());
    }
    c = 1;
    for (int i = 0; i < t2; ++i) {
        vecs.push_back({0, c});
        c = ctx->mul(c, lambda.code());
    }
    Subspace u = Subspace::span_plane(ctx, vecs);
    if (u.dim() != t1 + t2) throw InternalContradiction("power spans are rank deficient");
    return u;
}

DualBasis dual_basis(const Element& lambda) {
    const auto& ctx = lambda.ctx();
    const int n = ctx->n();
    if (ctx->degree(lambda.code()) != n)
        throw NotAGenerator("lambda does not generate the top field over F_q");
    std::vector<fq_t> f = ctx->min_poly(lambda.code()); // a_0 .. a_n, a_n = 1

    // delta = f'(lambda); the factor i acts through the prime subfield.
    code_t delta = 0;
    code_t lam_pow = 1; // lambda^{i-1}
    for (int i = 1; i <= n; ++i) {
        fq_t ip = static_cast<fq_t>(i % ctx->p());
        code_t term = ctx->scalar_mul(ctx->fq_mul(ip, f[i]), lam_pow);
        delta = ctx->add(delta, term);
        lam_pow = ctx->mul(lam_pow, lambda.code());
    }
    if (delta == 0) throw InseparableDefect("derivative of the minimal polynomial vanishes");

    DualBasis out;
    out.lambda = lambda;
    out.delta = Element(ctx, delta);
    code_t dinv = ctx->inv(delta);
    for (int i = 0; i < n; ++i) {
        // gamma_i = sum_{h=1}^{n-i} a_{i+h} lambda^{h-1}
        code_t g = 0;
        code_t lp = 1;
        for (int h = 1; h <= n - i; ++h) {
            g = ctx->add(g, ctx->scalar_mul(f[i + h], lp));
            lp = ctx->mul(lp, lambda.code());
        }
        out.gammas.emplace_back(ctx, g);
        out.dual.emplace_back(ctx, ctx->mul(dinv, g));
    }
    return out;
}

Subspace power_span_dual(const Element& lambda, int ell) {
    const auto& ctx = lambda.ctx();
    const int n = ctx->n();
    if (ctx->degree(lambda.code()) != n)
        throw NotAGenerator("lambda does not generate the top field over F_q");
    if (ell < 1 || ell > n - 1) throw BadParams("need 1 <= l <= n-1");
    DualBasis db = dual_basis(lambda);
    return power_span(ctx, lambda.code(), n - ell, ctx->inv(db.delta.code()));
}

Subspace lift(const Subspace& uprime, int t, const Subspace& sbar, code_t b) {
    const auto& ctx = uprime.ctx();
    check_subfield_params(ctx, t);
    if (uprime.ambient() != Subspace::Ambient::Plane || sbar.ambient() != Subspace::Ambient::Line)
        throw MixedAmbient("lift needs a Plane U' and a Line S-bar");
    if (sbar.ctx().get() != ctx.get()) throw CtxMismatch("U' and S-bar from different contexts");
    if (uprime.is_zero()) throw BadParams("U' must be nonzero");
    if (b == 0) throw ZeroScalar("b must be nonzero");

    code_t omega = ctx->subfield_generator(t);
    if (!coords_in_subfield(uprime, t))
        throw NotSubfieldLinear("U' must have coordinates in the embedded subfield");
    if (!sbar.is_zero() && (sbar.dim() % t != 0 || sbar.scale(omega) != sbar))
        throw NotSubfieldLinear("S-bar is not linear over the embedded subfield");

    Subspace fqt = intermediate_field_subspace(ctx, t);
    if (!sbar.is_zero() && !intersect(sbar, fqt.scale(b)).is_zero())
        throw BadIntersection("S-bar meets b*F_{q^t} nontrivially");

    std::vector<std::array<code_t, 2>> vecs;
    for (code_t s : sbar.basis_line()) vecs.push_back({s, 0});
    for (auto& v : uprime.basis_plane()) vecs.push_back({ctx->mul(b, v[0]), v[1]});
    Subspace u = Subspace::span_plane(ctx, vecs);
    if (u.dim() != sbar.dim() + uprime.dim())
        throw BadIntersection("lift summands are not independent");
    return u;
}

Subspace min_size_family(const Element& mu, const Subspace& sbar, code_t b, int m, int j) {
    const auto& ctx = mu.ctx();
    const int t = ctx->degree(mu.code());
    if (t < 2) throw MuInBaseField("mu must not lie in F_q");
    if (ctx->n() % t != 0 || ctx->n() / t < 2)
        throw BadParams("deg(mu) must be a proper divisor of n");
    if (m < 1 || j < 1 || m + j > t + 1) throw BadParams("need m, j >= 1 and m + j <= t + 1");
    if (b == 0) throw ZeroScalar("b must be nonzero");
    if (sbar.ambient() != Subspace::Ambient::Line) throw MixedAmbient("S-bar must be a Line subspace");
    if (sbar.ctx().get() != ctx.get()) throw CtxMismatch("mu and S-bar from different contexts");

    code_t omega = ctx->subfield_generator(t);
    if (!sbar.is_zero() && (sbar.dim() % t != 0 || sbar.scale(omega) != sbar))
        throw NotSubfieldLinear("S-bar is not linear over F_{q^t}");
    Subspace fqt = intermediate_field_subspace(ctx, t);
    if (!sbar.is_zero() && !intersect(sbar, fqt.scale(b)).is_zero())
        throw BadIntersection("S-bar meets b*F_{q^t} nontrivially");

    Subspace s = sum(sbar, power_span(ctx, mu.code(), m, b));
    if (s.dim() != sbar.dim() + m)
        throw InternalContradiction("first-component summands are not independent");
    return cartesian(s, power_span(ctx, mu.code(), j));
}

Subspace iclub_lift(const Subspace& uprime, int t, const Subspace& sbar, code_t b) {
    check_subfield_params(uprime.ctx(), t);
    LinearSetReport rep = enumerate_linear_set(uprime);
    // Scattered: every point of L_{U'} has weight one.
    if (rep.spectrum.size() != 1 || rep.spectrum[0] != 1)
        throw NotScattered("L_{U'} is not scattered");
    return lift(uprime, t, sbar, b);
}

Subspace canonical_qt_subspace(const CtxPtr& ctx, int t, int l) {
    check_subfield_params(ctx, t);
    if (l < 1 || l > ctx->n() / t - 1) throw BadParams("need 1 <= l <= n/t - 1");
    code_t omega = ctx->subfield_generator(t);
    code_t nu = ctx->primitive_element();
    Subspace s = Subspace::zero(ctx, Subspace::Ambient::Line);
    code_t a = 1;
    for (std::uint64_t i = 1; s.dim() < l * t && i < ctx->qn(); ++i) {
        a = ctx->mul(a, nu);
        std::vector<code_t> block;
        code_t w = a;
        for (int jj = 0; jj < t; ++jj) {
            block.push_back(w);
            w = ctx->mul(w, omega);
        }
        Subspace cand = sum(s, Subspace::span_line(ctx, block));
        if (cand.dim() == s.dim() + t) s = cand;
    }
    if (s.dim() != l * t) throw InternalContradiction("could not complete an F_{q^t}-subspace");
    return s;
}

code_t default_b(const CtxPtr& ctx, const Subspace& sbar, int t) {
    check_subfield_params(ctx, t);
    if (sbar.is_zero()) return 1;
    Subspace fqt = intermediate_field_subspace(ctx, t);
    for (code_t b = 1; b < ctx->qn(); ++b)
        if (intersect(sbar, fqt.scale(b)).is_zero()) return b;
    throw BadParams("no b with S-bar disjoint from b*F_{q^t}");
}

} // namespace linset
