#include "linset/analysis.hpp"

#include <algorithm>

namespace linset {

namespace {

void require_line(const Subspace& s, const char* what) {
    if (s.ambient() != Subspace::Ambient::Line) throw MixedAmbient(what);
}

Subspace chain_step(const Subspace& x, code_t mu) { return intersect(x, x.scale(mu)); }

} // namespace

std::optional<code_t> chain_tail_scalar(const Subspace& s, code_t a) {
    const auto& ctx = s.ctx();
    const int k = s.dim();
    Subspace x = s;
    for (int i = 1; i <= k - 1; ++i) {
        x = chain_step(x, a);
        if (x.dim() != k - i) return std::nullopt;
    }
    code_t a0 = x.row_code(0);
    code_t g = ctx->div(a0, ctx->pow(a, k - 1));
    std::vector<code_t> vecs;
    code_t c = g;
    for (int i = 0; i < k; ++i) {
        vecs.push_back(c);
        c = ctx->mul(c, a);
    }
    if (Subspace::span_line(ctx, vecs) != s) return std::nullopt;
    return g;
}

std::vector<int> intersection_chain(const Subspace& s, code_t mu, int depth) {
    require_line(s, "intersection_chain needs a Line subspace");
    if (s.ctx()->in_base_field(mu)) throw MuInBaseField("mu must not lie in F_q");
    std::vector<int> dims{s.dim()};
    Subspace x = s;
    for (int i = 0; i < depth; ++i) {
        x = chain_step(x, mu);
        dims.push_back(x.dim());
    }
    return dims;
}

Decomposition power_decompose(const Subspace& s, code_t mu) {
    require_line(s, "power_decompose needs a Line subspace");
    const auto& ctx = s.ctx();
    if (ctx->in_base_field(mu)) throw MuInBaseField("mu must not lie in F_q");
    const int k = s.dim();
    if (k < 2) throw BadParams("power_decompose needs dim S >= 2");
    const int t = ctx->degree(mu);

    Decomposition d;
    d.t = t;
    Subspace x1 = chain_step(s, mu);
    if (x1.dim() == k) {
        if (s.scale(ctx->subfield_generator(t)) != s)
            throw InternalContradiction("mu-stable subspace is not F_{q^t}-linear");
        d.kind = Decomposition::Kind::SubfieldSpace;
        d.sbar = s;
    } else if (x1.dim() == k - 1) {
        if (t >= k) {
            // Strictly dropping chain down to dimension 1.
            Subspace x = x1;
            for (int i = 2; i <= k - 1; ++i) {
                x = chain_step(x, mu);
                if (x.dim() != k - i) throw InternalContradiction("chain does not drop by one");
            }
            if (t == k) throw InternalContradiction("t = k cannot occur in the geometric case");
            code_t a0 = x.row_code(0);
            d.kind = Decomposition::Kind::Geometric;
            d.b = ctx->div(a0, ctx->pow(mu, k - 1));
            d.m = k;
        } else {
            // Chain drops by one until the first repeat at step j = m.
            Subspace prev = s, x = x1;
            int j = 1;
            while (true) {
                Subspace nxt = chain_step(x, mu);
                if (nxt.dim() == x.dim()) break;
                if (nxt.dim() != x.dim() - 1) throw InternalContradiction("chain drop exceeds one");
                prev = x;
                x = nxt;
                ++j;
            }
            if (x.dim() != k - j || prev.dim() != k - j + 1)
                throw InternalContradiction("chain bookkeeping failed");
            if (x.scale(ctx->subfield_generator(t)) != x)
                throw InternalContradiction("chain tail is not F_{q^t}-linear");
            if ((k - j) % t != 0 || j >= t)
                throw InternalContradiction("mixed-case parameters out of range");
            // First echelon row of the previous chain member outside S-bar.
            code_t a0 = 0;
            for (int r = 0; r < prev.dim(); ++r)
                if (!x.contains_code(prev.row_code(r))) {
                    a0 = prev.row_code(r);
                    break;
                }
            if (a0 == 0) throw InternalContradiction("no complement vector found");
            d.kind = Decomposition::Kind::Mixed;
            d.b = ctx->div(a0, ctx->pow(mu, j - 1));
            d.m = j;
            d.sbar = x;
            Subspace fqt = intermediate_field_subspace(ctx, t);
            if (!intersect(x, fqt.scale(d.b)).is_zero())
                throw InternalContradiction("S-bar meets b*F_{q^t}");
        }
    } else {
        d.kind = Decomposition::Kind::NotApplicable;
        return d;
    }
    if (decomposition_rebuild(ctx, d, mu) != s)
        throw InternalContradiction("decomposition does not rebuild the input");
    return d;
}

Subspace decomposition_rebuild(const CtxPtr& ctx, const Decomposition& d, code_t mu) {
    switch (d.kind) {
        case Decomposition::Kind::SubfieldSpace:
            return *d.sbar;
        case Decomposition::Kind::Geometric:
        case Decomposition::Kind::Mixed: {
            std::vector<code_t> vecs;
            code_t c = d.b;
            for (int i = 0; i < d.m; ++i) {
                vecs.push_back(c);
                c = ctx->mul(c, mu);
            }
            Subspace pw = Subspace::span_line(ctx, vecs);
            return d.sbar ? sum(*d.sbar, pw) : pw;
        }
        case Decomposition::Kind::NotApplicable:
            break;
    }
    throw BadParams("nothing to rebuild");
}

WeightCount count_weight_r(const Subspace& s, const Subspace& t) {
    require_line(s, "count_weight_r needs Line subspaces");
    require_line(t, "count_weight_r needs Line subspaces");
    const auto& ctx = s.ctx();
    const int r = t.dim();
    if (r > s.dim()) throw DimOrder("need dim T <= dim S");
    if (r == 0) throw BadParams("T must be nonzero");
    Subspace inter = s.scale(ctx->inv(t.row_code(0)));
    for (int i = 1; i < r; ++i) inter = intersect(inter, s.scale(ctx->inv(t.row_code(i))));
    WeightCount out{inter.dim(), ipow(ctx->q(), inter.dim()), inter};
    return out;
}

std::uint64_t size_formula_type2(const Subspace& s, code_t mu) {
    require_line(s, "size_formula_type2 needs a Line subspace");
    const auto& ctx = s.ctx();
    if (ctx->in_base_field(mu)) throw MuInBaseField("mu must not lie in F_q");
    const int kp = s.dim();
    if (kp < 2) throw BadParams("need dim S >= 2");
    const int j = chain_step(s, mu).dim();
    const fq_t q = ctx->q();
    std::uint64_t size = ipow(q, kp + 1) + ipow(q, kp) - ipow(q, j + 1) + 1;
    Subspace u = cartesian(s, Subspace::span_line(ctx, {1, mu}));
    LinearSetReport rep = enumerate_linear_set(u);
    if (rep.size != size) throw InternalContradiction("size formula disagrees with enumeration");
    if (j == kp) {
        // S is F_{q^t}-linear; the F_{q^t}-span W = S × F_{q^t} has the same
        // point set, so F_{q^t} is a geometric field of linearity.
        const int t = ctx->degree(mu);
        Subspace w = cartesian(s, intermediate_field_subspace(ctx, t));
        if (!same_point_set(rep, enumerate_linear_set(w)))
            throw InternalContradiction("geometric field of linearity check failed");
    }
    return size;
}

MinSizeVerdict classify_min_size_type2(const Subspace& s, code_t mu) {
    const auto& ctx = s.ctx();
    const int kp = s.dim();
    MinSizeVerdict v;
    v.size = size_formula_type2(s, mu);
    v.minimum_size = v.size == ipow(ctx->q(), kp + 1) + 1;
    Decomposition d = power_decompose(s, mu);
    bool structural = (d.kind == Decomposition::Kind::Geometric && d.t > kp) ||
                      (d.kind == Decomposition::Kind::Mixed && d.m > 0 && d.t <= kp - 1);
    if (v.minimum_size != structural)
        throw InternalContradiction("minimum size disagrees with the decomposition verdict");
    if (v.minimum_size) v.decomposition = d;
    return v;
}

KneserResult kneser_check(const Subspace& s, const Subspace& t) {
    if (s.is_zero() || t.is_zero()) throw BadParams("kneser_check needs nonzero subspaces");
    const int n = s.ctx()->n();
    Subspace p = product_space(s, t);
    KneserResult r;
    r.bound_met = p.dim() >= std::min(s.dim() + t.dim() - 1, n);
    if (!r.bound_met) {
        int st = subfield_linearity(p);
        if (st <= 1 || n % st != 0)
            throw InternalContradiction("deficient product has no stabilizing subfield");
        r.stabilizer_t = st;
    }
    return r;
}

std::optional<std::pair<code_t, code_t>> geometric_basis_recognizer(const Subspace& s) {
    require_line(s, "geometric_basis_recognizer needs a Line subspace");
    if (s.dim() < 2) throw BadParams("need dim S >= 2");
    const auto& ctx = s.ctx();
    for (code_t a = ctx->q(); a < ctx->qn(); ++a) {
        if (ctx->in_base_field(a)) continue;
        if (auto g = chain_tail_scalar(s, a)) return std::make_pair(*g, a);
    }
    return std::nullopt;
}

bool critical_pair_check(const Subspace& s, const Subspace& t) {
    if (s.is_zero() || t.is_zero()) throw BadParams("critical_pair_check needs nonzero subspaces");
    return product_space(s, t).dim() == s.dim() + t.dim() - 1;
}

CriticalPairVerdict vosper_check(const Subspace& s, const Subspace& t) {
    const auto& ctx = s.ctx();
    CriticalPairVerdict v;
    v.dim_s = s.dim();
    v.dim_t = t.dim();
    Subspace p = product_space(s, t);
    v.dim_st = p.dim();
    v.is_critical = v.dim_st == v.dim_s + v.dim_t - 1;
    if (!v.is_critical && v.dim_st < std::min(v.dim_s + v.dim_t - 1, ctx->n()))
        v.kneser_stabilizer_t = subfield_linearity(p);

    bool n_prime = true;
    for (int d = 2; d < ctx->n(); ++d)
        if (ctx->n() % d == 0) n_prime = false;
    v.hypothesis_met =
        n_prime && ctx->n() >= 2 && v.dim_s >= 2 && v.dim_t >= 2 && v.dim_st <= ctx->n() - 2;
    if (!v.hypothesis_met || !v.is_critical) return v;

    v.vosper_form = common_ratio(s, t);
    if (!v.vosper_form)
        throw InternalContradiction("critical pair with no common-ratio polynomial bases");
    return v;
}

std::optional<CriticalPairVerdict::VosperForm> common_ratio(const Subspace& s, const Subspace& t) {
    const auto& ctx = s.ctx();
    for (code_t a = ctx->q(); a < ctx->qn(); ++a) {
        if (ctx->in_base_field(a)) continue;
        auto g = chain_tail_scalar(s, a);
        if (!g) continue;
        auto gp = chain_tail_scalar(t, a);
        if (!gp) continue;
        return CriticalPairVerdict::VosperForm{*g, *gp, a};
    }
    return std::nullopt;
}

BridgeResult critpair_linset_bridge(const Subspace& s, const Subspace& t) {
    require_line(s, "critpair_linset_bridge needs Line subspaces");
    require_line(t, "critpair_linset_bridge needs Line subspaces");
    const auto& ctx = s.ctx();
    const int n = ctx->n();
    const int r = t.dim();
    const int k = n + r - s.dim(); // rank of S^⊥ × T
    if (r < 1 || 2 * r > k || k > n + r) throw BadDims("need 1 <= r and 2r <= k <= n+r");

    BridgeResult out;
    out.critical = critical_pair_check(s, t);
    Subspace u = cartesian(trace_dual(s), t);
    LinearSetReport rep = enumerate_linear_set(u);
    std::uint64_t cnt = rep.distribution.count(r) ? rep.distribution.at(r) : 0;
    if (rep.weight_at(rep.qn) == r) --cnt; // exclude ⟨(1,0)⟩
    out.weight_r_points = cnt;
    out.linset_minimum_size = rep.flags.minimum_size;
    std::uint64_t target = ipow(ctx->q(), k - 2 * r + 1);
    out.biconditional = out.critical == (cnt == target);
    bool n_prime = n >= 2;
    for (int d = 2; d < n; ++d)
        if (n % d == 0) n_prime = false;
    if (n_prime && r >= 2 && k > r && k <= n && cnt > target)
        throw InternalContradiction("weight-r point count exceeds the prime-case bound");
    return out;
}

std::optional<std::pair<code_t, int>> scalar_frobenius_equivalent(const Subspace& s1,
                                                                 const Subspace& s2) {
    require_line(s1, "scalar_frobenius_equivalent needs Line subspaces");
    require_line(s2, "scalar_frobenius_equivalent needs Line subspaces");
    if (s1.dim() != s2.dim()) throw DimMismatch("subspaces must have equal dimension");
    const auto& ctx = s1.ctx();
    const int autos = ctx->n() * ctx->e();
    for (int rho = 0; rho < autos; ++rho) {
        Subspace f = s1.frob_image(rho);
        for (code_t a = 1; a < ctx->qn(); ++a)
            if (f.scale(a) == s2) return std::make_pair(a, rho);
    }
    return std::nullopt;
}

std::optional<OrbitWitness> gamma_l_orbit_equivalent(const Subspace& u1, const Subspace& u2,
                                                     std::uint64_t guard) {
    if (u1.ambient() != Subspace::Ambient::Plane || u2.ambient() != Subspace::Ambient::Plane)
        throw MixedAmbient("gamma_l_orbit_equivalent needs Plane subspaces");
    const auto& ctx = u1.ctx();
    const std::uint64_t qn = ctx->qn();
    const std::uint64_t gl = (qn * qn - 1) * (qn * qn - qn);
    const std::uint64_t autos = std::uint64_t(ctx->n()) * ctx->e();
    if (gl > guard / autos) throw TooLarge("full semilinear orbit is beyond the guard");
    if (u1.dim() != u2.dim()) return std::nullopt;

    for (int rho = 0; rho < static_cast<int>(autos); ++rho) {
        Subspace f = u1.frob_image(rho);
        auto basis = f.basis_plane();
        for (code_t al = 0; al < qn; ++al)
            for (code_t be = 0; be < qn; ++be)
                for (code_t ga = 0; ga < qn; ++ga)
                    for (code_t de = 0; de < qn; ++de) {
                        if (ctx->sub(ctx->mul(al, de), ctx->mul(be, ga)) == 0) continue;
                        std::vector<std::array<code_t, 2>> img;
                        img.reserve(basis.size());
                        for (auto& v : basis)
                            img.push_back({ctx->add(ctx->mul(al, v[0]), ctx->mul(be, v[1])),
                                           ctx->add(ctx->mul(ga, v[0]), ctx->mul(de, v[1]))});
                        if (Subspace::span_plane(ctx, img) == u2)
                            return OrbitWitness{{al, be, ga, de}, rho};
                    }
    }
    return std::nullopt;
}

} // namespace linset
