#include "linset/linear_set.hpp"

#include <algorithm>

namespace linset {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

int LinearSetReport::weight_at(std::uint64_t point_id) const {
    auto it = std::lower_bound(points.begin(), points.end(),
                               std::make_pair(point_id, 0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != points.end() && it->first == point_id) return it->second;
    return 0;
}

std::vector<std::pair<std::uint64_t, int>> LinearSetReport::heaviest_points() const {
    if (spectrum.empty()) return {};
    int top = spectrum.back();
    std::vector<std::pair<std::uint64_t, int>> out;
    for (const auto& pw : points)
        if (pw.second == top) out.push_back(pw);
    return out;
}

int weight(const Subspace& u, const ProjPoint& p) {
    if (u.ambient() != Subspace::Ambient::Plane) throw MixedAmbient("weight needs a Plane subspace");
    const auto& ctx = u.ctx();
    code_t rx = p.infinity ? 1 : p.x;
    code_t ry = p.infinity ? 0 : 1;
    std::vector<std::array<code_t, 2>> vecs;
    code_t c = 1;
    for (int i = 0; i < ctx->n(); ++i) {
        vecs.push_back({ctx->mul(c, rx), ctx->mul(c, ry)});
        c = ctx->mul(c, ctx->lambda());
    }
    Subspace line = Subspace::span_plane(ctx, vecs);
    return intersect(u, line).dim();
}

LinearSetReport enumerate_linear_set(const Subspace& u) {
    if (u.ambient() != Subspace::Ambient::Plane) throw MixedAmbient("enumerate needs a Plane subspace");
    if (u.is_zero()) throw BadParams("enumerate needs a nonzero subspace");
    const auto& ctx = u.ctx();
    const fq_t q = ctx->q();
    const std::uint64_t qn = ctx->qn();
    const int k = u.dim();
    if (ipow(q, k) > (std::uint64_t(1) << 26)) throw TooLarge("too many vectors to enumerate");

    auto basis = u.basis_plane();
    // Scalar multiples of each basis row, indexed [row][digit].
    std::vector<std::vector<std::array<code_t, 2>>> mult(k, std::vector<std::array<code_t, 2>>(q));
    for (int r = 0; r < k; ++r)
        for (fq_t d = 0; d < q; ++d)
            mult[r][d] = {ctx->scalar_mul(d, basis[r][0]), ctx->scalar_mul(d, basis[r][1])};

    std::vector<std::uint32_t> tally(qn + 1, 0);
    std::vector<std::uint64_t> touched;
    touched.reserve(1024);

    // DFS over all F_q-combinations of the basis.
    struct Walker {
        const FieldCtx* ctx;
        const std::vector<std::vector<std::array<code_t, 2>>>* mult;
        std::vector<std::uint32_t>* tally;
        std::vector<std::uint64_t>* touched;
        int k;
        fq_t q;
        std::uint64_t qn;
        void rec(int level, code_t x, code_t y) {
            if (level == k) {
                if (x == 0 && y == 0) return;
                std::uint64_t id = (y != 0) ? ctx->div(x, y) : qn;
                if ((*tally)[id]++ == 0) touched->push_back(id);
                return;
            }
            const auto& m = (*mult)[level];
            for (fq_t d = 0; d < q; ++d) rec(level + 1, ctx->add(x, m[d][0]), ctx->add(y, m[d][1]));
        }
    };
    Walker w{ctx.get(), &mult, &tally, &touched, k, q, qn};
    w.rec(0, 0, 0);

    LinearSetReport rep;
    rep.q = q;
    rep.qn = qn;
    rep.rank = k;

    // weight w points contribute q^w - 1 nonzero vectors
    std::vector<std::uint64_t> wcount(k + 2, 0);
    for (int w = 0; w <= k + 1; ++w) wcount[w] = ipow(q, w) - 1;

    std::sort(touched.begin(), touched.end());
    for (std::uint64_t id : touched) {
        std::uint64_t c = tally[id];
        int w = -1;
        for (int cand = 1; cand <= k; ++cand)
            if (wcount[cand] == c) {
                w = cand;
                break;
            }
        if (w < 0) throw InternalContradiction("vector tally is not of the form q^w - 1");
        rep.points.emplace_back(id, w);
        ++rep.distribution[w];
        tally[id] = 0;
    }
    rep.size = rep.points.size();
    for (const auto& [w, cnt] : rep.distribution) rep.spectrum.push_back(w);
    rep.flags = classify_flags(rep);
    if (!check_identities(rep)) throw InternalContradiction("linear set identities failed");
    return rep;
}

bool check_identities(const LinearSetReport& rep) {
    const fq_t q = rep.q;
    const int k = rep.rank;
    std::uint64_t total = 0, vectors = 0;
    for (const auto& [w, cnt] : rep.distribution) {
        if (w > k && cnt != 0) return false;
        total += cnt;
        vectors += cnt * ((ipow(q, w) - 1) / (q - 1));
    }
    if (total != rep.size) return false;
    if (vectors != (ipow(q, k) - 1) / (q - 1)) return false;
    if (rep.size > (ipow(q, k) - 1) / (q - 1)) return false;
    // pairwise weight bound: check the two heaviest tallied weights
    if (!rep.spectrum.empty()) {
        int top = rep.spectrum.back();
        std::uint64_t ntop = rep.distribution.at(top);
        int second = top;
        if (ntop < 2) {
            if (rep.spectrum.size() < 2) return true;
            second = rep.spectrum[rep.spectrum.size() - 2];
        }
        if (top + second > k) return false;
    }
    return true;
}

ReportFlags classify_flags(const LinearSetReport& rep) {
    ReportFlags f;
    const fq_t q = rep.q;
    const int k = rep.rank;
    auto n_at = [&](int w) -> std::uint64_t {
        auto it = rep.distribution.find(w);
        return it == rep.distribution.end() ? 0 : it->second;
    };
    f.scattered = rep.size == (ipow(q, k) - 1) / (q - 1);
    f.minimum_size = n_at(1) >= 1 && rep.size == ipow(q, k - 1) + 1;
    if (rep.spectrum.size() == 2 && rep.spectrum[0] == 1 && rep.spectrum[1] > 1 &&
        n_at(rep.spectrum[1]) == 1)
        f.club_i = rep.spectrum[1];
    for (int i = k - 1; 2 * i >= k; --i) {
        int j = k - i;
        if (n_at(i) >= 1 && n_at(j) >= 1 && (i != j || n_at(i) >= 2)) {
            f.complementary = {i, j};
            break;
        }
    }
    if (f.complementary && n_at(1) >= 1) {
        auto [big, small] = *f.complementary;
        std::uint64_t lo = ipow(q, k - 1) + 1;
        std::uint64_t hi = 1;
        for (int h = big; h <= k - 1; ++h) hi += ipow(q, h);
        for (int h = 1; h <= small - 1; ++h) hi -= ipow(q, h);
        if (rep.size < lo || rep.size > hi)
            throw InternalContradiction("complementary-weights size bound violated");
    }
    return f;
}

bool same_point_set(const LinearSetReport& a, const LinearSetReport& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (a.points[i].first != b.points[i].first) return false;
    return true;
}

} // namespace linset
