#include "linset/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "linset/io.hpp"

namespace linset {

std::uint64_t gaussian_binomial(std::uint64_t q, int m, int k) {
    if (k < 0 || k > m) return 0;
    // [m choose k]_q = prod_{i=1}^{k} (q^{m-k+i} - 1) / (q^i - 1), exact at
    // every step when divided in this order.
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t num = ipow(q, m - k + i) - 1;
        std::uint64_t den = ipow(q, i) - 1;
        acc = acc * num / den;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t fnv1a(const std::vector<std::string>& lines) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& line : lines) {
        for (char c : line) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        h ^= static_cast<unsigned char>('\n');
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Canonical subspace enumeration
// ---------------------------------------------------------------------------

SubspaceEnumerator::SubspaceEnumerator(CtxPtr ctx, Subspace::Ambient amb, int k,
                                       const SearchLimits& limits)
    : ctx_(std::move(ctx)), amb_(amb), k_(k) {
    m_ = (amb == Subspace::Ambient::Line ? 1 : 2) * ctx_->n();
    if (k < 0 || k > m_) throw BadParams("subspace dimension out of range");
    // k-combinations of column indices, lexicographic.
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    const fq_t q = ctx_->q();
    while (true) {
        patterns_.push_back(comb);
        int f = 0;
        for (int i = 0; i < k; ++i)
            for (int c = comb[i] + 1; c < m_; ++c)
                if (!std::binary_search(comb.begin(), comb.end(), c)) ++f;
        prefix_.push_back(total_);
        total_ += ipow(q, f);
        if (total_ > limits.max_subspaces)
            throw TooLarge("stratum exceeds the subspace enumeration guard");
        // next combination
        int i = k - 1;
        while (i >= 0 && comb[i] == m_ - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        if (k == 0) break;
    }
}

Subspace SubspaceEnumerator::at(std::uint64_t idx) const {
    if (idx >= total_) throw BadParams("enumeration index out of range");
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), idx);
    std::size_t pi = static_cast<std::size_t>(it - prefix_.begin()) - 1;
    std::uint64_t local = idx - prefix_[pi];
    const auto& piv = patterns_[pi];
    const fq_t q = ctx_->q();
    std::vector<std::vector<fq_t>> rows(k_, std::vector<fq_t>(m_, 0));
    for (int i = 0; i < k_; ++i) rows[i][piv[i]] = 1;
    for (int i = 0; i < k_; ++i)
        for (int c = piv[i] + 1; c < m_; ++c) {
            if (std::binary_search(piv.begin(), piv.end(), c)) continue;
            rows[i][c] = static_cast<fq_t>(local % q);
            local /= q;
        }
    return Subspace::from_rows(ctx_, amb_, std::move(rows));
}

// ---------------------------------------------------------------------------
// Parallel driver: contiguous index ranges, results merged in range order so
// the output is independent of the worker count.
// ---------------------------------------------------------------------------

namespace {

struct WorkerOut {
    std::uint64_t discrepancies = 0;
    std::vector<std::string> hits, findings;
};

template <typename Fn>
void run_parallel(std::uint64_t total, int workers, std::vector<WorkerOut>& outs, Fn&& fn) {
    if (workers < 1) workers = 1;
    if (total > 0 && static_cast<std::uint64_t>(workers) > total)
        workers = static_cast<int>(total);
    outs.assign(std::max(workers, 1), WorkerOut{});
    if (total == 0) return;
    if (workers == 1) {
        fn(outs[0], 0, total);
        return;
    }
    std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w) {
        std::uint64_t begin = w * chunk;
        std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
        threads.emplace_back([&, w, begin, end] {
            try {
                if (begin < end) fn(outs[w], begin, end);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void merge_and_seal(SearchReport& rep, std::vector<WorkerOut>& outs, const Stopwatch& sw) {
    for (auto& o : outs) {
        rep.discrepancies += o.discrepancies;
        rep.hits.insert(rep.hits.end(), std::make_move_iterator(o.hits.begin()),
                        std::make_move_iterator(o.hits.end()));
        rep.findings.insert(rep.findings.end(), std::make_move_iterator(o.findings.begin()),
                            std::make_move_iterator(o.findings.end()));
    }
    rep.checksum = fnv1a(rep.hits);
    rep.elapsed_seconds = sw.seconds();
}

bool is_prime_int(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// GF(2) bitmask fast path (p = 2, e = 1, n <= 16): subspaces of the line are
// sets of codes that coincide with bitmasks of coordinates.
// ---------------------------------------------------------------------------

constexpr int kMaxMaskDim = 16;

struct MaskSub {
    std::uint32_t rows[kMaxMaskDim];
    int dim = 0;
};

/// Span with one stored row per leading-bit slot.
struct MaskSpan {
    std::uint32_t red[kMaxMaskDim] = {0};
    int dim = 0;
    void insert(std::uint32_t v) {
        while (v) {
            int hb = 31 - std::countl_zero(v);
            if (!red[hb]) {
                red[hb] = v;
                ++dim;
                return;
            }
            v ^= red[hb];
        }
    }
    bool contains(std::uint32_t v) const {
        while (v) {
            int hb = 31 - std::countl_zero(v);
            if (!red[hb]) return false;
            v ^= red[hb];
        }
        return true;
    }
};

int mask_product_dim(const MaskSub& s, const MaskSub& t, const FieldCtx& ctx) {
    MaskSpan sp;
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < t.dim; ++j) sp.insert(static_cast<std::uint32_t>(
            ctx.mul(s.rows[i], t.rows[j])));
    return sp.dim;
}

/// Zassenhaus on packed rows: high half tracks the sum, low half the overlap.
int mask_intersect(const std::uint32_t* a, int ad, const std::uint32_t* b, int bd, int nbits,
                   std::uint32_t* out) {
    std::uint64_t red[2 * kMaxMaskDim] = {0};
    auto ins = [&](std::uint64_t v) {
        while (v) {
            int hb = 63 - std::countl_zero(v);
            if (!red[hb]) {
                red[hb] = v;
                return;
            }
            v ^= red[hb];
        }
    };
    for (int i = 0; i < ad; ++i)
        ins((static_cast<std::uint64_t>(a[i]) << nbits) | a[i]);
    for (int i = 0; i < bd; ++i) ins(static_cast<std::uint64_t>(b[i]) << nbits);
    int d = 0;
    for (int i = nbits - 1; i >= 0; --i)
        if (red[i]) out[d++] = static_cast<std::uint32_t>(red[i]);
    return d;
}

/// GF(2) version of chain_tail_scalar.
std::optional<std::uint32_t> mask_chain_tail(const MaskSub& s, std::uint32_t a,
                                             const FieldCtx& ctx, int nbits) {
    const int k = s.dim;
    std::uint32_t cur[kMaxMaskDim], scaled[kMaxMaskDim], nxt[kMaxMaskDim];
    std::copy(s.rows, s.rows + k, cur);
    int cd = k;
    for (int step = 1; step <= k - 1; ++step) {
        for (int i = 0; i < cd; ++i)
            scaled[i] = static_cast<std::uint32_t>(ctx.mul(cur[i], a));
        int nd = mask_intersect(cur, cd, scaled, cd, nbits, nxt);
        if (nd != k - step) return std::nullopt;
        std::copy(nxt, nxt + nd, cur);
        cd = nd;
    }
    std::uint32_t a0 = cur[0];
    std::uint32_t g = static_cast<std::uint32_t>(ctx.div(a0, ctx.pow(a, k - 1)));
    MaskSpan orig;
    for (int i = 0; i < k; ++i) orig.insert(s.rows[i]);
    MaskSpan powers;
    std::uint32_t c = g;
    for (int i = 0; i < k; ++i) {
        if (!orig.contains(c)) return std::nullopt;
        powers.insert(c);
        c = static_cast<std::uint32_t>(ctx.mul(c, a));
    }
    if (powers.dim != k) return std::nullopt;
    return g;
}

bool mask_fast_ok(const FieldCtx& ctx) {
    return ctx.p() == 2 && ctx.e() == 1 && ctx.n() <= kMaxMaskDim && ctx.has_tables();
}

std::vector<MaskSub> mask_stratum(const SubspaceEnumerator& en) {
    std::vector<MaskSub> out(en.total());
    for (std::uint64_t i = 0; i < en.total(); ++i) {
        Subspace s = en.at(i);
        MaskSub& m = out[i];
        m.dim = s.dim();
        for (int r = 0; r < s.dim(); ++r)
            m.rows[r] = static_cast<std::uint32_t>(s.row_code(r));
    }
    return out;
}

} // namespace

nlohmann::json search_report_json(const SearchReport& r, const FieldCtx& ctx) {
    nlohmann::json j = report_envelope(ctx);
    j["kind"] = "search:" + r.kind;
    j["params"] = r.params;
    j["total_candidates"] = r.total_candidates;
    j["discrepancies"] = r.discrepancies;
    j["hit_count"] = r.hits.size();
    j["hits"] = r.hits;
    j["findings"] = r.findings;
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["checksum"] = r.checksum;
    return j;
}

// ---------------------------------------------------------------------------
// Harnesses
// ---------------------------------------------------------------------------

SearchReport verify_thm36(const CtxPtr& ctx, code_t mu, int kprime, int workers,
                          const SearchLimits& limits) {
    if (ctx->in_base_field(mu)) throw MuInBaseField("mu must not lie in F_q");
    if (kprime < 2) throw BadParams("need k' >= 2");
    Stopwatch sw;
    SearchReport rep;
    rep.kind = "thm36";
    rep.params = {{"q", ctx->q()},
                  {"n", ctx->n()},
                  {"kprime", kprime},
                  {"mu", static_cast<std::int64_t>(mu)}};
    SubspaceEnumerator en(ctx, Subspace::Ambient::Line, kprime, limits);
    rep.total_candidates = en.total();
    const int kp = kprime;

    std::vector<WorkerOut> outs;
    run_parallel(en.total(), workers, outs, [&](WorkerOut& out, std::uint64_t b, std::uint64_t e) {
        Subspace t2 = Subspace::span_line(ctx, {1, mu});
        for (std::uint64_t i = b; i < e; ++i) {
            Subspace s = en.at(i);
            LinearSetReport lr = enumerate_linear_set(cartesian(s, t2));
            bool lhs = lr.flags.minimum_size;
            Decomposition d = power_decompose(s, mu);
            bool rhs = (d.kind == Decomposition::Kind::Geometric && d.t > kp) ||
                       (d.kind == Decomposition::Kind::Mixed && d.m > 0 && d.t <= kp - 1);
            if (lhs != rhs) {
                ++out.discrepancies;
                continue;
            }
            if (lhs) {
                std::ostringstream os;
                os << format_subspace(s) << "|case="
                   << (d.kind == Decomposition::Kind::Geometric ? "geometric" : "mixed")
                   << "|t=" << d.t << "|m=" << d.m;
                out.hits.push_back(os.str());
            }
        }
    });
    merge_and_seal(rep, outs, sw);
    return rep;
}

SearchReport verify_thm39(const CtxPtr& ctx, int k, int r, int workers,
                          const SearchLimits& limits) {
    if (!is_prime_int(ctx->n())) throw NotPrime("n must be prime");
    if (!(ctx->n() >= k && k > r && r >= 2 && r <= k - r))
        throw BadParams("need n >= k > r >= 2 and r <= k - r");
    Stopwatch sw;
    SearchReport rep;
    rep.kind = "thm39";
    rep.params = {{"q", ctx->q()}, {"n", ctx->n()}, {"k", k}, {"r", r}};
    SubspaceEnumerator es(ctx, Subspace::Ambient::Line, k - r, limits);
    SubspaceEnumerator et(ctx, Subspace::Ambient::Line, r, limits);
    const std::uint64_t pairs = es.total() * et.total();
    if (pairs > limits.max_pair_evals) throw TooLarge("pair loop exceeds the evaluation guard");
    rep.total_candidates = pairs;
    const fq_t q = ctx->q();
    const std::uint64_t threshold = ipow(q, k - 2 * r) + 1;
    const std::uint64_t minsize = ipow(q, k - 1) + 1;

    std::vector<WorkerOut> outs;
    run_parallel(pairs, workers, outs, [&](WorkerOut& out, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t idx = b; idx < e; ++idx) {
            Subspace s = es.at(idx / et.total());
            Subspace t = et.at(idx % et.total());
            WeightCount wc = count_weight_r(s, t);
            if (wc.j > k - 2 * r + 1)
                throw InternalContradiction("weight-r count exceeds the prime-case bound");
            if (wc.count < threshold) continue;
            LinearSetReport lr = enumerate_linear_set(cartesian(s, t));
            if (lr.size != minsize)
                throw InternalContradiction("qualifying pair is not of minimum size");
            auto form = common_ratio(s, t);
            if (!form)
                throw InternalContradiction("qualifying pair has no common-ratio bases");
            std::ostringstream os;
            os << format_subspace(s) << '|' << format_subspace(t)
               << "|a=" << format_element(*ctx, form->a) << "|g=" << format_element(*ctx, form->g)
               << "|g'=" << format_element(*ctx, form->gp);
            out.hits.push_back(os.str());
        }
    });
    merge_and_seal(rep, outs, sw);
    return rep;
}

SearchReport verify_vosper_exhaustive(const CtxPtr& ctx, int max_dim, int workers,
                                      const SearchLimits& limits) {
    if (!is_prime_int(ctx->n())) throw NotPrime("n must be prime");
    Stopwatch sw;
    SearchReport rep;
    rep.kind = "vosper";
    rep.params = {{"q", ctx->q()}, {"n", ctx->n()}, {"max_dim", max_dim}};
    const int n = ctx->n();
    const bool fast = mask_fast_ok(*ctx);

    for (int ds = 2; ds <= max_dim; ++ds)
        for (int dt = 2; dt <= max_dim; ++dt) {
            if (ds + dt - 1 > n - 2) continue;
            SubspaceEnumerator es(ctx, Subspace::Ambient::Line, ds, limits);
            SubspaceEnumerator et(ctx, Subspace::Ambient::Line, dt, limits);
            const std::uint64_t pairs = es.total() * et.total();
            if (pairs > limits.max_pair_evals)
                throw TooLarge("pair loop exceeds the evaluation guard");
            rep.total_candidates += pairs;
            std::vector<WorkerOut> outs;
            if (fast) {
                std::vector<MaskSub> ms = mask_stratum(es);
                std::vector<MaskSub> mt = mask_stratum(et);
                run_parallel(pairs, workers, outs,
                             [&](WorkerOut& out, std::uint64_t b, std::uint64_t e) {
                    const std::uint64_t nt = et.total();
                    for (std::uint64_t idx = b; idx < e; ++idx) {
                        const MaskSub& s = ms[idx / nt];
                        const MaskSub& t = mt[idx % nt];
                        if (mask_product_dim(s, t, *ctx) != ds + dt - 1) continue;
                        bool found = false;
                        for (std::uint32_t a = 2; a < ctx->qn() && !found; ++a) {
                            auto g = mask_chain_tail(s, a, *ctx, n);
                            if (!g) continue;
                            if (mask_chain_tail(t, a, *ctx, n)) found = true;
                        }
                        if (!found)
                            throw InternalContradiction(
                                "critical pair with no common-ratio polynomial bases");
                        std::ostringstream os;
                        os << format_subspace(es.at(idx / nt)) << '|'
                           << format_subspace(et.at(idx % nt));
                        out.hits.push_back(os.str());
                    }
                });
            } else {
                run_parallel(pairs, workers, outs,
                             [&](WorkerOut& out, std::uint64_t b, std::uint64_t e) {
                    const std::uint64_t nt = et.total();
                    for (std::uint64_t idx = b; idx < e; ++idx) {
                        Subspace s = es.at(idx / nt);
                        Subspace t = et.at(idx % nt);
                        CriticalPairVerdict v = vosper_check(s, t); // throws on violation
                        if (!v.is_critical || !v.hypothesis_met) continue;
                        out.hits.push_back(format_subspace(s) + "|" + format_subspace(t));
                    }
                });
            }
            merge_and_seal(rep, outs, sw);
        }
    rep.checksum = fnv1a(rep.hits);
    rep.elapsed_seconds = sw.seconds();
    return rep;
}

SearchReport verify_kneser(const CtxPtr& ctx, int max_dim, int workers,
                           const SearchLimits& limits) {
    Stopwatch sw;
    SearchReport rep;
    rep.kind = "kneser";
    rep.params = {{"q", ctx->q()}, {"n", ctx->n()}, {"max_dim", max_dim}};
    const int n = ctx->n();
    const bool fast = mask_fast_ok(*ctx);

    for (int ds = 1; ds <= max_dim; ++ds)
        for (int dt = 1; dt <= max_dim; ++dt) {
            SubspaceEnumerator es(ctx, Subspace::Ambient::Line, ds, limits);
            SubspaceEnumerator et(ctx, Subspace::Ambient::Line, dt, limits);
            const std::uint64_t pairs = es.total() * et.total();
            if (pairs > limits.max_pair_evals)
                throw TooLarge("pair loop exceeds the evaluation guard");
            rep.total_candidates += pairs;
            std::vector<MaskSub> ms, mt;
            if (fast) {
                ms = mask_stratum(es);
                mt = mask_stratum(et);
            }
            std::vector<WorkerOut> outs;
            run_parallel(pairs, workers, outs,
                         [&](WorkerOut& out, std::uint64_t b, std::uint64_t e) {
                const std::uint64_t nt = et.total();
                const int bound = std::min(ds + dt - 1, n);
                for (std::uint64_t idx = b; idx < e; ++idx) {
                    int pd;
                    if (fast)
                        pd = mask_product_dim(ms[idx / nt], mt[idx % nt], *ctx);
                    else
                        pd = product_space(es.at(idx / nt), et.at(idx % nt)).dim();
                    if (pd >= bound) continue;
                    Subspace s = es.at(idx / nt);
                    Subspace t = et.at(idx % nt);
                    KneserResult kr = kneser_check(s, t); // throws if no stabilizer
                    std::ostringstream os;
                    os << format_subspace(s) << '|' << format_subspace(t)
                       << "|t=" << *kr.stabilizer_t;
                    out.hits.push_back(os.str());
                }
            });
            merge_and_seal(rep, outs, sw);
        }
    rep.checksum = fnv1a(rep.hits);
    rep.elapsed_seconds = sw.seconds();
    return rep;
}

SearchReport probe_critpair_minsize(const CtxPtr& ctx, int k, int r, std::uint64_t samples,
                                    std::uint64_t seed, int workers, const SearchLimits& limits) {
    const int n = ctx->n();
    const int ds = n - k + r;
    if (r < 1 || 2 * r > k || k > n + r || ds < 1 || ds > n)
        throw BadDims("need 1 <= r, 2r <= k <= n+r");
    Stopwatch sw;
    SearchReport rep;
    rep.kind = "critprobe";
    rep.params = {{"q", ctx->q()},
                  {"n", n},
                  {"k", k},
                  {"r", r},
                  {"samples", static_cast<std::int64_t>(samples)},
                  {"seed", static_cast<std::int64_t>(seed)}};
    SubspaceEnumerator es(ctx, Subspace::Ambient::Line, ds, limits);
    SubspaceEnumerator et(ctx, Subspace::Ambient::Line, r, limits);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> work;
    if (samples == 0) {
        const std::uint64_t pairs = es.total() * et.total();
        if (pairs > limits.max_pair_evals) throw TooLarge("pair loop exceeds the evaluation guard");
        work.reserve(pairs);
        for (std::uint64_t i = 0; i < es.total(); ++i)
            for (std::uint64_t j = 0; j < et.total(); ++j) work.emplace_back(i, j);
    } else {
        if (samples > limits.max_pair_evals)
            throw TooLarge("sample count exceeds the evaluation guard");
        std::mt19937_64 rng(seed);
        work.reserve(samples);
        for (std::uint64_t i = 0; i < samples; ++i)
            work.emplace_back(rng() % es.total(), rng() % et.total());
    }
    rep.total_candidates = work.size();

    std::vector<WorkerOut> outs;
    run_parallel(work.size(), workers, outs, [&](WorkerOut& out, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t idx = b; idx < e; ++idx) {
            Subspace s = es.at(work[idx].first);
            Subspace t = et.at(work[idx].second);
            BridgeResult br = critpair_linset_bridge(s, t);
            if (!br.biconditional) ++out.discrepancies;
            if (br.critical) {
                std::ostringstream os;
                os << format_subspace(s) << '|' << format_subspace(t)
                   << "|minimum_size=" << (br.linset_minimum_size ? 1 : 0);
                out.hits.push_back(os.str());
                if (!br.linset_minimum_size)
                    out.findings.push_back("non-minimum-size critical pair: " +
                                           format_subspace(s) + "|" + format_subspace(t));
            }
        }
    });
    merge_and_seal(rep, outs, sw);
    return rep;
}

} // namespace linset
