#include "linset/field.hpp"

#include <algorithm>
#include <numeric>

namespace linset {
namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > limit / base) throw TooLarge("field size exceeds supported range");
        r *= base;
    }
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            fs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fs.push_back(m);
    return fs;
}

// Polynomial arithmetic over F_p on digit vectors (constant term first).
struct FpPoly {
    std::uint64_t p;

    std::vector<fq_t> trim(std::vector<fq_t> a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
        return a;
    }
    std::vector<fq_t> mul(const std::vector<fq_t>& a, const std::vector<fq_t>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<fq_t> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = static_cast<fq_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
        return trim(r);
    }
    // a mod b, b monic.
    std::vector<fq_t> mod(std::vector<fq_t> a, const std::vector<fq_t>& b) const {
        a = trim(std::move(a));
        while (a.size() >= b.size()) {
            fq_t lead = a.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = std::uint64_t(lead) * b[i] % p;
                a[shift + i] = static_cast<fq_t>((a[shift + i] + p - sub) % p);
            }
            a = trim(std::move(a));
        }
        return a;
    }
    bool divides(const std::vector<fq_t>& d, const std::vector<fq_t>& a) const {
        return mod(a, d).empty();
    }
};

// Monic polynomials of given degree in constant-term-first lexicographic
// order: the constant coefficient is the most significant digit.
std::vector<fq_t> nth_monic(std::uint64_t idx, int deg, std::uint64_t base) {
    std::vector<fq_t> c(deg + 1, 0);
    c[deg] = 1;
    for (int i = deg - 1; i >= 0; --i) {
        c[i] = static_cast<fq_t>(idx % base);
        idx /= base;
    }
    return c;
}

bool irreducible_fp(const std::vector<fq_t>& f, std::uint64_t p) {
    FpPoly P{p};
    int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    if (f[0] == 0) return false;
    for (int d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            auto g = nth_monic(idx, d, p);
            if (P.divides(g, f)) return false;
        }
    }
    return true;
}

} // namespace

void FieldCtx::build_fq_tables() {
    FpPoly P{p_};
    add_tab_.assign(std::size_t(q_) * q_, 0);
    mul_tab_.assign(std::size_t(q_) * q_, 0);
    neg_tab_.assign(q_, 0);
    inv_tab_.assign(q_, 0);

    auto digits = [&](fq_t a) {
        std::vector<fq_t> d(e_);
        for (int i = 0; i < e_; ++i) {
            d[i] = static_cast<fq_t>(a % p_);
            a = static_cast<fq_t>(a / p_);
        }
        return d;
    };
    auto pack = [&](const std::vector<fq_t>& d) {
        fq_t a = 0;
        for (int i = std::min<int>(e_, static_cast<int>(d.size())) - 1; i >= 0; --i)
            a = static_cast<fq_t>(a * p_ + d[i]);
        return a;
    };

    for (fq_t a = 0; a < q_; ++a) {
        auto da = digits(a);
        std::vector<fq_t> dn(e_);
        for (int i = 0; i < e_; ++i) dn[i] = static_cast<fq_t>((p_ - da[i]) % p_);
        neg_tab_[a] = pack(dn);
        for (fq_t b = 0; b < q_; ++b) {
            auto db = digits(b);
            std::vector<fq_t> ds(e_);
            for (int i = 0; i < e_; ++i) ds[i] = static_cast<fq_t>((da[i] + db[i]) % p_);
            add_tab_[std::size_t(a) * q_ + b] = pack(ds);
            auto dm = P.mod(P.mul(P.trim(da), P.trim(db)), fq_poly_);
            mul_tab_[std::size_t(a) * q_ + b] = pack(dm);
        }
    }
    for (fq_t a = 1; a < q_; ++a)
        for (fq_t b = 1; b < q_; ++b)
            if (fq_mul(a, b) == 1) {
                inv_tab_[a] = b;
                break;
            }
}

fq_t FieldCtx::fq_inv(fq_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in F_q");
    return inv_tab_[a];
}

fq_t FieldCtx::coord(code_t a, int i) const { return static_cast<fq_t>(a / qpow_[i] % q_); }

code_t FieldCtx::from_coords(const std::vector<fq_t>& c) const {
    code_t a = 0;
    for (int i = n_ - 1; i >= 0; --i) a = a * q_ + (i < static_cast<int>(c.size()) ? c[i] : 0);
    return a;
}

std::vector<fq_t> FieldCtx::coords(code_t a) const {
    std::vector<fq_t> c(n_);
    for (int i = 0; i < n_; ++i) {
        c[i] = static_cast<fq_t>(a % q_);
        a /= q_;
    }
    return c;
}

code_t FieldCtx::add(code_t a, code_t b) const {
    if (p_ == 2 && e_ == 1) return a ^ b;
    code_t r = 0;
    for (int i = 0; i < n_; ++i) {
        r += code_t(fq_add(static_cast<fq_t>(a % q_), static_cast<fq_t>(b % q_))) * qpow_[i];
        a /= q_;
        b /= q_;
    }
    return r;
}

code_t FieldCtx::neg(code_t a) const {
    if (p_ == 2) return a;
    code_t r = 0;
    for (int i = 0; i < n_; ++i) {
        r += code_t(neg_tab_[a % q_]) * qpow_[i];
        a /= q_;
    }
    return r;
}

code_t FieldCtx::scalar_mul(fq_t c, code_t a) const {
    if (c == 0) return 0;
    if (c == 1) return a;
    code_t r = 0;
    for (int i = 0; i < n_; ++i) {
        r += code_t(fq_mul(c, static_cast<fq_t>(a % q_))) * qpow_[i];
        a /= q_;
    }
    return r;
}

code_t FieldCtx::mul_generic(code_t a, code_t b) const {
    if (a == 0 || b == 0) return 0;
    std::vector<fq_t> ca = coords(a), cb = coords(b);
    std::vector<fq_t> prod(2 * n_ - 1, 0);
    for (int i = 0; i < n_; ++i) {
        if (ca[i] == 0) continue;
        for (int j = 0; j < n_; ++j)
            prod[i + j] = fq_add(prod[i + j], fq_mul(ca[i], cb[j]));
    }
    // reduce mod fqn_poly (monic)
    for (int d = 2 * n_ - 2; d >= n_; --d) {
        fq_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < n_; ++i)
            prod[d - n_ + i] = fq_sub(prod[d - n_ + i], fq_mul(lead, fqn_poly_[i]));
    }
    prod.resize(n_);
    return from_coords(prod);
}

code_t FieldCtx::mul(code_t a, code_t b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables_) {
        std::uint64_t s = log_[a] + log_[b];
        std::uint64_t m = qn_ - 1;
        if (s >= m) s -= m;
        return exp_[s];
    }
    return mul_generic(a, b);
}

code_t FieldCtx::pow(code_t a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    if (has_tables_) {
        std::uint64_t m = qn_ - 1;
        if (m == 0) return 1;
        return exp_[(__uint128_t(log_[a]) * (k % m)) % m];
    }
    code_t r = 1, base = a;
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

code_t FieldCtx::inv(code_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (has_tables_) {
        std::uint64_t m = qn_ - 1;
        return exp_[(m - log_[a]) % m];
    }
    return pow(a, qn_ - 2);
}

code_t FieldCtx::div(code_t a, code_t b) const {
    if (b == 0) throw DivisionByZero("division by zero");
    if (a == 0) return 0;
    if (has_tables_) {
        std::uint64_t m = qn_ - 1;
        return exp_[(log_[a] + m - log_[b]) % m];
    }
    return mul(a, inv(b));
}

code_t FieldCtx::frob(code_t a, long long i) const {
    long long m = static_cast<long long>(n_) * e_;
    i = ((i % m) + m) % m;
    if (i == 0 || a == 0) return a;
    if (has_tables_ && i % e_ == 0 && !frobq_.empty()) {
        for (long long s = 0; s < i / e_; ++s) a = frobq_[a];
        return a;
    }
    std::uint64_t mod = qn_ - 1;
    std::uint64_t exp = 1;
    for (long long s = 0; s < i; ++s) exp = (__uint128_t(exp) * p_) % mod;
    return pow(a, exp);
}

fq_t FieldCtx::trace(code_t a) const {
    code_t acc = a, b = a;
    for (int i = 1; i < n_; ++i) {
        if (has_tables_ && !frobq_.empty())
            b = frobq_[b];
        else
            b = frob(b, e_);
        acc = add(acc, b);
    }
    if (acc >= q_) throw InternalContradiction("trace left the base field");
    return static_cast<fq_t>(acc);
}

std::vector<fq_t> FieldCtx::min_poly(code_t a) const {
    // Rows = coordinates of a^0, a^1, ...; stop at the first dependence.
    std::vector<std::vector<fq_t>> pows;
    code_t ak = 1;
    for (int d = 0; d <= n_; ++d) {
        pows.push_back(coords(ak));
        // Solve sum_{i<d} x_i a^i = a^d by elimination on the transposed system.
        int k = static_cast<int>(pows.size()) - 1;
        if (k >= 1) {
            // Augmented matrix: columns = pows[0..k-1], rhs = pows[k].
            std::vector<std::vector<fq_t>> m(n_, std::vector<fq_t>(k + 1, 0));
            for (int i = 0; i < k; ++i)
                for (int r = 0; r < n_; ++r) m[r][i] = pows[i][r];
            for (int r = 0; r < n_; ++r) m[r][k] = pows[k][r];
            // Gaussian elimination over F_q.
            std::vector<int> pivot_col(n_, -1);
            int rank = 0;
            for (int c = 0; c < k && rank < n_; ++c) {
                int pr = -1;
                for (int r = rank; r < n_; ++r)
                    if (m[r][c] != 0) {
                        pr = r;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(m[rank], m[pr]);
                fq_t iv = fq_inv(m[rank][c]);
                for (int cc = c; cc <= k; ++cc) m[rank][cc] = fq_mul(iv, m[rank][cc]);
                for (int r = 0; r < n_; ++r) {
                    if (r == rank || m[r][c] == 0) continue;
                    fq_t f = m[r][c];
                    for (int cc = c; cc <= k; ++cc)
                        m[r][cc] = fq_sub(m[r][cc], fq_mul(f, m[rank][cc]));
                }
                pivot_col[rank] = c;
                ++rank;
            }
            bool solvable = true;
            for (int r = rank; r < n_; ++r)
                if (m[r][k] != 0) solvable = false;
            if (solvable) {
                std::vector<fq_t> x(k, 0);
                for (int r = 0; r < rank; ++r) x[pivot_col[r]] = m[r][k];
                std::vector<fq_t> f(k + 1, 0);
                for (int i = 0; i < k; ++i) f[i] = fq_neg(x[i]);
                f[k] = 1;
                return f;
            }
        }
        ak = mul(ak, a);
    }
    throw InternalContradiction("no minimal polynomial of degree <= n found");
}

int FieldCtx::degree(code_t a) const { return static_cast<int>(min_poly(a).size()) - 1; }

std::uint64_t FieldCtx::mult_order(code_t a) const {
    if (a == 0) throw DivisionByZero("order of zero");
    std::uint64_t ord = qn_ - 1;
    for (std::uint64_t f : prime_factors(qn_ - 1))
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    return ord;
}

void FieldCtx::build_qn_tables() {
    has_tables_ = qn_ <= (1u << 16);
    if (!has_tables_) {
        // Still pick a deterministic primitive element for callers.
        for (code_t g = 1; g < qn_; ++g)
            if (mult_order(g) == qn_ - 1) {
                primitive_ = g;
                break;
            }
        return;
    }
    std::uint64_t m = qn_ - 1;
    auto factors = prime_factors(m);
    for (code_t g = 1; g < qn_; ++g) {
        bool prim = true;
        for (std::uint64_t f : factors) {
            // generic pow: tables not built yet
            code_t r = 1, base = g;
            std::uint64_t k = m / f;
            while (k) {
                if (k & 1) r = mul_generic(r, base);
                base = mul_generic(base, base);
                k >>= 1;
            }
            if (r == 1) {
                prim = false;
                break;
            }
        }
        if (prim) {
            primitive_ = g;
            break;
        }
    }
    exp_.assign(qn_ - 1, 0);
    log_.assign(qn_, 0);
    code_t cur = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        exp_[i] = static_cast<std::uint32_t>(cur);
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = mul_generic(cur, primitive_);
    }
    frobq_.assign(qn_, 0);
    for (code_t a = 1; a < qn_; ++a)
        frobq_[a] = static_cast<std::uint32_t>(exp_[(__uint128_t(log_[a]) * q_) % m]);
}

code_t FieldCtx::subfield_generator(int t) const {
    if (t < 1 || n_ % t != 0) throw BadParams("t must divide n");
    std::uint64_t qt = 1;
    for (int i = 0; i < t; ++i) qt *= q_;
    return pow(primitive_, (qn_ - 1) / (qt - 1));
}

CtxPtr FieldCtx::make(std::uint64_t p, int e, int n,
                      const std::vector<fq_t>* fq_poly,
                      const std::vector<fq_t>* fqn_poly) {
    if (!is_prime(p)) throw NotPrime("p = " + std::to_string(p) + " is not prime");
    if (e < 1 || n < 1) throw BadParams("e and n must be positive");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->e_ = e;
    ctx->n_ = n;
    std::uint64_t q = checked_pow(p, e, 1u << 20);
    ctx->q_ = static_cast<fq_t>(q);
    ctx->qn_ = checked_pow(q, n, std::uint64_t(1) << 40);
    ctx->qpow_.resize(n + 1);
    ctx->qpow_[0] = 1;
    for (int i = 1; i <= n; ++i) ctx->qpow_[i] = ctx->qpow_[i - 1] * q;

    // F_q defining polynomial over F_p.
    if (fq_poly) {
        if (static_cast<int>(fq_poly->size()) != e + 1 || fq_poly->back() != 1)
            throw BadParams("fq polynomial must be monic of degree e");
        for (fq_t c : *fq_poly)
            if (c >= p) throw BadParams("fq polynomial coefficient out of range");
        if (!irreducible_fp(*fq_poly, p))
            throw ReduciblePolynomial("supplied F_q defining polynomial is reducible");
        ctx->fq_poly_ = *fq_poly;
    } else {
        std::uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            auto f = nth_monic(idx, e, p);
            if (irreducible_fp(f, p)) {
                ctx->fq_poly_ = f;
                break;
            }
        }
    }
    ctx->build_fq_tables();

    // F_{q^n} defining polynomial over F_q: irreducibility by trial division.
    auto irreducible_fq = [&ctx, n](const std::vector<fq_t>& f) {
        if (n == 1) return true;
        if (f[0] == 0) return false;
        auto poly_mod = [&ctx](std::vector<fq_t> a, const std::vector<fq_t>& b) {
            while (!a.empty() && a.back() == 0) a.pop_back();
            while (a.size() >= b.size()) {
                fq_t lead = a.back();
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = ctx->fq_sub(a[shift + i], ctx->fq_mul(lead, b[i]));
                while (!a.empty() && a.back() == 0) a.pop_back();
            }
            return a;
        };
        for (int d = 1; 2 * d <= n; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= ctx->q_;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                auto g = nth_monic(idx, d, ctx->q_);
                if (poly_mod(f, g).empty()) return false;
            }
        }
        return true;
    };
    if (fqn_poly) {
        if (static_cast<int>(fqn_poly->size()) != n + 1 || fqn_poly->back() != 1)
            throw BadParams("fqn polynomial must be monic of degree n");
        for (fq_t c : *fqn_poly)
            if (c >= ctx->q_) throw BadParams("fqn polynomial coefficient out of range");
        if (!irreducible_fq(*fqn_poly))
            throw ReduciblePolynomial("supplied F_{q^n} defining polynomial is reducible");
        ctx->fqn_poly_ = *fqn_poly;
    } else {
        std::uint64_t count = 1;
        for (int i = 0; i < n; ++i) count *= ctx->q_;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            auto f = nth_monic(idx, n, ctx->q_);
            if (irreducible_fq(f)) {
                ctx->fqn_poly_ = f;
                break;
            }
        }
    }
    if (n == 1) ctx->lambda1_ = ctx->fq_neg(ctx->fqn_poly_[0]);

    ctx->build_qn_tables();
    return ctx;
}

} // namespace linset
