#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "linset/errors.hpp"

namespace linset {

/// Code of an F_q element: base-p digits of the residue polynomial mod fq_poly.
using fq_t = std::uint32_t;
/// Code of an F_{q^n} element: base-q digits, coordinate i is the coefficient of λ^i.
using code_t = std::uint64_t;

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

/// Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^n}, q = p^e.
///
/// Immutable after construction and safely shareable between threads.
/// Elements are plain integer codes; all operations are pure.
/// Multiplication uses discrete log/antilog tables when q^n ≤ 2^16,
/// polynomial reduction on the fly otherwise.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    /// Builds a context. Omitted polynomials default to the lexicographically
    /// smallest monic irreducible of the required degree (coefficients compared
    /// constant-term-first). Throws NotPrime / ReduciblePolynomial / BadParams.
    static CtxPtr make(std::uint64_t p, int e, int n,
                       const std::vector<fq_t>* fq_poly = nullptr,
                       const std::vector<fq_t>* fqn_poly = nullptr);

    std::uint64_t p() const { return p_; }
    int e() const { return e_; }
    int n() const { return n_; }
    fq_t q() const { return q_; }
    std::uint64_t qn() const { return qn_; }
    const std::vector<fq_t>& fq_poly() const { return fq_poly_; }
    const std::vector<fq_t>& fqn_poly() const { return fqn_poly_; }

    // F_q arithmetic on codes 0..q-1.
    fq_t fq_add(fq_t a, fq_t b) const { return add_tab_[a * q_ + b]; }
    fq_t fq_sub(fq_t a, fq_t b) const { return add_tab_[a * q_ + neg_tab_[b]]; }
    fq_t fq_neg(fq_t a) const { return neg_tab_[a]; }
    fq_t fq_mul(fq_t a, fq_t b) const { return mul_tab_[a * q_ + b]; }
    fq_t fq_inv(fq_t a) const;

    // F_{q^n} arithmetic on codes 0..qn-1.
    code_t add(code_t a, code_t b) const;
    code_t sub(code_t a, code_t b) const { return add(a, neg(b)); }
    code_t neg(code_t a) const;
    code_t mul(code_t a, code_t b) const;
    code_t inv(code_t a) const;
    code_t div(code_t a, code_t b) const;
    code_t pow(code_t a, std::uint64_t k) const;
    code_t scalar_mul(fq_t c, code_t a) const;

    /// a^{p^i}; i is taken mod n·e.
    code_t frob(code_t a, long long i) const;
    /// Relative trace Tr_{q^n/q}(a); the result is an F_q code.
    fq_t trace(code_t a) const;
    /// Tr(ab), the nondegenerate symmetric bilinear form.
    fq_t trace_form(code_t a, code_t b) const { return trace(mul(a, b)); }

    fq_t coord(code_t a, int i) const;
    code_t from_coords(const std::vector<fq_t>& c) const;
    std::vector<fq_t> coords(code_t a) const;
    /// The class of the indeterminate of fqn_poly (basis generator λ).
    code_t lambda() const { return n_ > 1 ? q_ : lambda1_; }
    bool in_base_field(code_t a) const { return a < q_; }

    /// Monic minimal polynomial of a over F_q, constant term first.
    std::vector<fq_t> min_poly(code_t a) const;
    /// dim_{F_q} F_q(a) = deg min_poly(a); divides n.
    int degree(code_t a) const;

    /// Smallest-code generator of the multiplicative group.
    code_t primitive_element() const { return primitive_; }
    /// Canonical generator of the intermediate field F_{q^t}, t | n: the
    /// smallest power of the fixed primitive element having degree t.
    code_t subfield_generator(int t) const;
    std::uint64_t mult_order(code_t a) const;

    bool has_tables() const { return has_tables_; }

private:
    FieldCtx() = default;
    void build_fq_tables();
    void build_qn_tables();
    code_t mul_generic(code_t a, code_t b) const;

    std::uint64_t p_ = 0;
    int e_ = 0, n_ = 0;
    fq_t q_ = 0;
    std::uint64_t qn_ = 0;
    code_t lambda1_ = 0; // root of fqn_poly when n == 1
    std::vector<fq_t> fq_poly_, fqn_poly_;
    std::vector<std::uint64_t> qpow_; // q^0..q^n

    std::vector<fq_t> add_tab_, mul_tab_, neg_tab_, inv_tab_;

    bool has_tables_ = false;
    code_t primitive_ = 0;
    std::vector<std::uint32_t> exp_, log_;
    std::vector<std::uint32_t> frobq_; // a -> a^q
};

/// Value-semantic element of F_{q^n} bound to its context.
class Element {
public:
    Element() = default;
    Element(CtxPtr ctx, code_t code) : ctx_(std::move(ctx)), code_(code) {}

    const CtxPtr& ctx() const { return ctx_; }
    code_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    friend Element operator+(const Element& a, const Element& b) {
        same_ctx(a, b);
        return {a.ctx_, a.ctx_->add(a.code_, b.code_)};
    }
    friend Element operator-(const Element& a, const Element& b) {
        same_ctx(a, b);
        return {a.ctx_, a.ctx_->sub(a.code_, b.code_)};
    }
    friend Element operator*(const Element& a, const Element& b) {
        same_ctx(a, b);
        return {a.ctx_, a.ctx_->mul(a.code_, b.code_)};
    }
    friend Element operator/(const Element& a, const Element& b) {
        same_ctx(a, b);
        return {a.ctx_, a.ctx_->div(a.code_, b.code_)};
    }
    friend bool operator==(const Element& a, const Element& b) {
        same_ctx(a, b);
        return a.code_ == b.code_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    static void same_ctx(const Element& a, const Element& b) {
        if (a.ctx_.get() != b.ctx_.get())
            throw CtxMismatch("elements from different field contexts");
    }
    CtxPtr ctx_;
    code_t code_ = 0;
};

inline CtxPtr make_field(std::uint64_t p, int e, int n,
                         const std::vector<fq_t>* fq_poly = nullptr,
                         const std::vector<fq_t>* fqn_poly = nullptr) {
    return FieldCtx::make(p, e, n, fq_poly, fqn_poly);
}

inline Element trace_rel(const Element& a) {
    return {a.ctx(), static_cast<code_t>(a.ctx()->trace(a.code()))};
}
inline Element frobenius(const Element& a, long long i) {
    return {a.ctx(), a.ctx()->frob(a.code(), i)};
}
inline std::vector<fq_t> min_poly_over_fq(const Element& a) { return a.ctx()->min_poly(a.code()); }
inline int element_degree(const Element& a) { return a.ctx()->degree(a.code()); }

} // namespace linset
