#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "linset/linear_set.hpp"
#include "linset/subspace.hpp"

namespace linset {

/// Decomposition of S with respect to μ (t = deg μ):
///  - SubfieldSpace: μS = S, so S is F_{q^t}-linear;
///  - Geometric:     S = b⟨1,μ,…,μ^{k−1}⟩, reached when t ≥ k;
///  - Mixed:         S = S̄ ⊕ b⟨1,…,μ^{m−1}⟩ with S̄ an F_{q^t}-space and
///                   S̄ ∩ bF_{q^t} = {0}, reached when t ≤ k−1;
///  - NotApplicable: dim(S ∩ μS) ≤ k−2.
struct Decomposition {
    enum class Kind { SubfieldSpace, Geometric, Mixed, NotApplicable };
    Kind kind = Kind::NotApplicable;
    int t = 0;                    // deg μ
    code_t b = 0;                 // Geometric / Mixed coefficient
    int m = 0;                    // power-span length (k for Geometric)
    std::optional<Subspace> sbar; // SubfieldSpace: S itself; Mixed: the F_{q^t} part
};

struct CriticalPairVerdict {
    int dim_s = 0, dim_t = 0, dim_st = 0;
    bool is_critical = false;
    bool hypothesis_met = false;            // n prime, dims ≥ 2, dim⟨ST⟩ ≤ n−2
    std::optional<int> kneser_stabilizer_t; // set when the pair is deficient
    struct VosperForm {
        code_t g = 0, gp = 0, a = 0; // S = g⟨1,a,…⟩, T = g′⟨1,a,…⟩
    };
    std::optional<VosperForm> vosper_form;
};

/// dims of S, S∩μS, …, S∩…∩μ^depth S.
std::vector<int> intersection_chain(const Subspace& s, code_t mu, int depth);

Decomposition power_decompose(const Subspace& s, code_t mu);

/// Rebuilds the subspace a Decomposition describes (identity check).
Subspace decomposition_rebuild(const CtxPtr& ctx, const Decomposition& d, code_t mu);

struct WeightCount {
    int j = 0;               // dim of a_1^{-1}S ∩ … ∩ a_r^{-1}S
    std::uint64_t count = 0; // q^j points of weight r besides ⟨(1,0)⟩
    Subspace witnesses;      // the intersection itself
};

/// Points of weight r = dim T in L_{S×T} other than ⟨(1,0)⟩.
WeightCount count_weight_r(const Subspace& s, const Subspace& t);

/// |L_{S×⟨1,μ⟩}| = q^{k'+1} + q^{k'} − q^{j+1} + 1 with j = dim(S∩μS);
/// cross-checked against direct enumeration.
std::uint64_t size_formula_type2(const Subspace& s, code_t mu);

struct MinSizeVerdict {
    bool minimum_size = false;
    std::uint64_t size = 0;
    std::optional<Decomposition> decomposition; // present when minimum_size
};

/// Minimum-size test for U = S×⟨1,μ⟩ with the decomposition consistency check.
MinSizeVerdict classify_min_size_type2(const Subspace& s, code_t mu);

struct KneserResult {
    bool bound_met = false;          // dim⟨ST⟩ ≥ min(dim S + dim T − 1, n)
    std::optional<int> stabilizer_t; // subfield linearity of ⟨ST⟩ when deficient
};

KneserResult kneser_check(const Subspace& s, const Subspace& t);

/// For a fixed candidate ratio a: g with S = g⟨1,a,…,a^{k−1}⟩, reached via a
/// strictly dropping intersection chain, or none.
std::optional<code_t> chain_tail_scalar(const Subspace& s, code_t a);

/// First (g, a) in element order with S = g⟨1,a,…,a^{k−1}⟩, if any.
std::optional<std::pair<code_t, code_t>> geometric_basis_recognizer(const Subspace& s);

/// First ratio a working for S and T simultaneously, with both scalars.
std::optional<CriticalPairVerdict::VosperForm> common_ratio(const Subspace& s, const Subspace& t);

CriticalPairVerdict vosper_check(const Subspace& s, const Subspace& t);

/// dim⟨ST⟩ = dim S + dim T − 1.
bool critical_pair_check(const Subspace& s, const Subspace& t);

struct BridgeResult {
    bool critical = false;
    std::uint64_t weight_r_points = 0; // weight-r points of L_{S^⊥×T} besides ⟨(1,0)⟩
    bool biconditional = false;        // critical ⇔ count = q^{k−2r+1}
    bool linset_minimum_size = false;  // minimum-size flag of L_{S^⊥×T}
};

/// Double route: critical_pair_check vs the weight-r tally of L_{S^⊥×T}.
BridgeResult critpair_linset_bridge(const Subspace& s, const Subspace& t);

/// First (a, ρ) with a·S1^{p^ρ} = S2, or none.
std::optional<std::pair<code_t, int>> scalar_frobenius_equivalent(const Subspace& s1,
                                                                 const Subspace& s2);

struct OrbitWitness {
    std::array<code_t, 4> mat{}; // row-major (α β; γ δ)
    int rho = 0;
};

/// Brute force over GL(2,q^n) × Frobenius iterates; guarded by size.
std::optional<OrbitWitness> gamma_l_orbit_equivalent(const Subspace& u1, const Subspace& u2,
                                                     std::uint64_t guard = 100000000ULL);

} // namespace linset
