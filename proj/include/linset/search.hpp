#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "linset/analysis.hpp"
#include "linset/subspace.hpp"

namespace linset {

/// [m choose k]_q by the product formula.
std::uint64_t gaussian_binomial(std::uint64_t q, int m, int k);

struct SearchLimits {
    std::uint64_t max_subspaces = 10'000'000;    // per enumerated stratum
    std::uint64_t max_pair_evals = 100'000'000;  // per pair loop
};

/// Canonical, restartable enumeration of the k-dimensional subspaces of the
/// ambient: echelon pivot patterns in lexicographic order, free entries
/// counted in base q. at(i) is pure, so index ranges partition the stream.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(CtxPtr ctx, Subspace::Ambient amb, int k, const SearchLimits& limits = {});
    std::uint64_t total() const { return total_; }
    Subspace at(std::uint64_t idx) const;

private:
    CtxPtr ctx_;
    Subspace::Ambient amb_;
    int k_, m_;
    std::vector<std::vector<int>> patterns_;
    std::vector<std::uint64_t> prefix_; // prefix_[i] = #subspaces before pattern i
    std::uint64_t total_ = 0;
};

struct SearchReport {
    std::string kind;
    std::map<std::string, std::int64_t> params;
    std::uint64_t total_candidates = 0;
    std::uint64_t discrepancies = 0;
    std::vector<std::string> hits;     // canonical texts, global enumeration order
    std::vector<std::string> findings; // open-problem observations, not errors
    double elapsed_seconds = 0;
    std::uint64_t checksum = 0; // FNV-1a over the hit lines
};

std::uint64_t fnv1a(const std::vector<std::string>& lines);

nlohmann::json search_report_json(const SearchReport& r, const FieldCtx& ctx);

/// Minimum size of L_{S×⟨1,μ⟩} ⇔ power decomposition in the stated regime,
/// over every k′-dimensional S.
SearchReport verify_thm36(const CtxPtr& ctx, code_t mu, int kprime, int workers = 1,
                          const SearchLimits& limits = {});

/// Over all (S, T) of dims (k−r, r): a weight-r count ≥ q^{k−2r}+1 forces
/// minimum size and common-ratio polynomial bases. n must be prime.
SearchReport verify_thm39(const CtxPtr& ctx, int k, int r, int workers = 1,
                          const SearchLimits& limits = {});

/// Every in-hypothesis critical pair admits a common-ratio form. n prime.
SearchReport verify_vosper_exhaustive(const CtxPtr& ctx, int max_dim, int workers = 1,
                                      const SearchLimits& limits = {});

/// Every deficient pair's product space is stabilized by a subfield t > 1.
SearchReport verify_kneser(const CtxPtr& ctx, int max_dim, int workers = 1,
                           const SearchLimits& limits = {});

/// Critical pairs in the (S: dim n−k+r, T: dim r) frame; reports whether each
/// associated L_{S^⊥×T} has minimum size. samples = 0 means exhaustive;
/// otherwise seeded random pairs.
SearchReport probe_critpair_minsize(const CtxPtr& ctx, int k, int r, std::uint64_t samples = 0,
                                    std::uint64_t seed = 0, int workers = 1,
                                    const SearchLimits& limits = {});

} // namespace linset
