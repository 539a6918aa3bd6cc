#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "linset/subspace.hpp"

namespace linset {

/// Point of PG(1,q^n), normalized to (x, 1) or (1, 0).
struct ProjPoint {
    code_t x = 0;
    bool infinity = false;

    static ProjPoint from_vector(const FieldCtx& ctx, code_t u1, code_t u2) {
        if (u2 != 0) return {ctx.div(u1, u2), false};
        return {0, true};
    }
    static ProjPoint at_infinity() { return {0, true}; }

    /// Dense id: x for affine points, qn for the point (1,0).
    std::uint64_t id(std::uint64_t qn) const { return infinity ? qn : x; }
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.infinity == b.infinity && (a.infinity || a.x == b.x);
    }
};

struct ReportFlags {
    bool scattered = false;
    bool minimum_size = false;
    int club_i = 0; // 0 = not a club
    std::optional<std::pair<int, int>> complementary; // (k-r, r), k-r >= r
};

/// Full description of L_U: rank, size, weight spectrum/distribution,
/// classification flags and the per-point weight list.
struct LinearSetReport {
    fq_t q = 0;
    std::uint64_t qn = 0;
    int rank = 0;
    std::uint64_t size = 0;
    std::map<int, std::uint64_t> distribution; // weight -> N_i
    std::vector<int> spectrum;
    ReportFlags flags;
    std::vector<std::pair<std::uint64_t, int>> points; // (point id, weight), sorted by id

    int weight_at(std::uint64_t point_id) const;
    std::vector<std::pair<std::uint64_t, int>> heaviest_points() const;
};

std::uint64_t ipow(std::uint64_t base, int exp);

/// dim_{F_q}(U ∩ {c·rep(P) : c ∈ F_{q^n}}).
int weight(const Subspace& u, const ProjPoint& p);

/// Iterates the q^{dim U}−1 nonzero vectors of U and tallies point weights.
LinearSetReport enumerate_linear_set(const Subspace& u);

/// The three counting identities plus the pairwise weight bound.
bool check_identities(const LinearSetReport& rep);

ReportFlags classify_flags(const LinearSetReport& rep);

/// Point-set equality of two linear sets (weights ignored).
bool same_point_set(const LinearSetReport& a, const LinearSetReport& b);

} // namespace linset
