#pragma once

#include <string>

#include "json.hpp"
#include "linset/analysis.hpp"
#include "linset/linear_set.hpp"
#include "linset/subspace.hpp"

namespace linset {

/// `p=<int>,e=<int>,n=<int>[,fq=<c0,c1,...>][,fqn=<c0,c1,...>]`
CtxPtr parse_field_spec(const std::string& text);
/// Fully resolved spec (always includes both defining polynomials).
std::string format_field_spec(const FieldCtx& ctx);

/// `[c_0,...,c_{n-1}]`, coordinates in the λ-power basis.
code_t parse_element(const FieldCtx& ctx, const std::string& text);
std::string format_element(const FieldCtx& ctx, code_t a);

/// Rows separated by `;`, coordinates by `,`; ambient from row length (n or 2n).
Subspace parse_subspace(const CtxPtr& ctx, const std::string& text);
std::string format_subspace(const Subspace& s);

/// Common envelope: {"schema": "report-v1", "field": "<resolved spec>"}.
nlohmann::json report_envelope(const FieldCtx& ctx);

nlohmann::json report_json(const LinearSetReport& rep, const FieldCtx& ctx);
nlohmann::json decomposition_json(const Decomposition& d, const FieldCtx& ctx);
nlohmann::json minsize_json(const MinSizeVerdict& v, const FieldCtx& ctx);
nlohmann::json critpair_json(const CriticalPairVerdict& v, const FieldCtx& ctx);

std::string report_csv_header();
std::string report_csv_row(const LinearSetReport& rep);

} // namespace linset
