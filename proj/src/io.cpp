#include "linset/io.hpp"

#include <charconv>
#include <sstream>

namespace linset {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

std::uint64_t parse_uint(const std::string& s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError("not a non-negative integer: '" + s + "'");
    return v;
}

std::vector<fq_t> parse_coord_list(const std::string& s) {
    std::vector<fq_t> out;
    for (const auto& tok : split(s, ',')) out.push_back(static_cast<fq_t>(parse_uint(tok)));
    return out;
}

} // namespace

CtxPtr parse_field_spec(const std::string& text) {
    std::uint64_t p = 0;
    int e = -1, n = -1;
    std::vector<fq_t> fq, fqn;
    std::vector<fq_t>* cur_list = nullptr;
    for (const auto& tok : split(text, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            if (!cur_list) throw ParseError("unexpected token '" + tok + "' in field spec");
            cur_list->push_back(static_cast<fq_t>(parse_uint(tok)));
            continue;
        }
        std::string key = trim(tok.substr(0, eq));
        std::string val = trim(tok.substr(eq + 1));
        cur_list = nullptr;
        if (key == "p")
            p = parse_uint(val);
        else if (key == "e")
            e = static_cast<int>(parse_uint(val));
        else if (key == "n")
            n = static_cast<int>(parse_uint(val));
        else if (key == "fq") {
            fq = {static_cast<fq_t>(parse_uint(val))};
            cur_list = &fq;
        } else if (key == "fqn") {
            fqn = {static_cast<fq_t>(parse_uint(val))};
            cur_list = &fqn;
        } else
            throw ParseError("unknown field spec key '" + key + "'");
    }
    if (p == 0 || e < 1 || n < 1) throw ParseError("field spec must set p, e and n");
    return make_field(p, e, n, fq.empty() ? nullptr : &fq, fqn.empty() ? nullptr : &fqn);
}

std::string format_field_spec(const FieldCtx& ctx) {
    std::ostringstream os;
    os << "p=" << ctx.p() << ",e=" << ctx.e() << ",n=" << ctx.n() << ",fq=";
    for (std::size_t i = 0; i < ctx.fq_poly().size(); ++i)
        os << (i ? "," : "") << ctx.fq_poly()[i];
    os << ",fqn=";
    for (std::size_t i = 0; i < ctx.fqn_poly().size(); ++i)
        os << (i ? "," : "") << ctx.fqn_poly()[i];
    return os.str();
}

code_t parse_element(const FieldCtx& ctx, const std::string& text) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("element text must be bracketed: '" + text + "'");
    std::vector<fq_t> c = parse_coord_list(s.substr(1, s.size() - 2));
    if (static_cast<int>(c.size()) != ctx.n())
        throw ParseError("element needs exactly n coordinates");
    for (fq_t v : c)
        if (v >= ctx.q()) throw ParseError("coordinate out of range for F_q");
    return ctx.from_coords(c);
}

std::string format_element(const FieldCtx& ctx, code_t a) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < ctx.n(); ++i) os << (i ? "," : "") << ctx.coord(a, i);
    os << ']';
    return os.str();
}

Subspace parse_subspace(const CtxPtr& ctx, const std::string& text) {
    std::vector<std::vector<fq_t>> rows;
    for (const auto& rtext : split(text, ';')) {
        if (rtext.empty()) continue;
        rows.push_back(parse_coord_list(rtext));
    }
    if (rows.empty()) throw ParseError("subspace text has no rows");
    std::size_t len = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != len) throw ParseError("subspace rows have inconsistent lengths");
    Subspace::Ambient amb;
    if (static_cast<int>(len) == ctx->n())
        amb = Subspace::Ambient::Line;
    else if (static_cast<int>(len) == 2 * ctx->n())
        amb = Subspace::Ambient::Plane;
    else
        throw ParseError("row length must be n or 2n");
    for (const auto& r : rows)
        for (fq_t v : r)
            if (v >= ctx->q()) throw ParseError("coordinate out of range for F_q");
    return Subspace::from_rows(ctx, amb, std::move(rows));
}

std::string format_subspace(const Subspace& s) {
    std::ostringstream os;
    for (int r = 0; r < s.dim(); ++r) {
        if (r) os << ';';
        for (int c = 0; c < s.ncols(); ++c) os << (c ? "," : "") << s.rows()[r][c];
    }
    return os.str();
}

nlohmann::json report_envelope(const FieldCtx& ctx) {
    return {{"schema", "report-v1"}, {"field", format_field_spec(ctx)}};
}

nlohmann::json report_json(const LinearSetReport& rep, const FieldCtx& ctx) {
    nlohmann::json j = report_envelope(ctx);
    j["kind"] = "linear_set";
    j["q"] = rep.q;
    j["qn"] = rep.qn;
    j["rank"] = rep.rank;
    j["size"] = rep.size;
    nlohmann::json dist = nlohmann::json::object();
    for (const auto& [w, cnt] : rep.distribution) dist[std::to_string(w)] = cnt;
    j["distribution"] = dist;
    j["spectrum"] = rep.spectrum;
    j["flags"] = {{"scattered", rep.flags.scattered},
                  {"minimum_size", rep.flags.minimum_size},
                  {"club_i", rep.flags.club_i}};
    if (rep.flags.complementary)
        j["flags"]["complementary"] = {rep.flags.complementary->first,
                                       rep.flags.complementary->second};
    else
        j["flags"]["complementary"] = nullptr;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [id, w] : rep.points) pts.push_back({id, w});
    j["points"] = pts;
    return j;
}

nlohmann::json decomposition_json(const Decomposition& d, const FieldCtx& ctx) {
    nlohmann::json j;
    switch (d.kind) {
        case Decomposition::Kind::SubfieldSpace: j["case"] = "subfield_space"; break;
        case Decomposition::Kind::Geometric: j["case"] = "geometric"; break;
        case Decomposition::Kind::Mixed: j["case"] = "mixed"; break;
        case Decomposition::Kind::NotApplicable: j["case"] = "not_applicable"; break;
    }
    j["t"] = d.t;
    if (d.kind == Decomposition::Kind::Geometric || d.kind == Decomposition::Kind::Mixed) {
        j["b"] = format_element(ctx, d.b);
        j["m"] = d.m;
    }
    if (d.kind == Decomposition::Kind::Mixed) j["sbar"] = format_subspace(*d.sbar);
    return j;
}

nlohmann::json minsize_json(const MinSizeVerdict& v, const FieldCtx& ctx) {
    nlohmann::json j = report_envelope(ctx);
    j["kind"] = "min_size_classification";
    j["minimum_size"] = v.minimum_size;
    j["size"] = v.size;
    if (v.decomposition) j["decomposition"] = decomposition_json(*v.decomposition, ctx);
    return j;
}

nlohmann::json critpair_json(const CriticalPairVerdict& v, const FieldCtx& ctx) {
    nlohmann::json j = report_envelope(ctx);
    j["kind"] = "critical_pair";
    j["dim_s"] = v.dim_s;
    j["dim_t"] = v.dim_t;
    j["dim_st"] = v.dim_st;
    j["is_critical"] = v.is_critical;
    j["hypothesis_met"] = v.hypothesis_met;
    j["kneser_stabilizer_t"] =
        v.kneser_stabilizer_t ? nlohmann::json(*v.kneser_stabilizer_t) : nlohmann::json(nullptr);
    if (v.vosper_form)
        j["vosper_form"] = {{"g", format_element(ctx, v.vosper_form->g)},
                            {"g_prime", format_element(ctx, v.vosper_form->gp)},
                            {"a", format_element(ctx, v.vosper_form->a)}};
    else
        j["vosper_form"] = nullptr;
    return j;
}

std::string report_csv_header() { return "q,qn,rank,size,scattered,minimum_size,club_i,distribution"; }

std::string report_csv_row(const LinearSetReport& rep) {
    std::ostringstream os;
    os << rep.q << ',' << rep.qn << ',' << rep.rank << ',' << rep.size << ','
       << (rep.flags.scattered ? 1 : 0) << ',' << (rep.flags.minimum_size ? 1 : 0) << ','
       << rep.flags.club_i << ',';
    bool first = true;
    for (const auto& [w, cnt] : rep.distribution) {
        if (!first) os << '|';
        first = false;
        os << w << ':' << cnt;
    }
    return os.str();
}

} // namespace linset
