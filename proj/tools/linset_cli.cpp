#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "linset/constructions.hpp"
#include "linset/io.hpp"
#include "linset/search.hpp"

namespace {

using namespace linset;

struct Common {
    std::string field;
    std::string out;
    std::string output = "json";
    int threads = 1;
};

void emit_text(const std::string& text, const Common& c) {
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        f << text << "\n";
    } else {
        std::cout << text << "\n";
    }
}

void emit_json(const nlohmann::json& j, const Common& c) { emit_text(j.dump(2), c); }

void emit_report(const LinearSetReport& rep, const FieldCtx& ctx, const Common& c,
                 const std::string& subspace_text = "") {
    if (c.output == "csv") {
        std::string text = report_csv_header() + "\n" + report_csv_row(rep);
        emit_text(text, c);
    } else if (c.output == "text") {
        std::ostringstream os;
        if (!subspace_text.empty()) os << "U = " << subspace_text << "\n";
        os << "rank " << rep.rank << ", size " << rep.size << ", distribution";
        for (const auto& [w, cnt] : rep.distribution) os << " N_" << w << "=" << cnt;
        os << (rep.flags.scattered ? ", scattered" : "")
           << (rep.flags.minimum_size ? ", minimum size" : "");
        if (rep.flags.club_i) os << ", " << rep.flags.club_i << "-club";
        emit_text(os.str(), c);
    } else {
        nlohmann::json j = report_json(rep, ctx);
        if (!subspace_text.empty()) j["subspace"] = subspace_text;
        emit_json(j, c);
    }
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--field", c.field, "field spec, e.g. p=2,e=1,n=4[,fq=...][,fqn=...]")
        ->required();
    cmd->add_option("--out", c.out, "write the report to this path instead of stdout");
    cmd->add_option("--output", c.output, "output format: json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--threads", c.threads, "worker cap for searches");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear sets of minimum size and critical pairs in PG(1,q^n)"};
    app.require_subcommand(1);

    Common c;
    std::string lambda_text, mu_text, b_text;
    std::string u_text, s_text, t_text, sbar_text, uprime_text, s1_text, s2_text;
    int t1 = 1, t2 = 1, tsub = 0, ell = 0, m = 1, jj = 1, k = 0, r = 0, kprime = 0, max_dim = 2;
    std::uint64_t samples = 0, seed = 0;
    SearchLimits limits;
    bool want_vosper = false, full_orbit = false;
    std::string harness;

    CLI::App* construct = app.add_subcommand("construct", "build a subspace and report L_U");
    construct->require_subcommand(1);
    construct->fallthrough();
    add_common(construct, c);
    construct->add_option("--lambda", lambda_text, "element text for lambda");
    construct->add_option("--mu", mu_text, "element text for mu");
    construct->add_option("--b", b_text, "element text for b");
    construct->add_option("--t1", t1, "first power-span length");
    construct->add_option("--t2", t2, "second power-span length");
    construct->add_option("--t", tsub, "subfield degree t");
    construct->add_option("--l", ell, "F_{q^t}-dimension of the default S-bar");
    construct->add_option("--m", m, "power-span length m");
    construct->add_option("--j", jj, "power-span length j");
    construct->add_option("--sbar", sbar_text, "subspace text for S-bar");
    construct->add_option("--uprime", uprime_text, "subspace text for U'");
    CLI::App* c_trace = construct->add_subcommand("trace", "graph of the trace map");
    CLI::App* c_jvdv = construct->add_subcommand("jvdv", "power-span product subspace");
    CLI::App* c_lift = construct->add_subcommand("lift", "lift of a subfield-plane subspace");
    CLI::App* c_minfam = construct->add_subcommand("minfam", "minimum-size family member");
    CLI::App* c_iclub = construct->add_subcommand("iclub", "club lift of a scattered subspace");

    CLI::App* analyze = app.add_subcommand("analyze", "enumerate L_U for a plane subspace");
    add_common(analyze, c);
    analyze->add_option("--U", u_text, "plane subspace text")->required();

    CLI::App* classify = app.add_subcommand("classify", "minimum-size classification of S x <1,mu>");
    add_common(classify, c);
    classify->add_option("--S", s_text, "line subspace text")->required();
    classify->add_option("--mu", mu_text, "element text for mu")->required();

    CLI::App* critpair = app.add_subcommand("critpair", "critical-pair and Kneser/Vosper checks");
    add_common(critpair, c);
    critpair->add_option("--S", s_text, "line subspace text")->required();
    critpair->add_option("--T", t_text, "line subspace text")->required();
    critpair->add_flag("--vosper", want_vosper, "run the common-ratio check");

    CLI::App* equiv = app.add_subcommand("equiv", "equivalence tests");
    add_common(equiv, c);
    equiv->add_option("--S1", s1_text, "first line subspace");
    equiv->add_option("--S2", s2_text, "second line subspace");
    equiv->add_option("--U1", u_text, "first plane subspace");
    equiv->add_option("--U2", t_text, "second plane subspace");
    equiv->add_flag("--full-orbit", full_orbit, "brute force the full semilinear orbit");

    CLI::App* dualbasis = app.add_subcommand("dualbasis", "dual of the power basis of lambda");
    add_common(dualbasis, c);
    dualbasis->add_option("--lambda", lambda_text, "element text for lambda");

    CLI::App* search = app.add_subcommand("search", "exhaustive verification harnesses");
    add_common(search, c);
    search->add_option("harness", harness, "thm36|thm39|vosper|kneser|critprobe")->required();
    search->add_option("--mu", mu_text, "element text for mu (thm36)");
    search->add_option("--k", k, "rank parameter k");
    search->add_option("--r", r, "weight parameter r");
    search->add_option("--kprime", kprime, "dimension k' (thm36)");
    search->add_option("--max-dim", max_dim, "largest dimension per factor");
    search->add_option("--samples", samples, "random sample count (0 = exhaustive)");
    search->add_option("--seed", seed, "random seed");
    search->add_option("--limit", limits.max_pair_evals, "pair-evaluation ceiling override");
    search->add_option("--max-subspaces", limits.max_subspaces, "stratum ceiling override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CtxPtr ctx = parse_field_spec(c.field);
        auto elem = [&](const std::string& text) { return parse_element(*ctx, text); };
        auto lam = [&]() {
            return Element(ctx, lambda_text.empty() ? ctx->lambda() : elem(lambda_text));
        };

        if (*construct) {
            Subspace u = Subspace::zero(ctx, Subspace::Ambient::Plane);
            if (*c_trace) {
                u = trace_graph(ctx);
            } else if (*c_jvdv) {
                u = jvdv(lam(), t1, t2);
            } else if (*c_lift || *c_iclub || *c_minfam) {
                if (*c_minfam) {
                    if (mu_text.empty()) throw BadParams("minfam needs --mu");
                    Element mu(ctx, elem(mu_text));
                    int t = ctx->degree(mu.code());
                    Subspace sbar = sbar_text.empty()
                                        ? (ell > 0 ? canonical_qt_subspace(ctx, t, ell)
                                                   : Subspace::zero(ctx, Subspace::Ambient::Line))
                                        : parse_subspace(ctx, sbar_text);
                    code_t b = b_text.empty() ? default_b(ctx, sbar, t) : elem(b_text);
                    u = min_size_family(mu, sbar, b, m, jj);
                } else {
                    if (uprime_text.empty() || tsub == 0)
                        throw BadParams("lift needs --uprime and --t");
                    Subspace up = parse_subspace(ctx, uprime_text);
                    Subspace sbar = sbar_text.empty()
                                        ? (ell > 0 ? canonical_qt_subspace(ctx, tsub, ell)
                                                   : Subspace::zero(ctx, Subspace::Ambient::Line))
                                        : parse_subspace(ctx, sbar_text);
                    code_t b = b_text.empty() ? default_b(ctx, sbar, tsub) : elem(b_text);
                    u = *c_iclub ? iclub_lift(up, tsub, sbar, b) : lift(up, tsub, sbar, b);
                }
            }
            emit_report(enumerate_linear_set(u), *ctx, c, format_subspace(u));
        } else if (*analyze) {
            Subspace u = parse_subspace(ctx, u_text);
            emit_report(enumerate_linear_set(u), *ctx, c, format_subspace(u));
        } else if (*classify) {
            Subspace s = parse_subspace(ctx, s_text);
            emit_json(minsize_json(classify_min_size_type2(s, elem(mu_text)), *ctx), c);
        } else if (*critpair) {
            Subspace s = parse_subspace(ctx, s_text);
            Subspace t = parse_subspace(ctx, t_text);
            if (want_vosper) {
                emit_json(critpair_json(vosper_check(s, t), *ctx), c);
            } else {
                nlohmann::json j = report_envelope(*ctx);
                j["kind"] = "critical_pair";
                j["dim_s"] = s.dim();
                j["dim_t"] = t.dim();
                j["dim_st"] = product_space(s, t).dim();
                j["is_critical"] = critical_pair_check(s, t);
                KneserResult kr = kneser_check(s, t);
                j["kneser_bound_met"] = kr.bound_met;
                j["kneser_stabilizer_t"] =
                    kr.stabilizer_t ? nlohmann::json(*kr.stabilizer_t) : nlohmann::json(nullptr);
                emit_json(j, c);
            }
        } else if (*equiv) {
            nlohmann::json j = report_envelope(*ctx);
            j["kind"] = "equivalence";
            if (!s1_text.empty() || !s2_text.empty()) {
                if (s1_text.empty() || s2_text.empty()) throw BadParams("need both --S1 and --S2");
                auto w = scalar_frobenius_equivalent(parse_subspace(ctx, s1_text),
                                                     parse_subspace(ctx, s2_text));
                j["mode"] = "scalar_frobenius";
                j["equivalent"] = w.has_value();
                if (w)
                    j["witness"] = {{"a", format_element(*ctx, w->first)}, {"rho", w->second}};
                else
                    j["witness"] = nullptr;
            } else {
                if (u_text.empty() || t_text.empty()) throw BadParams("need both --U1 and --U2");
                if (!full_orbit) throw BadParams("plane equivalence needs --full-orbit");
                auto w = gamma_l_orbit_equivalent(parse_subspace(ctx, u_text),
                                                  parse_subspace(ctx, t_text));
                j["mode"] = "full_orbit";
                j["equivalent"] = w.has_value();
                if (w)
                    j["witness"] = {{"matrix",
                                     {format_element(*ctx, w->mat[0]), format_element(*ctx, w->mat[1]),
                                      format_element(*ctx, w->mat[2]), format_element(*ctx, w->mat[3])}},
                                    {"rho", w->rho}};
                else
                    j["witness"] = nullptr;
            }
            emit_json(j, c);
        } else if (*dualbasis) {
            DualBasis db = dual_basis(lam());
            nlohmann::json j = report_envelope(*ctx);
            j["kind"] = "dual_basis";
            j["lambda"] = format_element(*ctx, db.lambda.code());
            j["delta"] = format_element(*ctx, db.delta.code());
            nlohmann::json gam = nlohmann::json::array(), dual = nlohmann::json::array();
            for (const auto& g : db.gammas) gam.push_back(format_element(*ctx, g.code()));
            for (const auto& d : db.dual) dual.push_back(format_element(*ctx, d.code()));
            j["gammas"] = gam;
            j["dual"] = dual;
            emit_json(j, c);
        } else if (*search) {
            SearchReport rep;
            if (harness == "thm36") {
                if (mu_text.empty() || kprime < 2) throw BadParams("thm36 needs --mu and --kprime");
                rep = verify_thm36(ctx, elem(mu_text), kprime, c.threads, limits);
            } else if (harness == "thm39") {
                rep = verify_thm39(ctx, k, r, c.threads, limits);
            } else if (harness == "vosper") {
                rep = verify_vosper_exhaustive(ctx, max_dim, c.threads, limits);
            } else if (harness == "kneser") {
                rep = verify_kneser(ctx, max_dim, c.threads, limits);
            } else if (harness == "critprobe") {
                rep = probe_critpair_minsize(ctx, k, r, samples, seed, c.threads, limits);
            } else {
                throw BadParams("unknown harness '" + harness + "'");
            }
            emit_json(search_report_json(rep, *ctx), c);
        }
        return 0;
    } catch (const TooLarge& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const InternalContradiction& e) {
        std::cerr << "internal contradiction: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
