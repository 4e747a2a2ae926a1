#include <apncodes/cli.hpp>
#include <apncodes/codes.hpp>
#include <apncodes/error.hpp>
#include <apncodes/exp_sums.hpp>
#include <apncodes/kernels.hpp>
#include <apncodes/report.hpp>
#include <apncodes/tables.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace apncodes {

namespace {

struct Common {
    std::uint32_t p = 3;
    unsigned m = 3;
    std::string format = "json";
    std::string out;
    unsigned threads = 0;
    std::string modulus;
    double budget = 0;
};

// What a subcommand hands back: the JSON document plus a flat table for CSV
// and pretty output.
struct Output {
    nlohmann::json doc;
    std::string caption;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool match = true;
};

std::optional<Poly> parse_modulus(const std::string& text) {
    if (text.empty()) return std::nullopt;
    Poly f;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            f.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            fail(ErrorCode::UsageError, "--modulus takes comma-separated coefficients c0,...,cm");
        }
    }
    return f;
}

Budget budget_of(const Common& c) {
    if (c.budget <= 0) return Budget::from_env();
    return Budget{c.budget >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(c.budget)};
}

ScanOptions scan_of(const Common& c) {
    ScanOptions s;
    s.threads = c.threads;
    s.budget = budget_of(c);
    return s;
}

FieldCtx field_of(const Common& c) { return build_field(c.p, c.m, parse_modulus(c.modulus)); }

std::string value_text(const CycInt& v) {
    auto sym = v.symbolic();
    return sym ? v.pretty() + " [" + *sym + "]" : v.pretty();
}

void add_common(CLI::App* app, Common& c, bool field_flags = true) {
    if (field_flags) {
        app->add_option("--p", c.p, "characteristic (odd prime)");
        app->add_option("--m", c.m, "extension degree");
        app->add_option("--modulus", c.modulus, "primitive modulus as c0,c1,...,cm");
    }
    app->add_option("--format", c.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app->add_option("--out", c.out, "write the output here instead of stdout");
    app->add_option("--threads", c.threads, "worker threads (0: all cores)");
    app->add_option("--budget", c.budget, "work budget in elementary steps (default 1e8 or APNCODES_BUDGET)");
}

Output cmd_field(const Common& c) {
    FieldCtx f = field_of(c);
    Output o;
    o.doc = {{"field", f.descriptor()},
             {"q", f.q()},
             {"order", f.order()},
             {"kernel", kernels::isa_name(kernels::active_isa())}};
    nlohmann::json powers = nlohmann::json::array();
    o.caption = "GF(" + std::to_string(f.p()) + "^" + std::to_string(f.m()) + ") with modulus " + poly_to_string(f.modulus());
    o.columns = {"log", "coordinates", "trace"};
    const std::uint32_t shown = std::min<std::uint32_t>(f.order(), 64);
    for (std::uint32_t i = 0; i < shown; ++i) {
        FieldElem x = FieldElem::from_log(i);
        auto coords = f.coordinates(x);
        std::string cs;
        for (auto v : coords) cs += std::to_string(v);
        powers.push_back({{"log", i}, {"coordinates", coords}, {"trace", f.trace(x)}});
        o.rows.push_back({std::to_string(i), cs, std::to_string(f.trace(x))});
    }
    o.doc["powers"] = powers;
    o.doc["powers_shown"] = shown;
    return o;
}

Output cmd_cosets(const Common& c) {
    FieldCtx f = field_of(c);
    Output o;
    nlohmann::json list = nlohmann::json::array();
    o.caption = "cyclotomic cosets mod " + std::to_string(f.order());
    o.columns = {"representative", "size", "members", "minimal_polynomial"};
    for (const auto& cs : all_cosets(f.p(), f.order())) {
        Poly mp = minimal_polynomial(f, cs.representative);
        list.push_back({{"representative", cs.representative}, {"size", cs.size()}, {"members", cs.members}, {"minimal_polynomial", mp}});
        std::string members;
        for (auto x : cs.members) members += (members.empty() ? "" : " ") + std::to_string(x);
        o.rows.push_back({std::to_string(cs.representative), std::to_string(cs.size()), members, poly_to_string(mp)});
    }
    o.doc = {{"field", f.descriptor()}, {"cosets", list}};
    return o;
}

std::vector<std::string> certificate_row(const ExponentCertificate& cert) {
    auto w = [](const std::optional<Witness>& x) {
        return x ? "k=" + std::to_string(x->k) + " tau=" + std::to_string(x->tau) : std::string("-");
    };
    std::string ids;
    for (auto id : cert.table_ids) ids += (ids.empty() ? "" : " ") + std::string(table_name(id));
    return {std::to_string(cert.e), std::to_string(cert.coset_rep), w(cert.cc_witness), w(cert.thm1i_witness),
            cert.parity ? "odd" : "even", std::string(residue_class_name(cert.residue_class)), ids.empty() ? "-" : ids};
}

Output cmd_exponents(const Common& c, std::optional<std::uint64_t> e) {
    Output o;
    o.columns = {"e", "coset_rep", "cc_witness", "thm1i_witness", "parity", "residue_class", "tables"};
    if (e) {
        ExponentCertificate cert = classify_exponent(c.p, c.m, *e);
        o.caption = "certificate of e = " + std::to_string(*e);
        o.doc = {{"p", c.p}, {"m", c.m}, {"certificate", cert.to_json()}};
        o.rows.push_back(certificate_row(cert));
        return o;
    }
    CcCensus census = enumerate_cc_exponents(c.p, c.m);
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : census.representatives) {
        reps.push_back(r.to_json());
        o.rows.push_back(certificate_row(r));
    }
    o.caption = "exponents satisfying the Congruence Condition, one per coset";
    o.doc = {{"p", c.p},
             {"m", c.m},
             {"representatives", reps},
             {"coset_count", census.representatives.size()},
             {"exponent_count", census.exponent_count},
             {"thm1i_only", census.thm1i_only},
             {"reference_counts", {{"2phi(m)", census.two_phi}, {"m+2phi(m)", census.m_plus_two_phi}}}};
    if (c.p == 3) {
        nlohmann::json fam = nlohmann::json::array();
        for (const auto& a : apn_exponent_families(c.m)) {
            fam.push_back({{"family", a.family}, {"e", a.e}, {"companion_d", a.companion_d}, {"certificate", a.certificate.to_json()}});
        }
        o.doc["apn_families"] = fam;
    }
    return o;
}

// Shared shape of the "measured vs closed form" subcommands.
template <class Dist, class RowFn>
Output compare_output(const std::string& mode, const std::optional<Dist>& measured, const std::optional<Table>& formula,
                      TableId id, RowFn&& rows_of) {
    Output o;
    o.caption = std::string(table_caption(id));
    o.doc = {{"table", table_name(id)}, {"caption", table_caption(id)}, {"mode", mode}};
    if (measured) o.doc["enumerated"] = to_json(*measured);
    if (formula) o.doc["formula"] = to_json(*formula);
    if (measured && formula) {
        o.match = Table(*measured) == *formula;
        o.doc["match"] = o.match;
    }
    const Dist& shown = measured ? *measured : std::get<Dist>(*formula);
    rows_of(shown, o);
    if (measured && formula) o.columns.push_back("formula_count");
    if (measured && formula) {
        const Dist& f = std::get<Dist>(*formula);
        for (auto& row : o.rows) row.push_back("");
        // Fill the formula column by key lookup.
        std::size_t i = 0;
        for (const auto& [key, count] : shown.entries) {
            auto it = f.entries.find(key);
            o.rows[i++].back() = it == f.entries.end() ? "0" : it->second.get_str();
        }
    }
    return o;
}

void check_mode(const std::string& mode) {
    if (mode != "enum" && mode != "formula" && mode != "both") fail(ErrorCode::UsageError, "--mode must be enum, formula or both");
}

Output cmd_weights(const Common& c, std::uint64_t e, bool with_s, const std::string& mode, const std::string& table) {
    check_mode(mode);
    FieldCtx f = field_of(c);
    std::vector<std::uint64_t> exps{1, e};
    if (with_s) exps.push_back(f.order() / 2);
    CodeSpec code = make_code(f, exps);
    ExponentCertificate cert = classify_exponent(c.p, c.m, e % f.order());
    std::optional<TableId> id = table.empty() ? weight_table_for(cert, with_s) : parse_table_id(table);
    if (!table.empty() && !id) fail(ErrorCode::UsageError, "unknown table '" + table + "'");
    if (!id && mode != "enum") fail(ErrorCode::NoCertificate, "no closed-form table applies to " + code.name());
    std::optional<WeightDist> measured;
    std::optional<Table> formula;
    if (mode != "formula") measured = weight_distribution(code, scan_of(c));
    if (mode != "enum") formula = generate_table(*id, c.p, c.m);
    Output o = compare_output<WeightDist>(mode, measured, formula, id.value_or(TableId::WD_I), [](const WeightDist& d, Output& out) {
        out.columns = {"weight", "count"};
        for (const auto& [w, n] : d.entries) out.rows.push_back({std::to_string(w), n.get_str()});
    });
    if (!id) {
        o.doc.erase("table");
        o.doc.erase("caption");
        o.caption = code.name();
    }
    o.doc["code"] = code.name();
    o.doc["dimension"] = code.dimension;
    o.doc["short_coset"] = code.short_coset;
    o.doc["certificate"] = cert.to_json();
    o.doc["field"] = f.descriptor();
    return o;
}

Output cmd_expsum(const Common& c, const std::string& sum, unsigned k, std::optional<std::uint64_t> e, const std::string& mode) {
    check_mode(mode);
    FieldCtx f = field_of(c);
    ScanOptions s = scan_of(c);
    std::optional<ValueDist> measured;
    TableId id;
    if (sum == "T0") {
        id = TableId::T0_DIST;
        if (mode != "formula") measured = quadratic_sum_distribution(f, k, s);
    } else if (sum == "T" || sum == "S") {
        if (!e) fail(ErrorCode::UsageError, "--e is required for T and S");
        const bool odd = *e % 2 == 1;
        id = sum == "T" ? (odd ? TableId::T_ODD : TableId::T_EVEN) : (odd ? TableId::S_ODD : TableId::S_EVEN);
        if (mode != "formula") {
            measured = sum == "T" ? binomial_sum_distribution(f, *e, s) : trinomial_sum_distribution(f, *e, s);
        }
    } else {
        fail(ErrorCode::UsageError, "--sum must be T0, T or S");
    }
    std::optional<Table> formula;
    if (mode != "enum") formula = generate_table(id, c.p, c.m);
    Output o = compare_output<ValueDist>(mode, measured, formula, id, [](const ValueDist& d, Output& out) {
        out.columns = {"value", "count"};
        for (const auto& [v, n] : d.entries) out.rows.push_back({value_text(v), n.get_str()});
    });
    o.doc["sum"] = sum;
    if (sum == "T0") o.doc["k"] = k;
    if (e) o.doc["e"] = *e;
    o.doc["field"] = f.descriptor();
    return o;
}

Output cmd_pairdist(const Common& c, unsigned k, const std::string& mode) {
    check_mode(mode);
    FieldCtx f = field_of(c);
    std::optional<PairDist> measured;
    if (mode != "formula") measured = quadratic_pair_distribution(f, k, scan_of(c));
    std::optional<Table> formula;
    if (mode != "enum") formula = generate_table(TableId::PAIR_DIST, c.p, c.m);
    Output o = compare_output<PairDist>(mode, measured, formula, TableId::PAIR_DIST, [](const PairDist& d, Output& out) {
        out.columns = {"first", "second", "count"};
        for (const auto& [v, n] : d.entries) out.rows.push_back({value_text(v.first), value_text(v.second), n.get_str()});
    });
    o.doc["k"] = k;
    o.doc["field"] = f.descriptor();
    return o;
}

Output cmd_n4(const Common& c, unsigned k, const std::string& mode) {
    if (mode != "formula" && mode != "bruteforce" && mode != "convolution" && mode != "both" && mode != "all") {
        fail(ErrorCode::UsageError, "--mode must be formula, bruteforce, convolution, both or all");
    }
    Output o;
    o.caption = "N4 = #{x^2+y^2+z^2+w^2 = 0, x^d+y^d+z^d-w^d = 0}, d = p^k+1";
    o.columns = {"method", "count"};
    const mpz_class formula = n4_formula(c.p, c.m);
    o.doc = {{"formula", count_json(formula)}};
    o.rows.push_back({"formula", formula.get_str()});
    if (mode == "formula") return o;
    FieldCtx f = field_of(c);
    ScanOptions s = scan_of(c);
    const bool brute = mode == "bruteforce" || mode == "both" || mode == "all";
    const bool conv = mode == "convolution" || mode == "all";
    o.match = true;
    if (brute) {
        mpz_class b = n4_bruteforce(f, k, s);
        o.doc["bruteforce"] = count_json(b);
        o.rows.push_back({"bruteforce", b.get_str()});
        o.match = o.match && b == formula;
    }
    if (conv) {
        mpz_class v = n4_convolution(f, k, s);
        o.doc["convolution"] = count_json(v);
        o.rows.push_back({"convolution", v.get_str()});
        o.match = o.match && v == formula;
    }
    o.doc["match"] = o.match;
    return o;
}

Output cmd_dualdist(const Common& c, std::uint64_t e, bool with_s, unsigned bound, std::optional<unsigned> expect) {
    FieldCtx f = field_of(c);
    std::vector<std::uint64_t> exps{1, e};
    if (with_s) exps.push_back(f.order() / 2);
    CodeSpec code = make_code(f, exps);
    DualDistance d = dual_min_distance_at_most(code, bound, budget_of(c));
    Output o;
    o.caption = "minimum distance of the dual of " + code.name();
    o.columns = {"position", "coefficient"};
    for (std::size_t i = 0; i < d.positions.size(); ++i) {
        o.rows.push_back({std::to_string(d.positions[i]), std::to_string(d.coefficients[i])});
    }
    o.doc = {{"code", code.name()},
             {"bound", bound},
             {"distance", d.distance ? nlohmann::json(*d.distance) : nlohmann::json("not found")},
             {"positions", d.positions},
             {"coefficients", d.coefficients},
             {"field", f.descriptor()}};
    if (expect) {
        o.match = d.distance == *expect;
        o.doc["expected"] = *expect;
        o.doc["match"] = o.match;
    }
    return o;
}

Output cmd_verify(const Common& c, const std::string& suite, bool have_p, bool have_m) {
    if (have_p != have_m) fail(ErrorCode::UsageError, "give both --p and --m, or neither");
    VerifyOptions v;
    v.threads = c.threads;
    v.budget = budget_of(c);
    v.modulus = parse_modulus(c.modulus);
    std::vector<std::pair<std::uint32_t, unsigned>> params;
    if (have_p) params.push_back({c.p, c.m});
    VerifyReport rep = run_verify_suite(suite, params, v);
    Output o;
    o.doc = rep.to_json();
    o.match = rep.pass();
    o.caption = "verify --suite " + suite;
    o.columns = {"claim_id", "match", "runtime_ms"};
    for (const auto& r : rep.records) {
        std::ostringstream ms;
        ms << std::fixed << std::setprecision(1) << r.runtime_ms;
        o.rows.push_back({r.claim_id, r.match ? "PASS" : "FAIL", ms.str()});
    }
    return o;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string render(const Output& o, const std::string& format) {
    std::ostringstream s;
    if (format == "json") {
        s << o.doc.dump(2) << "\n";
    } else if (format == "csv") {
        s << "# " << o.caption << "\n";
        for (std::size_t i = 0; i < o.columns.size(); ++i) s << (i ? "," : "") << csv_field(o.columns[i]);
        s << "\n";
        for (const auto& row : o.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_field(row[i]);
            s << "\n";
        }
    } else {
        std::vector<std::size_t> width(o.columns.size(), 0);
        for (std::size_t i = 0; i < o.columns.size(); ++i) width[i] = o.columns[i].size();
        for (const auto& row : o.rows)
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
        s << o.caption << "\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                s << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
            }
            s << "\n";
        };
        line(o.columns);
        for (const auto& row : o.rows) line(row);
        if (o.doc.contains("match")) s << "match: " << (o.match ? "yes" : "no") << "\n";
        if (o.doc.contains("body")) s << "overall: " << (o.match ? "PASS" : "FAIL") << "\n";
    }
    return s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations on finite fields, exponential sums and cyclic codes", "apncodes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Common common;
    std::optional<std::uint64_t> e;
    unsigned k = 1;
    unsigned bound = 5;
    std::optional<unsigned> expect;
    bool with_s = false;
    std::string mode = "both", sum = "T0", suite = "desk", table;

    auto* field = app.add_subcommand("field", "field descriptor and the first powers of the primitive element");
    add_common(field, common);
    auto* cosets = app.add_subcommand("cosets", "cyclotomic cosets and minimal polynomials");
    add_common(cosets, common);
    auto* exponents = app.add_subcommand("exponents", "certificate of one exponent, or the census");
    add_common(exponents, common);
    exponents->add_option("--e", e, "exponent to classify");
    auto* weights = app.add_subcommand("weights", "weight distribution of C(1,e) or C(1,e,s)");
    add_common(weights, common);
    weights->add_option("--e", e, "second exponent")->required();
    weights->add_flag("--with-s", with_s, "add the exponent s = (q-1)/2");
    weights->add_option("--mode", mode, "enum, formula or both");
    weights->add_option("--table", table, "table id to compare against (default: from the certificate)");
    auto* expsum = app.add_subcommand("expsum", "value distribution of T0, T or S");
    add_common(expsum, common);
    expsum->add_option("--sum", sum, "T0, T or S");
    expsum->add_option("--k", k, "k for T0, gcd(m, k) = 1");
    expsum->add_option("--e", e, "exponent for T and S");
    expsum->add_option("--mode", mode, "enum, formula or both");
    auto* pairdist = app.add_subcommand("pairdist", "distribution of (T0(a,b), T0(-a,b))");
    add_common(pairdist, common);
    pairdist->add_option("--k", k, "gcd(m, k) = 1");
    pairdist->add_option("--mode", mode, "enum, formula or both");
    auto* n4 = app.add_subcommand("n4", "the N4 count");
    add_common(n4, common);
    n4->add_option("--k", k, "gcd(m, k) = 1");
    n4->add_option("--mode", mode, "formula, bruteforce, convolution, both (formula + bruteforce) or all");
    auto* dualdist = app.add_subcommand("dualdist", "minimum distance of the dual code, up to --bound");
    add_common(dualdist, common);
    dualdist->add_option("--e", e, "second exponent")->required();
    dualdist->add_flag("--with-s", with_s, "add the exponent s = (q-1)/2");
    dualdist->add_option("--bound", bound, "largest weight searched, 2..5");
    dualdist->add_option("--expect", expect, "exit 1 unless the distance equals this");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, common);
    verify->add_option("--suite", suite, "desk or quick");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& pe) {
        std::ostringstream o, er;
        int rc = app.exit(pe, o, er);
        out << o.str();
        err << er.str();
        return rc == 0 ? 0 : 2;
    }

    try {
        Output o;
        if (field->parsed()) {
            o = cmd_field(common);
        } else if (cosets->parsed()) {
            o = cmd_cosets(common);
        } else if (exponents->parsed()) {
            o = cmd_exponents(common, e);
        } else if (weights->parsed()) {
            o = cmd_weights(common, *e, with_s, mode, table);
        } else if (expsum->parsed()) {
            o = cmd_expsum(common, sum, k, e, mode);
        } else if (pairdist->parsed()) {
            o = cmd_pairdist(common, k, mode);
        } else if (n4->parsed()) {
            o = cmd_n4(common, k, mode);
        } else if (dualdist->parsed()) {
            o = cmd_dualdist(common, *e, with_s, bound, expect);
        } else {
            o = cmd_verify(common, suite, verify->count("--p") > 0, verify->count("--m") > 0);
        }
        const std::string text = render(o, common.format);
        if (common.out.empty()) {
            out << text;
        } else {
            std::ofstream f(common.out, std::ios::binary);
            if (!f) fail(ErrorCode::UsageError, "cannot write " + common.out);
            f << text;
        }
        return o.match ? 0 : 1;
    } catch (const Error& ex) {
        err << "apncodes: " << ex.what() << "\n";
        return ex.code() == ErrorCode::IdentityViolated ? 1 : 2;
    } catch (const std::exception& ex) {
        err << "apncodes: " << ex.what() << "\n";
        return 2;
    }
}

}  // namespace apncodes
