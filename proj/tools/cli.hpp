#pragma once

// Command-line front end. All integers that can outgrow 64 bits are written as
// decimal strings; JSON goes to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage or domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kloo/charsums.hpp"
#include "kloo/coset_codes.hpp"
#include "kloo/errors.hpp"
#include "kloo/field.hpp"
#include "kloo/moments.hpp"
#include "kloo/orthogroup.hpp"
#include "kloo/verify.hpp"

namespace kloo::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv };

/// Rows of cells, rendered as JSON array-of-objects or as CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

inline std::string csv_cell(const Json& v) {
    const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_cell(t.columns[i]);
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

inline Json table_json(const Table& t) {
    Json arr = Json::array();
    for (const auto& row : t.rows) {
        Json o = Json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = row[i];
        arr.push_back(std::move(o));
    }
    return arr;
}

/// Emits `head` with the table under `key` (JSON) or just the table (CSV).
inline void emit(std::ostream& out, Format fmt, Json head, const std::string& key, const Table& t) {
    if (fmt == Format::csv) {
        write_csv(out, t);
        return;
    }
    head[key] = table_json(t);
    out << head.dump(2) << '\n';
}

inline GaloisField field_from(int r) { return GaloisField(r); }

inline std::string modulus_hex(const GaloisField& f) {
    std::ostringstream os;
    os << std::hex << f.modulus();
    return os.str();
}

inline FieldElement element_from(const GaloisField& f, const std::string& hex, const char* flag) {
    try {
        return f.parse(hex);
    } catch (const ParameterError& e) {
        throw ParameterError(std::string("--") + flag + ": " + e.what());
    }
}

inline std::optional<FieldElement> optional_element(const GaloisField& f, const std::string& hex, const char* flag) {
    if (hex.empty()) return std::nullopt;
    return element_from(f, hex, flag);
}

struct Args {
    std::string format = "json";
    int r = 0;
    int n = 0;
    int m = 1;
    int t = 0;
    unsigned h_max = 10;
    std::string a, c, family, method = "all";
    std::optional<int> cell;
    std::optional<long> j;
    bool elements = false;
    bool compare_oracle = false;
    int max_r = 2, max_n = 2, tier = 1;
};

// ---------------------------------------------------------------------------
// Subcommand bodies

inline int cmd_field_table(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    Table t{{"element", "trace"}, {}};
    Json traces = Json::array();
    for (FieldElement x : f.elements()) {
        t.rows.push_back({x.hex(), f.trace(x)});
        traces.push_back(f.trace(x));
    }
    if (fmt == Format::csv) {
        write_csv(out, t);
        return 0;
    }
    Json j = {{"r", f.degree()}, {"q", f.order()}, {"modulus_hex", modulus_hex(f)}, {"trace", traces}};
    out << j.dump(2) << '\n';
    return 0;
}

inline int cmd_ksum(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    if (a.a.empty()) throw ParameterError("--a is required");
    const FieldElement x = element_from(f, a.a, "a");
    const auto c = optional_element(f, a.c, "c");
    const std::int64_t v = kloosterman(f, x, a.m, c.value_or(FieldElement{}));
    if (fmt == Format::csv) {
        out << "value\n" << v << '\n';
    } else {
        out << Json{{"value", v}}.dump() << '\n';
    }
    return 0;
}

inline int cmd_ksum_gl(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    if (a.a.empty()) throw ParameterError("--a is required");
    if (a.t < 0) throw ParameterError("--t must be >= 0");
    const FieldElement x = element_from(f, a.a, "a");
    const auto c = optional_element(f, a.c, "c").value_or(FieldElement{});
    std::vector<std::pair<std::string, GlMethod>> methods;
    if (a.method == "all" || a.method == "recursion") methods.emplace_back("recursion", GlMethod::recursion);
    if (a.method == "all" || a.method == "closed_form") methods.emplace_back("closed_form", GlMethod::closed_form);
    if (a.method == "all" || a.method == "brute_force") methods.emplace_back("brute_force", GlMethod::brute_force);
    if (methods.empty()) throw ParameterError("--method must be all, recursion, closed_form or brute_force");
    Table t{{"method", "value"}, {}};
    std::optional<BigInt> first;
    bool agree = true;
    for (const auto& [name, m] : methods) {
        const BigInt v = kloosterman_gl(f, a.t, x, m, c);
        if (first) agree = agree && v == *first;
        else first = v;
        t.rows.push_back({name, v.str()});
    }
    Json head = {{"r", f.degree()}, {"q", f.order()}, {"t", a.t}, {"a", x.hex()}, {"agree", agree}};
    emit(out, fmt, head, "methods", t);
    return agree ? 0 : 1;
}

inline int cmd_moments_oracle(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    const auto ms = moments(f, a.m, a.h_max);
    Table t{{"h", "value"}, {}};
    for (std::size_t h = 0; h < ms.size(); ++h) t.rows.push_back({h, ms[h].str()});
    emit(out, fmt, Json{{"r", f.degree()}, {"q", f.order()}, {"m", a.m}}, "moments", t);
    return 0;
}

inline MomentKind kind_for(const DoubleCosetFamily& fam, int m) {
    if (fam.index() == 1) {
        if (m != 1) throw ParameterError("i = 1 families produce MK^h only (use --m 1)");
        return MomentKind::kloosterman;
    }
    if (m == 2) return MomentKind::kloosterman2;
    if (m == 1) return MomentKind::kloosterman_even;
    throw ParameterError("--m must be 1 or 2");
}

inline int cmd_moments_recursive(const Args& a, Format fmt, std::ostream& out, bool m_given) {
    const GaloisField f = field_from(a.r);
    const auto fam = DoubleCosetFamily::parse(a.family, a.n, f);
    const int m = m_given ? a.m : (fam.index() == 1 ? 1 : 2);
    const MomentKind kind = kind_for(fam, m);
    const auto inst = RecursionInstance::make(fam, a.h_max);
    const auto rec = recursive_moments(inst, kind);
    std::vector<BigInt> oracle;
    if (a.compare_oracle) {
        oracle = kind == MomentKind::kloosterman2 ? moments(f, 2, a.h_max) : moments(f, 1, a.h_max);
        if (kind == MomentKind::kloosterman_even) {
            const auto full = moments(f, 1, 2 * a.h_max);
            for (unsigned h = 0; h <= a.h_max; ++h) oracle[h] = full[2 * h];
        }
    }
    const char* moment = kind == MomentKind::kloosterman ? "MK^h" : kind == MomentKind::kloosterman2 ? "MK_2^h" : "MK^{2h}";
    Table t{{"h", "recursive"}, {}};
    if (a.compare_oracle) {
        t.columns.push_back("oracle");
        t.columns.push_back("match");
    }
    bool all = true;
    for (unsigned h = 0; h <= a.h_max; ++h) {
        std::vector<Json> row{h, rec[h].str()};
        if (a.compare_oracle) {
            const bool ok = rec[h] == oracle[h];
            all = all && ok;
            row.push_back(oracle[h].str());
            row.push_back(Json(ok));
        }
        t.rows.push_back(std::move(row));
    }
    Json head = {{"family", fam.name()}, {"n", fam.n()}, {"q", fam.q()}, {"moment", moment}};
    if (a.compare_oracle) head["all_match"] = all;
    emit(out, fmt, head, "rows", t);
    return all ? 0 : 1;
}

inline int cmd_group_enum(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    if (a.n < 1) throw ParameterError("--n must be >= 1");
    if (a.cell && (*a.cell < 0 || *a.cell > a.n)) throw ParameterError("--cell must be in 0..n");
    require_enumerable(f, a.n);
    const auto parabolic = enumerate_parabolic(f, a.n);
    std::vector<std::uint64_t> histogram(f.order(), 0);
    std::vector<std::string> elements;
    std::uint64_t count = 0;
    for (int r = 0; r <= a.n; ++r) {
        if (a.cell && *a.cell != r) continue;
        const BruhatCell cell = bruhat_cell(f, a.n, r, parabolic);
        count += cell.size();
        const auto h = cell.trace_histogram();
        for (std::size_t b = 0; b < h.size(); ++b) histogram[b] += h[b];
        if (a.elements)
            for (std::size_t i = 0; i < cell.size(); ++i) elements.push_back(serialize(f, cell.element(i)));
    }
    std::sort(elements.begin(), elements.end());
    Table t{{"beta", "count"}, {}};
    for (FieldElement b : f.elements()) t.rows.push_back({b.hex(), std::to_string(histogram[b.bits()])});
    if (fmt == Format::csv) {
        if (a.elements) {
            write_csv(out, Table{{"element"}, [&] {
                                     std::vector<std::vector<Json>> rows;
                                     for (auto& e : elements) rows.push_back({e});
                                     return rows;
                                 }()});
        } else {
            write_csv(out, t);
        }
        return 0;
    }
    Json head = {{"r", f.degree()}, {"q", f.order()}, {"n", a.n}};
    head["cell"] = a.cell ? Json(*a.cell) : Json(nullptr);
    head["count"] = std::to_string(count);
    head["trace_histogram"] = table_json(t);
    if (a.elements) head["elements"] = elements;
    out << head.dump(2) << '\n';
    return 0;
}

inline int cmd_group_counts(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    if (a.n < 1) throw ParameterError("--n must be >= 1");
    const GroupCounts gc = group_counts(f.order(), a.n);
    Table t{{"r", "gl", "q_binomial", "symmetric_nonsingular", "a_r", "cosets", "cell"}, {}};
    for (int r = 0; r <= a.n; ++r) {
        const auto i = static_cast<std::size_t>(r);
        t.rows.push_back({r, gc.g[i].str(), gc.q_binomials[i].str(), gc.s[i].str(), gc.a_r[i].str(),
                          gc.cosets[i].str(), gc.cells[i].str()});
    }
    Json head = {{"q", gc.q},
                 {"n", gc.n},
                 {"parabolic", gc.parabolic.str()},
                 {"group_order", gc.group_order.str()},
                 {"group_order_from_cells", gc.group_order_from_cells.str()},
                 {"identities_pass", gc.identities.passed()}};
    emit(out, fmt, head, "rows", t);
    return gc.identities.passed() ? 0 : 1;
}

inline int cmd_code_weights(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    const auto fam = DoubleCosetFamily::parse(a.family, a.n, f);
    const bool enumerated = is_enumerable(f, fam.n());
    std::optional<BruhatCell> cell;
    if (enumerated) cell = materialize(fam);
    Table t{{"a", "weight"}, {}};
    if (enumerated) {
        t.columns.push_back("direct");
        t.columns.push_back("match");
    }
    bool all = true;
    for (FieldElement x : f.elements()) {
        const BigInt w = x.is_zero() ? BigInt(0) : dual_weight_formula(fam, x);
        std::vector<Json> row{x.hex(), w.str()};
        if (enumerated) {
            const BigInt d = hamming_weight(dual_codeword(*cell, x));
            all = all && d == w;
            row.push_back(d.str());
            row.push_back(Json(d == w));
        }
        t.rows.push_back(std::move(row));
    }
    const auto k = family_constants(fam);
    Json head = {{"family", fam.name()},
                 {"n", fam.n()},
                 {"q", fam.q()},
                 {"length", k.n.str()},
                 {"mode", enumerated ? "enumerated" : "formula-only"}};
    emit(out, fmt, head, "weights", t);
    return all ? 0 : 1;
}

inline int cmd_code_dist(const Args& a, Format fmt, std::ostream& out) {
    const GaloisField f = field_from(a.r);
    const auto fam = DoubleCosetFamily::parse(a.family, a.n, f);
    const bool enumerated = is_enumerable(f, fam.n());
    const auto counts = enumerated ? trace_multiplicities(materialize(fam)) : trace_multiplicities_formula(fam);
    const auto k = family_constants(fam);
    Json head = {{"family", fam.name()},
                 {"n", fam.n()},
                 {"q", fam.q()},
                 {"length", k.n.str()},
                 {"mode", enumerated ? "enumerated" : "formula-only"}};
    if (a.j) {
        if (*a.j < 0) throw ParameterError("--j must be >= 0");
        const BigInt v = weight_coefficient(counts, *a.j);
        Table t{{"j", "value"}, {{*a.j, v.str()}}};
        if (fmt == Format::csv) {
            write_csv(out, t);
        } else {
            head["j"] = *a.j;
            head["value"] = v.str();
            out << head.dump(2) << '\n';
        }
        return 0;
    }
    if (k.n > kDistributionBudget) {
        throw ResourceError("code length " + k.n.str() + " exceeds the full-distribution budget; query --j instead");
    }
    const auto dist = weight_distribution(counts);
    Table t{{"j", "value"}, {}};
    for (std::size_t j = 0; j < dist.coefficients.size(); ++j) t.rows.push_back({j, dist.coefficients[j].str()});
    emit(out, fmt, head, "coefficients", t);
    return 0;
}

inline int cmd_verify_all(const Args& a, Format fmt, std::ostream& out) {
    VerifyOptions opt;
    opt.max_r = a.max_r;
    opt.max_n = a.max_n;
    opt.tier = a.tier;
    const Report rep = verify_all(opt);
    Table t{{"name", "parameters", "expected", "actual", "pass"}, {}};
    for (const auto& c : rep.checks) t.rows.push_back({c.name, c.parameters, c.expected, c.actual, c.pass});
    if (fmt == Format::csv) {
        write_csv(out, t);
    } else {
        Json j = Json::object();
        Json checks = Json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name}, {"parameters", c.parameters}, {"expected", c.expected},
                              {"actual", c.actual}, {"pass", c.pass}});
        j["checks"] = std::move(checks);
        const std::size_t failed = rep.failures();
        j["summary"] = {{"total", std::to_string(rep.checks.size())},
                        {"passed", std::to_string(rep.checks.size() - failed)},
                        {"failed", std::to_string(failed)}};
        out << j.dump(2) << '\n';
    }
    return rep.passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kloosterman sums, O+(2n,2^r) double cosets and their codes"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.footer(
        "Field elements are lowercase hex of their coordinates in the polynomial basis 1, x, ..., x^{r-1}\n"
        "of F_2[x]/(m(x)); moduli: r=1..8 -> 2, 7, b, 13, 25, 43, 83, 11b.");

    auto* field = app.add_subcommand("field", "Field tables");
    field->require_subcommand(1);
    auto* field_table = field->add_subcommand("table", "Trace of every element");
    field_table->add_option("--r", a.r, "Field degree")->required();

    auto* ksum = app.add_subcommand("ksum", "Kloosterman sums K_m(lambda(c .); a)");
    ksum->add_option("--r", a.r, "Field degree");
    ksum->add_option("--a", a.a, "Argument (hex)");
    ksum->add_option("--m", a.m, "Number of variables");
    ksum->add_option("--c", a.c, "Character scale (hex)");
    auto* ksum_gl = ksum->add_subcommand("gl", "Kloosterman sums over GL(t,q)");
    ksum_gl->add_option("--r", a.r, "Field degree")->required();
    ksum_gl->add_option("--t", a.t, "Matrix size")->required();
    ksum_gl->add_option("--a", a.a, "Argument (hex)")->required();
    ksum_gl->add_option("--c", a.c, "Character scale (hex)");
    ksum_gl->add_option("--method", a.method, "all|recursion|closed_form|brute_force");

    auto* mom = app.add_subcommand("moments", "Power moments");
    mom->require_subcommand(1);
    auto* mom_oracle = mom->add_subcommand("oracle", "Moments by direct summation");
    mom_oracle->add_option("--r", a.r, "Field degree")->required();
    mom_oracle->add_option("--m", a.m, "1 for MK, 2 for MK_2");
    mom_oracle->add_option("--h-max", a.h_max, "Largest exponent");
    auto* mom_rec = mom->add_subcommand("recursive", "Moments from a double-coset code");
    mom_rec->add_option("--family", a.family, "dc1+, dc1-, dc2+ or dc2-")->required();
    mom_rec->add_option("--n", a.n, "Group rank")->required();
    mom_rec->add_option("--r", a.r, "Field degree")->required();
    auto* mom_rec_m = mom_rec->add_option("--m", a.m, "i = 2 families: 2 for MK_2^h, 1 for MK^{2h}");
    mom_rec->add_option("--h-max", a.h_max, "Largest exponent");
    mom_rec->add_flag("--compare-oracle", a.compare_oracle, "Add the directly summed moments");

    auto* group = app.add_subcommand("group", "O+(2n,q) enumeration and counts");
    group->require_subcommand(1);
    auto* group_enum = group->add_subcommand("enum", "Materialize cells P sigma_r P");
    group_enum->add_option("--r", a.r, "Field degree")->required();
    group_enum->add_option("--n", a.n, "Group rank")->required();
    group_enum->add_option("--cell", a.cell, "Only the cell with this r");
    group_enum->add_flag("--elements", a.elements, "List serialized elements");
    auto* group_counts_cmd = group->add_subcommand("counts", "Order formulas");
    group_counts_cmd->add_option("--r", a.r, "Field degree")->required();
    group_counts_cmd->add_option("--n", a.n, "Group rank")->required();

    auto* code = app.add_subcommand("code", "Double-coset codes");
    code->require_subcommand(1);
    auto* code_weights = code->add_subcommand("weights", "Dual codeword weights per a");
    auto* code_dist = code->add_subcommand("dist", "Weight distribution");
    for (auto* sub : {code_weights, code_dist}) {
        sub->add_option("--family", a.family, "dc1+, dc1-, dc2+ or dc2-")->required();
        sub->add_option("--n", a.n, "Group rank")->required();
        sub->add_option("--r", a.r, "Field degree")->required();
    }
    code_dist->add_option("--j", a.j, "Single coefficient C_j");

    auto* verify = app.add_subcommand("verify", "Cross-validation");
    verify->require_subcommand(1);
    auto* verify_all_cmd = verify->add_subcommand("all", "Run every check within the bounds");
    verify_all_cmd->add_option("--max-r", a.max_r, "Largest field degree");
    verify_all_cmd->add_option("--max-n", a.max_n, "Largest enumerated group rank");
    verify_all_cmd->add_option("--tier", a.tier, "2 adds r = 3 and n = 3 enumerations")->check(CLI::Range(1, 2));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return 2;
    }

    const Format fmt = a.format == "csv" ? Format::csv : Format::json;
    try {
        if (field_table->parsed()) return cmd_field_table(a, fmt, out);
        if (ksum_gl->parsed()) return cmd_ksum_gl(a, fmt, out);
        if (ksum->parsed()) {
            if (a.r == 0) throw ParameterError("--r is required");
            return cmd_ksum(a, fmt, out);
        }
        if (mom_oracle->parsed()) return cmd_moments_oracle(a, fmt, out);
        if (mom_rec->parsed()) return cmd_moments_recursive(a, fmt, out, mom_rec_m->count() > 0);
        if (group_enum->parsed()) return cmd_group_enum(a, fmt, out);
        if (group_counts_cmd->parsed()) return cmd_group_counts(a, fmt, out);
        if (code_weights->parsed()) return cmd_code_weights(a, fmt, out);
        if (code_dist->parsed()) return cmd_code_dist(a, fmt, out);
        if (verify_all_cmd->parsed()) return cmd_verify_all(a, fmt, out);
    } catch (const ConsistencyError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << app.help();
    return 2;
}

}  // namespace kloo::cli
