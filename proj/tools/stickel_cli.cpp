// stickel: annihilators, golden tables, cross-checks and L-values from the command line.
//
// exit codes: 0 ok, 2 invalid configuration, 3 precision underflow, 4 golden or cross-check mismatch

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stickel/golden.hpp"
#include "stickel/lfunctions.hpp"

using namespace stickel;
using nlohmann::json;

namespace {

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family, field, recipe, format = "tsv", id, rows;
    bool rows_given = false;
    u64 f = 0, d = 0, p = 0;
    std::vector<u64> gens;
    unsigned ex = 0, threads = 1, precision = 6, guard = 5;
    bool ex_given = false;
    std::optional<u64> c;
    std::optional<bool> half;
};

FieldPtr make_field(const Options& o) {
    if (!o.field.empty()) return build_field(parse_field_desc(o.field));
    if (o.family.empty()) throw std::invalid_argument("give --family (or --field)");
    if (o.f == 0) throw std::invalid_argument("give --f");
    FieldDesc d;
    d.kind = o.family == "explicit" ? "explicit-subgroup" : o.family;
    d.f = o.f;
    d.d = o.d;
    d.gens = o.gens;
    return build_field(d);
}

u64 require_p(const Options& o) {
    if (o.p == 0) throw std::invalid_argument("give --p");
    if (!is_prime(o.p)) throw std::invalid_argument("p must be prime");
    return o.p;
}

void check_format(const Options& o) {
    if (o.format != "tsv" && o.format != "json") throw std::invalid_argument("--format must be tsv or json");
}

// summary keys already shown as their own columns
bool shown_elsewhere(const std::string& k) { return k == "c" || k == "recipe"; }

std::string cert_string(const AnnihilatorReport& r) {
    std::string s;
    for (auto& c : r.certification) s += (s.empty() ? "" : ",") + c.element + ":" + c.status;
    return s;
}

json report_json(const AnnihilatorReport& r) {
    json j;
    j["field"] = r.K->serialize();
    j["degree"] = r.K->degree();
    j["p"] = r.setup.p;
    j["ex"] = r.setup.ex;
    j["recipe"] = recipe_name(r.setup.recipe);
    j["c"] = r.setup.c;
    j["fn"] = r.setup.fn;
    j["pN"] = r.setup.pN;
    j["loop"] = r.setup.half ? "half" : "full";
    j["columns"] = r.columns;
    j["column_order"] = r.setup.slot_note;
    j["element"] = r.element_name();
    j["coefficients"] = to_json(r.coeffs);
    j["summary"] = r.summary;
    json cert = json::array();
    for (auto& c : r.certification) cert.push_back({{"element", c.element}, {"status", c.status}});
    j["certification"] = cert;
    json pc = json::array();
    for (auto& ci : r.per_character) {
        json x{{"index", ci.index}, {"order", ci.order}, {"conductor", ci.conductor}, {"image", ci.image.str()}};
        x["valuation"] = ci.valuation.zero ? json("zero") : json(ci.valuation.v);
        x["resolved"] = ci.valuation.resolved;
        pc.push_back(x);
    }
    j["characters"] = pc;
    if (r.halved) j["halved"] = to_json(*r.halved);
    return j;
}

int cmd_annihilate(const Options& o) {
    check_format(o);
    FieldPtr K = make_field(o);
    const u64 p = require_p(o);
    Recipe rc = o.recipe.empty() ? default_recipe(*K, p) : parse_recipe(o.recipe);
    if (!o.recipe.empty() && rc != default_recipe(*K, p) && rc != Recipe::Generic)
        std::cerr << "note: recipe " << o.recipe << " overrides the family default " << recipe_name(default_recipe(*K, p))
                  << "\n";
    AnnihilatorReport r = annihilator_A(K, p, o.ex, rc, o.c, o.half, o.threads);
    if (o.format == "json") {
        std::cout << report_json(r).dump(2) << "\n";
        return 0;
    }
    std::cout << "#f\tp\tex\trecipe\tc\tcoefficients\tsummary\tcertification\n";
    std::cout << K->modulus() << "\t" << p << "\t" << o.ex << "\t" << recipe_name(r.setup.recipe) << "\t" << r.setup.c;
    for (u64 x : r.columns) std::cout << "\t" << x;
    for (auto& [k, v] : r.summary)
        if (!shown_elsewhere(k)) std::cout << "\t" << k << "=" << v;
    std::cout << "\t" << cert_string(r) << "\n";
    return 0;
}

std::vector<u64> parse_rows(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
        if (t.empty()) continue;
        try {
            out.push_back(std::stoull(t));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad row '" + t + "'");
        }
    }
    return out;
}

std::string join(const std::vector<u64>& v) {
    std::string s;
    for (u64 x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s.empty() ? "-" : s;
}

int cmd_table(const Options& o) {
    check_format(o);
    if (o.id.empty()) throw std::invalid_argument("give --id (one of the golden tables)");
    auto rows = load_golden(o.id);
    if (o.rows_given) {
        auto want = parse_rows(o.rows);
        std::vector<GoldenRow> sel;
        for (u64 f : want) {
            auto it = std::find_if(rows.begin(), rows.end(), [f](const GoldenRow& r) { return r.f == f; });
            if (it == rows.end()) throw std::invalid_argument("table " + o.id + " has no row f=" + std::to_string(f));
            sel.push_back(*it);
        }
        rows = sel;
    }
    bool all_ok = true;
    json arr = json::array();
    if (o.format == "tsv") std::cout << "#table\tf\tstatus\texpected\tgot\tchecks\tstructure(input)\n";
    for (auto& row : rows) {
        GoldenResult g = run_golden_row(row, o.threads);
        all_ok = all_ok && g.pass();
        std::string checks;
        for (auto& c : g.checks)
            checks += (checks.empty() ? "" : ";") + c.key + "=" + c.got + (c.ok ? "" : "(expected " + c.expected + ")");
        if (o.format == "tsv") {
            std::cout << row.table << "\t" << row.f << "\t" << (g.pass() ? "PASS" : "FAIL") << "\t" << join(row.coeffs)
                      << "\t" << (row.coeffs.empty() ? "-" : join(g.got)) << "\t" << (checks.empty() ? "-" : checks)
                      << "\t" << row.structure << "\n";
        } else {
            json j{{"table", row.table}, {"f", row.f}, {"pass", g.pass()}, {"expected", row.coeffs},
                   {"got", g.got}, {"structure_input", row.structure}};
            json cj = json::object();
            for (auto& c : g.checks) cj[c.key] = {{"expected", c.expected}, {"got", c.got}, {"ok", c.ok}};
            j["checks"] = cj;
            arr.push_back(j);
        }
    }
    if (o.format == "json") std::cout << arr.dump(2) << "\n";
    return all_ok ? 0 : 4;
}

// lambda side from the recipe; measure and reconstruction only when the conductors are small enough
int cmd_crosscheck(const Options& o) {
    check_format(o);
    FieldPtr K = make_field(o);
    const u64 p = require_p(o);
    const unsigned n = o.ex_given ? o.ex : 1;
    Recipe rc = o.recipe.empty() ? default_recipe(*K, p) : parse_recipe(o.recipe);
    AnnihilatorReport r = annihilator_A(K, p, n, rc, o.c, o.half, o.threads);
    const u64 c = r.setup.c;
    const unsigned target = n + 1;
    const u64 fn = conductor_Ln(K->modulus(), p, n);
    const bool small = K->modulus() % p != 0 && euler_phi(K->modulus()) <= 4000 && fn <= 20000000;
    json j;
    j["field"] = K->serialize();
    j["p"] = p;
    j["n"] = n;
    j["c"] = c;
    j["target"] = "p^" + std::to_string(target);
    j["annihilator"] = {{"element", r.element_name()}, {"columns", r.columns}, {"summary", r.summary}};
    bool ok = true;
    if (small) {
        CrossCheck X = crosscheck(K, p, n, c, o.guard);
        j["lambda_sum"] = to_json(X.lambda_sum);
        j["measure"] = to_json(X.measure);
        j["reconstruction"] = to_json(X.reconstruction);
        j["lambda_vs_measure"] = X.lambda_vs_measure;
        j["lambda_vs_reconstruction"] = X.lambda_vs_reconstruction;
        j["measure_vs_reconstruction"] = X.measure_vs_reconstruction;
        j["per_character"] = X.per_character;
        ok = X.all();
    } else {
        j["lambda_sum"] = to_json(r.coeffs);
        j["measure"] = "skipped: conductor too large for the measure and L-value pipelines";
        j["reconstruction"] = "skipped: conductor too large for the measure and L-value pipelines";
    }
    j["agree"] = ok;
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "field\t" << K->serialize() << "\n";
        std::cout << "annihilator\t" << r.element_name() << "\t" << to_string(r.coeffs) << "\n";
        for (const char* k : {"lambda_sum", "measure", "reconstruction"})
            std::cout << k << "\t" << (j[k].is_string() ? j[k].get<std::string>() : j[k].dump()) << "\n";
        for (const char* k : {"lambda_vs_measure", "lambda_vs_reconstruction", "measure_vs_reconstruction"})
            if (j.contains(k)) std::cout << k << "\t" << (j[k].get<bool>() ? "agree" : "DIFFER") << "\n";
        std::cout << "verdict\t" << (ok ? "agree" : "MISMATCH") << "\n";
    }
    if (!ok) throw Mismatch("crosscheck: the three sides disagree");
    return 0;
}

int cmd_lp(const Options& o) {
    FieldPtr K = make_field(o);
    const u64 p = require_p(o);
    if (K->degree() == 1) throw std::invalid_argument("lp: the field has only the trivial character");
    const unsigned M = o.precision;
    AnalyticValuation A = analytic_valuation(K, p, M + o.guard);
    auto orbits = character_orbits(*K);
    for (std::size_t k = 0; k < orbits.size(); ++k) {
        const LpValue& L = A.values[k];
        for (int idx : orbits[k]) {
            const auto& chi = K->characters()[idx];
            CycMod v = L.value;
            // chi = rep^a: conjugate the value
            for (u64 a = 1; a < chi.order; ++a) {
                if (gcd(a, chi.order) != 1) continue;
                bool same = true;
                for (std::size_t i = 0; i < K->degree() && same; ++i) {
                    u64 r = K->rep(static_cast<int>(i));
                    same = chi.value(r) % chi.order == L.chi.value(r) * a % chi.order;
                }
                if (same) {
                    v = L.value.galois(a);
                    break;
                }
            }
            v = v.reduced(M);
            json j{{"f_chi", chi.conductor}, {"d", chi.order}, {"index", idx}, {"p", p}, {"precision", M},
                   {"value_digits_truncated", v.str()}};
            NormVal nv = norm_valuation(v);
            j["norm_valuation"] = nv.zero ? json("zero") : json(nv.v);
            if ((p - 1) % chi.order == 0) {
                // Teichmuller embedding makes the single value p-adic
                u64 P = ipow(p, M), root = teichmuller_root(chi.order, p, M), s = 0, rk = 1;
                for (u64 x : v.c) {
                    s = addmod(s, mulmod(x, rk, P), P);
                    rk = mulmod(rk, root, P);
                }
                j["valuation"] = residue_valuation(s, p, M);
            } else {
                j["valuation"] = nullptr;
            }
            std::cout << j.dump() << "\n";
        }
    }
    json s{{"product_valuation", A.lp_product}, {"n0", A.n0}, {"analytic_valuation", A.total}};
    std::cout << s.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stickelberger annihilators of p-ramification torsion for real abelian fields"};
    app.set_config("--config", "", "flat key=value file with any of the options below");
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    u64 cval = 0;
    std::string half;
    app.add_option("--family", o.family, "cyclic-prime | quadratic | quartic-composite | explicit | cyclotomic");
    app.add_option("--field", o.field, "field spec 'kind=...; f=...; d=...; gens=[...]'");
    app.add_option("--f", o.f, "conductor");
    app.add_option("--d", o.d, "degree");
    app.add_option("--gens", o.gens, "generators of H (explicit family)")->delimiter(',');
    app.add_option("--p", o.p, "prime p");
    auto* exo = app.add_option("--ex", o.ex, "exponent: level n, coefficient modulus q p^ex");
    auto* co = app.add_option("--c", cval, "override the multiplier c");
    app.add_option("--half", half, "override the loop: half | full");
    app.add_option("--recipe", o.recipe, "recipe preset (defaults to the family's)");
    app.add_option("--format", o.format, "tsv | json");
    app.add_option("--threads", o.threads, "worker threads for the lambda loop");
    app.add_option("--id", o.id, "golden table id");
    auto* ro = app.add_option("--rows", o.rows, "comma separated conductors of the table");
    app.add_option("--precision", o.precision, "target p-adic precision for lp");
    app.add_option("--guard", o.guard, "extra digits carried by the L-value pipeline");

    auto* annihilate = app.add_subcommand("annihilate", "annihilator of one field");
    auto* table = app.add_subcommand("table", "recompute a golden table and diff");
    auto* cross = app.add_subcommand("crosscheck", "lambda sum vs measure vs character reconstruction");
    auto* lp = app.add_subcommand("lp", "L_p(1, chi) for the characters of a field");
    app.add_subcommand("tables", "list golden tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    o.ex_given = exo->count() > 0;
    o.rows_given = ro->count() > 0;
    if (co->count()) o.c = cval;
    if (!half.empty()) {
        if (half != "half" && half != "full") {
            std::cerr << "error: --half must be half or full\n";
            return 2;
        }
        o.half = half == "half";
    }
    try {
        if (o.threads == 0) throw std::invalid_argument("--threads must be positive");
        if (annihilate->parsed()) return cmd_annihilate(o);
        if (table->parsed()) return cmd_table(o);
        if (cross->parsed()) return cmd_crosscheck(o);
        if (lp->parsed()) return cmd_lp(o);
        for (auto& id : golden_tables()) std::cout << id << "\n";
        return 0;
    } catch (const PrecisionError& e) {
        std::cerr << "precision underflow: " << e.what() << "\n";
        return 3;
    } catch (const Mismatch& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
