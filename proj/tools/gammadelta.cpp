#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gammadelta/parser.hpp"
#include "gammadelta/serialize.hpp"
#include "gammadelta/suites.hpp"

using namespace gammadelta;

namespace {

enum class Format { text, json };

struct Options {
    RunConfig cfg;
    std::string format;
    std::string expr;
    std::string ring;
    unsigned n = 1;
    long i = 1;
    unsigned r = 1;
    long weight = 0;
    std::optional<int> q;
};

/// Thrown for bad invocations; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Format output_format(const Options& o, Format fallback) {
    if (o.format.empty()) return fallback;
    return o.format == "json" ? Format::json : Format::text;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string ring_or(const Options& o, const std::string& fallback) { return o.ring.empty() ? fallback : o.ring; }

PDContextPtr ring_context(const Options& o, const std::string& fallback) {
    const RingShape shape = parse_ring(ring_or(o, fallback), o.cfg.p);
    return make_pd_context(shape.ordinary, shape.divided, shape.domain, o.cfg.weight_bound);
}

std::string require_expr(const Options& o) {
    if (o.expr.empty()) throw UsageError("--expr is required");
    return o.expr;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite, const Options& o) {
    const auto lines = run_tasks(suite_tasks(suite, o.cfg), worker_count());
    std::size_t failed = 0;
    for (const auto& l : lines) failed += !l.pass;
    if (output_format(o, Format::text) == Format::json) {
        Json j = document();
        j["suite"] = suite;
        j["p"] = o.cfg.p;
        j["weight_bound"] = o.cfg.weight_bound;
        j["depth_bound"] = o.cfg.depth_bound;
        j["seed"] = o.cfg.seed;
        Json checks = Json::array();
        for (const auto& l : lines) checks.push_back({{"key", l.key}, {"pass", l.pass}, {"detail", l.detail}});
        j["checks"] = checks;
        j["passed"] = lines.size() - failed;
        j["failed"] = failed;
        print_json(j);
    } else {
        std::cout << "verify " << suite << " p=" << o.cfg.p << " weight-bound=" << o.cfg.weight_bound
                  << " depth-bound=" << o.cfg.depth_bound << " seed=" << o.cfg.seed << "\n";
        for (const auto& l : lines) std::cout << (l.pass ? "PASS " : "FAIL ") << l.key << "  " << l.detail << "\n";
        std::cout << (lines.size() - failed) << " passed, " << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// compute

int compute_pd_env(const Options& o) {
    const auto ctx = ring_context(o, "Q[x]<y>");
    const auto ast = parse_expression(require_expr(o));
    auto emit = [&](const auto& f) {
        if (output_format(o, Format::text) == Format::json) {
            Json j = document();
            j["ring"] = ring_or(o, "Q[x]<y>");
            j["expr"] = o.expr;
            j["element"] = to_json(f);
            print_json(j);
        } else {
            std::cout << to_string(f) << "\n";
        }
    };
    if (ctx->domain().kind == CoeffDomain::Kind::prime_field) emit(evaluate_pd<Fp>(*ast, ctx));
    else emit(evaluate_pd<Rational>(*ast, ctx));
    return 0;
}

int compute_delta_expand(const Options& o) {
    const auto ast = parse_expression(require_expr(o));
    std::vector<std::string> gens;
    collect_variables(*ast, gens);
    if (gens.empty()) gens.push_back("x");
    const auto ctx = make_delta_context(gens, o.cfg.depth_bound, o.cfg.p, CoeffDomain::Kind::p_local);
    const DeltaElement f = evaluate_delta(*ast, ctx);
    if (output_format(o, Format::text) == Format::json) {
        Json j = document();
        j["p"] = o.cfg.p;
        j["expr"] = o.expr;
        j["element"] = to_json(f);
        print_json(j);
    } else {
        std::cout << to_string(f) << "\n";
    }
    return 0;
}

int compute_prism_pn(const Options& o) {
    const auto rep = expand_delta_n(o.cfg.p, o.n, o.cfg.depth_bound);
    if (output_format(o, Format::json) == Format::json) {
        Json j = document();
        j.update(to_json(rep));
        print_json(j);
    } else {
        std::cout << "P_" << rep.n << " = " << to_string(rep.P) << "\n"
                  << "a_" << rep.n << " = " << rep.a_n.get_str() << "\n"
                  << "checks: no_top_var=" << rep.checks.no_top_var << " top_degree_le_p=" << rep.checks.top_degree_le_p
                  << " leading_coefficient=" << rep.checks.leading_coefficient
                  << " homogeneity=" << rep.checks.homogeneity << "\n";
    }
    return rep.checks.all() ? 0 : 1;
}

int compute_prism_unit(const Options& o) {
    const auto rep = unit_tower(o.cfg.p, o.n, o.cfg.depth_bound);
    if (output_format(o, Format::json) == Format::json) {
        Json j = document();
        j["p"] = o.cfg.p;
        j.update(to_json(rep));
        print_json(j);
    } else {
        std::cout << "u_" << rep.n << " = " << to_string(rep.u) << "\n"
                  << "exact=" << rep.exact << " congruent_delta_d=" << rep.congruent_delta_d
                  << " congruent_frobenius=" << rep.congruent_frobenius << "\n";
    }
    return 0;
}

int compute_conj_table(const Options& o) {
    Json rows = Json::array();
    std::ostringstream text;
    bool all = true;
    for (long i = 0; i <= o.cfg.weight_bound; ++i) {
        const auto rc = conj_fil_gr_rank(o.cfg.p, i, o.r);
        all = all && rc.pass;
        Json row{{"i", i}};
        row.update(to_json(rc));
        rows.push_back(row);
        text << i << " " << rc.rank << " " << rc.expected << " " << (rc.pass ? "pass" : "FAIL") << "\n";
    }
    if (output_format(o, Format::json) == Format::json) {
        Json j = document();
        j["p"] = o.cfg.p;
        j["r"] = o.r;
        j["rows"] = rows;
        print_json(j);
    } else {
        std::cout << "i rank expected\n" << text.str();
    }
    return all ? 0 : 1;
}

int compute_ht_matrix(const Options& o) {
    if (o.i < 0) throw UsageError("--i must be >= 0");
    if (o.i > o.cfg.weight_bound) throw TruncationOverflow("ht-matrix", o.i, o.cfg.weight_bound);
    const QuotientContext q(o.cfg.p, o.r, std::max(o.i, 1L));
    const auto rep = hodge_tate_iso_check(q, o.i);
    const auto& piece = rep.pieces.front();
    if (output_format(o, Format::json) == Format::json) {
        Json j = document();
        j["p"] = o.cfg.p;
        j["r"] = o.r;
        j["i"] = o.i;
        j["rank"] = piece.rank;
        j["expected"] = piece.expected;
        j["square"] = rep.square;
        j["invertible"] = rep.invertible;
        j["generators"] = piece.generators;
        j["matrix"] = rep.matrix;
        j["pass"] = rep.pass();
        print_json(j);
    } else {
        for (std::size_t row = 0; row < rep.matrix.size(); ++row) {
            std::cout << "[" << piece.generators[row] << "] ->";
            for (const auto& e : rep.matrix[row]) std::cout << "  " << e;
            std::cout << "\n";
        }
        std::cout << "rank " << piece.rank << "/" << piece.expected << (rep.invertible ? " invertible" : " singular") << "\n";
    }
    return rep.pass() ? 0 : 1;
}

int compute_derham_h(const Options& o) {
    const std::string fallback = "F" + std::to_string(o.cfg.p) + "[x]";
    const auto ctx = make_derham_context(ring_context(o, fallback));
    const bool json = output_format(o, Format::json) == Format::json;
    Json j = document();
    if (o.q) {
        const long rank = graded_cohomology(ctx, o.weight, *o.q);
        j["weight"] = o.weight;
        j["degree"] = *o.q;
        j["rank"] = rank;
        if (!json) std::cout << "H" << *o.q << " weight " << o.weight << ": " << rank << "\n";
    } else {
        for (int q = 0; q <= static_cast<int>(ctx->num_generators()); ++q) {
            const long rank = graded_cohomology(ctx, o.weight, q);
            j["H" + std::to_string(q)] = rank;
            if (!json) std::cout << "H" << q << " weight " << o.weight << ": " << rank << "\n";
        }
    }
    if (json) print_json(j);
    return 0;
}

int compute_cartier(const Options& o) {
    const std::string fallback = "F" + std::to_string(o.cfg.p) + "[x]";
    const auto t = ring_context(o, fallback);
    const auto ctx = make_derham_context(t);
    const bool json = output_format(o, Format::json) == Format::json;
    if (t->domain().kind != CoeffDomain::Kind::prime_field) throw UsageError("cartier needs a ring over F_p");
    if (!o.expr.empty()) {
        const auto f = evaluate_pd<Fp>(*parse_expression(o.expr), t);
        const auto form = inverse_cartier_one(ctx, f);
        if (json) {
            Json j = document();
            j["expr"] = o.expr;
            j["class"] = to_json(form);
            print_json(j);
        } else {
            std::cout << "[" << to_string(form) << "]\n";
        }
        return 0;
    }
    const auto rep = cartier_check(ctx, o.weight, o.q.value_or(1));
    if (json) {
        Json j = document();
        j.update(to_json(rep));
        print_json(j);
    } else {
        std::cout << "weight " << rep.weight << " degree " << rep.degree << ": source " << rep.source_rank << ", H "
                  << rep.cohomology_rank << ", image " << rep.image_rank << (rep.pass() ? " iso" : " NOT iso") << "\n";
    }
    return rep.pass() ? 0 : 1;
}

int cmd_compute(const std::string& what, const Options& o) {
    if (what == "pd-env") return compute_pd_env(o);
    if (what == "delta-expand") return compute_delta_expand(o);
    if (what == "prism-pn") return compute_prism_pn(o);
    if (what == "prism-unit") return compute_prism_unit(o);
    if (what == "conj-table") return compute_conj_table(o);
    if (what == "ht-matrix") return compute_ht_matrix(o);
    if (what == "derham-h") return compute_derham_h(o);
    if (what == "cartier") return compute_cartier(o);
    throw UsageError("unknown computation '" + what + "'");
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--p", o.cfg.p, "prime")->capture_default_str();
    app->add_option("--weight-bound", o.cfg.weight_bound, "weight bound N")->capture_default_str();
    app->add_option("--depth-bound", o.cfg.depth_bound, "delta depth bound D")->capture_default_str();
    app->add_option("--seed", o.cfg.seed, "seed for randomized checks")->capture_default_str();
    app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact divided-power, delta-ring, prismatic and de Rham computations"};
    app.require_subcommand(1);
    Options o;
    std::string suite, what;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "pd, delta, prism, derham or all")->required()->check(CLI::IsMember(suite_names()));
    add_common(verify, o);

    auto* compute = app.add_subcommand("compute", "compute a single object");
    compute->add_option("what", what, "pd-env, delta-expand, prism-pn, prism-unit, conj-table, ht-matrix, derham-h, cartier")
        ->required();
    add_common(compute, o);
    compute->add_option("--expr", o.expr, "expression");
    compute->add_option("--ring", o.ring, "ring, e.g. F2[x]<y> or Q[x,y]");
    compute->add_option("--n", o.n, "tower index")->capture_default_str();
    compute->add_option("--i", o.i, "filtration index")->capture_default_str();
    compute->add_option("--r", o.r, "number of generators")->capture_default_str();
    compute->add_option("--weight", o.weight, "weight")->capture_default_str();
    compute->add_option("--q", o.q, "form degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        PrimeContext check(o.cfg.p);
        (void)check;
        if (o.cfg.weight_bound < 1) throw UsageError("--weight-bound must be >= 1");
        if (o.cfg.depth_bound < 1) throw UsageError("--depth-bound must be >= 1");
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(suite, o);
        return cmd_compute(what, o);
    } catch (const TruncationOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DepthExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NotInIdeal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonPLocal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContextMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
