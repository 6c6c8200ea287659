#pragma once

/**
 * @file suites.hpp
 * @brief Verification suites behind `gammadelta verify`.
 *
 * A suite is a list of independent tasks; each task owns its random stream
 * (seeded from the run seed and a fixed salt), so the result lines depend only
 * on the configuration, never on scheduling.
 */

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "gammadelta/derham.hpp"
#include "gammadelta/deltaring.hpp"
#include "gammadelta/dpalg.hpp"
#include "gammadelta/prismenv.hpp"
#include "gammadelta/random.hpp"

namespace gammadelta {

struct RunConfig {
    long p = 2;
    long weight_bound = 12;
    long depth_bound = 4;
    std::uint64_t seed = 0;
};

struct CheckLine {
    std::string key;
    bool pass = false;
    std::string detail;
};

using SuiteTask = std::function<std::vector<CheckLine>()>;

/// Worker count: GAMMADELTA_THREADS if set (>= 1), else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("GAMMADELTA_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs the tasks on up to `threads` workers and concatenates results in task order.
inline std::vector<CheckLine> run_tasks(const std::vector<SuiteTask>& tasks, unsigned threads) {
    std::vector<std::vector<CheckLine>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = tasks[i]();
            } catch (const std::exception& e) {
                results[i] = {CheckLine{"task-" + std::to_string(i), false, std::string("error: ") + e.what()}};
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<CheckLine> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

inline Rng task_rng(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return Rng(seq);
}

namespace suites {

inline CheckLine line(std::string key, bool pass, std::string detail) {
    return CheckLine{std::move(key), pass, std::move(detail)};
}

// ---------------------------------------------------------------------------
// divided powers

/// The six divided-power laws on `samples` random ideal elements, weight <= bound.
inline std::vector<CheckLine> pd_axioms(long p, long bound, std::uint64_t seed, int samples) {
    Rng rng = task_rng(seed, 101);
    const auto ctx = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::p_local(PrimeContext(p)), bound);
    using E = DPElement<Rational>;
    const long maxw = std::max(1L, std::min(2L, bound));
    int ok[6] = {0, 0, 0, 0, 0, 0};
    for (int s = 0; s < samples; ++s) {
        const E f = random_ideal_element<Rational>(rng, ctx, 3, static_cast<unsigned>(maxw));
        const E g = random_ideal_element<Rational>(rng, ctx, 3, static_cast<unsigned>(maxw));
        const long wf = f.max_weight(), wfg = std::max(f.max_weight(), g.max_weight());
        ok[0] += divided_power(0, f) == E::one(ctx);
        ok[1] += divided_power(1, f) == f;

        const long m = uniform(rng, 0, bound / wf), n = uniform(rng, 0, bound / wf - m);
        ok[2] += divided_power(static_cast<unsigned>(m), f) * divided_power(static_cast<unsigned>(n), f) ==
                 divided_power(static_cast<unsigned>(m + n), f)
                     .scaled(Rational(binomial(static_cast<unsigned>(m + n), static_cast<unsigned>(m))));

        const unsigned k = static_cast<unsigned>(uniform(rng, 0, bound / wfg));
        E conv(ctx);
        for (unsigned i = 0; i <= k; ++i) conv += divided_power(i, f) * divided_power(k - i, g);
        ok[3] += divided_power(k, f + g) == conv;

        const Rational a = random_scalar<Rational>(rng, ctx->domain(), false);
        const unsigned ka = static_cast<unsigned>(uniform(rng, 0, bound / wf));
        ok[4] += divided_power(ka, f.scaled(a)) == divided_power(ka, f).scaled(scalar_pow<Rational>(a, ka, ctx->domain()));

        const long b = uniform(rng, 1, bound / wf);
        const long c = uniform(rng, 0, bound / (wf * b));
        ok[5] += divided_power(static_cast<unsigned>(c), divided_power(static_cast<unsigned>(b), f)) ==
                 divided_power(static_cast<unsigned>(b * c), f)
                     .scaled(Rational(gamma_comp_coeff(static_cast<unsigned>(c), static_cast<unsigned>(b))));
    }
    const char* names[6] = {"gamma-zero", "gamma-one", "product-law", "sum-law", "scalar-law", "composition-law"};
    std::vector<CheckLine> out;
    for (int i = 0; i < 6; ++i)
        out.push_back(line(std::string("pd-axioms/") + names[i], ok[i] == samples,
                           std::to_string(ok[i]) + "/" + std::to_string(samples) + " samples"));
    return out;
}

inline std::vector<std::string> y_names(unsigned r) {
    if (r == 1) return {"y"};
    std::vector<std::string> out;
    for (unsigned j = 1; j <= r; ++j) out.push_back("y" + std::to_string(j));
    return out;
}

inline std::vector<CheckLine> graded_ranks(long p, long max_n, unsigned max_r) {
    int bad_pd = 0, bad_adic = 0, total = 0;
    for (unsigned r = 1; r <= max_r; ++r) {
        const auto ctx = make_pd_context({"x"}, y_names(r), CoeffDomain::prime_field(PrimeContext(p)), max_n);
        for (long n = 0; n <= max_n; ++n) {
            ++total;
            bad_pd += !gr_rank(ctx, Filtration::pd, n).pass;
            bad_adic += !gr_rank(ctx, Filtration::adic, n).pass;
        }
    }
    const std::string detail = "n <= " + std::to_string(max_n) + ", r <= " + std::to_string(max_r) + ", " +
                               std::to_string(total) + " pieces";
    return {line("pd-graded/rank", bad_pd == 0, detail),
            line("adic-graded/rank", bad_adic == 0, detail)};
}

inline std::vector<CheckLine> pd_conjugate(long p, long max_j, unsigned max_r) {
    int bad = 0, total = 0;
    for (unsigned r = 1; r <= max_r; ++r) {
        const long bound = static_cast<long>(r) * (p - 1) + max_j * p;
        const auto ctx = make_pd_context({}, y_names(r), CoeffDomain::prime_field(PrimeContext(p)), bound);
        for (long j = 0; j <= max_j; ++j) {
            ++total;
            bad += !conj_fil_pd(ctx, j).pass();
        }
    }
    return {line("pd-conjugate/rank", bad == 0,
                 "j <= " + std::to_string(max_j) + ", r <= " + std::to_string(max_r) + ", " + std::to_string(total) + " filtrations")};
}

inline std::vector<CheckLine> pd_basis_change(long p) {
    const long bound = p == 2 ? 8 : p * p;
    const auto bc = mod_p_basis_change(PrimeContext(p), bound);
    return {line("pd-mod-p/basis-change", bc.invertible, "weights <= " + std::to_string(bound))};
}

inline std::vector<SuiteTask> pd_suite(const RunConfig& cfg) {
    return {
        [=] { return pd_axioms(cfg.p, std::min(cfg.weight_bound, 12L), cfg.seed, 200); },
        [=] { return graded_ranks(cfg.p, std::min(cfg.weight_bound, 8L), 3); },
        [=] { return pd_conjugate(cfg.p, 4, 2); },
        [=] { return pd_basis_change(cfg.p); },
    };
}

// ---------------------------------------------------------------------------
// delta-rings

inline DeltaElement sum_correction(const DeltaElement& f, const DeltaElement& g) {
    const long p = f.context()->p();
    DeltaElement out(f.context());
    for (long k = 1; k < p; ++k)
        out += (f.pow(static_cast<unsigned>(k)) * g.pow(static_cast<unsigned>(p - k)))
                   .scaled(Rational(binomial(static_cast<unsigned>(p), static_cast<unsigned>(k))) / p);
    return out;
}

inline std::vector<CheckLine> delta_axioms(long p, long depth, std::uint64_t seed, int samples) {
    Rng rng = task_rng(seed, 201);
    const auto ctx = make_delta_context({"x", "y"}, depth, p);
    const long top = std::max(0L, depth - 2);
    int sum_ok = 0, prod_ok = 0, frob_ok = 0, comm_ok = 0;
    for (int s = 0; s < samples; ++s) {
        const DeltaElement f = random_delta_element(rng, ctx, 3, top, 2);
        const DeltaElement g = random_delta_element(rng, ctx, 3, top, 2);
        const DeltaElement df = delta(f), dg = delta(g);
        sum_ok += delta(f + g) == df + dg - sum_correction(f, g);
        prod_ok += delta(f * g) ==
                   f.pow(static_cast<unsigned>(p)) * dg + g.pow(static_cast<unsigned>(p)) * df + (df * dg).scaled(p);
        frob_ok += frobenius(f) == f.pow(static_cast<unsigned>(p)) + df.scaled(p);
        comm_ok += frobenius(df) == delta(frobenius(f));
    }
    const std::string detail = std::to_string(samples) + " samples";
    const DeltaElement one = DeltaElement::constant(ctx, 1);
    return {line("delta-ring/sum-rule", sum_ok == samples, std::to_string(sum_ok) + "/" + detail),
            line("delta-ring/product-rule", prod_ok == samples, std::to_string(prod_ok) + "/" + detail),
            line("delta-ring/unit", delta(one).is_zero(), "delta(1) = 0"),
            line("frobenius/lift", frob_ok == samples, std::to_string(frob_ok) + "/" + detail),
            line("frobenius/commutes", comm_ok == samples, std::to_string(comm_ok) + "/" + detail)};
}

inline std::vector<CheckLine> delta_substitution(long p, long depth, std::uint64_t seed, int samples) {
    Rng rng = task_rng(seed, 202);
    const auto src = make_delta_context({"x", "y"}, depth, p);
    const auto dst = make_delta_context({"u", "v"}, depth, p);
    int ok = 0, local = 0;
    for (int s = 0; s < samples; ++s) {
        const DeltaElement f = random_delta_element(rng, src, 3, std::max(0L, depth - 3), 2);
        const DeltaElement a = random_delta_element(rng, dst, 2, 0, 2);
        const DeltaElement b = random_delta_element(rng, dst, 2, 0, 2);
        const std::map<std::string, DeltaElement> assignment{{"x", a}, {"y", b}};
        ok += substitute(delta(f), dst, assignment) == delta(substitute(f, dst, assignment));
        local += delta_n(f, 2).all_coefficients_p_local();
    }
    return {line("delta-substitute/commutes", ok == samples, std::to_string(ok) + "/" + std::to_string(samples) + " samples"),
            line("delta-ring/integrality", local == samples, std::to_string(local) + "/" + std::to_string(samples) + " samples")};
}

inline std::vector<CheckLine> delta_power(long p, long depth, std::uint64_t seed, int samples) {
    Rng rng = task_rng(seed, 203);
    const auto ctx = make_delta_context({"x", "y"}, depth, p);
    int ok = 0;
    for (int s = 0; s < samples; ++s) ok += verify_delta_power(random_delta_element(rng, ctx, 3, std::max(0L, depth - 2), 2));
    return {line("delta-pth-power/expansion", ok == samples, std::to_string(ok) + "/" + std::to_string(samples) + " samples")};
}

inline std::vector<CheckLine> delta_closed_forms(long p, long depth) {
    const auto ddi = delta_divided_identity(p);
    bool degree = true, leading = true;
    const unsigned top = static_cast<unsigned>(std::min(3L, depth));
    for (unsigned n = 0; n <= top; ++n) {
        const auto r = rational_normal_form(p, n, depth);
        degree = degree && r.degree_ok;
        leading = leading && r.leading_ok;
    }
    return {line("delta-of-divided-power/identity", ddi.equal, "delta(y^p/p) expansion"),
            line("delta-of-divided-power/unit-numerator", ddi.unit_top_numerator, "(p^{p-1} - 1) is a p-adic unit"),
            line("delta-iterate/degree", degree, "n <= " + std::to_string(top)),
            line("delta-iterate/leading-coefficient", leading, "n <= " + std::to_string(top))};
}

inline std::vector<SuiteTask> delta_suite(const RunConfig& cfg) {
    return {
        [=] { return delta_axioms(cfg.p, cfg.depth_bound, cfg.seed, 100); },
        [=] { return delta_substitution(cfg.p, cfg.depth_bound, cfg.seed, 30); },
        [=] { return delta_power(cfg.p, cfg.depth_bound, cfg.seed, 50); },
        [=] { return delta_closed_forms(cfg.p, cfg.depth_bound); },
    };
}

// ---------------------------------------------------------------------------
// prismatic envelopes

inline unsigned prism_max_n(long p) { return p == 2 ? 3u : 2u; }

inline std::vector<CheckLine> prism_expansion(long p, unsigned n, long depth) {
    const std::string at = "n = " + std::to_string(n);
    if (static_cast<long>(n) > depth - 1)
        return {line("prism-expansion/depth", false, at + " needs depth bound " + std::to_string(n + 1))};
    const auto r = expand_delta_n(p, n, depth);
    return {line("prism-expansion/no-top-var", r.checks.no_top_var, at),
            line("prism-expansion/top-degree-le-p", r.checks.top_degree_le_p, at),
            line("prism-expansion/leading-coefficient", r.checks.leading_coefficient, at + ", a_n = " + r.a_n.get_str()),
            line("prism-expansion/homogeneity", r.checks.homogeneity, at)};
}

inline std::vector<CheckLine> prism_units(long p, long depth) {
    std::vector<CheckLine> out;
    bool exact = true, unit = true;
    const unsigned top = static_cast<unsigned>(std::min(3L, depth - 1));
    for (unsigned n = 1; n <= top; ++n) {
        const auto r = unit_tower(p, n, depth);
        exact = exact && r.exact;
        unit = unit && r.congruent_frobenius;
    }
    out.push_back(line("frobenius-unit/exact", exact, "n <= " + std::to_string(top)));
    out.push_back(line("frobenius-unit/unit-mod-p", unit, "u_n = delta(d)^{p^{n-1}} mod p, n <= " + std::to_string(top)));
    auto ctx = make_delta_context({"u", "d"}, 2, p);
    const auto u = DeltaElement::tower(ctx, "u"), d = DeltaElement::tower(ctx, "d");
    const bool witness = weakly_distinguished_witness(u, d) &&
                         weakly_distinguished_witness(DeltaElement::constant(ctx, 1), d) &&
                         weakly_distinguished_witness(d, d);
    out.push_back(line("weakly-distinguished/witness", witness, "u symbolic, u = 1, u = d"));
    return out;
}

inline std::vector<CheckLine> prism_conjugate(long p, long max_i) {
    bool rank = true, iso = true;
    for (unsigned r = 1; r <= 2; ++r) {
        const QuotientContext q(p, r, max_i);
        for (long i = 0; i <= max_i; ++i) {
            rank = rank && conj_fil_gr_rank(p, i, r).pass;
            iso = iso && hodge_tate_iso_check(q, i).pass();
        }
    }
    const std::string detail = "i <= " + std::to_string(max_i) + ", r <= 2";
    return {line("prism-conjugate/rank", rank, detail), line("hodge-tate/invertible", iso, detail),
            line("prism-conjugate/rational-degree", rational_degree_check(p, max_i), "i <= " + std::to_string(max_i))};
}

/// A random element of the quotient: Laurent monomials in delta(d) times
/// z-tower monomials of conjugate weight <= bound.
inline Poly<Fp> random_quotient_element(Rng& rng, const QuotientContext& q, long bound, int max_terms) {
    Poly<Fp> f(q.nvars());
    const long p = q.p();
    const int terms = static_cast<int>(uniform(rng, 1, max_terms));
    for (int t = 0; t < terms; ++t) {
        Exponents e(q.nvars(), 0);
        long budget = uniform(rng, 0, bound);
        for (int tries = 0; tries < 8 && budget > 0; ++tries) {
            const unsigned j = static_cast<unsigned>(uniform(rng, 0, q.r() - 1));
            const unsigned k = static_cast<unsigned>(uniform(rng, 0, q.top_depth()));
            const long w = static_cast<long>(ipow(static_cast<unsigned long>(p), k));
            if (w > budget) continue;
            const long a = uniform(rng, 1, budget / w);
            e[q.z_var(j, k)] += static_cast<int>(a);
            budget -= a * w;
        }
        e[q.d_var(1)] = static_cast<int>(uniform(rng, -2, 2));
        f.add_term(e, Fp(uniform(rng, 1, p - 1), p));
    }
    return f;
}

inline std::vector<CheckLine> prism_rewriting(long p, long bound, std::uint64_t seed, int samples) {
    Rng rng = task_rng(seed, 301);
    const QuotientContext q(p, 2, bound);
    int normal = 0, idempotent = 0, confluent = 0;
    for (int s = 0; s < samples; ++s) {
        const Poly<Fp> f = random_quotient_element(rng, q, bound, 3);
        const auto nf = standard_decomposition(q, f).normal_form;
        bool all_standard = true;
        for (const auto& [e, c] : nf.terms()) all_standard = all_standard && q.is_standard(e);
        normal += all_standard;
        idempotent += standard_decomposition(q, nf).normal_form == nf;
        const Poly<Fp> a = random_quotient_element(rng, q, bound / 2, 2);
        const Poly<Fp> b = random_quotient_element(rng, q, bound - bound / 2, 2);
        const auto na = standard_decomposition(q, a).normal_form, nb = standard_decomposition(q, b).normal_form;
        confluent += standard_decomposition(q, na * nb).normal_form == standard_decomposition(q, a * b).normal_form;
    }
    const std::string detail = "/" + std::to_string(samples) + " samples";
    return {line("prism-rewriting/terminates", normal == samples, std::to_string(normal) + detail),
            line("prism-rewriting/idempotent", idempotent == samples, std::to_string(idempotent) + detail),
            line("prism-rewriting/confluent", confluent == samples, std::to_string(confluent) + detail)};
}

inline std::vector<CheckLine> prism_integrality(long p) {
    const unsigned bound = static_cast<unsigned>(p * p + p);
    const auto r = divided_power_integrality(p, bound);
    return {line("prism-integrality/divided-powers", r.pass(), "x^n/n!, n <= " + std::to_string(bound))};
}

inline std::vector<SuiteTask> prism_suite(const RunConfig& cfg) {
    std::vector<SuiteTask> tasks;
    for (unsigned n = 1; n <= prism_max_n(cfg.p); ++n)
        tasks.push_back([=] { return prism_expansion(cfg.p, n, cfg.depth_bound); });
    const long max_i = std::min(cfg.p * cfg.p, cfg.weight_bound);
    tasks.push_back([=] { return prism_units(cfg.p, cfg.depth_bound); });
    tasks.push_back([=] { return prism_conjugate(cfg.p, max_i); });
    tasks.push_back([=] { return prism_rewriting(cfg.p, max_i, cfg.seed, 50); });
    tasks.push_back([=] { return prism_integrality(cfg.p); });
    return tasks;
}

// ---------------------------------------------------------------------------
// de Rham

inline std::vector<CheckLine> derham_forms(long p, long bound, std::uint64_t seed, int samples) {
    Rng rng = task_rng(seed, 401);
    const long wmax = std::min(bound, 10L);
    const auto t = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::prime_field(PrimeContext(p)), bound);
    const auto ctx = make_derham_context(t);
    const int ng = static_cast<int>(ctx->num_generators());
    int dd = 0, leibniz = 0, hodge = 0;
    for (int s = 0; s < samples; ++s) {
        const int q = static_cast<int>(uniform(rng, 0, ng));
        const long w = uniform(rng, q, std::max<long>(q, wmax));
        const auto f = random_form<Fp>(rng, ctx, w, q, 4);
        dd += d(d(f)).is_zero();

        const int qa = static_cast<int>(uniform(rng, 0, ng)), qb = static_cast<int>(uniform(rng, 0, ng - qa));
        const long wa = uniform(rng, qa, std::max<long>(qa, wmax / 2)), wb = uniform(rng, qb, std::max<long>(qb, wmax / 2));
        const auto a = random_form<Fp>(rng, ctx, wa, qa, 3), b = random_form<Fp>(rng, ctx, wb, qb, 3);
        const auto lhs = d(wedge(a, b));
        const auto rhs = wedge(d(a), b) + (qa % 2 == 0 ? wedge(a, d(b)) : -wedge(a, d(b)));
        leibniz += lhs == rhs;

        const long m = uniform(rng, 0, 4);
        Form<Fp> member(ctx);
        for (const auto& [key, c] : f.terms())
            if (key.monomial.weight() >= std::max<long>(m - wedge_degree(key.wedge), 0)) member.add_term(key.monomial, key.wedge, c);
        hodge += hodge_fil_membership(d(member), m);
    }
    bool law = true;
    for (std::size_t j = 0; j < t->num_divided(); ++j)
        for (unsigned n = 1; n <= static_cast<unsigned>(bound); ++n) {
            const auto g = Form<Fp>::function(ctx, DPElement<Fp>::divided(t, j, n));
            const auto expect = wedge(Form<Fp>::function(ctx, DPElement<Fp>::divided(t, j, n - 1)),
                                      Form<Fp>::generator(ctx, 1 + j));
            law = law && d(g) == expect;
        }
    const std::string detail = "/" + std::to_string(samples) + " samples";
    return {line("de-rham/d-squared", dd == samples, std::to_string(dd) + detail),
            line("de-rham/leibniz", leibniz == samples, std::to_string(leibniz) + detail),
            line("de-rham/divided-derivative", law, "d(g_n(y)) = g_{n-1}(y) dy, n <= " + std::to_string(bound)),
            line("hodge-filtration/subcomplex", hodge == samples, std::to_string(hodge) + detail)};
}

inline std::vector<CheckLine> derham_poincare(long p, long bound) {
    const auto pd = make_derham_context(make_pd_context({}, {"y"}, CoeffDomain::prime_field(PrimeContext(p)), bound));
    const auto pd2 = make_derham_context(make_pd_context({}, {"y1", "y2"}, CoeffDomain::prime_field(PrimeContext(p)), bound));
    const auto rat = make_derham_context(make_pd_context({"x"}, {}, CoeffDomain::rational(), bound));
    const std::string detail = "weights 1.." + std::to_string(bound);
    return {line("poincare/divided-power", poincare_check(pd, bound) && poincare_check(pd2, std::min(bound, 8L)), detail),
            line("poincare/rational", poincare_check(rat, bound), detail)};
}

inline std::vector<CheckLine> derham_cartier(long p, long bound, std::uint64_t seed) {
    const long wmax = std::min(bound, 10L);
    bool iso = true;
    for (const std::vector<std::string>& vars : {std::vector<std::string>{"x"}, std::vector<std::string>{"x", "y"}}) {
        const auto ctx = make_derham_context(make_pd_context(vars, {}, CoeffDomain::prime_field(PrimeContext(p)), bound));
        for (long w = 0; w <= wmax; ++w)
            for (int q = 0; q <= static_cast<int>(vars.size()); ++q) iso = iso && cartier_check(ctx, w, q).pass();
    }
    Rng rng = task_rng(seed, 402);
    const auto t = make_pd_context({"x", "y"}, {}, CoeffDomain::prime_field(PrimeContext(p)), bound);
    const auto ctx = make_derham_context(t);
    bool leibniz = true;
    for (int s = 0; s < 20; ++s) {
        DPElement<Fp> f(t), g(t);
        for (int k = 0; k < 2; ++k) {
            f += DPElement<Fp>::monomial(t, DPMonomial{{static_cast<unsigned>(uniform(rng, 0, 2)), static_cast<unsigned>(uniform(rng, 0, 2))}, {}},
                                         random_scalar<Fp>(rng, t->domain()));
            g += DPElement<Fp>::monomial(t, DPMonomial{{static_cast<unsigned>(uniform(rng, 0, 2)), static_cast<unsigned>(uniform(rng, 0, 2))}, {}},
                                         random_scalar<Fp>(rng, t->domain()));
        }
        leibniz = leibniz && cartier_leibniz(ctx, f, g);
    }
    return {line("cartier/isomorphism", iso, "F_p[x], F_p[x,y], weights <= " + std::to_string(wmax)),
            line("cartier/additivity", cartier_additivity(p).pass(), "antiderivative over Q, p-local"),
            line("cartier/leibniz", leibniz, "20 random pairs")};
}

inline std::vector<SuiteTask> derham_suite(const RunConfig& cfg) {
    return {
        [=] { return derham_forms(cfg.p, cfg.weight_bound, cfg.seed, 200); },
        [=] { return derham_poincare(cfg.p, cfg.weight_bound); },
        [=] { return derham_cartier(cfg.p, cfg.weight_bound, cfg.seed); },
    };
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pd", "delta", "prism", "derham", "all"};
    return names;
}

inline std::vector<SuiteTask> suite_tasks(const std::string& name, const RunConfig& cfg) {
    if (name == "pd") return suites::pd_suite(cfg);
    if (name == "delta") return suites::delta_suite(cfg);
    if (name == "prism") return suites::prism_suite(cfg);
    if (name == "derham") return suites::derham_suite(cfg);
    if (name == "all") {
        std::vector<SuiteTask> all;
        for (const char* s : {"pd", "delta", "prism", "derham"}) {
            auto part = suite_tasks(s, cfg);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw Error("unknown suite '" + name + "'");
}

}  // namespace gammadelta
