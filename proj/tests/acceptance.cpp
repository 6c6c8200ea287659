// One PASS/FAIL line per acceptance criterion. Every comparison is exact.
// Exit status is the number of failed criteria (capped at 1).

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "gammadelta/suites.hpp"

using namespace gammadelta;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void need(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

bool all_pass(const std::vector<CheckLine>& lines, Outcome& out, const std::string& where) {
    bool ok = true;
    for (const auto& l : lines) {
        out.need(l.pass, where + " " + l.key + " (" + l.detail + ")");
        ok = ok && l.pass;
    }
    return ok;
}

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(GAMMADELTA_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// a_n = sum_{k<n} p^{k(p-1)}, recomputed from the definition
Integer a_n_oracle(long p, unsigned n) {
    Integer a = 0;
    for (unsigned k = 0; k < n; ++k) {
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(p), k * static_cast<unsigned long>(p - 1));
        a += t;
    }
    return a;
}

Outcome pd_axioms() {
    Outcome o;
    std::vector<SuiteTask> tasks;
    for (long p : {2L, 3L, 5L}) tasks.push_back([p] { return suites::pd_axioms(p, 12, 0, 200); });
    all_pass(run_tasks(tasks, worker_count()), o, "");
    return o;
}

Outcome graded_ranks() {
    Outcome o;
    all_pass(suites::graded_ranks(2, 8, 3), o, "");
    return o;
}

Outcome pd_conjugate() {
    Outcome o;
    for (long p : {2L, 3L}) all_pass(suites::pd_conjugate(p, 4, 2), o, "p=" + std::to_string(p));
    return o;
}

Outcome delta_identities() {
    Outcome o;
    for (long p : {2L, 3L}) {
        const std::string at = "p=" + std::to_string(p);
        all_pass(suites::delta_power(p, 4, 0, 50), o, at);
        const auto ddi = delta_divided_identity(p);
        o.need(ddi.equal, at + " delta of y^p/p differs from the closed form");
        o.need(weakly_distinguished_witness(p), at + " weak distinguishedness defect is nonzero");
    }
    return o;
}

Outcome prism_expansion() {
    Outcome o;
    for (long p : {2L, 3L}) {
        const unsigned top = p == 2 ? 3 : 2;
        for (unsigned n = 1; n <= top; ++n) {
            const auto rep = expand_delta_n(p, n, n + 1);
            const std::string at = "p=" + std::to_string(p) + " n=" + std::to_string(n);
            o.need(rep.checks.no_top_var, at + " top variable present");
            o.need(rep.checks.top_degree_le_p, at + " degree above p");
            o.need(rep.checks.leading_coefficient, at + " leading coefficient");
            o.need(rep.checks.homogeneity, at + " not homogeneous");
            o.need(rep.a_n == a_n_oracle(p, n), at + " a_n mismatch");
        }
    }
    return o;
}

Outcome unit_tower_criterion() {
    Outcome o;
    for (long p : {2L, 3L})
        for (unsigned n = 1; n <= 3; ++n) {
            const auto rep = unit_tower(p, n, 4);
            const std::string at = "p=" + std::to_string(p) + " n=" + std::to_string(n);
            o.need(rep.exact, at + " phi^n(d) != d^{p^n} + p u_n");
            o.need(rep.congruent_delta_d, at + " u_n is not congruent to delta(d) mod p");
        }
    return o;
}

Outcome delta_iterate() {
    Outcome o;
    for (long p : {2L, 3L})
        for (unsigned n = 0; n <= 3; ++n) {
            const auto r = rational_normal_form(p, n, 3);
            const std::string at = "p=" + std::to_string(p) + " n=" + std::to_string(n);
            o.need(r.degree_ok, at + " degree " + std::to_string(r.degree_x));
            o.need(r.leading_ok, at + " leading " + r.leading.get_str() + " vs " + r.expected_leading.get_str());
        }
    return o;
}

Outcome prism_conjugate() {
    Outcome o;
    std::vector<SuiteTask> tasks;
    for (long p : {2L, 3L}) {
        tasks.push_back([p] { return suites::prism_conjugate(p, p * p); });
        tasks.push_back([p] {
            auto lines = suites::prism_rewriting(p, p * p, 0, 50);
            std::erase_if(lines, [](const CheckLine& l) { return l.key == "prism-rewriting/confluent"; });
            return lines;
        });
    }
    all_pass(run_tasks(tasks, worker_count()), o, "");
    return o;
}

Outcome basis_change() {
    Outcome o;
    o.need(mod_p_basis_change(PrimeContext(2), 8).invertible, "p=2 weights <= 8");
    o.need(mod_p_basis_change(PrimeContext(3), 9).invertible, "p=3 weights <= 9");
    for (long p : {2L, 3L})
        o.need(divided_power_integrality(p, static_cast<unsigned>(p * p + p)).pass(),
               "integrality p=" + std::to_string(p));
    return o;
}

Outcome derham() {
    Outcome o;
    std::vector<SuiteTask> tasks;
    tasks.push_back([] {
        auto lines = suites::derham_forms(2, 12, 0, 200);
        std::erase_if(lines, [](const CheckLine& l) { return l.key != "de-rham/d-squared" && l.key != "de-rham/leibniz"; });
        return lines;
    });
    for (long p : {2L, 3L, 5L})
        tasks.push_back([p] {
            auto ctx = make_derham_context(make_pd_context({}, {"y"}, CoeffDomain::prime_field(PrimeContext(p)), 12));
            return std::vector<CheckLine>{{"poincare/divided-power p=" + std::to_string(p), poincare_check(ctx, 12), "weights <= 12"}};
        });
    tasks.push_back([] {
        auto ctx = make_derham_context(make_pd_context({"x"}, {}, CoeffDomain::rational(), 12));
        return std::vector<CheckLine>{{"poincare/rational", poincare_check(ctx, 12), "Q[x], weights <= 12"}};
    });
    for (long p : {2L, 3L})
        tasks.push_back([p] {
            bool iso = true;
            for (const std::vector<std::string>& vars : {std::vector<std::string>{"x"}, std::vector<std::string>{"x", "y"}}) {
                auto ctx = make_derham_context(make_pd_context(vars, {}, CoeffDomain::prime_field(PrimeContext(p)), 10));
                for (long w = 0; w <= 10; ++w)
                    for (int q = 0; q <= static_cast<int>(vars.size()); ++q) iso = iso && cartier_check(ctx, w, q).pass();
            }
            return std::vector<CheckLine>{{"cartier/isomorphism p=" + std::to_string(p), iso, "weights <= 10"},
                                          {"cartier/additivity p=" + std::to_string(p), cartier_additivity(p).exact, "over Q"}};
        });
    all_pass(run_tasks(tasks, worker_count()), o, "");
    return o;
}

Outcome cli() {
    Outcome o;
    const Run all = run_cli("verify all");
    o.need(all.code == 0, "verify all exited " + std::to_string(all.code));
    for (const char* name : {"prism_pn_2_p2", "pd_env_comp", "verify_pd_json", "conj_table_r2"}) {
        const std::string golden = read_file(std::string(GOLDEN_DIR) + "/" + name + ".txt");
        std::string args;
        if (std::string(name) == "prism_pn_2_p2") args = "compute prism-pn --n 2 --p 2";
        if (std::string(name) == "pd_env_comp") args = "compute pd-env --ring 'Q<y>' --expr 'g_2(g_2(y))' --format json";
        if (std::string(name) == "verify_pd_json") args = "verify pd --p 2 --format json";
        if (std::string(name) == "conj_table_r2") args = "compute conj-table --r 2 --p 2 --weight-bound 6";
        const Run a = run_cli(args), b = run_cli(args);
        o.need(a.code == 0 && b.code == 0, std::string(name) + " nonzero exit");
        o.need(a.out == b.out, std::string(name) + " differs between runs");
        o.need(!golden.empty() && a.out == golden, std::string(name) + " differs from the golden file");
    }
    const Run bad = run_cli("verify pd --p 4");
    o.need(bad.code == 2, "non-prime p exited " + std::to_string(bad.code));
    o.need(bad.out.find("4 is not prime") != std::string::npos, "non-prime message missing");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "divided-power axioms, 200 random ideal elements, p in {2,3,5}, weight <= 12", pd_axioms},
        {2, "adic and PD graded ranks equal C(n+r-1,r-1), n <= 8, r <= 3", graded_ranks},
        {3, "PD conjugate graded ranks and generators, j <= 4, r <= 2, p in {2,3}", pd_conjugate},
        {4, "delta p-th power, delta of y^p/p, weak distinguishedness, p in {2,3}", delta_identities},
        {5, "structure of delta^n(zd) - delta^n(z) phi^n(d), n <= 3 (p=2), n <= 2 (p=3)", prism_expansion},
        {6, "phi^n(d) = d^{p^n} + p u_n with u_n = delta(d) mod p, n <= 3, p in {2,3}", unit_tower_criterion},
        {7, "delta^n(x) over Q: degree p^n, leading (-1/p)^{(p^n-1)/(p-1)}, n <= 3", delta_iterate},
        {8, "prismatic conjugate ranks, Hodge-Tate invertibility, rewriting, i <= p^2", prism_conjugate},
        {9, "mod-p basis change invertible, x^n/n! integral up to p^2+p", basis_change},
        {10, "de Rham: d^2, Leibniz, Poincare, Cartier isomorphism and additivity", derham},
        {11, "CLI: verify all exits 0, goldens byte-identical, non-prime p exits 2", cli},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.need(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (tolerance: exact, " << timing << ")";
        if (!o.pass) std::cout << "\n     " << o.detail;
        std::cout << "\n";
        failed += o.pass ? 0 : 1;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
