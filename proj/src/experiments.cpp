#include "unitdef/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "unitdef/unit_constructor.hpp"
#include "unitdef/unit_equations.hpp"
#include "unitdef/zk_witness.hpp"

namespace unitdef {

namespace {

json common_defaults() { return json{{"seed", 0}, {"timing", false}}; }

std::vector<experiment_info> const & registry()
{
    static std::vector<experiment_info> const r{
        {"gauss-s-table", "the sets S_{eps,delta} over Z[i] as congruence classes", json::object()},
        {"imag-quadratic-rk", "R_K for imaginary quadratic orders, compared with Z + 2 O_K",
         json{{"ds", {-1, -2, -3, -7, -11, -163}}, {"maximal", true}}},
        {"rank-one", "bounded R_K probes over a real quadratic unit group",
         json{{"d", 2},
              {"unit_bound", 50},
              {"delta_bound", 50},
              {"refute", {"sqrt2"}},
              {"xs", {"0", "1", "-1", "2", "-2", "3"}}}},
        {"divisibility-sweep", "unit triples give N; for eps = u^(N+1), eps^b - 1 | eps^a - 1 iff b | a",
         json{{"d", 2}, {"unit_bound", 10}, {"range", 30}}},
        {"obstruction", "F_p rank certificate that (eps - 1) p^j x misses the image of the unit group",
         json{{"d", 2}, {"p", 5}, {"j", 1}}},
        {"construct-unit", "units u with g(0) = u and a root congruent to beta, worked and random instances",
         json{{"order", "rational"},
              {"ideal", {"5"}},
              {"beta", "2"},
              {"random_instances", 100},
              {"residue_cap", 1000000}}},
        {"zk-witness", "integer witnesses for the Z_K formula with every congruence checked in finite quotients",
         json{{"ws", {-3, -2, -1, 0, 1, 2, 3}},
              {"d", 5},
              {"F", "rational"},
              {"eps_bound", 10},
              {"order_cap", 10000000}}},
    };
    return r;
}

experiment_info const & find_experiment(std::string const & name)
{
    for (auto const & e : registry())
        if (e.name == name) return e;
    throw config_error("experiment", "unknown experiment '" + name + "'");
}

bool same_kind(json const & a, json const & b)
{
    if (a.is_number_integer()) return b.is_number_integer();
    if (a.is_boolean()) return b.is_boolean();
    if (a.is_string()) return b.is_string();
    if (a.is_array()) {
        if (!b.is_array()) return false;
        if (a.empty()) return true;
        for (auto const & x : b)
            if (!same_kind(a.front(), x)) return false;
        return true;
    }
    return a.type() == b.type();
}

/* ---------- check records ---------- */

std::string observed_label(truth v, bool bounded_positive)
{
    if (v == truth::unknown && bounded_positive) return "UNKNOWN+";
    return to_string(v);
}

class runner {
  public:
    explicit runner(json c)
        : cfg(std::move(c))
        , timing(cfg.at("timing").get<bool>())
        , last(std::chrono::steady_clock::now())
    {}

    json cfg;
    json checks = json::array();

    void add(std::string name, std::string kind, truth v, bool bp, std::string expected, json cert,
             std::string detail = "")
    {
        json r{{"name", std::move(name)},
               {"kind", std::move(kind)},
               {"verdict", to_string(v)},
               {"bounded_positive", v == truth::unknown && bp},
               {"expected", expected},
               {"pass", observed_label(v, bp) == expected},
               {"certificate", std::move(cert)},
               {"detail", std::move(detail)}};
        auto now = std::chrono::steady_clock::now();
        if (timing) r["elapsed_ms"] = std::chrono::duration<double, std::milli>(now - last).count();
        last = now;
        checks.push_back(std::move(r));
    }

  private:
    bool timing;
    std::chrono::steady_clock::time_point last;
};

truth of(bool b) { return b ? truth::holds : truth::fails; }

truth truth_from_label(std::string const & s)
{
    if (s == "TRUE") return truth::holds;
    if (s == "FALSE") return truth::fails;
    if (s == "UNKNOWN") return truth::unknown;
    throw std::invalid_argument("bad verdict label '" + s + "'");
}

/* ---------- gauss-s-table ---------- */

struct s_fact {
    std::string name;
    std::vector<std::pair<ring_element, ring_element>> pairs;
    congruence_class expected;
};

std::vector<s_fact> gauss_facts()
{
    auto ctx = make_quadratic_order(-1, true);
    auto el = [&](long a, long b) { return ring_element(ctx, {bigint(a), bigint(b)}); };
    auto one = el(1, 0), m1 = el(-1, 0), i = el(0, 1), mi = el(0, -1);
    auto zero = el(0, 0);
    auto two = principal_ideal(el(2, 0));
    auto pi = principal_ideal(el(1, 1));
    auto whole = congruence_class::whole(ctx);
    return {
        {"S(1,1) = O_K", {{one, one}}, whole},
        {"S(-1,1) = 2 O_K", {{m1, one}}, congruence_class::make(zero, two)},
        {"S(-1,-1) = 1 + 2 O_K", {{m1, m1}}, congruence_class::make(one, two)},
        {"S(i,1) = S(i,-1) = (1+i) O_K", {{i, one}, {i, m1}}, congruence_class::make(zero, pi)},
        {"S(i,i) = S(i,-i) = 1 + (1+i) O_K", {{i, i}, {i, mi}}, congruence_class::make(one, pi)},
        {"S(-i,1) = S(-i,-1) = (1+i) O_K", {{mi, one}, {mi, m1}}, congruence_class::make(zero, pi)},
        {"S(-i,i) = S(-i,-i) = 1 + (1+i) O_K", {{mi, i}, {mi, mi}}, congruence_class::make(one, pi)},
        {"S(-1,i) = S(-1,-i) = empty", {{m1, i}, {m1, mi}}, congruence_class::empty(ctx)},
    };
}

void run_gauss(runner & run)
{
    for (auto const & f : gauss_facts()) {
        json pairs = json::array();
        bool ok = true;
        for (auto const & [e, d] : f.pairs) {
            auto s = s_set(e, d);
            ok = ok && s == f.expected;
            pairs.push_back(json{{"eps", to_json(e)}, {"delta", to_json(d)}, {"class", to_json(s)}});
        }
        run.add(f.name, "s_table", of(ok), false, "TRUE",
                json{{"order", "quadratic:-1"}, {"pairs", pairs}, {"expected", to_json(f.expected)}});
    }
}

congruence_class class_from_json(order_ptr const & ctx, json const & j)
{
    if (j.at("empty").get<bool>()) return congruence_class::empty(ctx);
    return congruence_class::make(element_from_json(ctx, j.at("residue")), ideal_from_json(ctx, j.at("modulus")));
}

truth verify_s_table(json const & c)
{
    auto ctx = parse_order_spec(c.at("order"));
    auto expected = class_from_json(ctx, c.at("expected"));
    bool ok = true;
    for (auto const & p : c.at("pairs")) {
        auto s = s_set(element_from_json(ctx, p.at("eps")), element_from_json(ctx, p.at("delta")));
        if (!(to_json(s) == p.at("class")) || !(class_from_json(ctx, p.at("class")) == s))
            throw std::runtime_error("stored class does not match s_set");
        ok = ok && s == expected;
    }
    return of(ok);
}

/* ---------- imag-quadratic-rk ---------- */

int_matrix z_plus_two_o(order_ptr const & ctx)
{
    std::vector<std::vector<bigint>> rows;
    for (std::size_t i = 0; i < ctx->degree(); i++) {
        std::vector<bigint> r(ctx->degree());
        r[i] = i == 0 ? 1 : 2;
        rows.push_back(r);
    }
    return hnf(int_matrix::from_rows(rows));
}

std::string quadratic_spec(bigint const & d, bool maximal)
{
    return "quadratic:" + d.get_str() + (maximal ? ":maximal" : ":nonmaximal");
}

void run_imag_rk(runner & run)
{
    bool maximal = run.cfg.at("maximal").get<bool>();
    for (auto const & dj : run.cfg.at("ds")) {
        bigint d = dj.get<long>();
        if (d >= 0) throw config_error("ds", "radicands must be negative");
        std::string spec = quadratic_spec(d, maximal);
        auto ctx = parse_order_spec(spec);
        auto rk = rk_exact_finite_units(ctx);
        auto expected = z_plus_two_o(ctx);
        run.add("R_K for " + ctx->tag(), "rk_lattice", of(rk.basis == expected), false, "TRUE",
                json{{"order", spec}, {"basis", to_json(rk.basis)}, {"expected", to_json(expected)},
                     {"trace", rk.trace}});
    }
}

truth verify_rk_lattice(json const & c)
{
    auto ctx = parse_order_spec(c.at("order"));
    auto basis = matrix_from_json(c.at("basis"), ctx->degree());
    make_subring(ctx, basis);
    if (!(rk_exact_finite_units(ctx).basis == basis)) throw std::runtime_error("R_K lattice does not recompute");
    return of(basis == z_plus_two_o(ctx));
}

/* ---------- rank-one ---------- */

json decision_json(rank_one_decision const & d)
{
    return json{{"delta", d.delta ? to_json(*d.delta) : json(nullptr)},
                {"image", to_json(d.image)},
                {"y", d.y.context() ? to_json(d.y) : json(nullptr)},
                {"z", d.z.context() ? to_json(d.z) : json(nullptr)}};
}

void run_rank_one(runner & run)
{
    bigint d = run.cfg.at("d").get<long>();
    if (d <= 1) throw config_error("d", "a real quadratic radicand is required");
    std::string spec = quadratic_spec(d, true);
    auto ctx = parse_order_spec(spec);
    auto g = unit_group_of(ctx);
    unsigned long ub = run.cfg.at("unit_bound").get<unsigned long>();
    unsigned long db = run.cfg.at("delta_bound").get<unsigned long>();
    auto probe = [&](std::string const & xs, std::string const & expected) {
        ring_element x = parse_element(ctx, xs);
        auto v = rk_probe(x, g, ub, db);
        json cert{{"order", spec}, {"x", to_json(x)}, {"eps_bound", ub}, {"delta_bound", db}, {"reason", v.reason}};
        json wit = json::array();
        for (auto const & w : v.witnesses) wit.push_back(json{{"eps", to_json(w.eps)}, {"delta", to_json(w.delta)}});
        cert["witnesses"] = wit;
        cert["refuting_eps"] = v.refuting_eps ? to_json(*v.refuting_eps) : json(nullptr);
        std::string detail = v.reason;
        if (v.value == truth::fails) {
            json failing = json::array();
            for (auto const & e : enumerate_units(g, ub).words) {
                auto dec = decide_rank_one(g, e, x);
                if (!dec.delta) failing.push_back(json{{"eps", to_json(e)}, {"decision", decision_json(dec)}});
            }
            cert["failing_eps"] = failing;
            detail += "; " + std::to_string(failing.size()) + " eps without a witness";
        }
        run.add("probe x = " + xs, "rank_one", v.value, v.bounded_positive, expected, cert, detail);
    };
    for (auto const & x : run.cfg.at("refute")) probe(x.get<std::string>(), "FALSE");
    for (auto const & x : run.cfg.at("xs")) probe(x.get<std::string>(), "UNKNOWN+");
}

std::pair<truth, bool> verify_rank_one(json const & c, truth claimed)
{
    auto ctx = parse_order_spec(c.at("order"));
    auto g = unit_group_of(ctx);
    ring_element x = element_from_json(ctx, c.at("x"));
    if (claimed == truth::fails) {
        bool any = false;
        for (auto const & f : c.at("failing_eps")) {
            auto dec = decide_rank_one(g, word_from_json(f.at("eps")), x);
            if (dec.delta) throw std::runtime_error("listed eps has a witness");
            if (!(to_json(dec.image) == f.at("decision").at("image")))
                throw std::runtime_error("image lattice does not recompute");
            any = true;
        }
        return {of(!any), false};
    }
    /* every enumerated eps must carry a checked witness */
    std::map<std::string, bool> covered;
    for (auto const & w : c.at("witnesses")) {
        unit_word e = word_from_json(w.at("eps")), dl = word_from_json(w.at("delta"));
        /* delta may be far too large to expand; check it modulo (eps - 1)^2 */
        ring_element t = evaluate(g, e) - ring_element::integer(ctx, 1);
        ideal_lattice sq = principal_ideal(t * t);
        ring_element r = unit_residue(g, dl, sq) - ring_element::integer(ctx, 1);
        if (!congruent_mod_ideal(r, t * x, sq)) throw std::runtime_error("witness fails");
        covered[to_json(e).dump()] = true;
    }
    auto words = enumerate_units(g, c.at("eps_bound").get<unsigned long>());
    for (auto const & e : words.words)
        if (!covered.count(to_json(e).dump())) return {truth::unknown, false};
    return {words.exhaustive ? truth::holds : truth::unknown, true};
}

/* ---------- divisibility-sweep ---------- */

void run_divisibility_sweep(runner & run)
{
    bigint d = run.cfg.at("d").get<long>();
    std::string spec = quadratic_spec(d, true);
    auto ctx = parse_order_spec(spec);
    auto g = unit_group_of(ctx);
    unsigned long ub = run.cfg.at("unit_bound").get<unsigned long>();
    long range = run.cfg.at("range").get<long>();
    if (range < 1) throw config_error("range", "must be positive");

    auto fn = find_N(g, 0, ub);
    json triples = json::array();
    for (auto const & t : solve_unit_triple(g, ub).triples) {
        auto const & w = t.words[0];
        if (w.torsion_exp != 0 || w.exps[0] == 0) continue;
        json tw = json::array();
        for (auto const & x : t.words) tw.push_back(to_json(x));
        triples.push_back(tw);
    }
    run.add("N from unit triples", "find_n", truth::holds, false, "TRUE",
            json{{"order", spec}, {"bound", ub}, {"n", to_json(fn.n)},
                 {"s_found", std::vector<long>(fn.s_found.begin(), fn.s_found.end())}, {"triples", triples}},
            "N = " + fn.n.get_str() + " (a lower bound at this exponent bound)");

    bigint n = fn.n + 1;
    unit_word eps = word_pow(g, word_generator(g, 0), n);
    json divisible = json::array(), disagreements = json::array();
    std::size_t gcd_ok = 0;
    for (long a = 1; a <= range; a++) {
        for (long b = 1; b <= range; b++) {
            auto r = epsilon_divisibility(g, eps, a, b);
            if (r.divides) divisible.push_back({a, b});
            if (r.divides != (a % b == 0)) disagreements.push_back({a, b});
            if (r.gcd_ideal_matches) gcd_ok++;
        }
    }
    run.add("eps^b - 1 | eps^a - 1 iff b | a, eps = u^" + n.get_str(), "divisibility", of(disagreements.empty()),
            false, "TRUE",
            json{{"order", spec}, {"eps", to_json(eps)}, {"range", range}, {"divisible", divisible},
                 {"disagreements", disagreements}, {"gcd_ideal_matches", gcd_ok}});
}

truth verify_find_n(json const & c)
{
    auto ctx = parse_order_spec(c.at("order"));
    auto g = unit_group_of(ctx);
    auto one = ring_element::integer(ctx, 1);
    std::set<long> s;
    for (auto const & t : c.at("triples")) {
        ring_element sum = ring_element::integer(ctx, 0);
        for (auto const & w : t) {
            ring_element x = evaluate(g, word_from_json(w));
            if (x == one) throw std::runtime_error("triple entry equals 1");
            sum = sum + x;
        }
        if (!(sum == one)) throw std::runtime_error("triple does not sum to 1");
        unit_word w0 = word_from_json(t[0]);
        bool pure = w0.torsion_exp == 0;
        for (std::size_t i = 1; i < w0.exps.size(); i++) pure = pure && w0.exps[i] == 0;
        if (pure) s.insert(w0.exps[0].get_si());
    }
    if (s != c.at("s_found").get<std::set<long>>()) throw std::runtime_error("S does not match the triples");
    bigint n = (!s.empty() && *s.rbegin() > 0) ? bigint(*s.rbegin()) : bigint(0);
    return of(n == bigint_from_json(c.at("n")));
}

truth verify_divisibility(json const & c)
{
    auto ctx = parse_order_spec(c.at("order"));
    auto g = unit_group_of(ctx);
    unit_word eps = word_from_json(c.at("eps"));
    long range = c.at("range").get<long>();
    std::set<std::pair<long, long>> stored;
    for (auto const & p : c.at("divisible")) stored.insert({p[0].get<long>(), p[1].get<long>()});
    bool agree = true;
    for (long a = 1; a <= range; a++)
        for (long b = 1; b <= range; b++) {
            bool dv = epsilon_divisibility(g, eps, a, b).divides;
            if (dv != (stored.count({a, b}) > 0)) throw std::runtime_error("divisibility table does not recompute");
            agree = agree && dv == (a % b == 0);
        }
    return of(agree);
}

/* ---------- obstruction ---------- */

void run_obstruction(runner & run)
{
    bigint d = run.cfg.at("d").get<long>();
    bigint p = run.cfg.at("p").get<long>();
    long j = run.cfg.at("j").get<long>();
    if (p < 2 || !is_probable_prime(p)) throw config_error("p", "must be prime");
    if (j < 1) throw config_error("j", "must be positive");
    std::string spec = quadratic_spec(d, true);
    auto ctx = parse_order_spec(spec);
    auto g = unit_group_of(ctx);
    ideal_lattice mod = ideal_scale(ideal_lattice::unit(ctx), ipow(p, static_cast<unsigned long>(j) + 1));
    bigint ord = multiplicative_order_mod(g.free.at(0), mod);
    unit_word eps = word_pow(g, word_generator(g, 0), ord);
    auto c = obstruction_witness(g, p, static_cast<unsigned long>(j), eps);
    json w = json::array();
    for (auto const & x : c.w_generators) w.push_back(to_json(x));
    json cert{{"order", spec},
              {"p", to_json(c.p)},
              {"j", c.j},
              {"eps", to_json(c.eps)},
              {"eps_value", to_json(c.eps_value)},
              {"a", to_json(c.a)},
              {"w_generators", w},
              {"lambda", to_json(c.lambda)},
              {"image_rank", c.image_rank},
              {"dim_v", c.dim_v},
              {"iso", to_json(c.iso)},
              {"x", to_json(c.x)},
              {"witness_vector", to_json(c.witness_vector)},
              {"scaled_ranks", c.scaled_ranks}};
    bool ok = verify_obstruction(c) && c.image_rank < c.dim_v;
    run.add("obstruction for p = " + p.get_str() + ", j = " + std::to_string(j), "obstruction", of(ok), false,
            "TRUE", cert,
            "dim image = " + std::to_string(c.image_rank) + " < dim V = " + std::to_string(c.dim_v));

    ring_element target = ipow(p, static_cast<unsigned long>(j)) * c.x;
    auto dec = decide_rank_one(g, eps, target);
    run.add("no delta for eps at p^j x", "rank_one_decision", dec.delta ? truth::holds : truth::fails, false,
            "FALSE", json{{"order", spec}, {"eps", to_json(eps)}, {"x", to_json(target)}, {"decision", decision_json(dec)}});
}

truth verify_obstruction_record(json const & c)
{
    auto ctx = parse_order_spec(c.at("order"));
    std::size_t n = ctx->degree();
    obstruction_certificate o;
    o.p = bigint_from_json(c.at("p"));
    o.j = c.at("j").get<unsigned long>();
    o.lambda = matrix_from_json(c.at("lambda"), n);
    o.image_rank = c.at("image_rank").get<std::size_t>();
    o.dim_v = c.at("dim_v").get<std::size_t>();
    o.iso = matrix_from_json(c.at("iso"), n);
    o.x = element_from_json(ctx, c.at("x"));
    o.witness_vector = vector_from_json(c.at("witness_vector"));
    o.scaled_ranks = c.at("scaled_ranks").get<std::vector<std::size_t>>();
    auto g = unit_group_of(ctx);
    auto one = ring_element::integer(ctx, 1);
    /* lambda rows are the images of the listed kernel generators */
    ring_element eps = evaluate(g, word_from_json(c.at("eps")));
    ideal_lattice a = ideal_from_json(ctx, c.at("a"));
    bigint pj = ipow(o.p, o.j);
    ideal_lattice pj_a = ideal_scale(a, pj), pj1_a = ideal_scale(a, pj * o.p);
    if (!(p_part(principal_ideal(eps - one), o.p) == a)) throw std::runtime_error("a is not the p-part of (eps - 1)");
    std::size_t row = 0;
    for (auto const & wj : c.at("w_generators")) {
        ring_element r = unit_residue(g, word_from_json(wj), pj1_a) - one;
        auto co = solve_left(pj_a.basis(), r.coords());
        if (!co || row >= o.lambda.rows()) throw std::runtime_error("generator outside p^j a");
        for (std::size_t k = 0; k < n; k++)
            if (floor_mod((*co)[k] - o.lambda(row, k), o.p) != 0) throw std::runtime_error("lambda row mismatch");
        row++;
    }
    return of(verify_obstruction(o) && o.image_rank < o.dim_v);
}

truth verify_rank_one_decision(json const & c)
{
    auto ctx = parse_order_spec(c.at("order"));
    auto g = unit_group_of(ctx);
    auto dec = decide_rank_one(g, word_from_json(c.at("eps")), element_from_json(ctx, c.at("x")));
    if (!(decision_json(dec) == c.at("decision"))) throw std::runtime_error("decision does not recompute");
    if (dec.delta) {
        bool ok = s_condition(evaluate(g, word_from_json(c.at("eps"))), evaluate(g, *dec.delta),
                              element_from_json(ctx, c.at("x")));
        return of(ok);
    }
    return truth::fails;
}

/* ---------- construct-unit ---------- */

json construction_json(unit_construction const & c, std::string const & spec)
{
    json j{{"order", spec},
           {"ideal", to_json(c.original_ideal)},
           {"mu", to_json(c.mu)},
           {"principalization", c.principalization},
           {"beta", to_json(c.beta)},
           {"d", c.d},
           {"u_word", to_json(c.u_word)},
           {"u", to_json(c.u)},
           {"a", to_json(c.a)},
           {"b", to_json(c.b)},
           {"f", to_json(c.f)},
           {"g", to_json(c.g)},
           {"root", nullptr}};
    if (c.root) {
        j["root"] = json{{"delta", to_json(c.root->delta)}, {"norm", to_json(c.root->norm)},
                         {"extension", c.root->extension ? json(c.root->extension->tag()) : json(nullptr)}};
    }
    return j;
}

unit_construction construction_from_json(json const & j)
{
    unit_construction c;
    c.base = parse_order_spec(j.at("order"));
    auto const & ctx = c.base;
    c.original_ideal = ideal_from_json(ctx, j.at("ideal"));
    c.mu = element_from_json(ctx, j.at("mu"));
    c.principalization = j.at("principalization");
    c.beta = element_from_json(ctx, j.at("beta"));
    c.d = j.at("d").get<unsigned long>();
    c.u_word = word_from_json(j.at("u_word"));
    c.u = element_from_json(ctx, j.at("u"));
    c.a = element_from_json(ctx, j.at("a"));
    c.b = element_from_json(ctx, j.at("b"));
    c.f = polynomial_from_json(ctx, j.at("f"));
    c.g = polynomial_from_json(ctx, j.at("g"));
    if (!j.at("root").is_null()) {
        json const & r = j.at("root");
        materialized_root m;
        m.norm = element_from_json(ctx, r.at("norm"));
        if (c.d == 1) {
            m.delta = element_from_json(ctx, r.at("delta"));
            m.congruent = congruent_mod_ideal(m.delta, c.beta, principal_ideal(c.mu));
            m.root_of_g = c.g(m.delta).is_zero();
            if (!(m.norm == m.delta)) throw std::runtime_error("degree-one norm mismatch");
        } else {
            m.extension = make_simple_extension(c.a, c.b);
            m.delta = element_from_json(m.extension, r.at("delta"));
            if (!(restrict_to_base(relative_norm(m.delta)) == m.norm))
                throw std::runtime_error("stored norm does not recompute");
            ring_element mu_l = lift_to(m.extension, c.mu);
            m.congruent = congruent_mod_ideal(m.delta, lift_to(m.extension, c.beta), principal_ideal(mu_l));
            std::vector<ring_element> gl;
            for (auto const & x : c.g.coefficients()) gl.push_back(lift_to(m.extension, x));
            m.root_of_g = element_polynomial(gl)(m.delta).is_zero();
        }
        c.root = m;
    }
    return c;
}

ring_element random_element(order_ptr const & ctx, std::mt19937_64 & rng, long h)
{
    std::vector<bigint> c(ctx->degree());
    for (auto & x : c) x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * h + 1)) - h;
    return ring_element(ctx, std::move(c));
}

void run_construct(runner & run)
{
    std::uint64_t cap = run.cfg.at("residue_cap").get<std::uint64_t>();
    std::string spec = run.cfg.at("order");
    order_ptr ctx;
    try {
        ctx = parse_order_spec(spec);
    } catch (std::invalid_argument const & e) {
        throw config_error("order", e.what());
    }
    std::vector<ring_element> gens;
    for (auto const & s : run.cfg.at("ideal")) gens.push_back(parse_element(ctx, s.get<std::string>()));
    if (gens.empty()) throw config_error("ideal", "at least one generator is required");
    ideal_lattice I = ideal_from_generators(ctx, gens);
    ring_element beta = parse_element(ctx, run.cfg.at("beta").get<std::string>());
    auto c = construct_unit(ctx, I, beta, cap);
    auto chk = check_construction(c);
    bool root_ok = c.d > 2 || (c.root && c.root->congruent && c.root->root_of_g);
    run.add("construction for " + ctx->tag(), "construction", of(chk.ok && root_ok), false, "TRUE",
            construction_json(c, spec), "d = " + std::to_string(c.d) + ", u = " + c.u.to_string());

    std::mt19937_64 rng(run.cfg.at("seed").get<std::uint64_t>());
    std::vector<std::string> specs{"rational", "quadratic:-1:maximal", "quadratic:2:maximal"};
    std::vector<order_ptr> orders;
    for (auto const & s : specs) orders.push_back(parse_order_spec(s));
    long wanted = run.cfg.at("random_instances").get<long>();
    for (long i = 0; i < wanted;) {
        std::size_t which = rng() % orders.size();
        auto const & o = orders[which];
        std::vector<ring_element> gs{random_element(o, rng, 6)};
        if (rng() % 2) gs.push_back(random_element(o, rng, 6));
        ideal_lattice J = ideal_from_generators(o, gs);
        if (J.is_zero() || J.is_unit() || J.index() > 300) continue;
        ring_element b = random_element(o, rng, 9);
        if (!invertible_mod(b, J)) continue;
        unit_construction rc;
        try {
            rc = construct_unit(o, J, b, cap);
        } catch (std::domain_error const &) {
            continue;
        }
        bool rok = check_construction(rc).ok && (rc.d > 2 || (rc.root && rc.root->congruent && rc.root->root_of_g));
        run.add("random instance " + std::to_string(i), "construction", of(rok), false, "TRUE",
                construction_json(rc, specs[which]), "d = " + std::to_string(rc.d));
        i++;
    }
}

truth verify_construction(json const & c)
{
    auto uc = construction_from_json(c);
    auto chk = check_construction(uc);
    bool root_ok = uc.d > 2 || (uc.root && uc.root->congruent && uc.root->root_of_g);
    unit_group g = unit_group_of(uc.base);
    if (!(evaluate(g, uc.u_word) == uc.u)) throw std::runtime_error("u does not match its word");
    return of(chk.ok && root_ok);
}

/* ---------- zk-witness ---------- */

json named_checks_json(std::vector<named_check> const & v)
{
    json a = json::array();
    for (auto const & c : v) a.push_back(json{{"name", c.name}, {"value", to_string(c.value)}, {"detail", c.detail}});
    return a;
}

void run_zk(runner & run)
{
    bigint d = run.cfg.at("d").get<long>();
    std::string fspec = run.cfg.at("F");
    order_ptr F;
    try {
        F = parse_order_spec(fspec);
    } catch (std::invalid_argument const & e) {
        throw config_error("F", e.what());
    }
    unsigned long eb = run.cfg.at("eps_bound").get<unsigned long>();
    std::uint64_t cap = run.cfg.at("order_cap").get<std::uint64_t>();
    for (auto const & wj : run.cfg.at("ws")) {
        bigint w = wj.get<long>();
        zk_bundle b;
        try {
            b = zk_integer_witness(w, F, d, std::nullopt, eb, cap);
        } catch (std::invalid_argument const & e) {
            throw config_error("d", e.what());
        }
        json eps = json::array();
        for (auto const & e : b.per_eps) {
            json red = json::object();
            for (auto const & [k, v] : e.reduced) red[k] = to_json(v);
            eps.push_back(json{{"eps", to_json(e.eps_word)},
                               {"eps_value", to_json(e.eps)},
                               {"c", to_json(e.c)},
                               {"reduced", red},
                               {"checks", named_checks_json(e.checks)},
                               {"ok", e.ok}});
        }
        json cert{{"w", to_json(b.w)},
                  {"d", to_json(b.d)},
                  {"F", fspec},
                  {"k", to_json(b.k)},
                  {"modulus", to_json(b.modulus)},
                  {"degenerate", b.degenerate},
                  {"delta1", to_json(b.delta1)},
                  {"delta2", to_json(b.delta2)},
                  {"eps1", to_json(b.eps1)},
                  {"eps2", to_json(b.eps2)},
                  {"units_L", to_json(b.units_L)},
                  {"carrier", b.carrier->tag()},
                  {"system", named_checks_json(b.system.checks)},
                  {"per_eps", eps},
                  {"note", b.note}};
        truth v = b.ok ? truth::holds : (b.system.value == truth::unknown ? truth::unknown : truth::fails);
        run.add("Z_K witness for w = " + w.get_str(), "zk_witness", v, false, "TRUE", cert,
                b.degenerate ? "degenerate branch: D(w) = 0" : "k = " + b.k.get_str());
    }
}

truth verify_zk(json const & c)
{
    zk_bundle b;
    b.w = bigint_from_json(c.at("w"));
    b.d = bigint_from_json(c.at("d"));
    b.F = parse_order_spec(c.at("F"));
    b.L = make_quadratic_order(b.d, false);
    b.units_L = unit_group_of(b.L);
    if (!(to_json(b.units_L) == c.at("units_L"))) throw std::runtime_error("unit group of L differs");
    b.k = bigint_from_json(c.at("k"));
    b.modulus = b.d * d_poly(b.w);
    if (!(to_json(b.modulus) == c.at("modulus"))) throw std::runtime_error("modulus differs");
    b.delta1 = word_from_json(c.at("delta1"));
    b.delta2 = word_from_json(c.at("delta2"));
    b.eps1 = word_from_json(c.at("eps1"));
    b.eps2 = word_from_json(c.at("eps2"));
    b.carrier = make_quadratic_order(2, false);
    b.carrier_units = unit_group_of(b.carrier);
    for (auto const & e : c.at("per_eps")) {
        zk_eps_check ec;
        ec.eps_word = word_from_json(e.at("eps"));
        for (auto const & [k, v] : e.at("reduced").items()) ec.reduced[k] = bigint_from_json(v);
        b.per_eps.push_back(ec);
    }
    return of(verify_zk_bundle(b));
}

/* ---------- dispatch ---------- */

using run_fn = void (*)(runner &);

run_fn runner_for(std::string const & name)
{
    static std::map<std::string, run_fn> const m{
        {"gauss-s-table", run_gauss}, {"imag-quadratic-rk", run_imag_rk}, {"rank-one", run_rank_one},
        {"divisibility-sweep", run_divisibility_sweep},   {"obstruction", run_obstruction},   {"construct-unit", run_construct},
        {"zk-witness", run_zk}};
    return m.at(name);
}

std::pair<truth, bool> reverify(json const & rec)
{
    std::string kind = rec.at("kind");
    json const & c = rec.at("certificate");
    truth claimed = truth_from_label(rec.at("verdict"));
    if (kind == "s_table") return {verify_s_table(c), false};
    if (kind == "rk_lattice") return {verify_rk_lattice(c), false};
    if (kind == "rank_one") return verify_rank_one(c, claimed);
    if (kind == "find_n") return {verify_find_n(c), false};
    if (kind == "divisibility") return {verify_divisibility(c), false};
    if (kind == "obstruction") return {verify_obstruction_record(c), false};
    if (kind == "rank_one_decision") return {verify_rank_one_decision(c), false};
    if (kind == "construction") return {verify_construction(c), false};
    if (kind == "zk_witness") return {verify_zk(c), false};
    throw std::runtime_error("unknown check kind '" + kind + "'");
}

json summary_of(json const & checks)
{
    std::size_t passed = 0;
    std::map<std::string, std::size_t> verdicts{{"TRUE", 0}, {"FALSE", 0}, {"UNKNOWN", 0}};
    for (auto const & c : checks) {
        if (c.at("pass").get<bool>()) passed++;
        verdicts[c.at("verdict").get<std::string>()]++;
    }
    return json{{"checks", checks.size()}, {"passed", passed}, {"failed", checks.size() - passed},
                {"verdicts", verdicts}};
}

}   // namespace

std::vector<experiment_info> list_experiments() { return registry(); }

json normalize_config(json const & cfg)
{
    if (!cfg.is_object()) throw config_error("", "config must be a JSON object");
    if (!cfg.contains("experiment") || !cfg.at("experiment").is_string())
        throw config_error("experiment", "missing or not a string");
    auto const & info = find_experiment(cfg.at("experiment"));
    json out = common_defaults();
    out.update(info.defaults);
    for (auto const & [k, v] : cfg.items()) {
        if (k == "experiment" || k == "output") continue;
        if (k == "d" && out.contains("ds")) {
            if (!v.is_number_integer()) throw config_error("d", "expected an integer");
            out["ds"] = json::array({v});
            continue;
        }
        if (k == "w" && out.contains("ws")) {
            if (!v.is_number_integer()) throw config_error("w", "expected an integer");
            out["ws"] = json::array({v});
            continue;
        }
        if (!out.contains(k)) throw config_error(k, "not a field of experiment " + info.name);
        if (!same_kind(out[k], v)) throw config_error(k, "expected a value like " + out[k].dump());
        out[k] = v;
    }
    for (auto const & [k, v] : out.items())
        if (v.is_number_integer() && k != "d" && k != "ds" && k != "ws" && v.get<long long>() < 0)
            throw config_error(k, "must be non-negative");
    out["experiment"] = info.name;
    return out;
}

std::string config_hash(json const & normalized)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : normalized.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

json empty_report(json const & normalized)
{
    json checks = json::array();
    return json{{"artifact", {{"name", "unitdef"}, {"version", artifact_version}}},
                {"experiment", normalized.at("experiment")},
                {"config", normalized},
                {"config_hash", config_hash(normalized)},
                {"checks", checks},
                {"summary", summary_of(checks)}};
}

json run_experiment(json const & cfg)
{
    json n = normalize_config(cfg);
    runner run(n);
    runner_for(n.at("experiment"))(run);
    json r = empty_report(n);
    r["checks"] = run.checks;
    r["summary"] = summary_of(run.checks);
    return r;
}

void emit_report(json const & report, std::string const & path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << canonical_dump(report);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json read_json_file(std::string const & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (json::parse_error const & e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
}

std::vector<std::string> validate_report_schema(json const & r)
{
    std::vector<std::string> p;
    auto need = [&](json const & o, char const * key, auto pred, char const * what, std::string const & where) {
        if (!o.is_object() || !o.contains(key) || !pred(o.at(key))) {
            p.push_back(where + key + ": expected " + what);
            return false;
        }
        return true;
    };
    auto is_str = [](json const & j) { return j.is_string(); };
    auto is_obj = [](json const & j) { return j.is_object(); };
    auto is_arr = [](json const & j) { return j.is_array(); };
    auto is_bool = [](json const & j) { return j.is_boolean(); };
    auto is_verdict = [](json const & j) {
        return j.is_string() && (j == "TRUE" || j == "FALSE" || j == "UNKNOWN");
    };
    if (!r.is_object()) return {"report is not an object"};
    if (need(r, "artifact", is_obj, "object", "")) {
        need(r.at("artifact"), "name", is_str, "string", "artifact.");
        need(r.at("artifact"), "version", is_str, "string", "artifact.");
    }
    need(r, "experiment", is_str, "string", "");
    need(r, "config", is_obj, "object", "");
    need(r, "config_hash", is_str, "string", "");
    need(r, "summary", is_obj, "object", "");
    if (need(r, "checks", is_arr, "array", "")) {
        for (std::size_t i = 0; i < r.at("checks").size(); i++) {
            auto const & c = r.at("checks")[i];
            std::string w = "checks[" + std::to_string(i) + "].";
            need(c, "name", is_str, "string", w);
            need(c, "kind", is_str, "string", w);
            need(c, "verdict", is_verdict, "TRUE, FALSE or UNKNOWN", w);
            need(c, "bounded_positive", is_bool, "boolean", w);
            need(c, "expected", is_str, "string", w);
            need(c, "pass", is_bool, "boolean", w);
            need(c, "certificate", is_obj, "object", w);
        }
    }
    if (p.empty()) {
        if (r.at("config").value("experiment", "") != r.at("experiment")) p.push_back("config.experiment mismatch");
        if (config_hash(r.at("config")) != r.at("config_hash")) p.push_back("config_hash mismatch");
        if (!(summary_of(r.at("checks")) == r.at("summary"))) p.push_back("summary does not match checks");
    }
    return p;
}

verify_outcome verify_report(json const & report)
{
    verify_outcome out;
    out.problems = validate_report_schema(report);
    if (!out.problems.empty()) {
        out.ok = false;
        return out;
    }
    for (auto const & rec : report.at("checks")) {
        std::string name = rec.at("name");
        truth claimed = truth_from_label(rec.at("verdict"));
        bool bp = rec.at("bounded_positive").get<bool>();
        if (rec.at("pass").get<bool>() != (observed_label(claimed, bp) == rec.at("expected").get<std::string>()))
            out.problems.push_back(name + ": pass flag inconsistent with verdict");
        if (claimed == truth::unknown && !bp) continue;
        try {
            auto [v, rbp] = reverify(rec);
            if (v != claimed || rbp != bp)
                out.problems.push_back(name + ": certificate gives " + observed_label(v, rbp) + ", report says " +
                                       observed_label(claimed, bp));
            else
                out.verified++;
        } catch (std::exception const & e) {
            out.problems.push_back(name + ": " + e.what());
        }
    }
    out.ok = out.problems.empty();
    return out;
}

int report_exit_code(json const & report)
{
    for (auto const & c : report.at("checks"))
        if (!c.at("pass").get<bool>()) return 1;
    return 0;
}

}   // namespace unitdef
