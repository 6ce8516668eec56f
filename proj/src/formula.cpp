#include "unitdef/formula.hpp"

#include <cctype>
#include <functional>

namespace unitdef {

parse_error::parse_error(kind k, source_pos p, std::string const & msg)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + msg)
    , category(k)
    , pos(p)
{}

bool operator==(term const & a, term const & b)
{
    return a.kind == b.kind && a.value == b.value && a.name == b.name && a.exponent == b.exponent && a.args == b.args;
}

bool operator==(formula const & a, formula const & b)
{
    return a.kind == b.kind && a.terms == b.terms && a.args == b.args;
}

bool operator==(quantifier const & a, quantifier const & b)
{
    return a.universal == b.universal && a.var == b.var && a.sort == b.sort && a.bound == b.bound;
}

bool operator==(formula_ast const & a, formula_ast const & b)
{
    return a.prefix == b.prefix && a.body == b.body && a.free_vars == b.free_vars;
}

namespace {

enum class tok { ident, integer, sym, keyword, end };

struct token {
    tok kind;
    std::string text;
    source_pos pos;
};

bool is_keyword(std::string const & s)
{
    static std::set<std::string> const kw{"forall", "exists", "Unit", "Elem", "and", "or", "not", "mod", "unit"};
    return kw.count(s) > 0;
}

std::vector<token> lex(std::string const & src)
{
    std::vector<token> out;
    source_pos p;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; k++, i++) {
            if (src[i] == '\n') {
                p.line++;
                p.column = 1;
            } else {
                p.column++;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        source_pos start = p;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) j++;
            std::string w = src.substr(i, j - i);
            out.push_back({is_keyword(w) ? tok::keyword : tok::ident, w, start});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) j++;
            out.push_back({tok::integer, src.substr(i, j - i), start});
            advance(j - i);
            continue;
        }
        if ((c == '=' || c == '!') && i + 1 < src.size() && src[i + 1] == '=') {
            out.push_back({tok::sym, src.substr(i, 2), start});
            advance(2);
            continue;
        }
        if (std::string("().:+-*^=,").find(c) != std::string::npos) {
            out.push_back({tok::sym, std::string(1, c), start});
            advance(1);
            continue;
        }
        throw parse_error(parse_error::kind::syntax, start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({tok::end, "", p});
    return out;
}

class parser {
    std::vector<token> toks;
    std::size_t at = 0;

  public:
    explicit parser(std::vector<token> t)
        : toks(std::move(t))
    {}

    token const & peek() const { return toks[at]; }
    bool is_sym(char const * s) const { return peek().kind == tok::sym && peek().text == s; }
    bool is_kw(char const * s) const { return peek().kind == tok::keyword && peek().text == s; }

    [[noreturn]] void fail(std::string const & msg) const
    {
        std::string found = peek().kind == tok::end ? "end of input" : "'" + peek().text + "'";
        throw parse_error(parse_error::kind::syntax, peek().pos, msg + ", found " + found);
    }
    void expect_sym(char const * s)
    {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        at++;
    }

    formula_ast parse_all()
    {
        formula_ast f;
        while (is_kw("forall") || is_kw("exists")) f.prefix.push_back(parse_quant());
        f.body = parse_disj();
        if (peek().kind != tok::end) fail("expected end of input");
        return f;
    }

    term parse_term_all()
    {
        term t = parse_sum();
        if (peek().kind != tok::end) fail("expected end of input");
        return t;
    }

  private:
    quantifier parse_quant()
    {
        quantifier q;
        q.pos = peek().pos;
        q.universal = peek().text == "forall";
        at++;
        if (peek().kind != tok::ident) fail("expected a variable name");
        q.var = peek().text;
        at++;
        expect_sym(":");
        if (is_kw("Unit")) q.sort = sort_kind::unit;
        else if (is_kw("Elem")) q.sort = sort_kind::elem;
        else fail("expected a sort (Unit or Elem)");
        at++;
        if (is_sym("(")) {
            at++;
            if (peek().kind != tok::integer) fail("expected a bound");
            bigint b(peek().text);
            if (!b.fits_ulong_p())
                throw parse_error(parse_error::kind::sort, peek().pos, "quantifier bound out of range");
            q.bound = b.get_ui();
            at++;
            expect_sym(")");
        }
        expect_sym(".");
        return q;
    }

    formula parse_disj()
    {
        formula first = parse_conj();
        if (!is_kw("or")) return first;
        formula d;
        d.kind = formula::op::disj;
        d.args.push_back(std::move(first));
        while (is_kw("or")) {
            at++;
            d.args.push_back(parse_conj());
        }
        return d;
    }

    formula parse_conj()
    {
        formula first = parse_atom();
        if (!is_kw("and")) return first;
        formula c;
        c.kind = formula::op::conj;
        c.args.push_back(std::move(first));
        while (is_kw("and")) {
            at++;
            c.args.push_back(parse_atom());
        }
        return c;
    }

    formula parse_atom()
    {
        if (is_kw("not")) {
            at++;
            formula n;
            n.kind = formula::op::negation;
            n.args.push_back(parse_atom());
            return n;
        }
        if (is_kw("unit")) {
            at++;
            expect_sym("(");
            formula u;
            u.kind = formula::op::is_unit;
            u.terms.push_back(parse_sum());
            expect_sym(")");
            return u;
        }
        std::size_t save = at;
        try {
            return parse_comparison();
        } catch (parse_error const & e1) {
            if (toks[save].kind != tok::sym || toks[save].text != "(") throw;
            std::size_t reached1 = at;
            at = save + 1;
            try {
                formula inner = parse_disj();
                expect_sym(")");
                return inner;
            } catch (parse_error const & e2) {
                /* report whichever reading got further */
                if (reached1 > at) throw e1;
                throw;
            }
        }
    }

    formula parse_comparison()
    {
        formula f;
        term lhs = parse_sum();
        f.terms.push_back(std::move(lhs));
        if (is_sym("==") || is_sym("=")) {
            at++;
            f.terms.push_back(parse_sum());
            if (is_kw("mod")) {
                at++;
                f.terms.push_back(parse_sum());
                f.kind = formula::op::cong;
            } else {
                f.kind = formula::op::eq;
            }
            return f;
        }
        if (is_sym("!=")) {
            at++;
            f.terms.push_back(parse_sum());
            f.kind = formula::op::ne;
            return f;
        }
        fail("expected '==' or '!='");
    }

    term parse_sum()
    {
        term acc = parse_product();
        while (is_sym("+") || is_sym("-")) {
            term t;
            t.pos = peek().pos;
            t.kind = peek().text == "+" ? term::op::add : term::op::sub;
            at++;
            t.args.push_back(std::move(acc));
            t.args.push_back(parse_product());
            acc = std::move(t);
        }
        return acc;
    }

    term parse_product()
    {
        term acc = parse_unary();
        while (is_sym("*")) {
            term t;
            t.pos = peek().pos;
            t.kind = term::op::mul;
            at++;
            t.args.push_back(std::move(acc));
            t.args.push_back(parse_unary());
            acc = std::move(t);
        }
        return acc;
    }

    term parse_unary()
    {
        if (is_sym("-")) {
            source_pos p = peek().pos;
            at++;
            term inner = parse_unary();
            if (inner.kind == term::op::literal) {
                inner.value = -inner.value;
                inner.pos = p;
                return inner;
            }
            term t;
            t.kind = term::op::neg;
            t.pos = p;
            t.args.push_back(std::move(inner));
            return t;
        }
        term base = parse_prim();
        if (!is_sym("^")) return base;
        term t;
        t.pos = peek().pos;
        at++;
        if (peek().kind != tok::integer) fail("expected an integer exponent");
        bigint e(peek().text);
        if (!e.fits_ulong_p() || e > 4096) fail("exponent too large");
        t.kind = term::op::pow;
        t.exponent = e.get_ui();
        t.args.push_back(std::move(base));
        at++;
        return t;
    }

    term parse_prim()
    {
        term t;
        t.pos = peek().pos;
        if (peek().kind == tok::integer) {
            t.kind = term::op::literal;
            t.value = bigint(peek().text);
            at++;
            return t;
        }
        if (peek().kind == tok::ident) {
            t.kind = term::op::variable;
            t.name = peek().text;
            at++;
            return t;
        }
        if (is_sym("(")) {
            at++;
            term inner = parse_sum();
            expect_sym(")");
            return inner;
        }
        fail("expected a term");
    }
};

void collect_vars(term const & t, std::vector<std::pair<std::string, source_pos>> & out)
{
    if (t.kind == term::op::variable) out.emplace_back(t.name, t.pos);
    for (auto const & a : t.args) collect_vars(a, out);
}

void collect_vars(formula const & f, std::vector<std::pair<std::string, source_pos>> & out)
{
    for (auto const & t : f.terms) collect_vars(t, out);
    for (auto const & a : f.args) collect_vars(a, out);
}

}   // namespace

formula_ast parse(std::string const & src, std::optional<std::set<std::string>> declared_free)
{
    parser p(lex(src));
    formula_ast f = p.parse_all();
    std::set<std::string> bound;
    for (auto const & q : f.prefix) {
        if (!bound.insert(q.var).second)
            throw parse_error(parse_error::kind::sort, q.pos, "variable '" + q.var + "' bound twice");
        if (declared_free && declared_free->count(q.var))
            throw parse_error(parse_error::kind::sort, q.pos, "variable '" + q.var + "' is declared free");
    }
    std::vector<std::pair<std::string, source_pos>> used;
    collect_vars(f.body, used);
    for (auto const & [name, pos] : used) {
        if (bound.count(name)) continue;
        if (declared_free && !declared_free->count(name))
            throw parse_error(parse_error::kind::unbound_variable, pos, "unbound variable '" + name + "'");
        f.free_vars.insert(name);
    }
    return f;
}

term parse_term(std::string const & src)
{
    parser p(lex(src));
    return p.parse_term_all();
}

namespace {

int term_prec(term const & t)
{
    switch (t.kind) {
    case term::op::add:
    case term::op::sub: return 1;
    case term::op::mul: return 2;
    case term::op::neg:
    case term::op::pow: return 3;
    case term::op::literal: return t.value < 0 ? 3 : 4;
    case term::op::variable: return 4;
    }
    return 4;
}

std::string print_term(term const & t, int need)
{
    std::string s;
    switch (t.kind) {
    case term::op::literal: s = t.value.get_str(); break;
    case term::op::variable: s = t.name; break;
    case term::op::add: s = print_term(t.args[0], 1) + " + " + print_term(t.args[1], 2); break;
    case term::op::sub: s = print_term(t.args[0], 1) + " - " + print_term(t.args[1], 2); break;
    case term::op::mul: s = print_term(t.args[0], 2) + "*" + print_term(t.args[1], 3); break;
    case term::op::neg: s = "-" + print_term(t.args[0], 3); break;
    case term::op::pow: s = print_term(t.args[0], 4) + "^" + std::to_string(t.exponent); break;
    }
    return term_prec(t) < need ? "(" + s + ")" : s;
}

int formula_prec(formula const & f)
{
    if (f.kind == formula::op::disj) return 1;
    if (f.kind == formula::op::conj) return 2;
    return 3;
}

std::string print_formula(formula const & f, int need)
{
    std::string s;
    auto join = [&](char const * sep, int sub) {
        for (std::size_t i = 0; i < f.args.size(); i++) s += (i ? sep : "") + print_formula(f.args[i], sub);
    };
    switch (f.kind) {
    case formula::op::eq: s = print_term(f.terms[0], 1) + " == " + print_term(f.terms[1], 1); break;
    case formula::op::ne: s = print_term(f.terms[0], 1) + " != " + print_term(f.terms[1], 1); break;
    case formula::op::cong:
        s = print_term(f.terms[0], 1) + " == " + print_term(f.terms[1], 1) + " mod " + print_term(f.terms[2], 1);
        break;
    case formula::op::is_unit: s = "unit(" + print_term(f.terms[0], 1) + ")"; break;
    case formula::op::negation: s = "not " + print_formula(f.args[0], 3); break;
    case formula::op::conj: join(" and ", 3); break;
    case formula::op::disj: join(" or ", 2); break;
    }
    return formula_prec(f) < need ? "(" + s + ")" : s;
}

}   // namespace

std::string print(term const & t) { return print_term(t, 1); }
std::string print(formula const & f) { return print_formula(f, 1); }

std::string print(formula_ast const & f)
{
    std::string s;
    for (auto const & q : f.prefix) {
        s += q.universal ? "forall " : "exists ";
        s += q.var + ":" + (q.sort == sort_kind::unit ? "Unit" : "Elem");
        if (q.bound) s += "(" + std::to_string(*q.bound) + ")";
        s += ". ";
    }
    return s + print(f.body);
}

ring_element eval_term(term const & t, order_ptr const & ctx, std::map<std::string, ring_element> const & a)
{
    switch (t.kind) {
    case term::op::literal: return ring_element::integer(ctx, t.value);
    case term::op::variable: {
        auto it = a.find(t.name);
        if (it == a.end()) throw std::invalid_argument("unassigned variable '" + t.name + "'");
        if (it->second.context() != ctx)
            throw std::invalid_argument("variable '" + t.name + "' assigned in a different order");
        return it->second;
    }
    case term::op::add: return eval_term(t.args[0], ctx, a) + eval_term(t.args[1], ctx, a);
    case term::op::sub: return eval_term(t.args[0], ctx, a) - eval_term(t.args[1], ctx, a);
    case term::op::mul: return eval_term(t.args[0], ctx, a) * eval_term(t.args[1], ctx, a);
    case term::op::neg: return -eval_term(t.args[0], ctx, a);
    case term::op::pow: return eval_term(t.args[0], ctx, a).pow(t.exponent);
    }
    throw std::logic_error("eval_term: bad node");
}

bool eval_body(formula const & f, order_ptr const & ctx, std::map<std::string, ring_element> const & a)
{
    switch (f.kind) {
    case formula::op::eq: return eval_term(f.terms[0], ctx, a) == eval_term(f.terms[1], ctx, a);
    case formula::op::ne: return !(eval_term(f.terms[0], ctx, a) == eval_term(f.terms[1], ctx, a));
    case formula::op::cong: {
        ring_element m = eval_term(f.terms[2], ctx, a);
        return congruent_mod_ideal(eval_term(f.terms[0], ctx, a), eval_term(f.terms[1], ctx, a), principal_ideal(m));
    }
    case formula::op::is_unit: {
        bigint n = norm_elem(eval_term(f.terms[0], ctx, a));
        return n == 1 || n == -1;
    }
    case formula::op::negation: return !eval_body(f.args[0], ctx, a);
    case formula::op::conj:
        for (auto const & g : f.args)
            if (!eval_body(g, ctx, a)) return false;
        return true;
    case formula::op::disj:
        for (auto const & g : f.args)
            if (eval_body(g, ctx, a)) return true;
        return false;
    }
    throw std::logic_error("eval_body: bad node");
}

namespace {

struct value_range {
    std::vector<ring_element> values;
    bool exhaustive = false;
};

value_range make_range(quantifier const & q, eval_env const & env)
{
    value_range r;
    if (q.sort == sort_kind::unit) {
        auto e = enumerate_units(env.units, q.bound.value_or(env.unit_bound));
        for (auto const & w : e.words) r.values.push_back(evaluate(env.units, w));
        r.exhaustive = e.exhaustive;
        return r;
    }
    /* coordinate box, by increasing height */
    long h = static_cast<long>(q.bound.value_or(env.elem_bound));
    std::size_t n = env.ctx->degree();
    r.values.push_back(ring_element::integer(env.ctx, 0));
    for (long k = 1; k <= h; k++) {
        std::vector<long> c(n, -k);
        for (;;) {
            long mx = 0;
            for (long v : c) mx = std::max(mx, std::labs(v));
            if (mx == k) r.values.emplace_back(env.ctx, std::vector<bigint>(c.begin(), c.end()));
            std::size_t i = n;
            while (i > 0 && c[i - 1] == k) c[--i] = -k;
            if (i == 0) break;
            c[i - 1]++;
        }
    }
    return r;
}

class evaluator {
    formula_ast const & f;
    eval_env const & env;
    std::map<std::string, term> const * witness_terms;
    std::vector<value_range> ranges;
    std::uint64_t count = 0;

  public:
    evaluator(formula_ast const & fa, eval_env const & e, std::map<std::string, term> const * w)
        : f(fa)
        , env(e)
        , witness_terms(w)
    {
        for (auto const & q : f.prefix) ranges.push_back(make_range(q, env));
    }

    eval_result run()
    {
        std::map<std::string, ring_element> a = env.assignment;
        eval_result r = step(0, a);
        r.body_evaluations = count;
        return r;
    }

  private:
    eval_result step(std::size_t i, std::map<std::string, ring_element> & a)
    {
        eval_result r;
        if (i == f.prefix.size()) {
            count++;
            r.value = eval_body(f.body, env.ctx, a) ? truth::holds : truth::fails;
            return r;
        }
        quantifier const & q = f.prefix[i];
        if (!q.universal && witness_terms && witness_terms->count(q.var)) {
            ring_element v = eval_term(witness_terms->at(q.var), env.ctx, a);
            a[q.var] = v;
            r = step(i + 1, a);
            a.erase(q.var);
            if (r.value == truth::holds || r.bounded_positive) r.witness[q.var] = v;
            return r;
        }
        value_range const & range = ranges[i];
        if (!q.universal) {
            bool unknown = false, positive = false;
            std::map<std::string, ring_element> positive_witness;
            for (auto const & v : range.values) {
                a[q.var] = v;
                eval_result s = step(i + 1, a);
                a.erase(q.var);
                if (s.value == truth::holds) {
                    s.witness[q.var] = v;
                    s.counterexample.clear();
                    return s;
                }
                if (s.value == truth::unknown) {
                    unknown = true;
                    if (s.bounded_positive && !positive) {
                        positive = true;
                        positive_witness = s.witness;
                        positive_witness[q.var] = v;
                    }
                }
            }
            r.value = (range.exhaustive && !unknown) ? truth::fails : truth::unknown;
            r.bounded_positive = r.value == truth::unknown && positive;
            if (r.bounded_positive) r.witness = positive_witness;
            return r;
        }
        bool all_true = true, strict_unknown = false;
        for (auto const & v : range.values) {
            a[q.var] = v;
            eval_result s = step(i + 1, a);
            a.erase(q.var);
            if (s.value == truth::fails) {
                s.counterexample[q.var] = v;
                s.witness.clear();
                s.bounded_positive = false;
                return s;
            }
            if (s.value == truth::unknown) {
                all_true = false;
                if (!s.bounded_positive) strict_unknown = true;
            }
        }
        if (range.exhaustive && all_true) {
            r.value = truth::holds;
        } else {
            r.value = truth::unknown;
            r.bounded_positive = !strict_unknown;
        }
        return r;
    }
};

}   // namespace

eval_result eval_bounded(formula_ast const & f, eval_env const & env) { return evaluator(f, env, nullptr).run(); }

eval_result check_witness(formula_ast const & f, eval_env const & env, std::map<std::string, term> const & witness)
{
    return evaluator(f, env, &witness).run();
}

bool bounded_member(eval_result const & r)
{
    return r.value == truth::holds || (r.value == truth::unknown && r.bounded_positive);
}

}   // namespace unitdef
