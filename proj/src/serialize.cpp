#include "unitdef/serialize.hpp"

namespace unitdef {

json to_json(bigint const & a) { return a.get_str(); }

bigint bigint_from_json(json const & j)
{
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_integer()) return bigint(j.get<long>());
    throw std::invalid_argument("expected an integer, found " + j.dump());
}

json to_json(std::vector<bigint> const & v)
{
    json a = json::array();
    for (auto const & x : v) a.push_back(to_json(x));
    return a;
}

std::vector<bigint> vector_from_json(json const & j)
{
    if (!j.is_array()) throw std::invalid_argument("expected an integer array, found " + j.dump());
    std::vector<bigint> v;
    for (auto const & x : j) v.push_back(bigint_from_json(x));
    return v;
}

json to_json(int_matrix const & m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); i++) {
        std::vector<bigint> r(m.cols());
        for (std::size_t k = 0; k < m.cols(); k++) r[k] = m(i, k);
        a.push_back(to_json(r));
    }
    return a;
}

int_matrix matrix_from_json(json const & j, std::size_t cols)
{
    if (!j.is_array()) throw std::invalid_argument("expected a matrix, found " + j.dump());
    int_matrix m(0, cols);
    for (auto const & r : j) {
        auto v = vector_from_json(r);
        if (v.size() != cols) throw std::invalid_argument("matrix row of wrong length");
        m.append_row(v);
    }
    return m;
}

json to_json(ring_element const & x) { return to_json(x.coords()); }

ring_element element_from_json(order_ptr const & ctx, json const & j)
{
    auto v = vector_from_json(j);
    if (v.size() != ctx->degree()) throw std::invalid_argument("element has wrong number of coordinates");
    return ring_element(ctx, std::move(v));
}

json to_json(ideal_lattice const & a)
{
    if (a.is_zero()) return json{{"zero", true}};
    return json{{"zero", false}, {"hnf", to_json(a.basis())}};
}

ideal_lattice ideal_from_json(order_ptr const & ctx, json const & j)
{
    if (j.at("zero").get<bool>()) return ideal_lattice::zero(ctx);
    return ideal_lattice(ctx, matrix_from_json(j.at("hnf"), ctx->degree()));
}

json to_json(unit_word const & w) { return json{{"torsion", to_json(w.torsion_exp)}, {"free", to_json(w.exps)}}; }

unit_word word_from_json(json const & j)
{
    unit_word w;
    w.torsion_exp = bigint_from_json(j.at("torsion"));
    w.exps = vector_from_json(j.at("free"));
    return w;
}

json to_json(congruence_class const & c)
{
    if (c.is_empty()) return json{{"empty", true}};
    return json{{"empty", false}, {"residue", to_json(c.residue())}, {"modulus", to_json(c.modulus())},
                {"text", c.to_string()}};
}

json to_json(element_polynomial const & f)
{
    json a = json::array();
    for (auto const & c : f.coefficients()) a.push_back(to_json(c));
    return a;
}

element_polynomial polynomial_from_json(order_ptr const & ctx, json const & j)
{
    std::vector<ring_element> c;
    for (auto const & x : j) c.push_back(element_from_json(ctx, x));
    return element_polynomial(std::move(c));
}

json to_json(unit_group const & g)
{
    json free = json::array();
    for (auto const & u : g.free) free.push_back(to_json(u));
    return json{{"torsion", to_json(g.torsion)},
                {"torsion_order", g.torsion_order},
                {"free", free},
                {"status", to_string(g.status)},
                {"note", g.note}};
}

json order_summary(order_ptr const & ctx) { return json{{"tag", ctx->tag()}, {"basis", ctx->names()}}; }

namespace {

std::vector<std::string> split(std::string const & s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join(std::vector<std::string> const & v, std::size_t from, std::size_t to, char sep)
{
    std::string s;
    for (std::size_t i = from; i < to; i++) s += (i > from ? std::string(1, sep) : "") + v[i];
    return s;
}

bigint spec_int(std::string const & s, std::string const & spec)
{
    try {
        return parse_bigint(s);
    } catch (std::exception const &) {
        throw std::invalid_argument("order spec '" + spec + "': '" + s + "' is not an integer");
    }
}

bool is_identifier(std::string const & s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

}   // namespace

order_ptr parse_order_spec(std::string const & spec)
{
    auto parts = split(spec, ':');
    if (parts[0] == "rational" && parts.size() == 1) return make_rational_order();
    if (parts[0] == "quadratic" && (parts.size() == 2 || parts.size() == 3)) {
        bool maximal = true;
        if (parts.size() == 3) {
            if (parts[2] == "maximal") maximal = true;
            else if (parts[2] == "nonmaximal") maximal = false;
            else throw std::invalid_argument("order spec '" + spec + "': expected maximal or nonmaximal");
        }
        return make_quadratic_order(spec_int(parts[1], spec), maximal);
    }
    if (parts[0] == "compositum" && parts.size() >= 3) {
        order_ptr base = parse_order_spec(join(parts, 1, parts.size() - 1, ':'));
        return make_compositum_order(base, spec_int(parts.back(), spec));
    }
    throw std::invalid_argument("unrecognised order spec '" + spec + "'");
}

ring_element parse_element(order_ptr const & ctx, std::string const & text)
{
    std::size_t b = text.find_first_not_of(" \t");
    if (b != std::string::npos && text[b] == '[') {
        std::size_t e = text.find(']', b);
        if (e == std::string::npos) throw std::invalid_argument("element '" + text + "': missing ']'");
        std::vector<bigint> c;
        for (auto const & p : split(text.substr(b + 1, e - b - 1), ',')) c.push_back(parse_bigint(p));
        if (c.size() != ctx->degree())
            throw std::invalid_argument("element '" + text + "': expected " + std::to_string(ctx->degree()) +
                                        " coordinates");
        return ring_element(ctx, std::move(c));
    }
    std::map<std::string, ring_element> names;
    for (std::size_t i = 0; i < ctx->degree(); i++) {
        names.emplace("e" + std::to_string(i), ring_element::basis(ctx, i));
        if (is_identifier(ctx->names()[i])) names.emplace(ctx->names()[i], ring_element::basis(ctx, i));
    }
    return eval_term(parse_term(text), ctx, names);
}

std::string canonical_dump(json const & j) { return j.dump(2) + "\n"; }

json to_json(eval_result const & r)
{
    auto assignment = [](std::map<std::string, ring_element> const & a) {
        json o = json::object();
        for (auto const & [k, v] : a) o[k] = to_json(v);
        return o;
    };
    return json{{"value", to_string(r.value)},
                {"bounded_positive", r.bounded_positive},
                {"witness", assignment(r.witness)},
                {"counterexample", assignment(r.counterexample)},
                {"body_evaluations", r.body_evaluations}};
}

}   // namespace unitdef
