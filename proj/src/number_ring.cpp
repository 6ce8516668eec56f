#include "unitdef/number_ring.hpp"

#include <sstream>

namespace unitdef {

namespace {

bool is_square(bigint const & d) { return d >= 0 && mpz_perfect_square_p(d.get_mpz_t()); }

void require_same(order_ptr const & a, order_ptr const & b, char const * what)
{
    if (a != b) throw std::invalid_argument(std::string(what) + ": elements from different orders");
}

int_matrix block_diag(int_matrix const & a, int_matrix const & b)
{
    int_matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); i++)
        for (std::size_t j = 0; j < a.cols(); j++) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); i++)
        for (std::size_t j = 0; j < b.cols(); j++) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

}   // namespace

order_context::order_context(std::vector<std::string> names, std::vector<bigint> table,
                             std::vector<automorphism> autos, std::string tag)
    : base_rank(names.size())
    , names_(std::move(names))
    , table_(std::move(table))
    , autos_(std::move(autos))
    , tag_(std::move(tag))
{
    std::size_t n = names_.size();
    if (n == 0) throw std::invalid_argument("order_context: empty basis");
    if (table_.size() != n * n * n) throw std::invalid_argument("order_context: table size mismatch");
    for (auto const & a : autos_)
        if (a.matrix.rows() != n || a.matrix.cols() != n)
            throw std::invalid_argument("order_context: automorphism '" + a.name + "' has wrong shape");
}

void order_context::validate() const
{
    std::size_t n = degree();
    auto mul = [&](std::vector<bigint> const & x, std::vector<bigint> const & y) {
        std::vector<bigint> z(n);
        for (std::size_t i = 0; i < n; i++) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; j++) {
                if (y[j] == 0) continue;
                bigint xy = x[i] * y[j];
                for (std::size_t k = 0; k < n; k++) z[k] += xy * structure(i, j, k);
            }
        }
        return z;
    };
    auto unit_vec = [&](std::size_t i) {
        std::vector<bigint> v(n);
        v[i] = 1;
        return v;
    };
    for (std::size_t j = 0; j < n; j++)
        for (std::size_t k = 0; k < n; k++)
            if (structure(0, j, k) != (j == k ? 1 : 0) || structure(j, 0, k) != (j == k ? 1 : 0))
                throw std::logic_error("order " + tag_ + ": e_0 is not the identity");
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = 0; j < n; j++)
            for (std::size_t k = 0; k < n; k++)
                if (structure(i, j, k) != structure(j, i, k))
                    throw std::logic_error("order " + tag_ + ": multiplication not commutative");
    for (std::size_t a = 0; a < n; a++)
        for (std::size_t b = 0; b < n; b++) {
            auto ab = mul(unit_vec(a), unit_vec(b));
            for (std::size_t c = 0; c < n; c++)
                if (mul(ab, unit_vec(c)) != mul(unit_vec(a), mul(unit_vec(b), unit_vec(c))))
                    throw std::logic_error("order " + tag_ + ": multiplication not associative");
        }
    for (auto const & s : autos_) {
        auto image = [&](std::vector<bigint> const & x) {
            std::vector<bigint> y(n);
            for (std::size_t j = 0; j < n; j++)
                for (std::size_t i = 0; i < n; i++) y[i] += s.matrix(i, j) * x[j];
            return y;
        };
        if (image(unit_vec(0)) != unit_vec(0))
            throw std::logic_error("automorphism " + s.name + " does not fix 1");
        for (std::size_t a = 0; a < n; a++)
            for (std::size_t b = 0; b < n; b++)
                if (image(mul(unit_vec(a), unit_vec(b))) != mul(image(unit_vec(a)), image(unit_vec(b))))
                    throw std::logic_error("automorphism " + s.name + " is not multiplicative");
        if (determinant(s.matrix) == 0)
            throw std::logic_error("automorphism " + s.name + " is singular");
    }
}

order_ptr make_rational_order()
{
    auto ctx = std::make_shared<order_context>(std::vector<std::string>{"1"}, std::vector<bigint>{1},
                                               std::vector<automorphism>{{"id", int_matrix::identity(1)}}, "Z");
    ctx->type = order_context::kind::rational;
    ctx->validate();
    return ctx;
}

order_ptr make_quadratic_order(bigint const & d, bool maximal)
{
    if (d == 0 || d == 1 || is_square(d))
        throw std::invalid_argument("make_quadratic_order: d = " + d.get_str() + " is a square or degenerate");
    bool omega = maximal && floor_mod(d, 4) == 1;
    std::vector<bigint> t(8);
    auto T = [&](int i, int j, int k) -> bigint & { return t[(i * 2 + j) * 2 + k]; };
    T(0, 0, 0) = 1;
    T(0, 1, 1) = 1;
    T(1, 0, 1) = 1;
    int_matrix conj(2, 2);
    std::string name;
    if (omega) {
        /* w^2 = w + (d-1)/4, w -> 1 - w */
        T(1, 1, 0) = (d - 1) / 4;
        T(1, 1, 1) = 1;
        conj(0, 0) = 1;
        conj(0, 1) = 1;
        conj(1, 1) = -1;
        name = "w";
    } else {
        T(1, 1, 0) = d;
        conj(0, 0) = 1;
        conj(1, 1) = -1;
        name = d == -1 ? "i" : "sqrt" + d.get_str();
    }
    std::string tag = maximal ? "maximal order of Q(sqrt " + d.get_str() + ")" : "Z[sqrt " + d.get_str() + "]";
    auto ctx = std::make_shared<order_context>(std::vector<std::string>{"1", name}, std::move(t),
                                               std::vector<automorphism>{{"id", int_matrix::identity(2)},
                                                                         {"conj", conj}},
                                               tag);
    ctx->type = order_context::kind::quadratic;
    ctx->radicand = d;
    ctx->maximal = maximal;
    ctx->relative_conjugation = 1;
    ctx->validate();
    return ctx;
}

order_ptr make_compositum_order(order_ptr const & base, bigint const & d)
{
    if (d == 0 || d == 1 || is_square(d))
        throw std::invalid_argument("make_compositum_order: d = " + d.get_str() + " is a square");
    if (base->type == order_context::kind::quadratic && is_square(d * base->radicand))
        throw std::invalid_argument("make_compositum_order: sqrt d already lies in the base field");
    if (base->type != order_context::kind::quadratic && base->type != order_context::kind::rational)
        throw std::invalid_argument("make_compositum_order: base must be Z or quadratic");
    std::size_t m = base->degree();
    std::size_t n = 2 * m;
    std::vector<bigint> t(n * n * n);
    for (std::size_t a = 0; a < 2; a++)
        for (std::size_t b = 0; b < 2; b++)
            for (std::size_t i = 0; i < m; i++)
                for (std::size_t j = 0; j < m; j++)
                    for (std::size_t k = 0; k < m; k++) {
                        bigint c = base->structure(i, j, k);
                        if (a + b == 2) c *= d;
                        std::size_t out = k + ((a + b) % 2) * m;
                        t[((i + a * m) * n + (j + b * m)) * n + out] = c;
                    }
    std::string r = "sqrt" + d.get_str();
    std::vector<std::string> names = base->names();
    for (std::size_t i = 0; i < m; i++) names.push_back(i == 0 ? r : base->names()[i] + "*" + r);
    std::vector<automorphism> autos;
    int_matrix neg = int_matrix::identity(m);
    for (std::size_t i = 0; i < m; i++) neg(i, i) = -1;
    std::size_t conj_index = 0;
    for (auto const & s : base->automorphisms()) {
        autos.push_back({s.name, block_diag(s.matrix, s.matrix)});
        int_matrix negs = neg * s.matrix;
        if (s.name == "id") conj_index = autos.size();
        autos.push_back({s.name == "id" ? "conj_" + r : s.name + "*conj_" + r, block_diag(s.matrix, negs)});
    }
    auto ctx = std::make_shared<order_context>(std::move(names), std::move(t), std::move(autos),
                                               "(" + base->tag() + ")[" + r + "]");
    ctx->type = order_context::kind::compositum;
    ctx->radicand = d;
    ctx->base_rank = m;
    ctx->base = base;
    ctx->relative_conjugation = conj_index;
    ctx->validate();
    return ctx;
}

order_ptr make_simple_extension(ring_element const & a, ring_element const & b)
{
    order_ptr base = a.context();
    require_same(base, b.context(), "make_simple_extension");
    std::size_t m = base->degree();
    std::size_t n = 2 * m;
    std::vector<bigint> t(n * n * n);
    auto put = [&](std::size_t i, std::size_t j, std::size_t block, ring_element const & v) {
        for (std::size_t k = 0; k < m; k++) t[(i * n + j) * n + k + block * m] += v[k];
    };
    for (std::size_t i = 0; i < m; i++)
        for (std::size_t j = 0; j < m; j++) {
            ring_element p = ring_element::basis(base, i) * ring_element::basis(base, j);
            put(i, j, 0, p);
            put(i + m, j, 1, p);
            put(i, j + m, 1, p);
            /* rho^2 = -a rho - b */
            put(i + m, j + m, 0, -(p * b));
            put(i + m, j + m, 1, -(p * a));
        }
    int_matrix conj(n, n);
    for (std::size_t j = 0; j < m; j++) {
        conj(j, j) = 1;
        /* e_j rho -> -e_j a - e_j rho */
        ring_element ea = ring_element::basis(base, j) * a;
        for (std::size_t k = 0; k < m; k++) conj(k, j + m) = -ea[k];
        conj(j + m, j + m) = -1;
    }
    std::vector<std::string> names = base->names();
    for (std::size_t i = 0; i < m; i++) names.push_back(i == 0 ? "rho" : base->names()[i] + "*rho");
    auto ctx = std::make_shared<order_context>(
        std::move(names), std::move(t),
        std::vector<automorphism>{{"id", int_matrix::identity(n)}, {"conj_rho", conj}},
        "(" + base->tag() + ")[rho], rho^2 + (" + a.to_string() + ") rho + (" + b.to_string() + ") = 0");
    ctx->type = order_context::kind::extension;
    ctx->base_rank = m;
    ctx->base = base;
    ctx->relative_conjugation = 1;
    ctx->validate();
    return ctx;
}

ring_element::ring_element(order_ptr ctx, std::vector<bigint> coords)
    : ctx_(std::move(ctx))
    , c_(std::move(coords))
{
    if (!ctx_) throw std::invalid_argument("ring_element: null order");
    if (c_.size() != ctx_->degree()) throw std::invalid_argument("ring_element: wrong coordinate count");
}

ring_element ring_element::integer(order_ptr const & ctx, bigint const & m)
{
    std::vector<bigint> c(ctx->degree());
    c[0] = m;
    return {ctx, std::move(c)};
}

ring_element ring_element::basis(order_ptr const & ctx, std::size_t i)
{
    std::vector<bigint> c(ctx->degree());
    c.at(i) = 1;
    return {ctx, std::move(c)};
}

bool ring_element::is_zero() const
{
    for (auto const & x : c_)
        if (x != 0) return false;
    return true;
}

bool ring_element::is_integer(bigint const & m) const
{
    if (c_[0] != m) return false;
    for (std::size_t i = 1; i < c_.size(); i++)
        if (c_[i] != 0) return false;
    return true;
}

ring_element operator+(ring_element const & a, ring_element const & b)
{
    require_same(a.ctx_, b.ctx_, "+");
    std::vector<bigint> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); i++) c[i] = a.c_[i] + b.c_[i];
    return {a.ctx_, std::move(c)};
}

ring_element operator-(ring_element const & a, ring_element const & b)
{
    require_same(a.ctx_, b.ctx_, "-");
    std::vector<bigint> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); i++) c[i] = a.c_[i] - b.c_[i];
    return {a.ctx_, std::move(c)};
}

ring_element operator-(ring_element const & a)
{
    std::vector<bigint> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); i++) c[i] = -a.c_[i];
    return {a.ctx_, std::move(c)};
}

ring_element operator*(ring_element const & a, ring_element const & b)
{
    require_same(a.ctx_, b.ctx_, "*");
    auto const & ctx = *a.ctx_;
    std::size_t n = ctx.degree();
    std::vector<bigint> c(n);
    bigint xy;
    for (std::size_t i = 0; i < n; i++) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < n; j++) {
            if (b.c_[j] == 0) continue;
            xy = a.c_[i] * b.c_[j];
            for (std::size_t k = 0; k < n; k++) {
                bigint const & t = ctx.structure(i, j, k);
                if (t != 0) c[k] += xy * t;
            }
        }
    }
    return {a.ctx_, std::move(c)};
}

ring_element operator*(bigint const & s, ring_element const & a)
{
    std::vector<bigint> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); i++) c[i] = s * a.c_[i];
    return {a.ctx_, std::move(c)};
}

bool operator==(ring_element const & a, ring_element const & b)
{
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
}

int_matrix ring_element::multiplication_matrix() const
{
    std::size_t n = ctx_->degree();
    int_matrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        ring_element r = basis(ctx_, i) * *this;
        for (std::size_t k = 0; k < n; k++) m(i, k) = r.c_[k];
    }
    return m;
}

ring_element ring_element::apply(automorphism const & s) const
{
    std::size_t n = ctx_->degree();
    std::vector<bigint> y(n);
    for (std::size_t j = 0; j < n; j++) {
        if (c_[j] == 0) continue;
        for (std::size_t i = 0; i < n; i++) y[i] += s.matrix(i, j) * c_[j];
    }
    return {ctx_, std::move(y)};
}

ring_element ring_element::pow(unsigned long e) const
{
    ring_element acc = integer(ctx_, 1);
    ring_element b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

std::optional<ring_element> ring_element::inverse() const
{
    if (is_zero()) return std::nullopt;
    auto one = integer(ctx_, 1);
    auto y = solve_left(multiplication_matrix(), one.c_);
    if (!y) return std::nullopt;
    return ring_element(ctx_, std::move(*y));
}

std::string ring_element::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); i++) {
        if (c_[i] == 0) continue;
        bigint v = c_[i];
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            v = abs(v);
        }
        if (i == 0) {
            os << v.get_str();
        } else {
            if (v == -1) os << "-";
            else if (v != 1) os << v.get_str() << "*";
            os << ctx_->names()[i];
        }
        first = false;
    }
    return first ? "0" : os.str();
}

ring_element quadratic_element(order_ptr const & ctx, bigint const & a, bigint const & b)
{
    if (ctx->type != order_context::kind::quadratic) throw std::invalid_argument("quadratic_element: not quadratic");
    if (ctx->names()[1] == "w") return {ctx, {a - b, 2 * b}};
    return {ctx, {a, b}};
}

std::pair<bigint, bigint> quadratic_coords_times_two(ring_element const & x)
{
    auto const & ctx = x.context();
    if (ctx->type != order_context::kind::quadratic) throw std::invalid_argument("quadratic coordinates: not quadratic");
    if (ctx->names()[1] == "w") return {2 * x[0] + x[1], x[1]};
    return {2 * x[0], 2 * x[1]};
}

ring_element lift_to(order_ptr const & ext, ring_element const & x)
{
    if (ext->base != x.context()) throw std::invalid_argument("lift_to: element not in the base order");
    std::vector<bigint> c(ext->degree());
    for (std::size_t i = 0; i < ext->base_rank; i++) c[i] = x[i];
    return {ext, std::move(c)};
}

ring_element restrict_to_base(ring_element const & x)
{
    auto const & ext = x.context();
    if (!ext->base) throw std::invalid_argument("restrict_to_base: order has no base");
    for (std::size_t i = ext->base_rank; i < ext->degree(); i++)
        if (x[i] != 0) throw std::invalid_argument("restrict_to_base: element not in the base order");
    std::vector<bigint> c(x.coords().begin(), x.coords().begin() + static_cast<long>(ext->base_rank));
    return {ext->base, std::move(c)};
}

bigint norm_elem(ring_element const & x) { return determinant(x.multiplication_matrix()); }
bigint trace_elem(ring_element const & x) { return trace(x.multiplication_matrix()); }

ring_element conjugate(ring_element const & x)
{
    auto const & ctx = x.context();
    if (!ctx->relative_conjugation) throw std::invalid_argument("conjugate: order has no declared conjugation");
    return x.apply(ctx->automorphisms()[*ctx->relative_conjugation]);
}

ring_element relative_norm(ring_element const & x) { return x * conjugate(x); }

ideal_lattice::ideal_lattice(order_ptr ctx, std::optional<int_matrix> basis)
    : ctx_(std::move(ctx))
    , h_(std::move(basis))
{
    if (!h_) return;
    std::size_t n = ctx_->degree();
    if (h_->rows() != n || h_->cols() != n)
        throw std::invalid_argument("ideal_lattice: basis is not full rank");
    if (hnf(*h_) != *h_) throw std::invalid_argument("ideal_lattice: basis not in HNF");
    for (std::size_t r = 0; r < n; r++) {
        ring_element g(ctx_, h_->row_vector(r));
        for (std::size_t i = 0; i < n; i++)
            if (!in_row_lattice(*h_, (g * ring_element::basis(ctx_, i)).coords()))
                throw std::logic_error("ideal_lattice: lattice not closed under multiplication");
    }
}

ideal_lattice ideal_lattice::unit(order_ptr const & ctx) { return {ctx, int_matrix::identity(ctx->degree())}; }

bool ideal_lattice::is_unit() const { return h_ && index() == 1; }

int_matrix const & ideal_lattice::basis() const
{
    if (!h_) throw std::invalid_argument("zero ideal has no lattice basis");
    return *h_;
}

bigint ideal_lattice::index() const
{
    if (!h_) throw std::invalid_argument("zero ideal has infinite index");
    bigint p = 1;
    for (std::size_t i = 0; i < h_->rows(); i++) p *= (*h_)(i, i);
    return p;
}

bool ideal_lattice::contains(ring_element const & x) const
{
    require_same(ctx_, x.context(), "ideal membership");
    if (!h_) return x.is_zero();
    return in_row_lattice(*h_, x.coords());
}

ring_element ideal_lattice::reduce(ring_element const & x) const
{
    require_same(ctx_, x.context(), "ideal reduction");
    if (!h_) return x;
    return {ctx_, reduce_mod_hnf(*h_, x.coords())};
}

std::vector<ring_element> ideal_lattice::generators() const
{
    std::vector<ring_element> g;
    if (!h_) return g;
    for (std::size_t i = 0; i < h_->rows(); i++) g.emplace_back(ctx_, h_->row_vector(i));
    return g;
}

bool operator==(ideal_lattice const & a, ideal_lattice const & b) { return a.ctx_ == b.ctx_ && a.h_ == b.h_; }

ideal_lattice ideal_from_generators(order_ptr const & ctx, std::vector<ring_element> const & gens)
{
    std::size_t n = ctx->degree();
    int_matrix rows(0, n);
    for (auto const & g : gens) {
        require_same(ctx, g.context(), "ideal_from_generators");
        if (g.is_zero()) continue;
        for (std::size_t i = 0; i < n; i++) rows.append_row((g * ring_element::basis(ctx, i)).coords());
    }
    if (rows.rows() == 0) return ideal_lattice::zero(ctx);
    auto h = hnf(rows);
    if (h.rows() != n) throw std::domain_error("ideal_from_generators: generators span a lattice of lower rank");
    return {ctx, h};
}

ideal_lattice principal_ideal(ring_element const & x) { return ideal_from_generators(x.context(), {x}); }

ideal_lattice ideal_sum(ideal_lattice const & a, ideal_lattice const & b)
{
    require_same(a.context(), b.context(), "ideal_sum");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return {a.context(), hnf(a.basis().stacked(b.basis()))};
}

ideal_lattice ideal_product(ideal_lattice const & a, ideal_lattice const & b)
{
    require_same(a.context(), b.context(), "ideal_product");
    if (a.is_zero() || b.is_zero()) return ideal_lattice::zero(a.context());
    std::vector<ring_element> g;
    for (auto const & x : a.generators())
        for (auto const & y : b.generators()) g.push_back(x * y);
    return ideal_from_generators(a.context(), g);
}

ideal_lattice ideal_intersection(ideal_lattice const & a, ideal_lattice const & b)
{
    require_same(a.context(), b.context(), "ideal_intersection");
    if (a.is_zero() || b.is_zero()) return ideal_lattice::zero(a.context());
    return {a.context(), lattice_intersection(a.basis(), b.basis())};
}

ideal_lattice ideal_power(ideal_lattice const & a, unsigned e)
{
    ideal_lattice r = ideal_lattice::unit(a.context());
    for (unsigned i = 0; i < e; i++) r = ideal_product(r, a);
    return r;
}

ideal_lattice ideal_scale(ideal_lattice const & a, bigint const & m)
{
    if (a.is_zero() || m == 0) return ideal_lattice::zero(a.context());
    int_matrix h = a.basis();
    bigint am = abs(m);
    for (std::size_t i = 0; i < h.rows(); i++)
        for (std::size_t j = 0; j < h.cols(); j++) h(i, j) *= am;
    return {a.context(), h};
}

bigint ideal_rational_generator(ideal_lattice const & a)
{
    if (a.is_zero()) return 0;
    std::size_t n = a.context()->degree();
    int_matrix z(1, n);
    z(0, 0) = 1;
    auto meet = lattice_intersection(a.basis(), z);
    return meet(0, 0);
}

ideal_lattice p_part(ideal_lattice const & a, bigint const & p)
{
    if (a.is_zero()) throw std::invalid_argument("p_part: zero ideal");
    auto ctx = a.context();
    bigint pe = p;
    ideal_lattice cur = ideal_sum(a, ideal_scale(ideal_lattice::unit(ctx), pe));
    for (;;) {
        pe *= p;
        ideal_lattice next = ideal_sum(a, ideal_scale(ideal_lattice::unit(ctx), pe));
        if (next == cur) return cur;
        cur = next;
    }
}

bool congruent_mod_ideal(ring_element const & x, ring_element const & y, ideal_lattice const & m)
{
    return m.contains(x - y);
}

std::optional<ring_element> inverse_mod(ring_element const & x, ideal_lattice const & m)
{
    require_same(x.context(), m.context(), "inverse_mod");
    if (m.is_zero()) return x.inverse();
    auto ctx = x.context();
    if (m.is_unit()) return ring_element::integer(ctx, 0);
    /* y * M_x + l * H = 1 */
    int_matrix a = x.multiplication_matrix().stacked(m.basis());
    auto sol = solve_left(a, ring_element::integer(ctx, 1).coords());
    if (!sol) return std::nullopt;
    std::vector<bigint> y(sol->begin(), sol->begin() + static_cast<long>(ctx->degree()));
    return m.reduce(ring_element(ctx, std::move(y)));
}

bool invertible_mod(ring_element const & x, ideal_lattice const & m) { return inverse_mod(x, m).has_value(); }

ring_element power_mod(ring_element const & x, bigint const & e, ideal_lattice const & m)
{
    require_same(x.context(), m.context(), "power_mod");
    ring_element b = x;
    bigint k = e;
    if (k < 0) {
        auto inv = inverse_mod(x, m);
        if (!inv) throw not_invertible("power_mod: negative power of a non-unit");
        b = *inv;
        k = -k;
    }
    if (m.is_zero() && k > 100000)
        throw cap_exceeded("power_mod: exponent too large for exact evaluation");
    ring_element acc = m.reduce(ring_element::integer(x.context(), 1));
    b = m.reduce(b);
    std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = m.reduce(acc * acc);
        if (mpz_tstbit(k.get_mpz_t(), i)) acc = m.reduce(acc * b);
    }
    return acc;
}

bigint multiplicative_order_mod(ring_element const & x, ideal_lattice const & m, std::uint64_t iteration_cap)
{
    if (m.is_zero()) throw std::invalid_argument("multiplicative_order_mod: zero modulus");
    auto ctx = x.context();
    if (m.is_unit()) return 1;
    if (!invertible_mod(x, m)) throw not_invertible("multiplicative_order_mod: " + x.to_string() + " is a zero divisor");
    auto one = ring_element::integer(ctx, 1);
    auto is_one = [&](bigint const & k) { return m.contains(power_mod(x, k, m) - one); };

    /* (O/m)^x has exponent dividing prod_p p^v_p(N) * lcm_{f <= n} (p^f - 1) */
    auto fn = trial_factor(m.index());
    if (fn.complete()) {
        bigint e = 1;
        for (auto const & [p, v] : fn.primes) {
            e *= ipow(p, v);
            for (std::size_t f = 1; f <= ctx->degree(); f++) e = lcm(e, ipow(p, f) - 1);
        }
        auto fe = trial_factor(e);
        if (fe.complete()) return order_from_exponent(order_oracle{is_one}, e, fe);
    }
    ring_element xr = m.reduce(x);
    ring_element acc = xr;
    for (std::uint64_t k = 1; k <= iteration_cap; k++) {
        if (m.contains(acc - one)) return static_cast<unsigned long>(k);
        acc = m.reduce(acc * xr);
    }
    throw cap_exceeded("multiplicative_order_mod: iteration cap exceeded");
}

std::vector<ring_element> enumerate_residues(ideal_lattice const & m, std::uint64_t cap)
{
    auto ctx = m.context();
    if (m.index() > cap) throw cap_exceeded("enumerate_residues: quotient larger than " + std::to_string(cap));
    std::size_t n = ctx->degree();
    std::vector<bigint> diag(n);
    for (std::size_t i = 0; i < n; i++) diag[i] = m.basis()(i, i);
    std::vector<ring_element> out;
    std::vector<bigint> c(n);
    for (;;) {
        out.emplace_back(ctx, c);
        std::size_t i = 0;
        while (i < n) {
            c[i] += 1;
            if (c[i] < diag[i]) break;
            c[i] = 0;
            i++;
        }
        if (i == n) break;
    }
    return out;
}

}   // namespace unitdef
