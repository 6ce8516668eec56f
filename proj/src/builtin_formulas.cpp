#include "unitdef/builtin_formulas.hpp"

namespace unitdef {

builtin_formula rk_member()
{
    return {"rk_member", "forall e:Unit. exists d:Unit. d - 1 == (e - 1)*x mod (e - 1)^2", {"x"},
            "x lies in R_K: every unit e admits a unit d with d - 1 = (e - 1) x mod (e - 1)^2"};
}

builtin_formula rk_member_inverse_encoding()
{
    return {"rk_member_inverse_encoding",
            "forall e:Elem(1). forall b:Elem(1). exists d:Unit. "
            "e*b != 1 or e == 1 or d - 1 == (e - 1)*x mod (e - 1)^2",
            {"x"},
            "rk_member with unit-hood of e expressed through an inverse b; ranges over ring elements are never "
            "exhaustive, so members evaluate to UNKNOWN-positive"};
}

namespace {

std::string d_poly_text(std::string const & w)
{
    return "3^8*5^4*" + w + "^4*(" + w + " - 1)^4*(" + w + "^2 - 1)^4";
}

std::string system_body(long d)
{
    std::string dd = d < 0 ? "(" + std::to_string(d) + ")" : std::to_string(d);
    std::string e1 = "(u1 + v1*r)", e2 = "(u2 + v2*r)";
    return "r^2 == " + dd + " and unit(s1 + t1*r) and unit(s2 + t2*r)"
           " and (s1 + t1*r)^2 == u1 + v1*r and (s2 + t2*r)^2 == u2 + v2*r"
           " and u1 + v1*r == 1 mod " + dd + "*" + d_poly_text("w") +
           " and " + e2 + " - 1 == w*(" + e1 + " - 1) mod (" + e1 + " - 1)^2";
}

}   // namespace

builtin_formula system_S(long d)
{
    return {"system_S", system_body(d), {"w", "s1", "s2", "t1", "t2", "u1", "u2", "v1", "v2", "r"},
            "the system S_d: delta_i = s_i + t_i r units, eps_i = delta_i^2 = u_i + v_i r, eps_1 = 1 mod d D(w), "
            "eps_2 - 1 = w (eps_1 - 1) mod (eps_1 - 1)^2"};
}

builtin_formula zk(long d)
{
    std::string src = "forall e:Unit. exists mu:Unit. exists mu1:Unit. exists mu2:Unit. exists nu1:Unit. "
                      "exists nu2:Unit. exists sigma1:Unit. exists sigma2:Unit. exists tau1:Unit. exists tau2:Unit. "
                      "exists s1:Elem. exists s2:Elem. exists t1:Elem. exists t2:Elem. "
                      "exists u1:Elem. exists u2:Elem. exists v1:Elem. exists v2:Elem. "
                      "e == 1 or (w*(e - 1) == mu - 1 mod (e - 1)^2";
    for (std::string i : {"1", "2"}) {
        src += " and u" + i + "*(e - 1) == mu" + i + " - 1 mod (e - 1)^2";
        src += " and v" + i + "*(e - 1) == nu" + i + " - 1 mod (e - 1)^2";
        src += " and s" + i + "*(e - 1) == sigma" + i + " - 1 mod (e - 1)^2";
        src += " and t" + i + "*(e - 1) == tau" + i + " - 1 mod (e - 1)^2";
    }
    src += " and " + system_body(d) + ")";
    return {"zk", src, {"w", "r"},
            "w lies in Z_K; the units attached to s_i are named sigma_i throughout"};
}

std::vector<std::string> builtin_names() { return {"rk_member", "rk_member_inverse_encoding", "system_S", "zk"}; }

builtin_formula builtin_by_name(std::string const & name, long d)
{
    if (name == "rk_member") return rk_member();
    if (name == "rk_member_inverse_encoding") return rk_member_inverse_encoding();
    if (name == "system_S") return system_S(d);
    if (name == "zk") return zk(d);
    throw std::invalid_argument("unknown built-in formula '" + name + "'");
}

ring_element d_poly(ring_element const & w)
{
    auto one = ring_element::integer(w.context(), 1);
    ring_element c = ring_element::integer(w.context(), ipow(3, 8) * ipow(5, 4));
    return c * w.pow(4) * (w - one).pow(4) * (w * w - one).pow(4);
}

bigint d_poly(bigint const & w)
{
    bigint a = w * (w - 1) * (w * w - 1);
    return ipow(3, 8) * ipow(5, 4) * a * a * a * a;
}

}   // namespace unitdef
