#pragma once

#include <gmpxx.h>

#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "stickel/cycint.hpp"
#include "stickel/fields.hpp"

namespace stickel {

// ---------------------------------------------------------------- coefficient rings

struct QQ {
    using value_type = mpq_class;
    value_type zero() const { return 0; }
    value_type from_int(i64 a) const { return mpq_class(static_cast<long>(a)); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool operator==(const QQ&) const { return true; }
    std::string name() const { return "Q"; }
    std::string str(const value_type& a) const { return a.get_str(); }
};

// Z/p^M.
struct ZpM {
    u64 p = 2;
    unsigned M = 1;
    u64 P = 2;
    using value_type = u64;
    ZpM() = default;
    ZpM(u64 p_, unsigned M_) : p(p_), M(M_), P(ipow(p_, M_)) {}
    value_type zero() const { return 0; }
    value_type from_int(i64 a) const { return reduce_signed(a, P); }
    value_type add(value_type a, value_type b) const { return addmod(a, b, P); }
    value_type sub(value_type a, value_type b) const { return submod(a, b, P); }
    value_type mul(value_type a, value_type b) const { return mulmod(a, b, P); }
    bool is_zero(value_type a) const { return a == 0; }
    bool operator==(const ZpM& o) const { return p == o.p && M == o.M; }
    std::string name() const { return "Z/" + std::to_string(p) + "^" + std::to_string(M); }
    std::string str(value_type a) const { return std::to_string(a); }
};

// (Z/p^M)[y]/Phi_d(y).
struct CycZpM {
    u64 p = 2;
    unsigned M = 1;
    u64 d = 1;
    using value_type = CycMod;
    CycZpM() = default;
    CycZpM(u64 p_, unsigned M_, u64 d_) : p(p_), M(M_), d(d_) {}
    value_type zero() const { return CycMod(d, p, M); }
    value_type from_int(i64 a) const { return CycMod::scalar(d, p, M, a); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool operator==(const CycZpM& o) const { return p == o.p && M == o.M && d == o.d; }
    std::string name() const {
        return "Z/" + std::to_string(p) + "^" + std::to_string(M) + "[y]/Phi_" + std::to_string(d);
    }
    std::string str(const value_type& a) const { return a.str(); }
};

// ---------------------------------------------------------------- elements

// Coefficients indexed by the coset indices of the field's Galois group.
template <class R>
struct GroupRingElement {
    FieldPtr G;
    R ring;
    std::vector<typename R::value_type> c;

    GroupRingElement() = default;
    GroupRingElement(FieldPtr g, R r) : G(std::move(g)), ring(std::move(r)), c(G->degree(), ring.zero()) {}

    static GroupRingElement identity(FieldPtr g, R r) {
        GroupRingElement e(std::move(g), std::move(r));
        e.c[0] = e.ring.from_int(1);
        return e;
    }
    static GroupRingElement basis(FieldPtr g, R r, int idx, typename R::value_type v) {
        GroupRingElement e(std::move(g), std::move(r));
        e.c[idx] = v;
        return e;
    }
    static GroupRingElement norm_element(FieldPtr g, R r) {
        GroupRingElement e(std::move(g), std::move(r));
        for (auto& x : e.c) x = e.ring.from_int(1);
        return e;
    }

    std::size_t size() const { return c.size(); }
    typename R::value_type& operator[](std::size_t i) { return c[i]; }
    const typename R::value_type& operator[](std::size_t i) const { return c[i]; }
    bool is_zero() const {
        for (auto& x : c)
            if (!ring.is_zero(x)) return false;
        return true;
    }
};

using QElem = GroupRingElement<QQ>;
using ZElem = GroupRingElement<ZpM>;
using CElem = GroupRingElement<CycZpM>;

namespace detail {
void check_same_group(const FieldPtr& a, const FieldPtr& b);
}

template <class R>
void check_compatible(const GroupRingElement<R>& a, const GroupRingElement<R>& b) {
    detail::check_same_group(a.G, b.G);
    if (!(a.ring == b.ring)) throw std::invalid_argument("group ring: coefficient rings differ");
}

template <class R>
GroupRingElement<R> operator+(const GroupRingElement<R>& a, const GroupRingElement<R>& b) {
    check_compatible(a, b);
    GroupRingElement<R> r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.ring.add(a.c[i], b.c[i]);
    return r;
}
template <class R>
GroupRingElement<R> operator-(const GroupRingElement<R>& a, const GroupRingElement<R>& b) {
    check_compatible(a, b);
    GroupRingElement<R> r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.ring.sub(a.c[i], b.c[i]);
    return r;
}
// (x y)(s) = sum_t x(t) y(t^-1 s)
template <class R>
GroupRingElement<R> operator*(const GroupRingElement<R>& a, const GroupRingElement<R>& b) {
    check_compatible(a, b);
    GroupRingElement<R> r(a.G, a.ring);
    const std::size_t d = a.c.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (a.ring.is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (a.ring.is_zero(b.c[j])) continue;
            int k = a.G->mul(static_cast<int>(i), static_cast<int>(j));
            r.c[k] = a.ring.add(r.c[k], a.ring.mul(a.c[i], b.c[j]));
        }
    }
    return r;
}
template <class R>
GroupRingElement<R> scale(const typename R::value_type& s, const GroupRingElement<R>& a) {
    GroupRingElement<R> r = a;
    for (auto& x : r.c) x = a.ring.mul(s, x);
    return r;
}
template <class R>
bool operator==(const GroupRingElement<R>& a, const GroupRingElement<R>& b) {
    check_compatible(a, b);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!a.ring.is_zero(a.ring.sub(a.c[i], b.c[i]))) return false;
    return true;
}

// sigma -> sigma^-1 on the basis.
template <class R>
GroupRingElement<R> invert_group(const GroupRingElement<R>& a) {
    GroupRingElement<R> r(a.G, a.ring);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[a.G->inv(static_cast<int>(i))] = a.c[i];
    return r;
}

// Restriction to a subfield: sigma maps to its class in the smaller group.
template <class R>
GroupRingElement<R> restrict_to(const GroupRingElement<R>& a, const FieldPtr& target) {
    if (a.G->modulus() % target->modulus() != 0 || !a.G->contains(*target))
        throw std::invalid_argument("restrict: target field is not contained in the source field");
    GroupRingElement<R> r(target, a.ring);
    const u64 ft = target->modulus();
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        int k = target->index_of(a.G->rep(static_cast<int>(i)) % ft);
        r.c[k] = a.ring.add(r.c[k], a.c[i]);
    }
    return r;
}

// Exact rationals to Z/p^M; denominators must be prime to p.
ZElem to_mod(const QElem& a, u64 p, unsigned M);
ZElem change_precision(const ZElem& a, unsigned M2);
// Canonical integer lift of a mod-p^M element (values in [0, p^M)).
QElem lift(const ZElem& a);

// s_infinity = class of -1.
template <class R>
GroupRingElement<R> s_inf(FieldPtr g, R r) {
    int i = g->s_inf();
    return GroupRingElement<R>::basis(g, r, i, r.from_int(1));
}
// sigma_a as a basis element.
template <class R>
GroupRingElement<R> sigma(FieldPtr g, R r, u64 a) {
    int i = g->index_of(a % g->modulus());
    return GroupRingElement<R>::basis(g, r, i, r.from_int(1));
}

// ---------------------------------------------------------------- Spiegel

struct SpiegelContext {
    u64 p = 2;
    unsigned n = 0;
    u64 q = 4;
    u64 qpn = 4;   // q p^n
    SpiegelContext(u64 p_, unsigned n_) : p(p_), n(n_), q(q_of(p_)), qpn(q_of(p_) * ipow(p_, n_)) {}
    u64 omega(u64 a) const { return a % qpn; }
};

// x* = sum a_s omega_n(s) s^-1. The coefficient modulus must divide q p^n.
ZElem spiegel(const ZElem& x, const SpiegelContext& ctx);

// ---------------------------------------------------------------- characters

// sum_s x(s) psi(s), in (Z/p^M)[y]/Phi_ord(psi).
CycMod char_eval(const ZElem& x, const DirichletCharacter& psi);
// exact version for integral rational coefficients
CycInt char_eval(const QElem& x, const DirichletCharacter& psi);
// exponent t with psi(sigma_i) = y^t, for the coset index i of the field owning psi
u64 char_exponent(const AbelianField& K, const DirichletCharacter& psi, int i);

// ---------------------------------------------------------------- the Remark's lattice

// alpha_K = sum over a in [1, f_n] prime to f_n of a^-1 (K/a), mod p^(n+1).
// For real K the pairing a <-> f_n - a makes it vanish.
ZElem alpha_K(const FieldPtr& K, u64 p, unsigned n);

// Is target in the Z/p^k-span of gens?
bool in_span_mod(const std::vector<std::vector<u64>>& gens, const std::vector<u64>& target, u64 p, unsigned k);

// A ~ B: A - B in p^(n+1) Z[G] + Z alpha (+ Z N when with_norm).
bool wt_equiv(const ZElem& A, const ZElem& B, u64 p, unsigned n, const ZElem& alpha, bool with_norm = false);
bool wt_equiv(const ZElem& A, const ZElem& B, u64 p, unsigned n, const FieldPtr& K, bool with_norm = false);

// ---------------------------------------------------------------- display

// Generator of a cyclic group (least representative that generates), or -1 if not cyclic.
int cyclic_generator(const AbelianField& K);
// Coefficients on powers s^k of the given generator index.
template <class R>
std::vector<typename R::value_type> power_coeffs(const GroupRingElement<R>& a, int gen) {
    std::vector<typename R::value_type> out;
    int x = 0;
    for (std::size_t k = 0; k < a.c.size(); ++k) {
        out.push_back(a.c[x]);
        x = a.G->mul(x, gen);
    }
    return out;
}
template <class R>
std::string to_string(const GroupRingElement<R>& a, int gen = -2) {
    if (gen == -2) gen = cyclic_generator(*a.G);
    std::string s;
    if (gen >= 0) {
        auto pc = power_coeffs(a, gen);
        for (std::size_t k = 0; k < pc.size(); ++k) {
            if (k) s += " + ";
            s += a.ring.str(pc[k]);
            if (k == 1) s += "*s";
            if (k > 1) s += "*s^" + std::to_string(k);
        }
    } else {
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (i) s += " + ";
            s += a.ring.str(a.c[i]) + "*[" + std::to_string(a.G->rep(static_cast<int>(i))) + "]";
        }
    }
    return s;
}
nlohmann::json to_json(const ZElem& a);
nlohmann::json to_json(const QElem& a);

}  // namespace stickel
