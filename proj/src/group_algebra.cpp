#include "stickel/group_algebra.hpp"

namespace stickel {

namespace detail {
void check_same_group(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return;
    if (!a || !b || a->modulus() != b->modulus() || a->subgroup() != b->subgroup())
        throw std::invalid_argument("group ring: elements live over different groups");
}
}  // namespace detail

ZElem to_mod(const QElem& a, u64 p, unsigned M) {
    ZpM R(p, M);
    ZElem r(a.G, R);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        mpz_class num = a.c[i].get_num(), den = a.c[i].get_den();
        mpz_class P = R.P;
        mpz_class n = num % P;
        if (n < 0) n += P;
        mpz_class dm = den % P;
        if (gcd(dm.get_ui(), p) != 1 && R.P > 1) throw std::domain_error("to_mod: denominator divisible by p");
        u64 di = inv_mod(static_cast<i64>(dm.get_ui()), R.P);
        r.c[i] = mulmod(n.get_ui(), di, R.P);
    }
    return r;
}

ZElem change_precision(const ZElem& a, unsigned M2) {
    if (M2 > a.ring.M) throw PrecisionError("change_precision: cannot raise precision");
    ZpM R(a.ring.p, M2);
    ZElem r(a.G, R);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] % R.P;
    return r;
}

QElem lift(const ZElem& a) {
    QElem r(a.G, QQ{});
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = mpq_class(mpz_class(static_cast<unsigned long>(a.c[i])));
    return r;
}

ZElem spiegel(const ZElem& x, const SpiegelContext& ctx) {
    if (ctx.qpn % x.ring.P != 0)
        throw std::invalid_argument("spiegel: coefficient modulus " + std::to_string(x.ring.P) +
                                    " does not divide q p^n = " + std::to_string(ctx.qpn));
    const AbelianField& G = *x.G;
    if (G.modulus() % ctx.qpn != 0) throw std::invalid_argument("spiegel: group modulus not divisible by q p^n");
    for (u64 h : G.subgroup_generators())
        if (h % ctx.qpn != 1 % ctx.qpn)
            throw std::invalid_argument("spiegel: omega_n is not defined on this group (field does not contain mu_{qp^n})");
    ZElem r(x.G, x.ring);
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (!x.c[i]) continue;
        u64 w = ctx.omega(G.rep(static_cast<int>(i))) % x.ring.P;
        int j = G.inv(static_cast<int>(i));
        r.c[j] = addmod(r.c[j], mulmod(x.c[i], w, x.ring.P), x.ring.P);
    }
    return r;
}

u64 char_exponent(const AbelianField& K, const DirichletCharacter& psi, int i) {
    return psi.value(K.rep(i) % psi.modulus);
}

CycMod char_eval(const ZElem& x, const DirichletCharacter& psi) {
    const u64 d = psi.order;
    std::vector<u64> acc(d, 0);
    const u64 P = x.ring.P;
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (!x.c[i]) continue;
        u64 t = char_exponent(*x.G, psi, static_cast<int>(i));
        acc[t] = addmod(acc[t], x.c[i], P);
    }
    CycMod r(d, x.ring.p, x.ring.M);
    for (u64 t = 0; t < d; ++t)
        if (acc[t]) r = r + acc[t] * CycMod::ypow(d, x.ring.p, x.ring.M, static_cast<i64>(t));
    return r;
}

CycInt char_eval(const QElem& x, const DirichletCharacter& psi) {
    const u64 d = psi.order;
    std::vector<mpz_class> acc(d, 0);
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (x.c[i] == 0) continue;
        if (x.c[i].get_den() != 1) throw std::domain_error("char_eval: non-integral coefficient");
        u64 t = char_exponent(*x.G, psi, static_cast<int>(i));
        acc[t] += x.c[i].get_num();
    }
    CycInt r(d);
    for (u64 t = 0; t < d; ++t)
        if (acc[t] != 0) r = r + acc[t] * CycInt::ypow(d, static_cast<i64>(t));
    return r;
}

ZElem alpha_K(const FieldPtr& K, u64 p, unsigned n) {
    ZpM R(p, n + 1);
    ZElem r(K, R);
    if (K->is_real()) return r;
    const u64 fn = conductor_Ln(K->modulus(), p, n);
    const u64 fK = K->modulus();
    for (u64 a = 1; a <= fn; ++a) {
        if (gcd(a, fn) != 1) continue;
        int i = K->index_of(a % fK);
        r.c[i] = addmod(r.c[i], inv_mod(static_cast<i64>(a % R.P), R.P), R.P);
    }
    return r;
}

bool in_span_mod(const std::vector<std::vector<u64>>& gens, const std::vector<u64>& target, u64 p, unsigned k) {
    const u64 P = ipow(p, k);
    const std::size_t d = target.size();
    std::vector<std::vector<u64>> rows;
    for (auto& g : gens) {
        if (g.size() != d) throw std::invalid_argument("in_span_mod: length mismatch");
        std::vector<u64> r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = g[i] % P;
        rows.push_back(std::move(r));
    }
    std::vector<u64> t(d);
    for (std::size_t i = 0; i < d; ++i) t[i] = target[i] % P;
    std::vector<char> used(rows.size(), 0);
    for (std::size_t j = 0; j < d; ++j) {
        int best = static_cast<int>(k);
        std::size_t br = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            int v = residue_valuation(rows[r][j], p, k);
            if (v < best) {
                best = v;
                br = r;
            }
        }
        if (best == static_cast<int>(k)) {
            if (t[j] != 0) return false;
            continue;
        }
        used[br] = 1;
        const u64 pv = ipow(p, best);
        const u64 uinv = inv_mod(static_cast<i64>((rows[br][j] / pv) % P), P);
        // p^(k-v) * pivot row vanishes in column j but may not elsewhere: keep it
        std::vector<u64> extra(d);
        bool nz = false;
        u64 s = ipow(p, k - best);
        for (std::size_t i = 0; i < d; ++i) {
            extra[i] = mulmod(rows[br][i], s, P);
            nz |= extra[i] != 0;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || !rows[r][j]) continue;
            u64 f = mulmod(rows[r][j] / pv, uinv, P);
            for (std::size_t i = 0; i < d; ++i) rows[r][i] = submod(rows[r][i], mulmod(f, rows[br][i], P), P);
        }
        if (nz) {
            rows.push_back(std::move(extra));
            used.push_back(0);
        }
        if (t[j]) {
            if (residue_valuation(t[j], p, k) < best) return false;
            u64 f = mulmod(t[j] / pv, uinv, P);
            for (std::size_t i = 0; i < d; ++i) t[i] = submod(t[i], mulmod(f, rows[br][i], P), P);
        }
    }
    for (u64 x : t)
        if (x) return false;
    return true;
}

bool wt_equiv(const ZElem& A, const ZElem& B, u64 p, unsigned n, const ZElem& alpha, bool with_norm) {
    detail::check_same_group(A.G, B.G);
    detail::check_same_group(A.G, alpha.G);
    const unsigned k = n + 1;
    if (A.ring.p != p || B.ring.p != p) throw std::invalid_argument("wt_equiv: prime mismatch");
    if (A.ring.M < k || B.ring.M < k || alpha.ring.M < k)
        throw PrecisionError("wt_equiv: elements known below p^(n+1)");
    const u64 P = ipow(p, k);
    std::vector<u64> t(A.c.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = submod(A.c[i] % P, B.c[i] % P, P);
    std::vector<std::vector<u64>> gens;
    std::vector<u64> a(alpha.c.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = alpha.c[i] % P;
    gens.push_back(a);
    if (with_norm) gens.emplace_back(t.size(), 1);
    return in_span_mod(gens, t, p, k);
}

bool wt_equiv(const ZElem& A, const ZElem& B, u64 p, unsigned n, const FieldPtr& K, bool with_norm) {
    return wt_equiv(A, B, p, n, alpha_K(K, p, n), with_norm);
}

int cyclic_generator(const AbelianField& K) {
    const std::size_t d = K.degree();
    if (d == 1) return 0;
    for (std::size_t i = 1; i < d; ++i)
        if (K.element_order(static_cast<int>(i)) == d) return static_cast<int>(i);
    return -1;
}

nlohmann::json to_json(const ZElem& a) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < a.c.size(); ++i) j[std::to_string(a.G->rep(static_cast<int>(i)))] = a.c[i];
    return j;
}

nlohmann::json to_json(const QElem& a) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < a.c.size(); ++i) j[std::to_string(a.G->rep(static_cast<int>(i)))] = a.c[i].get_str();
    return j;
}

}  // namespace stickel
