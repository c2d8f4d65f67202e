#include "stickel/lfunctions.hpp"

#include <map>

namespace stickel {

// ---------------------------------------------------------------- cyclotomic numbers

CycloElem cyclotomic_number(const AbelianField& K, RingPtr R) {
    const u64 f = K.modulus();
    if (f == 1) throw std::invalid_argument("cyclotomic number: f = 1 has none");
    if (R->f != f) throw std::invalid_argument("cyclotomic number: ring conductor differs from the field modulus");
    CycloElem eta = CycloElem::one(R);
    for (u64 a : K.subgroup()) eta = mul_one_minus_xpow(eta, static_cast<i64>(a));
    for (u64 h : K.subgroup_generators())
        if (!(galois(eta, h) == eta)) throw std::logic_error("cyclotomic number: not fixed by H");
    return eta;
}

ExactCyclo cyclotomic_number_exact(const AbelianField& K) {
    const u64 f = K.modulus();
    if (f == 1) throw std::invalid_argument("cyclotomic number: f = 1 has none");
    ExactCyclo eta = ExactCyclo::one(f);
    for (u64 a : K.subgroup()) eta = eta * ExactCyclo::one_minus_xpow(f, static_cast<i64>(a));
    return eta;
}

ExactCyclo cyclotomic_norm_exact(u64 f, u64 m) {
    if (m == 0 || f % m != 0) throw std::invalid_argument("cyclotomic norm: m must divide f");
    ExactCyclo r = ExactCyclo::one(f);
    for (u64 a = 1; a < f; ++a)
        if (a % m == 1 % m && gcd(a, f) == 1) r = r * ExactCyclo::one_minus_xpow(f, static_cast<i64>(a));
    return r;
}

// ---------------------------------------------------------------- Gauss sums, L-values

namespace {

void require_nontrivial(const DirichletCharacter& chi) {
    if (chi.trivial || chi.order == 1) throw std::invalid_argument("L-value: trivial character");
}

// y^t in (Z/p^M)[y]/Phi_d
CycMod ypow(const DirichletCharacter& chi, i64 t, u64 p, unsigned M) { return CycMod::ypow(chi.order, p, M, t); }

CycMod divide_p(const CycMod& a) {
    CycMod r(a.d, a.p, a.M - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] % a.p) throw std::domain_error("L-value: tau * S is not divisible by p");
        r.c[i] = (a.c[i] / a.p) % r.P;
    }
    return r;
}

}  // namespace

BiCyclo gauss_sum(const DirichletCharacter& chi, RingPtr R) {
    require_nontrivial(chi);
    const u64 fc = chi.conductor;
    if (R->f % fc != 0) throw std::invalid_argument("gauss sum: conductor does not divide the ring conductor");
    const u64 step = R->f / fc;
    const u64 d = chi.order;
    std::vector<std::vector<i64>> polys(d, std::vector<i64>(R->f, 0));
    for (u64 a = 1; a < fc; ++a) {
        int t = chi.primitive_value(a);
        if (t < 0) continue;
        polys[static_cast<u64>(t) % d][a * step] += 1;
    }
    std::vector<CycloElem> parts;
    for (auto& pl : polys) parts.push_back(CycloElem::from_poly(R, pl));
    return BiCyclo::from_powers(R, d, parts);
}

LpValue lp_at_1(const DirichletCharacter& chi, u64 p, unsigned M, bool frobenius_log) {
    require_nontrivial(chi);
    const u64 f = chi.conductor, d = chi.order;
    if (f % p == 0) throw std::domain_error("lp_at_1: p divides the conductor of chi (not supported)");
    const unsigned Mw = M + 1 + (frobenius_log ? 0 : log_power_loss(p));
    auto R = CycloRing::make(f, p, Mw);
    auto kchi = character_field(chi);
    CycloElem eta = cyclotomic_number(*kchi, R);
    CycloElem leta = frobenius_log ? iwasawa_log(eta) : iwasawa_log_power(eta);
    if (leta.R->M != Mw) {
        // the power route for p = 2 returns one digit less
        R = leta.R;
    }
    std::vector<CycloElem> parts(d, CycloElem(R));
    for (std::size_t i = 0; i < kchi->degree(); ++i) {
        u64 r = kchi->rep(static_cast<int>(i));
        int t = chi.primitive_value(r);
        u64 j = (d - static_cast<u64>(t) % d) % d;
        parts[j] = parts[j] + galois(leta, r);
    }
    BiCyclo S = BiCyclo::from_powers(R, d, parts);
    BiCyclo T = gauss_sum(chi, R) * S;
    if (!T.is_x_constant()) throw std::logic_error("lp_at_1: tau * S still depends on zeta");
    CycMod ts = divide_p(T.constant_part());
    const unsigned Mv = ts.M;

    LpValue L;
    L.chi = chi;
    L.p = p;
    L.M = Mv;
    L.gauss_log = ts;
    int tp = chi.primitive_value(p % f);
    L.euler = CycMod::scalar(d, p, Mv, static_cast<i64>(p)) - ypow(chi, tp, p, Mv);
    const u64 P = ipow(p, Mv);
    L.scale = submod(0, inv_mod(static_cast<i64>(f % P), P), P);
    L.value = L.scale * (L.euler * L.gauss_log);
    L.valuation = norm_valuation(L.value);
    if (L.M > M) {
        L.euler = L.euler.reduced(M);
        L.gauss_log = L.gauss_log.reduced(M);
        L.value = L.value.reduced(M);
        L.scale %= ipow(p, M);
        L.M = M;
        L.valuation = norm_valuation(L.value);
    }
    return L;
}

// ---------------------------------------------------------------- Solomon elements

SolomonElement solomon_element(const FieldPtr& K, u64 p, unsigned M) {
    const u64 f = K->modulus();
    SolomonElement S;
    S.K = K;
    S.p = p;
    S.M = M;
    if (K->degree() == 1 || f == 1) return S;   // K = Q: the element is empty
    if (f % p == 0) throw std::domain_error("solomon element: p divides the conductor");
    auto R = CycloRing::make(f, p, M + 1);
    CycloElem leta = iwasawa_log(cyclotomic_number(*K, R));
    S.coeffs.assign(K->degree(), CycloElem());
    for (std::size_t i = 0; i < K->degree(); ++i) {
        CycloElem li = galois(leta, K->rep(static_cast<int>(i)));
        int v = coeff_valuation(li);
        if (v < 1)
            throw std::domain_error("solomon element: log(eta^sigma) is not divisible by p (valuation " +
                                    std::to_string(v) + ")");
        S.coeffs[K->inv(static_cast<int>(i))] = divide_p(li, 1);
    }
    return S;
}

BiCyclo solomon_char_value(const SolomonElement& S, const DirichletCharacter& psi) {
    if (S.coeffs.empty()) throw std::invalid_argument("solomon: empty element");
    RingPtr R = S.coeffs[0].R;
    const u64 d = psi.order;
    std::vector<CycloElem> parts(d, CycloElem(R));
    for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
        u64 t = psi.value(S.K->rep(static_cast<int>(i))) % d;
        parts[t] = parts[t] + S.coeffs[i];
    }
    return BiCyclo::from_powers(R, d, parts);
}

u64 teichmuller_char_value(const DirichletCharacter& psi, u64 a, u64 p, unsigned M) {
    if ((p - 1) % psi.order != 0) throw std::invalid_argument("teichmuller: order does not divide p - 1");
    const u64 P = ipow(p, M);
    u64 root = psi.order == 1 ? 1 % P : teichmuller_root(psi.order, p, M);
    return powmod(root, psi.value(a) % psi.order, P);
}

CycloElem solomon_teichmuller_value(const SolomonElement& S, const DirichletCharacter& psi) {
    if (S.coeffs.empty()) throw std::invalid_argument("solomon: empty element");
    CycloElem r(S.coeffs[0].R);
    for (std::size_t i = 0; i < S.coeffs.size(); ++i)
        r = r + teichmuller_char_value(psi, S.K->rep(static_cast<int>(i)), S.p, S.M) * S.coeffs[i];
    return r;
}

CycMod solomon_modified_value(const SolomonElement& S, const DirichletCharacter& chi) {
    require_nontrivial(chi);
    BiCyclo v = solomon_char_value(S, chi);
    BiCyclo T = gauss_sum(chi, v.R) * v;
    if (!T.is_x_constant()) throw std::logic_error("modified solomon value: tau * Psi(chi) depends on zeta");
    CycMod ts = T.constant_part();
    const u64 p = S.p;
    const unsigned M = ts.M;
    const u64 fc = chi.conductor;
    CycMod euler = CycMod::scalar(chi.order, p, M, static_cast<i64>(p)) - ypow(chi, chi.primitive_value(p % fc), p, M);
    const u64 P = ipow(p, M);
    u64 scale = submod(0, inv_mod(static_cast<i64>(fc % P), P), P);
    return scale * (euler * ts);
}

SolomonElement solomon_norm_to(const SolomonElement& S, const FieldPtr& k) {
    if (!S.K->contains(*k)) throw std::invalid_argument("solomon norm: target is not a subfield");
    SolomonElement r;
    r.K = k;
    r.p = S.p;
    r.M = S.M;
    if (S.coeffs.empty()) return r;
    r.coeffs.assign(k->degree(), CycloElem(S.coeffs[0].R));
    for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
        int j = k->index_of(S.K->rep(static_cast<int>(i)) % k->modulus());
        r.coeffs[j] = r.coeffs[j] + S.coeffs[i];
    }
    return r;
}

bool solomon_is_zero(const SolomonElement& S) {
    for (auto& x : S.coeffs)
        if (!x.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------- orbits, analytic valuation

namespace {

// chi(rep_i) as t * (D / order), D the group exponent
std::vector<u64> signature(const AbelianField& K, const DirichletCharacter& chi, u64 D) {
    std::vector<u64> s;
    for (std::size_t i = 0; i < K.degree(); ++i)
        s.push_back(chi.value(K.rep(static_cast<int>(i))) % chi.order * (D / chi.order));
    return s;
}

// for every character: (orbit representative, a) with chi = rep^a
std::vector<std::pair<int, u64>> orbit_map(const AbelianField& K) {
    const auto& chars = K.characters();
    const u64 D = K.group_exponent();
    std::map<std::vector<u64>, int> by_sig;
    for (std::size_t j = 0; j < chars.size(); ++j) by_sig[signature(K, chars[j], D)] = static_cast<int>(j);
    std::vector<std::pair<int, u64>> out(chars.size(), {-1, 0});
    for (std::size_t j = 0; j < chars.size(); ++j) {
        if (out[j].first >= 0) continue;
        out[j] = {static_cast<int>(j), 1};
        auto s = signature(K, chars[j], D);
        for (u64 a = 2; a < chars[j].order; ++a) {
            if (gcd(a, chars[j].order) != 1) continue;
            std::vector<u64> sa(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) sa[i] = mulmod(s[i], a, D);
            auto it = by_sig.find(sa);
            if (it == by_sig.end()) throw std::logic_error("character orbits: power of a character missing");
            if (out[it->second].first < 0) out[it->second] = {static_cast<int>(j), a};
        }
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> character_orbits(const AbelianField& K) {
    auto om = orbit_map(K);
    std::map<int, std::vector<int>> g;
    for (std::size_t j = 0; j < om.size(); ++j)
        if (!K.characters()[j].trivial) g[om[j].first].push_back(static_cast<int>(j));
    std::vector<std::vector<int>> out;
    for (auto& [r, v] : g) out.push_back(v);
    return out;
}

AnalyticValuation analytic_valuation(const FieldPtr& K, u64 p, unsigned M) {
    AnalyticValuation A;
    A.n0 = cyclotomic_layer(*K, p);
    int nchars = 0;
    for (auto& orb : character_orbits(*K)) {
        const auto& chi = K->characters()[orb[0]];
        LpValue L = lp_at_1(chi, p, M);
        if (L.valuation.zero || !L.valuation.resolved)
            throw PrecisionError("analytic valuation: L_p(1, chi) not resolved at precision " + std::to_string(M));
        A.lp_product += L.valuation.v;
        A.values.push_back(L);
        A.orbit_sizes.push_back(static_cast<int>(orb.size()));
        nchars += static_cast<int>(orb.size());
    }
    A.total = A.lp_product + static_cast<int>(A.n0) - (p == 2 ? nchars : 0);
    return A;
}

CycMod euler_product(const AbelianField& K, const DirichletCharacter& chi, u64 p, unsigned M) {
    const u64 d = chi.order;
    CycMod r = CycMod::scalar(d, p, M, 1);
    const u64 P = ipow(p, M);
    for (u64 ell : prime_divisors(K.modulus())) {
        if (ell == p || chi.conductor % ell == 0) continue;
        u64 li = inv_mod(static_cast<i64>(ell % P), P);
        CycMod t = CycMod::scalar(d, p, M, 1) - li * ypow(chi, chi.primitive_value(ell % chi.conductor), p, M);
        r = r * t;
    }
    return r;
}

// ---------------------------------------------------------------- reconstruction

Reconstruction reconstruct_annihilator(const FieldPtr& K, u64 p, u64 c, unsigned M) {
    const auto& chars = K->characters();
    const u64 D = K->group_exponent();
    const u64 d = K->degree();
    auto om = orbit_map(*K);
    std::map<int, LpValue> lps;

    Reconstruction rec;
    std::vector<CycMod> sums(d, CycMod(D, p, M));
    unsigned Mv = M;
    rec.char_values.assign(chars.size(), CycMod());
    for (std::size_t j = 0; j < chars.size(); ++j) {
        const auto& psi = chars[j];
        if (psi.trivial) {
            rec.char_values[j] = CycMod(1, p, M);
            continue;
        }
        auto [rj, a] = om[j];
        auto it = lps.find(rj);
        if (it == lps.end()) it = lps.emplace(rj, lp_at_1(chars[rj], p, M)).first;
        CycMod L = it->second.value.galois(a);
        Mv = std::min(Mv, L.M);
        CycMod one_minus = CycMod::scalar(psi.order, p, L.M, 1) - ypow(psi, static_cast<i64>(psi.value(c % K->modulus())), p, L.M);
        CycMod v = one_minus * euler_product(*K, psi, p, L.M) * L;
        rec.char_values[j] = v;
    }
    for (std::size_t j = 0; j < chars.size(); ++j) {
        const auto& psi = chars[j];
        if (psi.trivial) continue;
        CycMod v = embed(rec.char_values[j].reduced(Mv), D);
        for (std::size_t i = 0; i < d; ++i) {
            i64 t = -static_cast<i64>(psi.value(K->rep(static_cast<int>(i))) % psi.order * (D / psi.order));
            CycMod term = CycMod::ypow(D, p, Mv, t) * v;
            sums[i] = sums[i].M == Mv ? sums[i] + term : sums[i].reduced(Mv) + term;
        }
    }
    const int vd = valuation(d, p);
    if (static_cast<int>(Mv) <= vd) throw PrecisionError("reconstruction: precision exhausted by 1/d");
    const unsigned Mr = Mv - static_cast<unsigned>(vd);
    const u64 pv = ipow(p, static_cast<unsigned>(vd));
    const u64 Pr = ipow(p, Mr);
    const u64 dinv = inv_mod(static_cast<i64>((d / pv) % Pr), Pr);
    rec.M = Mr;
    rec.element = ZElem(K, ZpM(p, Mr));
    for (std::size_t i = 0; i < d; ++i) {
        const CycMod& s = sums[i];
        if (!s.is_constant()) throw std::logic_error("reconstruction: coefficient is not rational");
        if (s.c[0] % pv) throw PrecisionError("reconstruction: coefficient not divisible by p^v_p(d)");
        rec.element.c[i] = mulmod((s.c[0] / pv) % Pr, dinv, Pr);
    }
    return rec;
}

bool CrossCheck::all() const {
    if (!(lambda_vs_measure && lambda_vs_reconstruction && measure_vs_reconstruction)) return false;
    for (bool b : per_character)
        if (!b) return false;
    return true;
}

CrossCheck crosscheck(const FieldPtr& K, u64 p, unsigned n, u64 c, unsigned guard) {
    CrossCheck X;
    X.n = n;
    X.target = n + 1;
    X.c = c;
    X.lambda_sum = lambda_annihilator(K, p, n, c, X.target, false);
    auto Ln = level_field(K, p, n);
    X.measure = restrict_to(annihilator_measure(Ln, c, p, n), K);
    Reconstruction rec = reconstruct_annihilator(K, p, c, X.target + guard);
    if (rec.M < X.target) throw PrecisionError("crosscheck: reconstruction below target precision");
    X.reconstruction = change_precision(rec.element, X.target);
    X.lambda_vs_measure = wt_equiv(X.lambda_sum, X.measure, p, n, K);
    X.lambda_vs_reconstruction = wt_equiv(X.lambda_sum, X.reconstruction, p, n, K, true);
    X.measure_vs_reconstruction = wt_equiv(X.measure, X.reconstruction, p, n, K, true);
    const auto& chars = K->characters();
    for (std::size_t j = 0; j < chars.size(); ++j) {
        if (chars[j].trivial) {
            X.per_character.push_back(true);
            continue;
        }
        CycMod lhs = char_eval(X.lambda_sum, chars[j]);
        CycMod rhs = rec.char_values[j].reduced(X.target);
        X.per_character.push_back(lhs == rhs);
    }
    return X;
}

}  // namespace stickel
