#include "stickel/stickelberger.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace stickel {

// ================================================================ exact elements

QElem stickelberger_raw(u64 f, const FieldPtr& target, bool half) {
    if (f == 0) throw std::invalid_argument("stickelberger_raw: f = 0");
    const u64 ft = target->modulus();
    if (f % ft != 0) throw std::invalid_argument("stickelberger_raw: target modulus must divide f");
    QElem S(target, QQ{});
    const u64 end = half ? f / 2 : f;
    const mpq_class half_q(1, 2);
    for (u64 a = 1; a <= end; ++a) {
        if (gcd(a, f) != 1) continue;
        mpq_class coef = -(mpq_class(static_cast<unsigned long>(a), static_cast<unsigned long>(f)) - half_q);
        coef.canonicalize();
        int i = target->inv(target->index_of(a % ft));
        S.c[i] += coef;
    }
    return S;
}

i64 lambda_coeff(u64 a, u64 c, u64 fn) {
    if (fn == 0) throw std::invalid_argument("lambda_coeff: f_n = 0");
    if (gcd(a % fn, fn) != 1 && fn > 1) throw std::invalid_argument("lambda_coeff: a not coprime to f_n");
    if (gcd(c % fn, fn) != 1 && fn > 1) throw std::invalid_argument("lambda_coeff: c not coprime to f_n");
    u64 ap = fn == 1 ? 0 : mulmod(a % fn, inv_mod(static_cast<i64>(c % fn), fn), fn);
    i128 num = static_cast<i128>(ap) * c - static_cast<i128>(a);
    if (num % static_cast<i128>(fn) != 0) throw std::logic_error("lambda_coeff: non-exact division");
    return static_cast<i64>(num / static_cast<i128>(fn));
}

QElem stickelberger_c(const FieldPtr& L, u64 c, bool half) {
    if (c % 2 == 0) throw std::invalid_argument("stickelberger_c: c must be odd");
    const u64 fn = L->modulus();
    if (gcd(c, fn) != 1) throw std::invalid_argument("stickelberger_c: c not coprime to the modulus");
    QElem S(L, QQ{});
    const i64 shift = (1 - static_cast<i64>(c)) / 2;
    const u64 end = half ? fn / 2 : fn;
    for (u64 a = 1; a <= end; ++a) {
        if (gcd(a, fn) != 1) continue;
        i64 v = lambda_coeff(a, c, fn) + shift;
        int i = L->inv(L->index_of(a % fn));
        S.c[i] += mpq_class(static_cast<long>(v));
    }
    return S;
}

// ================================================================ recipes

std::string recipe_name(Recipe r) {
    switch (r) {
        case Recipe::CyclicPrimeOdd: return "cyclic-podd";
        case Recipe::QuadraticP2: return "quadratic-p2";
        case Recipe::QuadraticOdd: return "quadratic-podd";
        case Recipe::QuarticPrimeP2: return "quartic-prime-p2";
        case Recipe::QuarticCompositeP2: return "quartic-composite-p2";
        case Recipe::CubicPrimeP2: return "cubic-prime-p2";
        case Recipe::Generic: return "generic";
    }
    return "generic";
}

Recipe parse_recipe(const std::string& s) {
    for (Recipe r : {Recipe::CyclicPrimeOdd, Recipe::QuadraticP2, Recipe::QuadraticOdd, Recipe::QuarticPrimeP2,
                     Recipe::QuarticCompositeP2, Recipe::CubicPrimeP2, Recipe::Generic})
        if (recipe_name(r) == s) return r;
    throw std::invalid_argument("unknown recipe '" + s + "'");
}

Recipe default_recipe(const AbelianField& K, u64 p) {
    const std::size_t d = K.degree();
    const std::string& kind = K.kind();
    if (kind == "quadratic") return p == 2 ? Recipe::QuadraticP2 : Recipe::QuadraticOdd;
    if (kind == "quartic-composite" && p == 2) return Recipe::QuarticCompositeP2;
    if (kind == "cyclic-prime") {
        if (p != 2) return Recipe::CyclicPrimeOdd;
        if (d == 4) return Recipe::QuarticPrimeP2;
        if (d == 3) return Recipe::CubicPrimeP2;
    }
    return Recipe::Generic;
}

u64 c_primitive_root_rule(u64 f, u64 p) {
    const u64 z = smallest_primitive_root(f);
    const u64 m = (p == 2) ? 2 : 2 * p;
    // for p = 2 the programs reduce (1-z)/f mod p only
    const u64 fi = inv_mod(static_cast<i64>(f % m), m);
    const u64 t = mulmod(reduce_signed(1 - static_cast<i64>(z), m), fi, m);
    return z + t * f;
}

u64 c_least_nonresidue(u64 f, u64 p) {
    for (u64 cc = 2; cc <= 100; ++cc)
        if (gcd(cc, p * f) == 1 && kronecker(static_cast<i64>(f), static_cast<i64>(cc)) == -1) return cc;
    throw std::invalid_argument("no non-residue c <= 100 for f = " + std::to_string(f));
}

u64 c_quartic_composite(u64 q, u64 qq) {
    const u64 f = q * qq;
    const u64 z = smallest_primitive_root(q), zz = smallest_primitive_root(qq);
    for (u64 cc = 3; cc <= f; ++cc) {
        if (gcd(cc, 2 * f) != 1) continue;
        if (powmod(mulmod(cc, z, q), (q - 1) / 2, q) != 1) continue;
        if (powmod(mulmod(cc, zz, qq), (qq - 1) / 4, qq) != 1) continue;
        return cc;
    }
    throw std::invalid_argument("no admissible c for the quartic composite rule");
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

unsigned log_p(u64 P, u64 p) {
    unsigned M = 0;
    while (P % p == 0) {
        P /= p;
        ++M;
    }
    if (P != 1) throw std::invalid_argument("modulus is not a power of p");
    return M;
}

std::pair<u64, u64> quartic_pair(u64 f) {
    for (auto [q, e] : factorize(f))
        if (e == 1 && q % 8 == 5 && f % q == 0) {
            u64 qq = f / q;
            if (qq % 8 == 1 && is_prime(qq)) return {q, qq};
        }
    throw std::invalid_argument("conductor is not q*qq with q = 5, qq = 1 mod 8");
}

u64 crt2(u64 a, u64 m, u64 b, u64 n) {
    // x = a mod m, x = b mod n, gcd(m, n) = 1
    u64 t = mulmod(submod(b % n, a % n, n), inv_mod(static_cast<i64>(m % n), n), n);
    return (a + m * t) % (m * n);
}

}  // namespace

RecipeSetup setup_recipe(const FieldPtr& K, u64 p, unsigned ex, Recipe r, std::optional<u64> c_override,
                         std::optional<bool> half_override) {
    require(is_prime(p), "p must be prime");
    require(K->is_real(), "annihilators need a real field");
    RecipeSetup s;
    s.recipe = r;
    s.p = p;
    s.ex = ex;
    s.n = ex;
    s.pN = q_of(p) * ipow(p, ex);
    const u64 f = K->modulus();
    s.fn = conductor_Ln(f, p, ex);
    const std::size_t d = K->degree();
    auto cyclic_slots = [&](bool inverse) {
        require(is_prime(f) && f != p, "recipe needs a prime conductor different from p");
        u64 z = smallest_primitive_root(f);
        if (inverse) z = inv_mod(static_cast<i64>(z), f);
        u64 x = 1;
        for (std::size_t k = 0; k < d; ++k) {
            s.slots.push_back(K->index_of(x));
            x = mulmod(x, z, f);
        }
    };
    switch (r) {
        case Recipe::CyclicPrimeOdd:
            require(p % 2 == 1, "recipe cyclic-podd needs odd p");
            cyclic_slots(false);
            s.c = c_primitive_root_rule(f, p);
            s.half = true;
            s.slot_note = "column k = class of z^k, z the least primitive root mod f";
            break;
        case Recipe::QuadraticP2:
        case Recipe::QuadraticOdd:
            require(d == 2, "quadratic recipe needs a quadratic field");
            require((r == Recipe::QuadraticP2) == (p == 2), "quadratic recipe does not match p");
            s.slots = {0, 1};
            s.c = c_least_nonresidue(f, p);
            s.half = true;
            s.slot_note = "columns: residues, non-residues";
            break;
        case Recipe::QuarticPrimeP2:
            require(p == 2 && d == 4, "quartic-prime-p2 needs p = 2 and a quartic field");
            cyclic_slots(true);
            s.c = c_primitive_root_rule(f, p);
            s.half = false;
            s.slot_note = "column k = class of z^-k";
            break;
        case Recipe::CubicPrimeP2:
            require(p == 2 && d == 3, "cubic-prime-p2 needs p = 2 and a cubic field");
            cyclic_slots(false);
            s.c = c_primitive_root_rule(f, p);
            s.half = true;
            s.slot_note = "column k = class of z^k";
            break;
        case Recipe::QuarticCompositeP2: {
            require(p == 2 && d == 4, "quartic-composite-p2 needs p = 2 and a quartic field");
            auto [q, qq] = quartic_pair(f);
            const u64 zz = smallest_primitive_root(qq);
            // slot s: e(a) = ind_qq(a) + 2 ind_q(a) = -s mod 4
            for (unsigned sl = 0; sl < 4; ++sl) {
                u64 a = crt2(1, q, powmod(zz, (4 - sl) % 4, qq), qq);
                s.slots.push_back(K->index_of(a));
            }
            s.c = c_quartic_composite(q, qq);
            s.half = true;
            s.slot_note = "column s = residues with ind_qq + 2 ind_q = -s mod 4";
            break;
        }
        case Recipe::Generic: {
            for (std::size_t k = 0; k < d; ++k) s.slots.push_back(static_cast<int>(k));
            if (!c_override) {
                BestC b = best_c(K, p, 500);
                s.c = b.cs.at(0);
            }
            s.half = false;
            s.slot_note = "columns in coset order (least representatives)";
            break;
        }
    }
    if (c_override) {
        require(gcd(*c_override, 2 * p * f) == 1, "c must be coprime to 2 p f_K");
        s.c = *c_override;
    }
    if (half_override) s.half = *half_override;
    {
        std::vector<int> seen(d, 0);
        for (int i : s.slots) seen.at(i)++;
        for (int x : seen) require(x == 1, "recipe slots do not cover G_K");
    }
    return s;
}

// ================================================================ report

namespace {

CycInt lift_exact(const CycMod& m) {
    CycInt r(m.d);
    for (std::size_t i = 0; i < m.c.size(); ++i) r.c[i] = mpz_class(static_cast<unsigned long>(m.c[i]));
    return r;
}

std::string pow_string(u64 p, int v) {
    if (v < 0) return "inf";
    mpz_class x;
    mpz_ui_pow_ui(x.get_mpz_t(), p, static_cast<unsigned long>(v));
    return x.get_str();
}

int v_mpz(mpz_class x, u64 p) {
    if (x == 0) return -1;
    int v = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
        x /= static_cast<unsigned long>(p);
        ++v;
    }
    return v;
}

}  // namespace

AnnihilatorReport make_report(const FieldPtr& K, const RecipeSetup& s, const std::vector<u64>& sums) {
    AnnihilatorReport rep;
    rep.K = K;
    rep.setup = s;
    const u64 p = s.p;
    const unsigned M = log_p(s.pN, p);
    ZpM R(p, M);
    if (sums.size() != s.slots.size()) throw std::invalid_argument("make_report: column count mismatch");
    rep.coeffs = ZElem(K, R);
    for (std::size_t k = 0; k < sums.size(); ++k) rep.coeffs.c[s.slots[k]] = sums[k] % s.pN;
    rep.columns.assign(sums.begin(), sums.end());
    for (auto& x : rep.columns) x %= s.pN;
    rep.norm_reduced = rep.coeffs - scale(rep.coeffs.c[0], ZElem::norm_element(K, R));

    for (const auto& psi : K->characters()) {
        if (psi.trivial) continue;
        CharacterImage ci;
        ci.index = psi.index;
        ci.order = psi.order;
        ci.conductor = psi.conductor;
        ci.image = char_eval(rep.coeffs, psi);
        ci.valuation = norm_valuation(ci.image);
        ci.exact_norm_valuation = norm_valuation(lift_exact(ci.image), p);
        rep.per_character.push_back(std::move(ci));
    }

    auto& sm = rep.summary;
    sm["c"] = std::to_string(s.c);
    sm["pN"] = std::to_string(s.pN);
    sm["fn"] = std::to_string(s.fn);
    sm["loop"] = s.half ? "half" : "full";
    sm["recipe"] = recipe_name(s.recipe);
    const unsigned n0 = cyclotomic_layer(*K, p);
    sm["n0"] = std::to_string(n0);
    if (n0 > 0) sm["flag"] = "K cap Q_inf != Q";

    const auto& L = rep.columns;
    auto sgn = [](u64 x) { return mpz_class(static_cast<unsigned long>(x)); };
    switch (s.recipe) {
        case Recipe::CyclicPrimeOdd:
        case Recipe::Generic: {
            if (s.recipe == Recipe::CyclicPrimeOdd) {
                const u64 d = L.size();
                CycInt x(d);
                for (u64 k = 0; k < d; ++k) x = x + sgn(L[k]) * CycInt::ypow(d, static_cast<i64>(k));
                int v = norm_valuation(x, p);
                sm["nj"] = v < 0 ? "inf" : std::to_string(v);
            } else {
                std::string cv;
                for (auto& ci : rep.per_character) {
                    if (!cv.empty()) cv += ",";
                    cv += ci.exact_norm_valuation < 0 ? "inf" : std::to_string(ci.exact_norm_valuation);
                }
                sm["char_valuations"] = cv;
            }
            break;
        }
        case Recipe::QuadraticP2:
        case Recipe::QuadraticOdd: {
            mpz_class A = sgn(L[1]) - sgn(L[0]);
            sm["A'"] = A == 0 ? "0" : pow_string(p, v_mpz(A, p));
            break;
        }
        case Recipe::QuarticPrimeP2:
        case Recipe::QuarticCompositeP2: {
            mpz_class a = sgn(L[0]) - sgn(L[2]), b = sgn(L[1]) - sgn(L[3]);
            sm["Nni"] = pow_string(2, v_mpz(a * a + b * b, 2));
            if (s.recipe == Recipe::QuarticCompositeP2) {
                std::string t;
                for (std::size_t k = 0; k < 4; ++k) {
                    u64 V = L[k] ? ipow(2, valuation(L[k], 2)) : 1;
                    if (k) t += " ";
                    t += std::to_string(V) + "*" + std::to_string(L[k] / V);
                }
                sm["A"] = t;
            }
            break;
        }
        case Recipe::CubicPrimeP2: {
            mpz_class g = gcd(sgn(L[1]) - sgn(L[0]), sgn(L[2]) - sgn(L[0]));
            sm["A"] = g == 0 ? "0" : pow_string(2, v_mpz(g, 2));
            break;
        }
    }

    // certification status of the element and its multiples
    if (p != 2) {
        rep.certification.push_back({rep.element_name(), "theorem"});
    } else {
        if (s.half) {
            rep.certification.push_back({"A'_K", "conjecture"});
            rep.certification.push_back({"4A'_K", "theorem"});
        } else {
            rep.certification.push_back({"A_K", "conjecture"});
            rep.certification.push_back({"2A_K", "theorem"});
        }
        rep.certification.push_back({"A''_K", "not-certified"});
        // A' itself (K real: A = 2A'), then (A' - m N)/2 when all coefficients share a parity
        std::optional<ZElem> Ap;
        if (s.half) {
            Ap = rep.coeffs;
        } else if (M >= 2 && std::all_of(rep.coeffs.c.begin(), rep.coeffs.c.end(), [](u64 x) { return x % 2 == 0; })) {
            ZElem h(K, ZpM(2, M - 1));
            for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = rep.coeffs.c[i] / 2;
            Ap = h;
        }
        if (Ap && Ap->ring.M >= 2) {
            const auto& c = Ap->c;
            bool all_even = std::all_of(c.begin(), c.end(), [](u64 x) { return x % 2 == 0; });
            bool all_odd = std::all_of(c.begin(), c.end(), [](u64 x) { return x % 2 == 1; });
            if (all_even || all_odd) {
                const u64 P = Ap->ring.P;
                u64 m = all_even ? 0 : c[s.slots.back()];
                ZElem h(K, ZpM(2, Ap->ring.M - 1));
                for (std::size_t i = 0; i < c.size(); ++i) h.c[i] = submod(c[i], m, P) / 2;
                rep.halved = h;
            }
        }
    }
    return rep;
}

namespace {

std::vector<int> slot_table(const AbelianField& K, const std::vector<int>& slots) {
    std::vector<int> pos(K.degree(), -1);
    for (std::size_t k = 0; k < slots.size(); ++k) pos[slots[k]] = static_cast<int>(k);
    const u64 f = K.modulus();
    std::vector<int> t(f, -1);
    for (u64 a = 0; a < f; ++a)
        if (K.coprime(a)) t[a] = pos[K.index_of(a)];
    if (f == 1) t[0] = pos[0];
    return t;
}

}  // namespace

AnnihilatorReport annihilator_A(const FieldPtr& K, u64 p, unsigned ex, Recipe r, std::optional<u64> c_override,
                                std::optional<bool> half_override, unsigned threads) {
    RecipeSetup s = setup_recipe(K, p, ex, r, c_override, half_override);
    auto table = slot_table(*K, s.slots);
    LambdaSumSpec spec;
    spec.fn = s.fn;
    spec.c = s.c;
    spec.p = p;
    spec.pN = s.pN;
    spec.fK = K->modulus();
    spec.half = s.half;
    spec.slot = &table;
    spec.nslots = static_cast<int>(s.slots.size());
    spec.threads = threads;
    return make_report(K, s, lambda_sum(spec));
}

Stabilization stabilize(const FieldPtr& K, u64 p, unsigned target, Recipe r, unsigned n_start, unsigned n_max,
                        std::optional<u64> c_override) {
    Stabilization st;
    const u64 Pt = ipow(p, target);
    unsigned n = n_start;
    while (q_of(p) * ipow(p, n) < Pt) ++n;
    std::vector<u64> prev;
    bool have = false;
    for (; n <= n_max; ++n) {
        AnnihilatorReport rep = annihilator_A(K, p, n, r, c_override);
        std::vector<u64> key;
        for (int i : rep.setup.slots) key.push_back(rep.norm_reduced.c[i] % Pt);
        st.history.push_back(key);
        if (have && key == prev) {
            st.n = n;
            st.report = std::move(rep);
            return st;
        }
        prev = key;
        have = true;
    }
    throw PrecisionError("stabilize: coefficients did not settle below p^" + std::to_string(target) + " by n = " +
                         std::to_string(n_max));
}

ZElem lambda_annihilator(const FieldPtr& K, u64 p, unsigned n, u64 c, unsigned M, bool half, unsigned threads) {
    std::vector<int> slots;
    for (std::size_t k = 0; k < K->degree(); ++k) slots.push_back(static_cast<int>(k));
    auto table = slot_table(*K, slots);
    LambdaSumSpec spec;
    spec.fn = conductor_Ln(K->modulus(), p, n);
    spec.c = c;
    spec.p = p;
    spec.pN = ipow(p, M);
    spec.fK = K->modulus();
    spec.half = half;
    spec.slot = &table;
    spec.nslots = static_cast<int>(slots.size());
    spec.threads = threads;
    auto sums = lambda_sum(spec);
    ZElem r(K, ZpM(p, M));
    for (std::size_t k = 0; k < sums.size(); ++k) r.c[k] = sums[k];
    return r;
}

// ================================================================ measure

ZElem annihilator_measure(const FieldPtr& Ln, u64 c, u64 p, unsigned n) {
    const u64 qpn = q_of(p) * ipow(p, n);
    const u64 fn = Ln->modulus();
    if (fn % qpn != 0) throw std::invalid_argument("annihilator_measure: modulus not divisible by q p^n");
    if (gcd(c, fn) != 1) throw std::invalid_argument("annihilator_measure: c not coprime to f_n");
    const u64 phin = euler_phi(qpn);
    const u64 P = ipow(p, n + 1);
    // the quotient is only p-integral: divide by the p-part exactly, invert the rest mod P
    const u64 D = fn * phin;
    const u64 Dp = ipow(p, static_cast<unsigned>(valuation(D, p)));
    const u64 Drinv = inv_mod(static_cast<i64>((D / Dp) % P), P);
    const u128 big = static_cast<u128>(Dp) * P;
    if (big >> 63) throw std::overflow_error("annihilator_measure: modulus too large");
    const u64 Mod = static_cast<u64>(big);
    const u64 cinv = inv_mod(static_cast<i64>(c % fn), fn);
    ZElem r(Ln, ZpM(p, n + 1));
    for (u64 b = 1; b <= fn; ++b) {
        if (gcd(b, fn) != 1) continue;
        u64 ap = mulmod(b, cinv, fn);
        u64 x = mulmod(ap % Mod, c % Mod, Mod);
        u64 X = submod(powmod(x, phin, Mod), powmod(b % Mod, phin, Mod), Mod);
        if (X % Dp != 0) throw std::logic_error("annihilator_measure: non-exact division by the p-part of f_n phi_n");
        int i = Ln->index_of(b % fn);
        r.c[i] = addmod(r.c[i], mulmod((X / Dp) % P, Drinv, P), P);
    }
    return r;
}

// ================================================================ Euler factors and norms

EulerFactor euler_factor(const FieldPtr& k, u64 ell, u64 p, unsigned M) {
    EulerFactor e;
    ZpM R(p, M);
    if (ell == p) throw std::invalid_argument("euler_factor: ell = p is outside the product range");
    if (k->modulus() % ell == 0) {
        e.elem = ZElem::identity(k, R);
        e.trivial = true;
        return e;
    }
    u64 li = inv_mod(static_cast<i64>(ell % R.P), R.P);
    e.elem = ZElem::identity(k, R) - scale(li, sigma(k, R, ell));
    return e;
}

CycMod euler_factor_char(const DirichletCharacter& chi, u64 ell, u64 p, unsigned M) {
    const u64 d = chi.order;
    if (ell == p) throw std::invalid_argument("euler_factor_char: ell = p");
    if (chi.conductor % ell == 0) return CycMod::scalar(d, p, M, 1);
    int t = chi.primitive_value(ell % chi.conductor);
    u64 P = ipow(p, M);
    u64 li = inv_mod(static_cast<i64>(ell % P), P);
    return CycMod::scalar(d, p, M, 1) - li * CycMod::ypow(d, p, M, t);
}

NormRelation norm_relation_check(u64 f, u64 m, std::optional<u64> c, FieldPtr target) {
    if (m == 0 || f % m != 0) throw std::invalid_argument("norm_relation_check: m must divide f");
    auto Qf = cyclotomic_field(f);
    auto Qm = cyclotomic_field(m);
    QElem Sf = stickelberger_raw(f, Qf);
    QElem Sm = stickelberger_raw(m, Qm);
    if (c) {
        if (gcd(*c, f) != 1) throw std::invalid_argument("norm_relation_check: c not coprime to f");
        auto delta = [&](const FieldPtr& G) {
            QElem d = QElem::identity(G, QQ{});
            int i = G->inv(G->index_of(*c % G->modulus()));
            d.c[i] -= mpq_class(static_cast<unsigned long>(*c));
            return d;
        };
        Sf = delta(Qf) * Sf;
        Sm = delta(Qm) * Sm;
    }
    NormRelation nr;
    nr.euler = QElem::identity(Qm, QQ{});
    for (u64 ell : prime_divisors(f)) {
        if (m % ell == 0) continue;
        QElem e = QElem::identity(Qm, QQ{});
        int i = Qm->inv(Qm->index_of(ell % m));
        e.c[i] -= 1;
        nr.euler = nr.euler * e;
    }
    nr.lhs = restrict_to(Sf, Qm);
    nr.rhs = nr.euler * Sm;
    if (target) {
        nr.lhs = restrict_to(nr.lhs, target);
        nr.rhs = restrict_to(nr.rhs, target);
    }
    nr.holds = nr.lhs == nr.rhs;
    return nr;
}

FieldPtr real_subfield(const FieldPtr& L) {
    if (L->is_real()) return L;
    std::vector<u64> gens = L->subgroup_generators();
    gens.push_back(L->modulus() - 1);
    return AbelianField::from_generators(L->modulus(), gens, "real-subfield", false);
}

MeasureNormCheck measure_norm_check(const FieldPtr& K, const FieldPtr& k, u64 p, unsigned n, u64 c) {
    if (!K->contains(*k)) throw std::invalid_argument("measure_norm_check: k is not a subfield of K");
    auto Ln = level_field(K, p, n);
    auto ln = level_field(k, p, n);
    ZElem A = annihilator_measure(Ln, c, p, n);
    ZElem a = annihilator_measure(ln, c, p, n);
    ZElem E = ZElem::identity(ln, ZpM(p, n + 1));
    for (u64 ell : prime_divisors(Ln->modulus())) {
        if (ln->modulus() % ell == 0) continue;
        E = E * euler_factor(ln, ell, p, n + 1).elem;
    }
    auto R = real_subfield(ln);
    MeasureNormCheck out;
    out.lhs = restrict_to(restrict_to(A, ln), R);
    out.rhs = restrict_to(E * a, R);
    out.holds = out.lhs == out.rhs;
    return out;
}

// ================================================================ c selection

namespace {

struct ValCache {
    u64 p;
    std::map<std::vector<i64>, int> memo;
    // v_p(N(sum_i w_i (1 - y^t_i))) in Z[y]/Phi_d; INT_MAX when zero
    int eval(u64 d, const std::vector<u64>& ts, const std::vector<u64>& ws) {
        std::vector<i64> key{static_cast<i64>(d)};
        for (std::size_t i = 0; i < ts.size(); ++i) {
            key.push_back(static_cast<i64>(ts[i]));
            key.push_back(static_cast<i64>(ws[i]));
        }
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        CycInt x(d);
        for (std::size_t i = 0; i < ts.size(); ++i)
            x = x + mpz_class(static_cast<unsigned long>(ws[i])) *
                        (CycInt::scalar(d, 1) - CycInt::ypow(d, static_cast<i64>(ts[i])));
        int v = norm_valuation(x, p);
        if (v < 0) v = std::numeric_limits<int>::max();
        memo[key] = v;
        return v;
    }
};

}  // namespace

BestC best_c(const FieldPtr& K, u64 p, u64 c_bound) {
    const u64 f = K->modulus();
    const std::size_t d = K->degree();
    // least c per coset
    std::vector<u64> rep_c(d, 0);
    for (u64 c = 2; c <= c_bound; ++c)
        if (gcd(c, 2 * p * f) == 1) {
            int i = K->index_of(c % f);
            if (!rep_c[i]) rep_c[i] = c;
        }
    std::vector<u64> cands;
    for (u64 c : rep_c)
        if (c) cands.push_back(c);
    std::sort(cands.begin(), cands.end());
    if (cands.empty()) throw std::invalid_argument("best_c: empty search space");
    const auto& chars = K->characters();
    ValCache vc{p, {}};
    BestC best;
    best.score = std::numeric_limits<int>::max();

    auto score_of = [&](const std::vector<u64>& cs, const std::vector<u64>& ws, std::vector<int>& per) {
        int sc = 0;
        per.clear();
        for (const auto& psi : chars) {
            if (psi.trivial) continue;
            std::vector<u64> ts;
            for (u64 c : cs) ts.push_back(psi.value(c % f));
            int v = vc.eval(psi.order, ts, ws);
            per.push_back(v);
            sc = std::max(sc, v);
        }
        return sc;
    };
    auto consider = [&](const std::vector<u64>& cs, const std::vector<u64>& ws) {
        std::vector<int> per;
        int sc = score_of(cs, ws, per);
        if (sc < best.score) {
            best.score = sc;
            best.cs = cs;
            best.lambdas = ws;
            best.per_character = per;
        }
    };

    if (cyclic_generator(*K) >= 0 || d == 1) {
        for (u64 c : cands) consider({c}, {1});
    } else {
        // delta = sum lambda_i (1 - sigma_ci), as many terms as the group needs generators
        std::size_t r = 2;
        auto generates = [&](const std::vector<u64>& cs) {
            std::vector<u64> gens;
            for (u64 c : cs) gens.push_back(c % f);
            for (u64 h : K->subgroup_generators()) gens.push_back(h);
            auto sub = AbelianField::from_generators(f, gens, "probe", false);
            return sub->degree() == 1;
        };
        std::vector<std::size_t> idx;
        std::function<bool(std::size_t, std::size_t)> any_gen = [&](std::size_t start, std::size_t left) -> bool {
            if (left == 0) {
                std::vector<u64> cs;
                for (auto i : idx) cs.push_back(cands[i]);
                return generates(cs);
            }
            for (std::size_t i = start; i < cands.size(); ++i) {
                idx.push_back(i);
                bool ok = any_gen(i + 1, left - 1);
                idx.pop_back();
                if (ok) return true;
            }
            return false;
        };
        while (r < 6 && !any_gen(0, r)) ++r;
        const u64 wmax = p == 2 ? 1 : p - 1;
        std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t left) {
            if (left == 0) {
                std::vector<u64> cs;
                for (auto i : idx) cs.push_back(cands[i]);
                if (!generates(cs)) return;
                std::vector<u64> ws(cs.size(), 1);
                // first weight fixed to 1, others run over 1..p-1
                std::function<void(std::size_t)> wl = [&](std::size_t j) {
                    if (j == ws.size()) {
                        consider(cs, ws);
                        return;
                    }
                    for (u64 w = 1; w <= wmax; ++w) {
                        ws[j] = w;
                        wl(j + 1);
                    }
                };
                wl(1);
                return;
            }
            for (std::size_t i = start; i < cands.size(); ++i) {
                idx.push_back(i);
                walk(i + 1, left - 1);
                idx.pop_back();
            }
        };
        walk(0, r);
    }
    if (best.cs.empty()) throw std::invalid_argument("best_c: no admissible c");
    return best;
}

// ================================================================ fixed points

FixedPointH fixed_point_h(const FieldPtr& K, const FieldPtr& k, u64 p) {
    if (!K->contains(*k)) throw std::invalid_argument("fixed_point_h: k is not a subfield of K");
    const std::size_t deg = K->degree() / k->degree();
    u64 t = deg;
    int r = 0;
    while (t % p == 0) {
        t /= p;
        ++r;
    }
    if (t != 1) throw std::invalid_argument("fixed_point_h: K/k is not a p-extension");
    FixedPointH out;
    out.r = static_cast<unsigned>(r);
    out.n0 = cyclotomic_layer(*k, p);
    const int base = static_cast<int>(out.n0) + r;
    int mn = base, esum = 0;
    for (u64 ell : prime_divisors(K->modulus())) {
        if (ell == p) continue;
        Splitting sK = splitting_data(*K, ell), sk = splitting_data(*k, ell);
        if (sK.e == sk.e) continue;   // unramified in K/k
        RamifiedPrime rp;
        rp.ell = ell;
        if (p == 2) {
            rp.nu = valuation(ell * ell - 1, 2) - 3;
        } else {
            unsigned kk = 0;
            u64 Pk = 1;
            while (Pk <= (u64(1) << 62) / p) {
                Pk *= p;
                ++kk;
            }
            rp.nu = residue_valuation(submod(powmod(ell % Pk, p - 1, Pk), 1, Pk), p, kk) - 1;
        }
        rp.phi = valuation(sK.f, p);
        rp.gamma = valuation(sK.g / sk.g, p);
        rp.e = valuation(sK.e / sk.e, p);
        rp.primes_in_k = sk.g;
        mn = std::min(mn, rp.nu + rp.phi + rp.gamma);
        esum += rp.e * static_cast<int>(sk.g);
        out.primes.push_back(rp);
    }
    out.h = mn - base + esum;
    return out;
}

}  // namespace stickel
