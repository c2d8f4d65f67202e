#include "stickel/padic_cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace stickel {

// ================================================================ ring

RingPtr CycloRing::make(u64 f, u64 p, unsigned M) {
    if (f == 0) throw std::invalid_argument("cyclo ring: f = 0");
    if (M == 0) throw std::invalid_argument("cyclo ring: precision must be positive");
    if (!is_prime(p)) throw std::invalid_argument("cyclo ring: p must be prime");
    auto r = std::make_shared<CycloRing>();
    r->f = f;
    r->p = p;
    r->M = M;
    r->P = ipow(p, M);
    r->phi = cyclotomic_poly(f);
    r->n = r->phi.size() - 1;
    for (std::size_t j = 0; j < r->n; ++j)
        if (r->phi[j]) r->phi_terms.push_back({j, r->phi[j]});
    return r;
}

namespace {

void check_same(const CycloElem& a, const CycloElem& b) {
    if (!a.R || !b.R) throw std::invalid_argument("cyclo: uninitialised element");
    if (a.R != b.R && (a.R->f != b.R->f || a.R->P != b.R->P))
        throw std::invalid_argument("cyclo: elements of different rings");
}

// v holds residues mod P, any length; returns the reduction mod Phi_f, length n
std::vector<u64> reduce(std::vector<u64> v, const CycloRing& R) {
    const u64 P = R.P, f = R.f;
    const std::size_t n = R.n;
    if (v.size() > f) {
        for (std::size_t i = f; i < v.size(); ++i) v[i % f] = addmod(v[i % f], v[i], P);
        v.resize(f);
    }
    for (std::size_t i = v.size(); i-- > n;) {
        u64 t = v[i];
        if (!t) continue;
        for (auto [j, cj] : R.phi_terms) {
            u64 m = mulmod(t, static_cast<u64>(cj < 0 ? -cj : cj) % P, P);
            u64& w = v[i - n + j];
            w = cj > 0 ? submod(w, m, P) : addmod(w, m, P);
        }
        v[i] = 0;
    }
    v.resize(n, 0);
    return v;
}

// ---------------------------------------------------------------- F_p[x] helpers

using Fp = std::vector<u64>;

void trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a = q b + r over F_p
void divmod(const Fp& a, const Fp& b, u64 p, Fp& q, Fp& r) {
    r = a;
    trim(r);
    q.clear();
    if (b.empty()) throw std::domain_error("F_p division by zero");
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    const u64 binv = inv_mod(static_cast<i64>(b.back()), p);
    for (std::size_t i = r.size(); i-- >= b.size();) {
        u64 t = mulmod(r[i], binv, p);
        if (t) {
            std::size_t sh = i - (b.size() - 1);
            q[sh] = t;
            for (std::size_t j = 0; j < b.size(); ++j) r[sh + j] = submod(r[sh + j], mulmod(t, b[j], p), p);
        }
        if (i == 0) break;
    }
    trim(r);
    trim(q);
}

Fp fp_mul(const Fp& a, const Fp& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    trim(r);
    return r;
}

Fp fp_sub(const Fp& a, const Fp& b, u64 p) {
    Fp r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = submod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}

// s with s u = 1 mod (Phi, p), or empty when gcd is not constant
Fp fp_inverse(const Fp& u, const Fp& phi, u64 p) {
    Fp r0 = phi, r1 = u, s0, s1{1};
    trim(r0);
    trim(r1);
    if (r1.empty()) return {};
    while (!r1.empty()) {
        Fp q, r;
        divmod(r0, r1, p, q, r);
        Fp s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) return {};
    u64 k = inv_mod(static_cast<i64>(r0[0]), p);
    for (auto& x : s0) x = mulmod(x, k, p);
    return s0;
}

}  // namespace

// ================================================================ elements

CycloElem CycloElem::scalar(RingPtr r, i64 a) {
    CycloElem e(r);
    e.c[0] = reduce_signed(a, r->P);
    return e;
}

CycloElem CycloElem::xpow(RingPtr r, i64 e) {
    const u64 f = r->f;
    u64 k = reduce_signed(e, f);
    std::vector<u64> v(std::max<std::size_t>(k + 1, r->n), 0);
    v[k] = 1 % r->P;
    CycloElem x(r);
    x.c = reduce(std::move(v), *r);
    return x;
}

CycloElem CycloElem::one_minus_xpow(RingPtr r, i64 e) { return scalar(r, 1) - xpow(r, e); }

CycloElem CycloElem::from_poly(RingPtr r, const std::vector<i64>& poly) {
    std::vector<u64> v(std::max(poly.size(), r->n), 0);
    for (std::size_t i = 0; i < poly.size(); ++i) v[i] = reduce_signed(poly[i], r->P);
    CycloElem x(r);
    x.c = reduce(std::move(v), *r);
    return x;
}

bool CycloElem::is_zero() const {
    for (u64 x : c)
        if (x) return false;
    return true;
}

bool CycloElem::is_constant() const {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i]) return false;
    return true;
}

bool CycloElem::is_one() const { return is_constant() && c[0] == 1 % R->P; }

std::string CycloElem::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

CycloElem operator+(const CycloElem& a, const CycloElem& b) {
    check_same(a, b);
    CycloElem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = addmod(a.c[i], b.c[i], a.R->P);
    return r;
}

CycloElem operator-(const CycloElem& a, const CycloElem& b) {
    check_same(a, b);
    CycloElem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = submod(a.c[i], b.c[i], a.R->P);
    return r;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    check_same(a, b);
    const CycloRing& R = *a.R;
    const std::size_t n = R.n;
    const u64 P = R.P;
    std::vector<u64> out(2 * n - 1, 0);
    // accumulate without reduction while it cannot overflow
    const u128 bound = static_cast<u128>(P - 1) * (P - 1) * n;
    if (bound < (static_cast<u128>(1) << 64)) {
        std::vector<u64> acc(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const u64 x = a.c[i];
            if (!x) continue;
            u64* dst = acc.data() + i;
            const u64* src = b.c.data();
            for (std::size_t j = 0; j < n; ++j) dst[j] += x * src[j];
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc[i] % P;
    } else {
        std::vector<u128> acc(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const u64 x = a.c[i];
            if (!x) continue;
            for (std::size_t j = 0; j < n; ++j) {
                acc[i + j] += static_cast<u128>(x) * b.c[j];
                if (acc[i + j] >> 120) acc[i + j] %= P;
            }
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<u64>(acc[i] % P);
    }
    CycloElem r(a.R);
    r.c = reduce(std::move(out), R);
    return r;
}

CycloElem operator*(u64 s, const CycloElem& a) {
    CycloElem r = a;
    s %= a.R->P;
    for (auto& x : r.c) x = mulmod(x, s, a.R->P);
    return r;
}

bool operator==(const CycloElem& a, const CycloElem& b) {
    check_same(a, b);
    return a.c == b.c;
}

CycloElem mul_one_minus_xpow(const CycloElem& u, i64 e) {
    const CycloRing& R = *u.R;
    const u64 k = reduce_signed(e, R.f);
    std::vector<u64> v(std::max<std::size_t>(R.n + k, R.n), 0);
    for (std::size_t i = 0; i < R.n; ++i) {
        v[i] = addmod(v[i], u.c[i], R.P);
        v[i + k] = submod(v[i + k], u.c[i], R.P);
    }
    CycloElem r(u.R);
    r.c = reduce(std::move(v), R);
    return r;
}

CycloElem galois(const CycloElem& u, u64 a) {
    const CycloRing& R = *u.R;
    if (gcd(a % R.f, R.f) != 1 && R.f > 1) throw std::invalid_argument("galois: a not coprime to f");
    std::vector<u64> v(std::max<std::size_t>(R.f, R.n), 0);
    for (std::size_t i = 0; i < R.n; ++i)
        if (u.c[i]) {
            std::size_t j = static_cast<std::size_t>(mulmod(i, a % R.f, R.f));
            v[j] = addmod(v[j], u.c[i], R.P);
        }
    CycloElem r(u.R);
    r.c = reduce(std::move(v), R);
    return r;
}

CycloElem pow(const CycloElem& u, const mpz_class& e) {
    if (e < 0) return pow(inverse(u), mpz_class(-e));
    CycloElem r = CycloElem::one(u.R);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = r * r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r * u;
    }
    return r;
}

CycloElem pow(const CycloElem& u, u64 e) { return pow(u, mpz_class(static_cast<unsigned long>(e))); }

namespace {
Fp phi_mod_p(const CycloRing& R) {
    Fp phi(R.phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = reduce_signed(R.phi[i], R.p);
    return phi;
}
Fp elem_mod_p(const CycloElem& u) {
    Fp a(u.c.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = u.c[i] % u.R->p;
    trim(a);
    return a;
}
}  // namespace

bool is_invertible(const CycloElem& u) { return !fp_inverse(elem_mod_p(u), phi_mod_p(*u.R), u.R->p).empty(); }

CycloElem inverse(const CycloElem& u) {
    const CycloRing& R = *u.R;
    Fp s = fp_inverse(elem_mod_p(u), phi_mod_p(R), R.p);
    if (s.empty()) throw std::domain_error("cyclo inverse: element is not a unit mod p");
    CycloElem v(u.R);
    for (std::size_t i = 0; i < s.size() && i < R.n; ++i) v.c[i] = s[i];
    const CycloElem two = CycloElem::scalar(u.R, 2);
    for (int it = 0; it < 80; ++it) {
        CycloElem uv = u * v;
        if (uv.is_one()) return v;
        v = v * (two - uv);
    }
    throw std::logic_error("cyclo inverse: Newton iteration did not converge");
}

int coeff_valuation(const CycloElem& u) {
    int v = static_cast<int>(u.R->M);
    for (u64 x : u.c) v = std::min(v, residue_valuation(x, u.R->p, u.R->M));
    return v;
}

CycloElem change_precision(const CycloElem& u, unsigned M2) {
    if (M2 > u.R->M) throw PrecisionError("cyclo: cannot raise precision");
    if (M2 == u.R->M) return u;
    auto R2 = CycloRing::make(u.R->f, u.R->p, M2);
    CycloElem r(R2);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = u.c[i] % R2->P;
    return r;
}

CycloElem divide_p(const CycloElem& u, unsigned k) {
    if (k == 0) return u;
    if (k >= u.R->M) throw PrecisionError("divide_p: nothing left after division");
    if (coeff_valuation(u) < static_cast<int>(k))
        throw std::domain_error("divide_p: element not divisible by p^" + std::to_string(k) + " (valuation " +
                                std::to_string(coeff_valuation(u)) + ")");
    auto R2 = CycloRing::make(u.R->f, u.R->p, u.R->M - k);
    const u64 pk = ipow(u.R->p, k);
    CycloElem r(R2);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (u.c[i] / pk) % R2->P;
    return r;
}

// ================================================================ logarithms

CycloElem log_series(const CycloElem& w) {
    const CycloRing& R = *w.R;
    const u64 p = R.p, P = R.P;
    CycloElem z = w - CycloElem::one(w.R);
    if (coeff_valuation(z) < 1) throw std::domain_error("log_series: argument is not 1 mod p");
    // y = z / p, known mod p^(M-1); every term carries at least one factor p
    CycloElem y(w.R);
    for (std::size_t i = 0; i < y.c.size(); ++i) y.c[i] = z.c[i] / p;
    CycloElem res(w.R), yk = CycloElem::one(w.R);
    for (u64 k = 1;; ++k) {
        // k - floor(log_p k) is a lower bound for the valuation of this and all later terms
        unsigned lg = 0;
        for (u64 t = k; t >= p; t /= p) ++lg;
        if (k - lg >= R.M) break;
        yk = yk * y;
        u64 kk = k;
        unsigned vk = 0;
        while (kk % p == 0) {
            kk /= p;
            ++vk;
        }
        const u64 e = k - vk;
        if (e >= R.M) continue;
        u64 coef = mulmod(ipow(p, static_cast<unsigned>(e)) % P, inv_mod(static_cast<i64>(kk % P), P), P);
        CycloElem term = coef * yk;
        res = (k % 2 == 1) ? res + term : res - term;
    }
    return res;
}

CycloElem iwasawa_log(const CycloElem& u) {
    const CycloRing& R = *u.R;
    const u64 p = R.p, f = R.f;
    if (f % p == 0) throw std::domain_error("iwasawa_log: p divides the conductor (ramified case not supported)");
    CycloElem Fu = galois(u, p % f);
    CycloElem w = pow(u, p) * inverse(Fu);
    CycloElem lw = log_series(w);
    const u64 pinv = f == 1 ? 0 : inv_mod(static_cast<i64>(p % f), f);
    CycloElem res(u.R), t = lw;
    u64 pk = 1 % R.P;
    for (unsigned k = 0; k < R.M; ++k) {
        t = f == 1 ? t : galois(t, pinv);
        res = res - pk * t;
        pk = mulmod(pk, p, R.P);
    }
    return res;
}

unsigned log_power_loss(u64 p) { return p == 2 ? 1 : 0; }

CycloElem iwasawa_log_power(const CycloElem& u) {
    const CycloRing& R = *u.R;
    const u64 p = R.p, f = R.f;
    if (f % p == 0) throw std::domain_error("iwasawa_log_power: p divides the conductor");
    const u64 ord = f <= 2 ? 1 : mult_order(p % f, f);
    mpz_class E;
    mpz_ui_pow_ui(E.get_mpz_t(), p, ord);
    E -= 1;
    CycloElem v = pow(u, E);
    if (p == 2) v = v * v;
    CycloElem lw = log_series(v);
    if (p == 2) lw = divide_p(lw, 1);
    mpz_class Em = E % mpz_class(static_cast<unsigned long>(lw.R->P));
    u64 Einv = inv_mod(static_cast<i64>(Em.get_ui()), lw.R->P);
    return Einv * lw;
}

NormVal ring_norm_valuation(const CycloElem& u) {
    if (is_invertible(u)) return NormVal{false, true, 0};
    const CycloRing& R = *u.R;
    if (R.n > 800) throw PrecisionError("ring_norm_valuation: degree too large for elimination");
    CycMod m(R.f, R.p, R.M);
    m.c = u.c;
    return norm_valuation(m);
}

// ================================================================ bi-cyclotomic

BiCyclo::BiCyclo(RingPtr r, u64 d_) : R(r), d(d_), c(euler_phi(d_), CycloElem(r)) {}

BiCyclo BiCyclo::from_base(const CycloElem& a, u64 d) {
    BiCyclo b(a.R, d);
    b.c[0] = a;
    return b;
}

BiCyclo BiCyclo::from_powers(RingPtr r, u64 d, const std::vector<CycloElem>& parts) {
    BiCyclo b(r, d);
    for (std::size_t j = 0; j < parts.size(); ++j) {
        if (parts[j].is_zero()) continue;
        CycInt yj = CycInt::ypow(d, static_cast<i64>(j));
        for (std::size_t i = 0; i < yj.c.size(); ++i) {
            if (yj.c[i] == 0) continue;
            i64 k = yj.c[i].get_si();
            CycloElem t = reduce_signed(k, r->P) * parts[j];
            b.c[i] = b.c[i] + t;
        }
    }
    return b;
}

bool BiCyclo::is_zero() const {
    for (auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

bool BiCyclo::is_x_constant() const {
    for (auto& x : c)
        if (!x.is_constant()) return false;
    return true;
}

CycMod BiCyclo::constant_part() const {
    if (!is_x_constant()) throw std::domain_error("BiCyclo: element still depends on x");
    CycMod m(d, R->p, R->M);
    for (std::size_t i = 0; i < c.size(); ++i) m.c[i] = c[i].c[0];
    return m;
}

BiCyclo operator+(const BiCyclo& a, const BiCyclo& b) {
    if (a.d != b.d) throw std::invalid_argument("BiCyclo: d mismatch");
    BiCyclo r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

BiCyclo operator-(const BiCyclo& a, const BiCyclo& b) {
    if (a.d != b.d) throw std::invalid_argument("BiCyclo: d mismatch");
    BiCyclo r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

BiCyclo operator*(const BiCyclo& a, const BiCyclo& b) {
    if (a.d != b.d) throw std::invalid_argument("BiCyclo: d mismatch");
    const std::size_t m = a.c.size();
    std::vector<CycloElem> prod(2 * m - 1, CycloElem(a.R));
    for (std::size_t i = 0; i < m; ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (b.c[j].is_zero()) continue;
            prod[i + j] = prod[i + j] + a.c[i] * b.c[j];
        }
    }
    const auto& phi = cyclotomic_poly(a.d);
    const u64 P = a.R->P;
    for (std::size_t i = prod.size(); i-- > m;) {
        if (prod[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (!phi[j]) continue;
            CycloElem t = reduce_signed(phi[j], P) * prod[i];
            prod[i - m + j] = prod[i - m + j] - t;
        }
        prod[i] = CycloElem(a.R);
    }
    prod.resize(m, CycloElem(a.R));
    BiCyclo r(a.R, a.d);
    r.c = std::move(prod);
    return r;
}

// ================================================================ exact

namespace {
std::vector<mpz_class> exact_reduce(std::vector<mpz_class> v, u64 f) {
    const auto& phi = cyclotomic_poly(f);
    const std::size_t n = phi.size() - 1;
    if (v.size() > f) {
        for (std::size_t i = f; i < v.size(); ++i) v[i % f] += v[i];
        v.resize(f);
    }
    for (std::size_t i = v.size(); i-- > n;) {
        if (v[i] == 0) continue;
        mpz_class t = v[i];
        for (std::size_t j = 0; j < n; ++j)
            if (phi[j]) v[i - n + j] -= t * static_cast<long>(phi[j]);
        v[i] = 0;
    }
    v.resize(n);
    return v;
}
}  // namespace

ExactCyclo::ExactCyclo(u64 f_) : f(f_), c(euler_phi(f_)) {}

ExactCyclo ExactCyclo::one(u64 f) {
    ExactCyclo r(f);
    r.c[0] = 1;
    return r;
}

ExactCyclo ExactCyclo::xpow(u64 f, i64 e) {
    u64 k = reduce_signed(e, f);
    std::vector<mpz_class> v(std::max<std::size_t>(k + 1, euler_phi(f)));
    v[k] = 1;
    ExactCyclo r(f);
    r.c = exact_reduce(std::move(v), f);
    return r;
}

ExactCyclo ExactCyclo::one_minus_xpow(u64 f, i64 e) { return one(f) - xpow(f, e); }

bool ExactCyclo::is_one() const {
    if (c.empty() || c[0] != 1) return false;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    return true;
}

std::string ExactCyclo::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i].get_str();
    os << "]";
    return os.str();
}

ExactCyclo operator*(const ExactCyclo& a, const ExactCyclo& b) {
    if (a.f != b.f) throw std::invalid_argument("ExactCyclo: conductor mismatch");
    std::vector<mpz_class> v(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    }
    ExactCyclo r(a.f);
    r.c = exact_reduce(std::move(v), a.f);
    return r;
}

ExactCyclo operator-(const ExactCyclo& a, const ExactCyclo& b) {
    if (a.f != b.f) throw std::invalid_argument("ExactCyclo: conductor mismatch");
    ExactCyclo r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

bool operator==(const ExactCyclo& a, const ExactCyclo& b) { return a.f == b.f && a.c == b.c; }

ExactCyclo galois(const ExactCyclo& u, u64 a) {
    if (gcd(a % u.f, u.f) != 1 && u.f > 1) throw std::invalid_argument("galois: a not coprime to f");
    std::vector<mpz_class> v(std::max<std::size_t>(u.f, u.c.size()));
    for (std::size_t i = 0; i < u.c.size(); ++i) v[mulmod(i, a % u.f, u.f)] += u.c[i];
    ExactCyclo r(u.f);
    r.c = exact_reduce(std::move(v), u.f);
    return r;
}

}  // namespace stickel
