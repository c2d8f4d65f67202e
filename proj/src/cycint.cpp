#include "stickel/cycint.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace stickel {

const std::vector<i64>& cyclotomic_poly(u64 n) {
    static std::mutex mu;
    static std::map<u64, std::vector<i64>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<i64> c;
    if (n == 0) throw std::invalid_argument("cyclotomic_poly(0)");
    if (n == 1) {
        c = {-1, 1};
    } else {
        // prod over d | n of (1 - x^d)^mu(n/d), as a power series cut at degree phi(n)
        const u64 deg = euler_phi(n);
        c.assign(deg + 1, 0);
        c[0] = 1;
        auto ds = divisors(n);
        for (u64 d : ds)
            if (moebius(n / d) == 1)
                for (u64 i = deg; i >= d; --i) c[i] -= c[i - d];
        for (u64 d : ds)
            if (moebius(n / d) == -1)
                for (u64 i = d; i <= deg; ++i) c[i] += c[i - d];
        if (c[deg] != 1) throw std::logic_error("cyclotomic_poly: leading coefficient");
    }
    return cache.emplace(n, std::move(c)).first->second;
}

// ------------------------------------------------------------------ exact

CycInt::CycInt(u64 d_) : d(d_), c(euler_phi(d_)) {}

CycInt CycInt::scalar(u64 d, const mpz_class& a) {
    CycInt r(d);
    r.c[0] = a;
    return r;
}

namespace {

template <class T, class Red>
void reduce_poly(std::vector<T>& v, const std::vector<i64>& phi, Red red) {
    const std::size_t n = phi.size() - 1;
    for (std::size_t i = v.size(); i-- > n;) {
        T t = v[i];
        if (t == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (phi[j] != 0) v[i - n + j] = red(v[i - n + j] - t * phi[j]);
        v[i] = 0;
    }
    v.resize(n);
}

}  // namespace

CycInt CycInt::ypow(u64 d, i64 t) {
    u64 e = reduce_signed(t, d);
    const auto& phi = cyclotomic_poly(d);
    std::vector<mpz_class> v(std::max<u64>(e + 1, phi.size() - 1));
    v[e] = 1;
    reduce_poly(v, phi, [](const mpz_class& x) { return x; });
    CycInt r(d);
    r.c = std::move(v);
    return r;
}

bool CycInt::is_zero() const {
    for (auto& x : c)
        if (x != 0) return false;
    return true;
}

std::string CycInt::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i].get_str();
    os << "]";
    return os.str();
}

static void check_same(u64 a, u64 b) {
    if (a != b) throw std::invalid_argument("cyclotomic orders differ");
}

CycInt operator+(const CycInt& a, const CycInt& b) {
    check_same(a.d, b.d);
    CycInt r(a.d);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
CycInt operator-(const CycInt& a, const CycInt& b) {
    check_same(a.d, b.d);
    CycInt r(a.d);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
CycInt operator*(const CycInt& a, const CycInt& b) {
    check_same(a.d, b.d);
    std::vector<mpz_class> v(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != 0)
            for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    reduce_poly(v, cyclotomic_poly(a.d), [](const mpz_class& x) { return x; });
    CycInt r(a.d);
    r.c = std::move(v);
    return r;
}
CycInt operator*(const mpz_class& s, const CycInt& a) {
    CycInt r = a;
    for (auto& x : r.c) x *= s;
    return r;
}
bool operator==(const CycInt& a, const CycInt& b) { return a.d == b.d && a.c == b.c; }

mpz_class norm(const CycInt& a) {
    const std::size_t n = a.c.size();
    // column j = a * y^j
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    CycInt col = a;
    CycInt y = CycInt::ypow(a.d, 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c[i];
        if (j + 1 < n) col = col * y;
    }
    // Bareiss fraction-free elimination
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

int norm_valuation(const CycInt& a, u64 p) {
    mpz_class N = norm(a);
    if (N == 0) return -1;
    mpz_class pp = p;
    return static_cast<int>(mpz_remove(N.get_mpz_t(), N.get_mpz_t(), pp.get_mpz_t()));
}

// ------------------------------------------------------------------ modular

CycMod::CycMod(u64 d_, u64 p_, unsigned M_) : d(d_), p(p_), M(M_), P(ipow(p_, M_)), c(euler_phi(d_), 0) {}

CycMod CycMod::scalar(u64 d, u64 p, unsigned M, i64 a) {
    CycMod r(d, p, M);
    r.c[0] = reduce_signed(a, r.P);
    return r;
}

CycMod CycMod::from_exact(const CycInt& a, u64 p, unsigned M) {
    CycMod r(a.d, p, M);
    mpz_class P = r.P;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        mpz_class t = a.c[i] % P;
        if (t < 0) t += P;
        r.c[i] = t.get_ui();
    }
    return r;
}

CycMod CycMod::ypow(u64 d, u64 p, unsigned M, i64 t) { return from_exact(CycInt::ypow(d, t), p, M); }

bool CycMod::is_zero() const {
    for (u64 x : c)
        if (x) return false;
    return true;
}
bool CycMod::is_constant() const {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i]) return false;
    return true;
}

CycMod CycMod::reduced(unsigned M2) const {
    if (M2 > M) throw PrecisionError("cannot raise precision");
    CycMod r(d, p, M2);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] % r.P;
    return r;
}

CycMod CycMod::galois(u64 k) const {
    CycMod r(d, p, M);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) r = r + c[i] * CycMod::ypow(d, p, M, static_cast<i64>((i * k) % d));
    return r;
}

std::string CycMod::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

static void check_same(const CycMod& a, const CycMod& b) {
    if (a.d != b.d || a.P != b.P) throw std::invalid_argument("mixed cyclotomic rings or moduli");
}

CycMod operator+(const CycMod& a, const CycMod& b) {
    check_same(a, b);
    CycMod r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = addmod(a.c[i], b.c[i], a.P);
    return r;
}
CycMod operator-(const CycMod& a, const CycMod& b) {
    check_same(a, b);
    CycMod r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = submod(a.c[i], b.c[i], a.P);
    return r;
}
CycMod operator*(const CycMod& a, const CycMod& b) {
    check_same(a, b);
    const u64 P = a.P;
    std::vector<u64> v(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i])
            for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] = addmod(v[i + j], mulmod(a.c[i], b.c[j], P), P);
    const auto& phi = cyclotomic_poly(a.d);
    const std::size_t n = phi.size() - 1;
    for (std::size_t i = v.size(); i-- > n;) {
        u64 t = v[i];
        if (!t) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (phi[j]) v[i - n + j] = submod(v[i - n + j], mulmod(t, reduce_signed(phi[j], P), P), P);
        v[i] = 0;
    }
    v.resize(n);
    CycMod r = a;
    r.c = std::move(v);
    return r;
}
CycMod operator*(u64 s, const CycMod& a) {
    CycMod r = a;
    for (auto& x : r.c) x = mulmod(x, s % a.P, a.P);
    return r;
}
bool operator==(const CycMod& a, const CycMod& b) { return a.d == b.d && a.P == b.P && a.c == b.c; }

CycMod embed(const CycMod& a, u64 D) {
    if (D % a.d != 0) throw std::invalid_argument("embed: order does not divide target");
    CycMod r(D, a.p, a.M);
    const u64 s = D / a.d;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i]) r = r + a.c[i] * CycMod::ypow(D, a.p, a.M, static_cast<i64>(i * s));
    return r;
}

int residue_valuation(u64 x, u64 p, unsigned M) {
    if (x == 0) return static_cast<int>(M);
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

NormVal norm_valuation(const CycMod& a) {
    const std::size_t n = a.c.size();
    const u64 P = a.P, p = a.p;
    std::vector<std::vector<u64>> m(n, std::vector<u64>(n));
    CycMod col = a;
    CycMod y = CycMod::ypow(a.d, a.p, a.M, 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c[i];
        if (j + 1 < n) col = col * y;
    }
    NormVal out;
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < n; ++k) {
        // full pivoting on minimal valuation
        int best = static_cast<int>(a.M) + 1;
        std::size_t bi = k, bj = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                int v = residue_valuation(m[i][j], p, a.M);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best >= static_cast<int>(a.M)) {
            zeros = n - k;
            out.resolved = false;
            out.v += static_cast<int>(a.M) * static_cast<int>(zeros);
            break;
        }
        std::swap(m[k], m[bi]);
        for (auto& row : m) std::swap(row[k], row[bj]);
        out.v += best;
        u64 pv = ipow(p, best);
        u64 unit = m[k][k] / pv;
        u64 uinv = inv_mod(static_cast<i64>(unit % P), P);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (!m[i][k]) continue;
            u64 fct = mulmod(m[i][k] / pv, uinv, P);
            for (std::size_t j = k; j < n; ++j) m[i][j] = submod(m[i][j], mulmod(fct, m[k][j], P), P);
        }
    }
    out.zero = (zeros == n);
    return out;
}

u64 teichmuller_root(u64 d, u64 p, unsigned M) {
    if ((p - 1) % d != 0) throw std::invalid_argument("teichmuller_root: d does not divide p-1");
    u64 P = ipow(p, M);
    u64 g = smallest_primitive_root(p);
    u64 w = powmod(g, (p - 1) / d, p);
    for (unsigned i = 0; i < M; ++i) w = powmod(w, p, P);
    return w;
}

}  // namespace stickel
