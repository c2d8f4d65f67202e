#include "stickel/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <sstream>

namespace stickel {

// ---------------------------------------------------------------- units

UnitGroupModF::UnitGroupModF(u64 f) : f_(f) {
    if (f == 0) throw std::invalid_argument("modulus must be positive");
    for (auto& [r, e] : factorize(f)) {
        u64 pk = ipow(r, e);
        if (r == 2) {
            if (e >= 2) pieces_.push_back({pk, pk - 1, 2, 1, {}, {}, 0, 0});
            if (e >= 3) pieces_.push_back({pk, 5, pk / 4, 2, {}, {}, 0, 0});
        } else {
            u64 g = smallest_primitive_root(pk);
            pieces_.push_back({pk, g, pk / r * (r - 1), 0, {}, {}, 0, 0});
        }
    }
    for (auto& pc : pieces_) {
        // CRT lift: pc.local mod pc.pk, 1 modulo the cofactor
        u64 other = f_ / pc.pk;
        u64 g = pc.local;
        if (other > 1) {
            u64 t = mulmod(submod(g % pc.pk, 1 % pc.pk, pc.pk), inv_mod(static_cast<i64>(other % pc.pk), pc.pk), pc.pk);
            g = 1 + t * other;
        }
        gens_.push_back(g % f_);
        orders_.push_back(pc.order);
        exponent_ = lcm(exponent_, pc.order);
        if (pc.kind == 1) continue;
        if (pc.pk <= (1u << 21)) {
            pc.table.assign(pc.pk, 0);
            u64 x = 1;
            for (u64 k = 0; k < pc.order; ++k) {
                pc.table[x] = static_cast<std::uint32_t>(k);
                x = mulmod(x, pc.local, pc.pk);
            }
        } else {
            u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(pc.order))));
            u64 x = 1;
            for (u64 k = 0; k < m; ++k) {
                pc.baby.emplace(x, static_cast<std::uint32_t>(k));
                x = mulmod(x, pc.local, pc.pk);
            }
            pc.giant_step = m;
            pc.giant = inv_mod(static_cast<i64>(x), pc.pk);
        }
    }
}

u64 UnitGroupModF::dlog_piece(const Piece& pc, u64 a) const {
    a %= pc.pk;
    switch (pc.kind) {
        case 1:
            return (a % 4 == 1) ? 0 : 1;
        case 2:
            if (a % 4 != 1) a = pc.pk - a;
            [[fallthrough]];
        default:
            if (!pc.table.empty()) return pc.table[a];
            for (u64 i = 0; i < pc.giant_step + 1; ++i) {
                auto it = pc.baby.find(a);
                if (it != pc.baby.end()) return (i * pc.giant_step + it->second) % pc.order;
                a = mulmod(a, pc.giant, pc.pk);
            }
            throw std::logic_error("dlog failed");
    }
}

std::vector<u64> UnitGroupModF::dlog(u64 a) const {
    if (gcd(a % f_, f_) != 1 && f_ > 1) throw std::domain_error("dlog of non-unit");
    std::vector<u64> e(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) e[i] = dlog_piece(pieces_[i], a);
    return e;
}

u64 UnitGroupModF::recombine(const std::vector<u64>& e) const {
    u64 r = 1 % f_;
    for (std::size_t i = 0; i < gens_.size(); ++i) r = mulmod(r, powmod(gens_[i], e[i], f_), f_);
    return r;
}

u64 DirichletCharacter::value(u64 a) const {
    auto dl = units->dlog(a);
    const auto& ords = units->orders();
    u64 L = units->exponent();
    u64 t = 0;
    for (std::size_t i = 0; i < dl.size(); ++i) {
        u64 term = mulmod(mulmod(exps[i], dl[i], L), L / ords[i], L);
        t = addmod(t, term, L);
    }
    return t / (L / order);
}

FieldPtr character_field(const DirichletCharacter& chi) {
    const auto* prim = &chi.primitive;
    u64 m = chi.conductor;
    return AbelianField::from_predicate(
        m, [prim, m](u64 a) { return (*prim)[a % m] == 0; }, "kernel", false);
}

// ---------------------------------------------------------------- fields

namespace {

std::vector<u64> closure_add(u64 f, std::vector<u64> cur, std::vector<char>& in, u64 g) {
    // cur is a subgroup; returns the subgroup generated by cur and g
    // new cosets are tagged 2 until the power of g falls back into cur
    std::vector<u64> out = cur;
    u64 gk = g % f;
    while (in[gk] != 1) {
        for (u64 c : cur) {
            u64 x = mulmod(c, gk, f);
            if (!in[x]) {
                in[x] = 2;
                out.push_back(x);
            }
        }
        gk = mulmod(gk, g, f);
    }
    for (u64 x : out) in[x] = 1;
    return out;
}

}  // namespace

FieldPtr AbelianField::from_predicate(u64 f, const std::function<bool(u64)>& in_h, std::string kind,
                                      bool require_genuine) {
    if (f == 0) throw std::invalid_argument("modulus must be positive");
    auto K = std::shared_ptr<AbelianField>(new AbelianField());
    K->f_ = f;
    K->kind_ = std::move(kind);
    std::vector<char> inset(f, 0);
    std::vector<u64> members;
    for (u64 r = 0; r < f; ++r) {
        if (gcd(r, f) != 1) continue;
        if (in_h(r)) members.push_back(r);
    }
    // generators greedily, then check the predicate described a subgroup
    std::vector<u64> cur{1 % f};
    inset[1 % f] = 1;
    for (u64 h : members) {
        if (inset[h]) continue;
        K->h_gens_.push_back(h == 0 ? 1 : h);
        cur = closure_add(f, cur, inset, h);
    }
    if (cur.size() != members.size())
        throw std::invalid_argument("predicate does not define a subgroup modulo " + std::to_string(f));
    for (u64 x : cur)
        if (!in_h(x)) throw std::invalid_argument("predicate not closed under multiplication");
    K->h_ = members;
    K->finish(require_genuine);
    return K;
}

FieldPtr AbelianField::from_generators(u64 f, const std::vector<u64>& gens, std::string kind,
                                       bool require_genuine) {
    if (f == 0) throw std::invalid_argument("modulus must be positive");
    std::vector<char> inset(f, 0);
    std::vector<u64> cur{1 % f};
    inset[1 % f] = 1;
    for (u64 g : gens) {
        if (gcd(g % f, f) != 1) throw std::invalid_argument("generator not coprime to modulus");
        cur = closure_add(f, cur, inset, g % f);
    }
    auto K = std::shared_ptr<AbelianField>(new AbelianField());
    K->f_ = f;
    K->kind_ = std::move(kind);
    std::sort(cur.begin(), cur.end());
    K->h_ = cur;
    // minimal generator list in ascending order, as in from_predicate
    std::vector<char> in2(f, 0);
    std::vector<u64> c2{1 % f};
    in2[1 % f] = 1;
    for (u64 h : cur) {
        if (in2[h]) continue;
        K->h_gens_.push_back(h);
        c2 = closure_add(f, c2, in2, h);
    }
    K->finish(require_genuine);
    return K;
}

void AbelianField::finish(bool require_genuine) {
    const u64 f = f_;
    coset_.assign(f, -1);
    for (u64 r = 0; r < f; ++r) {
        if (gcd(r, f) != 1 || coset_[r] >= 0) continue;
        int idx = static_cast<int>(reps_.size());
        reps_.push_back(r == 0 ? f : r);
        for (u64 h : h_) coset_[mulmod(r, h, f)] = idx;
    }
    const std::size_t d = reps_.size();
    inv_.resize(d);
    for (std::size_t i = 0; i < d; ++i) inv_[i] = index_of(inv_mod(static_cast<i64>(reps_[i] % f), f));
    if (d <= 2048) {
        mul_table_.resize(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                mul_table_[i * d + j] = index_of(mulmod(reps_[i] % f, reps_[j] % f, f));
    }
    real_ = (index_of(f == 1 ? 0 : f - 1) == 0);
    units_ = std::make_shared<UnitGroupModF>(f);

    // conductor: drop prime factors while H contains the reduction kernel
    u64 m = f;
    for (u64 r : prime_divisors(f)) {
        while (m % r == 0) {
            u64 mm = m / r;
            bool contains = true;
            for (u64 k = 0; k < f / mm && contains; ++k) {
                u64 a = (1 + k * mm) % f;
                if (gcd(a, f) != 1) continue;
                if (coset_[a] != 0) contains = false;
            }
            if (!contains) break;
            m = mm;
        }
    }
    true_conductor_ = m;
    genuine_ = (m == f);
    if (require_genuine && !genuine_ && d > 1)
        throw std::invalid_argument("modulus " + std::to_string(f) + " is not the conductor (conductor is " +
                                    std::to_string(m) + ")");
}

int AbelianField::mul(int i, int j) const {
    const std::size_t d = reps_.size();
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(i) * d + j];
    return index_of(mulmod(reps_[i] % f_, reps_[j] % f_, f_));
}

int AbelianField::pow(int i, u64 e) const { return index_of(powmod(reps_[i] % f_, e, f_)); }

u64 AbelianField::element_order(int i) const {
    u64 k = 1;
    int x = i;
    while (x != 0) {
        x = mul(x, i);
        ++k;
    }
    return k;
}

bool AbelianField::contains(const AbelianField& k) const {
    if (f_ % k.f_ != 0) return false;
    for (u64 h : h_gens_)
        if (k.coset_[h % k.f_] != 0) return false;
    return true;
}

u64 AbelianField::group_exponent() const {
    u64 e = 1;
    for (auto& c : characters()) e = lcm(e, c.order);
    return e;
}

const std::vector<DirichletCharacter>& AbelianField::characters() const {
    std::call_once(chars_once_, [this] {
        const auto& U = *units_;
        const auto& ords = U.orders();
        const u64 L = U.exponent();
        const std::size_t r = ords.size();
        std::vector<std::vector<u64>> hdl;
        for (u64 h : h_gens_) hdl.push_back(U.dlog(h));
        std::vector<u64> e(r, 0);
        std::vector<DirichletCharacter> out;
        while (true) {
            bool ok = true;
            for (auto& dl : hdl) {
                u64 t = 0;
                for (std::size_t i = 0; i < r; ++i)
                    t = addmod(t, mulmod(mulmod(e[i], dl[i], L), L / ords[i], L), L);
                if (t != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                DirichletCharacter c;
                c.modulus = f_;
                c.exps = e;
                c.units = units_;
                u64 ord = 1;
                for (std::size_t i = 0; i < r; ++i) ord = lcm(ord, ords[i] / gcd(e[i], ords[i]));
                c.order = ord;
                c.trivial = (ord == 1);
                out.push_back(std::move(c));
            }
            std::size_t i = 0;
            while (i < r) {
                if (++e[i] < ords[i]) break;
                e[i] = 0;
                ++i;
            }
            if (i == r) break;
        }
        if (out.size() != reps_.size()) throw std::logic_error("character count differs from degree");

        for (auto& c : out) {
            // conductor by removing primes while chi kills the reduction kernel
            u64 m = f_;
            for (u64 q : prime_divisors(f_)) {
                while (m % q == 0) {
                    u64 mm = m / q;
                    bool trivial_on_kernel = true;
                    for (u64 k = 0; k < f_ / mm && trivial_on_kernel; ++k) {
                        u64 a = (1 + k * mm) % f_;
                        if (gcd(a, f_) != 1) continue;
                        if (c.value(a) != 0) trivial_on_kernel = false;
                    }
                    if (!trivial_on_kernel) break;
                    m = mm;
                }
            }
            c.conductor = m;
            c.primitive.assign(m, -1);
            for (u64 a = 0; a < m; ++a) {
                if (gcd(a, m) != 1) continue;
                u64 lift = a;
                while (gcd(lift % f_, f_) != 1) lift += m;
                c.primitive[a] = static_cast<int>(c.value(lift % f_));
            }
            if (m == 1) c.primitive[0] = 0;
        }
        std::stable_sort(out.begin(), out.end(), [](const DirichletCharacter& a, const DirichletCharacter& b) {
            if (a.order != b.order) return a.order < b.order;
            if (a.conductor != b.conductor) return a.conductor < b.conductor;
            return a.exps < b.exps;
        });
        for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
        for (auto& c : out) {
            std::vector<u64> ne(r);
            for (std::size_t i = 0; i < r; ++i) ne[i] = (ords[i] - c.exps[i]) % ords[i];
            for (auto& c2 : out)
                if (c2.exps == ne) c.conj = c2.index;
        }
        chars_ = std::move(out);
    });
    return chars_;
}

FieldDesc AbelianField::desc() const {
    FieldDesc d;
    d.kind = kind_;
    d.f = f_;
    d.d = degree();
    d.gens = h_gens_;
    return d;
}

std::string AbelianField::serialize() const {
    std::ostringstream os;
    os << "kind=" << kind_ << "; f=" << f_ << "; d=" << degree() << "; gens=[";
    for (std::size_t i = 0; i < h_gens_.size(); ++i) os << (i ? "," : "") << h_gens_[i];
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- families

FieldPtr cyclotomic_field(u64 f) {
    return AbelianField::from_generators(f, {}, "cyclotomic", false);
}

FieldPtr cyclic_prime_field(u64 f, u64 d, bool require_real) {
    if (!is_prime(f)) throw std::invalid_argument("cyclic-prime: f=" + std::to_string(f) + " is not prime");
    if (d == 0 || (f - 1) % d != 0) throw std::invalid_argument("cyclic-prime: d does not divide f-1");
    const u64 e = (f - 1) / d;
    auto K = AbelianField::from_predicate(
        f, [f, e](u64 a) { return powmod(a, e, f) == 1; }, "cyclic-prime", d > 1);
    if (require_real && !K->is_real()) throw std::invalid_argument("cyclic-prime: field is not real");
    return K;
}

bool quadratic_admissible(u64 f) {
    if (f <= 1) return false;
    int v = valuation(f, 2);
    u64 M = f >> v;
    if (!is_squarefree(M)) return false;
    if (v == 1 || v > 3) return false;
    if (v == 0 && M % 4 != 1) return false;
    if (v == 2 && M % 4 == 1) return false;
    return true;
}

FieldPtr quadratic_field(u64 f) {
    if (!quadratic_admissible(f))
        throw std::invalid_argument("quadratic: f=" + std::to_string(f) + " is not a real quadratic conductor");
    const i64 D = static_cast<i64>(f);
    return AbelianField::from_predicate(
        f, [D](u64 a) { return kronecker(D, static_cast<i64>(a == 0 ? 1 : a)) == 1; }, "quadratic", true);
}

namespace {

struct QuarticPair {
    u64 q, qq;
};

QuarticPair split_quartic(u64 f) {
    auto fac = factorize(f);
    if (fac.size() != 2 || fac[0].second != 1 || fac[1].second != 1)
        throw std::invalid_argument("quartic-composite: f must be a product of two distinct primes");
    u64 a = fac[0].first, b = fac[1].first;
    auto okq = [](u64 x) { return x % 8 == 5; };
    auto okqq = [](u64 x) { return x % 8 == 1; };
    if (okq(a) && okqq(b)) return {a, b};
    if (okq(b) && okqq(a)) return {b, a};
    throw std::invalid_argument("quartic-composite: need one prime = 5 mod 8 and one prime = 1 mod 8");
}

}  // namespace

// e(a) = ind_qq(a) + 2 ind_q(a) mod 4 is the unique even quartic character of conductor q*qq
// (up to inversion); the field is its kernel.
FieldPtr quartic_composite_field(u64 f) {
    auto [q, qq] = split_quartic(f);
    const u64 zz = smallest_primitive_root(qq);
    const u64 g4 = powmod(zz, (qq - 1) / 4, qq);
    auto K = AbelianField::from_predicate(
        f,
        [=](u64 a) {
            u64 r = powmod(a % qq, (qq - 1) / 4, qq);
            u64 t = 0, x = 1;
            while (x != r) {
                x = mulmod(x, g4, qq);
                ++t;
            }
            u64 s = (powmod(a % q, (q - 1) / 2, q) == 1) ? 0 : 1;
            return (t + 2 * s) % 4 == 0;
        },
        "quartic-composite", true);
    return K;
}

FieldPtr explicit_field(u64 f, const std::vector<u64>& gens, bool require_genuine) {
    return AbelianField::from_generators(f, gens, "explicit-subgroup", require_genuine);
}

FieldPtr build_field(const FieldDesc& d) {
    FieldPtr K;
    if (d.kind == "cyclic-prime") {
        if (d.d == 0) throw std::invalid_argument("cyclic-prime requires d");
        K = cyclic_prime_field(d.f, d.d);
    } else if (d.kind == "quadratic") {
        K = quadratic_field(d.f);
    } else if (d.kind == "quartic-composite") {
        K = quartic_composite_field(d.f);
    } else if (d.kind == "explicit-subgroup") {
        K = explicit_field(d.f, d.gens, true);
    } else if (d.kind == "cyclotomic") {
        K = cyclotomic_field(d.f);
    } else {
        throw std::invalid_argument("unknown field kind '" + d.kind + "'");
    }
    if (d.d != 0 && d.d != K->degree())
        throw std::invalid_argument("declared degree " + std::to_string(d.d) + " but field has degree " +
                                    std::to_string(K->degree()));
    return K;
}

FieldDesc parse_field_desc(const std::string& text) {
    FieldDesc d;
    std::stringstream ss(text);
    std::string item;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r\n");
        auto e = s.find_last_not_of(" \t\r\n");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("field spec: expected key=value, got '" + item + "'");
        std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
        try {
            if (key == "kind") {
                d.kind = val;
            } else if (key == "f") {
                d.f = std::stoull(val);
            } else if (key == "d") {
                d.d = std::stoull(val);
            } else if (key == "gens") {
                if (val.size() < 2 || val.front() != '[' || val.back() != ']')
                    throw std::invalid_argument("gens must be a bracketed list");
                std::stringstream gs(val.substr(1, val.size() - 2));
                std::string g;
                while (std::getline(gs, g, ',')) {
                    g = trim(g);
                    if (!g.empty()) d.gens.push_back(std::stoull(g));
                }
            } else {
                throw std::invalid_argument("field spec: unknown key '" + key + "'");
            }
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const std::invalid_argument*>(&e) && std::string(e.what()).rfind("field spec", 0) == 0)
                throw;
            throw std::invalid_argument("field spec: bad value for '" + key + "': " + val);
        }
    }
    if (d.kind.empty() || d.f == 0) throw std::invalid_argument("field spec needs kind and f");
    return d;
}

u64 q_of(u64 p) { return p == 2 ? 4 : p; }

u64 conductor_Ln(u64 fK, u64 p, unsigned n) { return lcm(fK, q_of(p) * ipow(p, n)); }

FieldPtr level_field(const FieldPtr& K, u64 p, unsigned n) {
    const u64 qpn = q_of(p) * ipow(p, n);
    const u64 fn = conductor_Ln(K->modulus(), p, n);
    const u64 fK = K->modulus();
    auto Kc = K;
    return AbelianField::from_predicate(
        fn, [Kc, fK, qpn](u64 a) { return Kc->index_of(a % fK) == 0 && a % qpn == 1 % qpn; }, "level", false);
}

int artin_symbol(const AbelianField& K, u64 a) {
    if (gcd(a % K.modulus(), K.modulus()) != 1 && K.modulus() > 1)
        throw std::domain_error("artin_symbol: gcd(a, f) != 1");
    return K.index_of(a);
}

unsigned cyclotomic_layer(const AbelianField& K, u64 p) {
    unsigned n0 = 0;
    for (unsigned k = 1;; ++k) {
        u64 mod = (p == 2) ? ipow(2, k + 2) : ipow(p, k + 1);
        if (K.modulus() % mod != 0) break;
        bool inside = true;
        for (u64 h : K.subgroup_generators()) {
            u64 a = h % mod;
            bool ok = (p == 2) ? (a == 1 || a == mod - 1) : (powmod(a, p - 1, mod) == 1);
            if (!ok) {
                inside = false;
                break;
            }
        }
        if (!inside) break;
        n0 = k;
    }
    return n0;
}

Splitting splitting_data(const AbelianField& K, u64 ell) {
    const u64 f = K.modulus();
    u64 lv = 1;
    while (f % (lv * ell) == 0) lv *= ell;
    const u64 fp = f / lv;
    // inertia: classes of a = 1 mod f', arbitrary unit mod ell^v
    std::vector<char> inI(K.degree(), 0);
    std::size_t e = 0;
    for (u64 k = 0; k < lv; ++k) {
        u64 a = (1 + k * fp) % f;
        if (gcd(a, f) != 1) continue;
        int i = K.index_of(a);
        if (!inI[i]) {
            inI[i] = 1;
            ++e;
        }
    }
    // Frobenius: a = ell mod f', a = 1 mod ell^v
    u64 fr;
    if (lv == 1) {
        fr = ell % f;
    } else {
        u64 t = mulmod(submod(ell % fp, 1 % fp, fp), inv_mod(static_cast<i64>(lv % fp), fp), fp);
        fr = (1 + t * lv) % f;
    }
    int F = K.index_of(fr);
    u64 res = 1;
    int x = F;
    while (!inI[x]) {
        x = K.mul(x, F);
        ++res;
    }
    Splitting s;
    s.e = e;
    s.f = res;
    s.g = K.degree() / (e * res);
    return s;
}

}  // namespace stickel
