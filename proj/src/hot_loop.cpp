#include <algorithm>
#include <thread>

#include "stickel/stickelberger.hpp"

namespace stickel {

namespace {

void validate(const LambdaSumSpec& s) {
    if (s.fn == 0 || s.pN < 2 || s.fK == 0) throw std::invalid_argument("lambda_sum: bad moduli");
    if (s.fn % s.fK != 0) throw std::invalid_argument("lambda_sum: field modulus must divide f_n");
    if (s.fn % s.p != 0) throw std::invalid_argument("lambda_sum: p must divide f_n");
    if (gcd(s.c, s.fn) != 1) throw std::invalid_argument("lambda_sum: c not coprime to f_n");
    if (!s.slot || s.slot->size() != s.fK) throw std::invalid_argument("lambda_sum: slot table size mismatch");
    if (s.nslots < 1) throw std::invalid_argument("lambda_sum: no slots");
    // coprimality is read off a mod pN and a mod fK, so f_n may only carry primes of p f_K
    u64 r = s.fn / s.fK;
    while (r % s.p == 0) r /= s.p;
    for (u64 g = gcd(r, s.fK); g > 1; g = gcd(r, s.fK)) r /= g;
    if (r != 1) throw std::invalid_argument("lambda_sum: f_n has primes outside p f_K");
}

u64 loop_end(const LambdaSumSpec& s) { return s.half ? s.fn / 2 : s.fn; }

// inverse of a mod pN by residue; 0 marks p | a
std::vector<u64> inverse_table(u64 pN, u64 p) {
    std::vector<u64> t(pN, 0);
    for (u64 a = 1; a < pN; ++a)
        if (a % p) t[a] = inv_mod(static_cast<i64>(a), pN);
    return t;
}

struct Chunk {
    u64 lo, hi;   // inclusive
};

// Accumulate over a in [lo, hi]. State per step: a' = a c^-1 mod fn, lambda, a mod pN, a mod fK.
void run_chunk(const LambdaSumSpec& s, const std::vector<u64>& inv, Chunk ch, std::vector<u64>& out) {
    const u64 fn = s.fn, c = s.c, pN = s.pN, fK = s.fK;
    const std::vector<int>& slot = *s.slot;
    const u64 cinv = inv_mod(static_cast<i64>(c % fn), fn);
    const u128 cc = static_cast<u128>(cinv) * c;
    const i64 k0 = static_cast<i64>((cc - 1) / fn);   // exact since cinv c = 1 mod fn
    if ((cc - 1) % fn != 0) throw std::logic_error("lambda_sum: inverse check failed");

    u64 ap = static_cast<u64>(static_cast<u128>(ch.lo % fn) * cinv % fn);
    auto exact_lambda = [&](u64 a, u64 apv) {
        i128 num = static_cast<i128>(apv) * c - static_cast<i128>(a);
        if (num % static_cast<i128>(fn) != 0) throw std::logic_error("lambda_sum: non-exact lambda");
        return static_cast<i64>(num / static_cast<i128>(fn));
    };
    i64 lam = exact_lambda(ch.lo, ap);
    u64 rp = ch.lo % pN, rK = ch.lo % fK;

    std::vector<u64> acc(s.nslots, 0);
    std::vector<u64> total(s.nslots, 0);
    // each term < c * pN; flush before the u64 accumulators can overflow
    const u64 maxterm = std::max<u64>(1, static_cast<u64>(c) * pN);
    const u64 block = std::max<u64>(1, (u64(1) << 63) / maxterm);
    u64 inblock = 0;

    for (u64 a = ch.lo;; ++a) {
        const u64 iv = inv[rp];
        const int sl = slot[rK];
        if (iv && sl >= 0) acc[sl] += static_cast<u64>(lam) * iv;
        if (++inblock == block || a == ch.hi) {
            for (int k = 0; k < s.nslots; ++k) {
                total[k] = addmod(total[k], acc[k] % pN, pN);
                acc[k] = 0;
            }
            inblock = 0;
            if (exact_lambda(a, ap) != lam) throw std::logic_error("lambda_sum: incremental lambda drifted");
            if (a == ch.hi) break;
        }
        // a -> a + 1
        u64 nap = ap + cinv;
        i64 step = k0;
        if (nap >= fn) {
            nap -= fn;
            step -= static_cast<i64>(c);
        }
        ap = nap;
        lam += step;
        if (++rp == pN) rp = 0;
        if (++rK == fK) rK = 0;
    }
    out = std::move(total);
}

}  // namespace

std::vector<u64> lambda_sum(const LambdaSumSpec& s) {
    validate(s);
    const u64 end = loop_end(s);
    std::vector<u64> res(s.nslots, 0);
    if (end == 0) return res;
    const auto inv = inverse_table(s.pN, s.p);
    unsigned T = std::max(1u, s.threads);
    if (end < 100000) T = 1;
    std::vector<Chunk> chunks;
    for (unsigned t = 0; t < T; ++t) {
        u64 lo = 1 + end / T * t;
        u64 hi = (t + 1 == T) ? end : end / T * (t + 1);
        if (lo <= hi) chunks.push_back({lo, hi});
    }
    std::vector<std::vector<u64>> outs(chunks.size());
    if (chunks.size() == 1) {
        run_chunk(s, inv, chunks[0], outs[0]);
    } else {
        std::vector<std::thread> th;
        std::vector<std::exception_ptr> errs(chunks.size());
        for (std::size_t i = 0; i < chunks.size(); ++i)
            th.emplace_back([&, i] {
                try {
                    run_chunk(s, inv, chunks[i], outs[i]);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            });
        for (auto& t : th) t.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    for (auto& o : outs)
        for (int k = 0; k < s.nslots; ++k) res[k] = addmod(res[k], o[k], s.pN);
    return res;
}

std::vector<u64> lambda_sum_reference(const LambdaSumSpec& s) {
    validate(s);
    const u64 end = loop_end(s);
    std::vector<u64> res(s.nslots, 0);
    for (u64 a = 1; a <= end; ++a) {
        if (gcd(a, s.fn) != 1) continue;
        i64 lam = lambda_coeff(a, s.c, s.fn);
        u64 u = mulmod(static_cast<u64>(lam) % s.pN, inv_mod(static_cast<i64>(a % s.pN), s.pN), s.pN);
        int sl = (*s.slot)[a % s.fK];
        if (sl < 0) throw std::logic_error("lambda_sum_reference: coprime residue without slot");
        res[sl] = addmod(res[sl], u, s.pN);
    }
    return res;
}

}  // namespace stickel
