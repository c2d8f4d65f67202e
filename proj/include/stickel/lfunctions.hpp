#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stickel/padic_cyclo.hpp"
#include "stickel/stickelberger.hpp"

namespace stickel {

// eta = prod_{a in H} (1 - x^a) in the ring at the field modulus (the norm of 1 - zeta_f down to K).
CycloElem cyclotomic_number(const AbelianField& K, RingPtr R);
ExactCyclo cyclotomic_number_exact(const AbelianField& K);
// N_{Q(zeta_f)/Q(zeta_m)}(1 - zeta_f) = prod over a = 1 mod m, a prime to f, of (1 - x^a), exactly.
ExactCyclo cyclotomic_norm_exact(u64 f, u64 m);

// tau(chi) = sum_a chi(a) zeta_{f_chi}^a over a prime to f_chi, bi-cyclotomic over R; f_chi must divide R->f.
BiCyclo gauss_sum(const DirichletCharacter& chi, RingPtr R);

// L_p(1, chi) = euler * gauss_log * scale with
//   euler = p - chi(p), gauss_log = tau(chi) S / p, scale = -1/f_chi,
//   S = sum over tau in Gal(k_chi/Q) of chi^-1(tau) log(eta_{k_chi}^tau).
struct LpValue {
    DirichletCharacter chi;
    u64 p = 2;
    unsigned M = 1;          // precision of value
    CycMod euler, gauss_log, value;
    u64 scale = 0;           // -f_chi^-1 mod p^M
    NormVal valuation;       // of N_{Q(y)/Q}(value)
};
// Requires chi nontrivial and p not dividing f_chi. Work precision is M + 1.
LpValue lp_at_1(const DirichletCharacter& chi, u64 p, unsigned M, bool frobenius_log = true);

// Psi_K = (1/p) sum_sigma log(eta_K^sigma) sigma^-1. coeffs[i] is the coefficient of the coset i.
struct SolomonElement {
    FieldPtr K;
    u64 p = 2;
    unsigned M = 1;          // precision of the coefficients (after dividing by p)
    std::vector<CycloElem> coeffs;
};
SolomonElement solomon_element(const FieldPtr& K, u64 p, unsigned M);
// sum_sigma psi(sigma) Psi(sigma), a bi-cyclotomic element over the coefficient ring.
BiCyclo solomon_char_value(const SolomonElement& S, const DirichletCharacter& psi);
// same with psi taking Teichmuller values in Z_p (needs psi.order | p - 1); k-th power of the chosen root
CycloElem solomon_teichmuller_value(const SolomonElement& S, const DirichletCharacter& psi);
// Modified normalization: C_chi * sum_sigma chi^-1(sigma) log(eta^sigma) with C_chi = -(p - chi(p)) tau / (p f_chi).
CycMod solomon_modified_value(const SolomonElement& S, const DirichletCharacter& chi);
// Norm of Psi to a subfield k: coefficients summed over the cosets of Gal(K/k).
SolomonElement solomon_norm_to(const SolomonElement& S, const FieldPtr& k);
bool solomon_is_zero(const SolomonElement& S);

// The psi(sigma) as an element of Z/p^M when psi.order | p - 1 (Teichmuller lift of y).
u64 teichmuller_char_value(const DirichletCharacter& psi, u64 a, u64 p, unsigned M);

// Characters grouped into Galois orbits (chi ~ chi^a, gcd(a, order) = 1); trivial character skipped.
std::vector<std::vector<int>> character_orbits(const AbelianField& K);

struct AnalyticValuation {
    int total = 0;             // v_p(#T_K) predicted: sum + n0 - (#chars) v_p(2)
    int lp_product = 0;        // v_p(prod_{chi != 1} L_p(1, chi))
    unsigned n0 = 0;
    std::vector<LpValue> values;   // one per orbit representative
    std::vector<int> orbit_sizes;
};
AnalyticValuation analytic_valuation(const FieldPtr& K, u64 p, unsigned M);

// Euler product at the primes of f_K that divide neither p nor f_chi: prod (1 - chi(l)/l).
CycMod euler_product(const AbelianField& K, const DirichletCharacter& chi, u64 p, unsigned M);

// Character reconstruction: x(sigma) = (1/d) sum_{psi != 1} psi^-1(sigma) (1 - psi(c)) Euler_psi L_p(1, psi), mod p^M.
struct Reconstruction {
    ZElem element;
    std::vector<CycMod> char_values;   // (1 - psi(c)) Euler L_p per character (trivial: 0)
    unsigned M = 1;
};
Reconstruction reconstruct_annihilator(const FieldPtr& K, u64 p, u64 c, unsigned M);

struct CrossCheck {
    unsigned n = 0, target = 1;
    u64 c = 1;
    ZElem lambda_sum, measure, reconstruction;
    bool lambda_vs_measure = false, lambda_vs_reconstruction = false, measure_vs_reconstruction = false;
    std::vector<bool> per_character;   // psi(A) = (1 - psi(c)) Euler L_p mod p^target (trivial: true)
    bool all() const;
};
// Three-way agreement at level n (target = n + 1). The measure is computed on L_n and restricted to K.
CrossCheck crosscheck(const FieldPtr& K, u64 p, unsigned n, u64 c, unsigned guard = 5);

}  // namespace stickel
