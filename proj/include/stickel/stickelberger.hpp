#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stickel/group_algebra.hpp"

namespace stickel {

// ---------------------------------------------------------------- exact elements

// S_L = -sum_{a <= f, (a,f)=1} (a/f - 1/2) (L/a)^-1; the half element sums a <= f/2.
QElem stickelberger_raw(u64 f, const FieldPtr& target, bool half = false);

// lambda with a'c = a + lambda f_n, a' = a c^-1 mod f_n in [0, f_n).
i64 lambda_coeff(u64 a, u64 c, u64 fn);

// S(c) = sum_a [lambda_a(c) + (1-c)/2] (L/a)^-1 over a in [1, f_n] (or [1, f_n/2]), f_n = modulus of L.
QElem stickelberger_c(const FieldPtr& L, u64 c, bool half = false);

// ---------------------------------------------------------------- hot loop

struct LambdaSumSpec {
    u64 fn = 0;        // level conductor
    u64 c = 1;         // multiplier, coprime to fn
    u64 p = 2;
    u64 pN = 2;        // power of p dividing fn; coefficients and a^-1 live mod pN
    u64 fK = 1;        // field modulus, divides fn
    bool half = false;
    const std::vector<int>* slot = nullptr;   // size fK: output slot of a mod fK, -1 when not coprime
    int nslots = 1;
    unsigned threads = 1;
};
// sum over a in [1, fn] (or [1, fn/2]) prime to fn of lambda_a(c) * a^-1, binned by slot[a mod fK], mod pN.
std::vector<u64> lambda_sum(const LambdaSumSpec& s);
// Straightforward reference implementation (same semantics, no incremental tricks).
std::vector<u64> lambda_sum_reference(const LambdaSumSpec& s);

// ---------------------------------------------------------------- recipes

enum class Recipe {
    CyclicPrimeOdd,       // cyclic of prime conductor, p odd: half loop, c = z + t f, t mod 2p
    QuadraticP2,          // quadratic, p = 2: half loop, least non-residue c
    QuadraticOdd,         // quadratic, p odd: half loop, least non-residue c
    QuarticPrimeP2,       // cyclic quartic of prime conductor, p = 2: full loop
    QuarticCompositeP2,   // quartic of conductor q*qq, p = 2: half loop
    CubicPrimeP2,         // cyclic cubic of prime conductor, p = 2: half loop
    Generic               // any real field: full loop at level n, c supplied or searched
};
std::string recipe_name(Recipe r);
Recipe parse_recipe(const std::string& s);
Recipe default_recipe(const AbelianField& K, u64 p);

struct RecipeSetup {
    Recipe recipe = Recipe::Generic;
    u64 p = 2;
    unsigned ex = 0;     // exponent input (level n = ex)
    unsigned n = 0;
    u64 pN = 2;          // q p^n, the coefficient modulus of the programs
    u64 fn = 0;
    u64 c = 1;
    bool half = false;
    std::vector<int> slots;   // K coset index of each printed column L0, L1, ...
    std::string slot_note;    // which Galois element the columns are powers of
};

// c rules of the programs
u64 c_primitive_root_rule(u64 f, u64 p);       // z + t f with t = (1-z) f^-1 mod 2p (mod 2 when p = 2)
u64 c_least_nonresidue(u64 f, u64 p);          // least c in [2,100], gcd(c, p f) = 1, kronecker(f, c) = -1
u64 c_quartic_composite(u64 q, u64 qq);        // least c >= 3 meeting the two symbol tests

RecipeSetup setup_recipe(const FieldPtr& K, u64 p, unsigned ex, Recipe r, std::optional<u64> c_override = {},
                         std::optional<bool> half_override = {});

// ---------------------------------------------------------------- report

struct CharacterImage {
    int index = 0;
    u64 order = 1;
    u64 conductor = 1;
    CycMod image;          // psi(A) mod pN
    NormVal valuation;     // of the norm of the image, at precision
    int exact_norm_valuation = -1;   // of the norm of the lifted integer image; -1 when zero
};

struct Certification {
    std::string element;   // "A_K", "2A_K", "A'_K", "4A'_K", "A''_K"
    std::string status;    // "theorem", "conjecture", "not-certified"
};

struct AnnihilatorReport {
    FieldPtr K;
    RecipeSetup setup;
    ZElem coeffs;                      // over G_K, mod pN
    std::vector<u64> columns;          // coefficients in the printed slot order
    ZElem norm_reduced;                // coeffs - coeffs[identity] * N
    std::vector<CharacterImage> per_character;
    std::map<std::string, std::string> summary;   // nj, A', Nni, ... as printed
    std::vector<Certification> certification;
    std::optional<ZElem> halved;       // A'' when p = 2 and halving modulo the norm is possible
    std::string element_name() const { return setup.half ? "A'_K" : "A_K"; }
};

AnnihilatorReport annihilator_A(const FieldPtr& K, u64 p, unsigned ex, Recipe r, std::optional<u64> c_override = {},
                                std::optional<bool> half_override = {}, unsigned threads = 1);
// Report built from already computed coefficients (used by the stabilization search and tests).
AnnihilatorReport make_report(const FieldPtr& K, const RecipeSetup& s, const std::vector<u64>& slot_sums);

// Increase n from n_start until the norm-reduced coefficients mod p^target repeat.
struct Stabilization {
    unsigned n = 0;
    AnnihilatorReport report;
    std::vector<std::vector<u64>> history;
};
Stabilization stabilize(const FieldPtr& K, u64 p, unsigned target, Recipe r, unsigned n_start = 0, unsigned n_max = 12,
                        std::optional<u64> c_override = {});

// Full-loop lambda sum sum lambda_a(c) a^-1 (K/a) mod p^M at level n (f_n = lcm(f_K, q p^n)).
ZElem lambda_annihilator(const FieldPtr& K, u64 p, unsigned n, u64 c, unsigned M, bool half = false,
                         unsigned threads = 1);

// ---------------------------------------------------------------- measure

// A_{L_n}(c) = sum_b [(a'_b c)^phi_n - b^phi_n] / (f_n phi_n) sigma_b, mod p^(n+1), over G_n = Gal(L/Q)
// where L has modulus f_n.
ZElem annihilator_measure(const FieldPtr& Ln, u64 c, u64 p, unsigned n);

// ---------------------------------------------------------------- Euler factors, norms

struct EulerFactor {
    ZElem elem;          // 1 - ell^-1 sigma_ell, or 1
    bool trivial = false;  // ell | f_k: the product range skips it
};
EulerFactor euler_factor(const FieldPtr& k, u64 ell, u64 p, unsigned M);
// 1 - chi(ell)/ell in (Z/p^M)[y]/Phi_ord, 1 when ell | f_chi
CycMod euler_factor_char(const DirichletCharacter& chi, u64 ell, u64 p, unsigned M);

struct NormRelation {
    QElem lhs, rhs, euler;
    bool holds = false;
};
// N_{Q^f/Q^m}(S) against prod_{ell | f, ell not | m} (1 - sigma_ell^-1) S_{Q^m}; optional delta_c and subfield.
NormRelation norm_relation_check(u64 f, u64 m, std::optional<u64> c = {}, FieldPtr target = nullptr);

// Theorem check at the measure level: restrict A_{L_n}(c) to l_n and compare with the Euler product times
// A_{l_n}(c) after projecting to the real quotient (modulo 1 - s_inf).
struct MeasureNormCheck {
    ZElem lhs, rhs;
    bool holds = false;
};
MeasureNormCheck measure_norm_check(const FieldPtr& K, const FieldPtr& k, u64 p, unsigned n, u64 c);

// Maximal real subfield of an abelian field (quotient by s_inf).
FieldPtr real_subfield(const FieldPtr& L);

// ---------------------------------------------------------------- c selection

struct BestC {
    std::vector<u64> cs;            // one c (cyclic) or generators of the delta combination
    std::vector<u64> lambdas;       // weights of the (1 - sigma_ci)
    int score = 0;                  // max over psi != 1 of v_p(N psi(delta))
    std::vector<int> per_character; // valuations, characters in AbelianField order (trivial skipped)
};
BestC best_c(const FieldPtr& K, u64 p, u64 c_bound);

// ---------------------------------------------------------------- fixed points

struct RamifiedPrime {
    u64 ell = 0;
    int nu = 0, phi = 0, gamma = 0, e = 0;
    u64 primes_in_k = 1;
};
struct FixedPointH {
    int h = 0;
    unsigned n0 = 0, r = 0;
    std::vector<RamifiedPrime> primes;
};
FixedPointH fixed_point_h(const FieldPtr& K, const FieldPtr& k, u64 p);

}  // namespace stickel
