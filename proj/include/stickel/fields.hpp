#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "stickel/arith.hpp"

namespace stickel {

// (Z/fZ)^x as a product of cyclic pieces, one or two per prime power of f.
class UnitGroupModF {
public:
    explicit UnitGroupModF(u64 f);

    u64 modulus() const { return f_; }
    const std::vector<u64>& generators() const { return gens_; }
    const std::vector<u64>& orders() const { return orders_; }
    u64 exponent() const { return exponent_; }

    std::vector<u64> dlog(u64 a) const;
    u64 recombine(const std::vector<u64>& e) const;

private:
    struct Piece {
        u64 pk;       // prime power this piece lives in
        u64 local;    // generator modulo pk
        u64 order;
        int kind;     // 0: cyclic odd, 1: sign of a 2-power, 2: the 5-part of a 2-power
        std::vector<std::uint32_t> table;                 // dlog table when pk is small
        std::unordered_map<u64, std::uint32_t> baby;      // BSGS otherwise
        u64 giant = 0, giant_step = 0;
    };
    u64 dlog_piece(const Piece& pc, u64 a) const;

    u64 f_;
    std::vector<Piece> pieces_;
    std::vector<u64> gens_, orders_;
    u64 exponent_ = 1;
};

class AbelianField;
using FieldPtr = std::shared_ptr<const AbelianField>;

// A Dirichlet character of the ambient group, trivial on H.
// Values are powers of y, a primitive order-th root of unity.
struct DirichletCharacter {
    u64 modulus = 1;          // ambient modulus f_K
    std::vector<u64> exps;    // exponents on the UnitGroupModF generators
    u64 order = 1;
    u64 conductor = 1;
    bool trivial = true;
    int index = 0;            // position in AbelianField::characters()
    int conj = 0;             // index of the inverse character
    std::shared_ptr<const UnitGroupModF> units;
    std::vector<int> primitive;   // exponent of chi(a) for a mod conductor, -1 when not coprime

    // exponent t with chi(a) = y^t, for gcd(a, modulus) = 1
    u64 value(u64 a) const;
    // primitive character modulo the conductor; -1 when gcd(a, conductor) > 1
    int primitive_value(u64 a) const { return primitive[a % conductor]; }
};

// k_chi: the field cut out by ker(chi), of conductor chi.conductor.
FieldPtr character_field(const DirichletCharacter& chi);

struct FieldDesc {
    std::string kind;
    u64 f = 0;
    u64 d = 0;                // 0: unspecified
    std::vector<u64> gens;    // generators of H
};

class AbelianField {
public:
    // H given by a membership predicate on residues coprime to f.
    static FieldPtr from_predicate(u64 f, const std::function<bool(u64)>& in_h, std::string kind,
                                   bool require_genuine);
    static FieldPtr from_generators(u64 f, const std::vector<u64>& gens, std::string kind,
                                    bool require_genuine);

    u64 modulus() const { return f_; }
    std::size_t degree() const { return reps_.size(); }
    bool is_real() const { return real_; }
    const std::string& kind() const { return kind_; }

    int index_of(u64 a) const {
        int i = coset_[a % f_];
        if (i < 0) throw std::domain_error("residue " + std::to_string(a) + " not coprime to " + std::to_string(f_));
        return i;
    }
    int index_of_signed(i64 a) const { return index_of(reduce_signed(a, f_)); }
    bool coprime(u64 a) const { return coset_[a % f_] >= 0; }
    u64 rep(int i) const { return reps_[i]; }
    const std::vector<u64>& reps() const { return reps_; }
    int mul(int i, int j) const;
    int inv(int i) const { return inv_[i]; }
    int pow(int i, u64 e) const;
    int identity() const { return 0; }
    int s_inf() const { return index_of(f_ - 1 == 0 ? 0 : f_ - 1); }
    u64 element_order(int i) const;

    const std::vector<u64>& subgroup() const { return h_; }
    const std::vector<u64>& subgroup_generators() const { return h_gens_; }
    bool genuine_conductor() const { return genuine_; }
    u64 true_conductor() const { return true_conductor_; }
    const std::shared_ptr<const UnitGroupModF>& units() const { return units_; }

    // k subset of this field: f_k | f and H maps into H_k.
    bool contains(const AbelianField& k) const;

    // All d characters of G, trivial first; computed once.
    const std::vector<DirichletCharacter>& characters() const;
    // exponent of G (lcm of character orders)
    u64 group_exponent() const;

    FieldDesc desc() const;
    std::string serialize() const;

private:
    AbelianField() = default;
    void finish(bool require_genuine);

    u64 f_ = 1;
    std::string kind_;
    std::vector<int> coset_;
    std::vector<u64> reps_, h_, h_gens_;
    std::vector<int> inv_;
    std::vector<int> mul_table_;   // filled for small degree
    bool real_ = false, genuine_ = true;
    u64 true_conductor_ = 1;
    std::shared_ptr<const UnitGroupModF> units_;

    mutable std::once_flag chars_once_;
    mutable std::vector<DirichletCharacter> chars_;
};

// Family constructors.
FieldPtr cyclotomic_field(u64 f);                 // Q(zeta_f), H = {1}
FieldPtr cyclic_prime_field(u64 f, u64 d, bool require_real = true);
bool quadratic_admissible(u64 f);
FieldPtr quadratic_field(u64 f);                  // conductor f, Kronecker kernel
FieldPtr quartic_composite_field(u64 f);          // f = q * qq, q = 5 mod 8, qq = 1 mod 8
FieldPtr explicit_field(u64 f, const std::vector<u64>& gens, bool require_genuine = true);
FieldPtr build_field(const FieldDesc& desc);
FieldDesc parse_field_desc(const std::string& text);

// The field attached to K at level n: modulus f_n, subgroup of H-classes that are 1 mod q p^n.
FieldPtr level_field(const FieldPtr& K, u64 p, unsigned n);

u64 q_of(u64 p);                                  // p for odd p, 4 for p = 2
u64 conductor_Ln(u64 fK, u64 p, unsigned n);      // lcm(f_K, q p^n)

int artin_symbol(const AbelianField& K, u64 a);   // coset index, canonical rep = K.rep(index)

// [K cap Q_infinity : Q] = p^n0; returns n0.
unsigned cyclotomic_layer(const AbelianField& K, u64 p);

// Ramification index, residue degree and number of primes above ell in K.
struct Splitting {
    u64 e = 1, f = 1, g = 1;
};
Splitting splitting_data(const AbelianField& K, u64 ell);

}  // namespace stickel
