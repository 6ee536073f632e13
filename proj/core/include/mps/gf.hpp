#pragma once

// Table-driven arithmetic in GF(q) for the small orders used by the geometry
// layer: primes up to 7 and the prime squares 4 and 9.
//
// Elements are encoded as integers 0..q-1. For q = p^2 the integer i encodes
// the polynomial c0 + c1*x with i = c0 + c1*p, reduced modulo a fixed monic
// irreducible quadratic (x^2+x+1 over GF(2), x^2+1 over GF(3)).

#include <cstdint>
#include <span>
#include <vector>

namespace mps {

using Elem = std::uint8_t;

enum class FieldOp { add, mul, neg, inv };

class Field {
public:
    /// Builds the tables for GF(q). Throws std::invalid_argument for any q
    /// that is not a supported prime power.
    static Field make(int q);

    int order() const noexcept { return q_; }
    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return h_; }

    /// Coefficients of the reduction polynomial, constant term first. Empty
    /// for prime fields.
    std::span<const int> modulus() const noexcept { return modulus_; }

    // Unchecked lookups for hot loops.
    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem inv(Elem a) const noexcept { return inv_[a]; }

    Elem pow(Elem a, unsigned e) const noexcept;

    /// Range-checked entry point. Throws std::out_of_range for elements
    /// outside 0..q-1 and std::domain_error for the inverse of zero.
    Elem arith(FieldOp op, int a, int b = 0) const;

private:
    Field() = default;

    int q_ = 0;
    int p_ = 0;
    int h_ = 0;
    std::vector<int> modulus_;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
};

/// True for the orders Field::make accepts.
bool is_supported_order(int q) noexcept;

}  // namespace mps
