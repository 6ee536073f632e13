#include "mps/gf.hpp"

#include <stdexcept>
#include <string>

namespace mps {
namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Splits q into p^h for h in {1, 2}; returns false otherwise.
bool split_order(int q, int& p, int& h) {
    if (q < 2 || q > 9) return false;
    if (is_prime(q)) {
        p = q;
        h = 1;
        return true;
    }
    for (int c = 2; c * c <= q; ++c) {
        if (c * c == q && is_prime(c)) {
            p = c;
            h = 2;
            return true;
        }
    }
    return false;
}

}  // namespace

bool is_supported_order(int q) noexcept {
    int p = 0, h = 0;
    return split_order(q, p, h);
}

Field Field::make(int q) {
    int p = 0, h = 0;
    if (!split_order(q, p, h))
        throw std::invalid_argument("unsupported field order q=" + std::to_string(q) +
                                    " (expected a prime or prime square <= 9)");

    Field f;
    f.q_ = q;
    f.p_ = p;
    f.h_ = h;
    f.add_.resize(q * q);
    f.mul_.resize(q * q);
    f.neg_.resize(q);
    f.inv_.assign(q, 0);

    if (h == 1) {
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                f.add_[a * q + b] = static_cast<Elem>((a + b) % q);
                f.mul_[a * q + b] = static_cast<Elem>((a * b) % q);
            }
        }
    } else {
        // x^2 = -(m0 + m1*x) with monic modulus x^2 + m1*x + m0.
        f.modulus_ = (p == 2) ? std::vector<int>{1, 1, 1} : std::vector<int>{1, 0, 1};
        const int m0 = f.modulus_[0];
        const int m1 = f.modulus_[1];
        for (int a = 0; a < q; ++a) {
            const int a0 = a % p, a1 = a / p;
            for (int b = 0; b < q; ++b) {
                const int b0 = b % p, b1 = b / p;
                f.add_[a * q + b] = static_cast<Elem>((a0 + b0) % p + ((a1 + b1) % p) * p);
                // (a0 + a1 x)(b0 + b1 x) = c0 + c1 x + c2 x^2
                const int c0 = a0 * b0;
                const int c1 = a0 * b1 + a1 * b0;
                const int c2 = a1 * b1;
                const int r0 = ((c0 - c2 * m0) % p + p * p * p) % p;
                const int r1 = ((c1 - c2 * m1) % p + p * p * p) % p;
                f.mul_[a * q + b] = static_cast<Elem>(r0 + r1 * p);
            }
        }
    }

    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (f.add_[a * q + b] == 0) f.neg_[a] = static_cast<Elem>(b);
            if (f.mul_[a * q + b] == 1) f.inv_[a] = static_cast<Elem>(b);
        }
    }
    return f;
}

Elem Field::pow(Elem a, unsigned e) const noexcept {
    Elem r = 1;
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

Elem Field::arith(FieldOp op, int a, int b) const {
    auto check = [this](int x) {
        if (x < 0 || x >= q_)
            throw std::out_of_range("field element " + std::to_string(x) + " outside GF(" +
                                    std::to_string(q_) + ")");
    };
    check(a);
    switch (op) {
    case FieldOp::add:
        check(b);
        return add(static_cast<Elem>(a), static_cast<Elem>(b));
    case FieldOp::mul:
        check(b);
        return mul(static_cast<Elem>(a), static_cast<Elem>(b));
    case FieldOp::neg:
        return neg(static_cast<Elem>(a));
    case FieldOp::inv:
        if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
        return inv(static_cast<Elem>(a));
    }
    throw std::logic_error("unknown field operation");
}

}  // namespace mps
