#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
// Every computation in this library runs over one of these two field kinds;
// there is no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eicat {

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Runtime description of the ground field: rationals (p == 0) or F_p.
struct FieldSpec {
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{0}; }
    static FieldSpec prime(std::uint64_t p) {
        if (!is_prime(p)) throw FieldError("field modulus " + std::to_string(p) + " is not prime");
        if (p >= (std::uint64_t{1} << 31)) throw FieldError("field modulus too large");
        return FieldSpec{p};
    }

    bool is_rationals() const { return p == 0; }
    std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
    bool operator==(const FieldSpec&) const = default;
};

// Field of rationals with arbitrary-precision arithmetic. cpp_rational
// keeps every value normalized, which is what controls coefficient
// growth during elimination.
struct RationalField {
    using Elem = boost::multiprecision::cpp_rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long n) const { return Elem(n); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw FieldError("division by zero");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    std::uint64_t characteristic() const { return 0; }
    FieldSpec spec() const { return FieldSpec::rationals(); }
    std::string str(const Elem& a) const { return a.str(); }
    bool operator==(const RationalField&) const = default;
};

// Prime field F_p, elements stored reduced in [0, p). The modulus is kept
// below 2^31 so products fit in 64 bits.
class PrimeField {
  public:
    using Elem = std::uint64_t;

    PrimeField() : p_(2) {}  // placeholder default so field-carrying aggregates compose
    explicit PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).p) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw FieldError("division by zero");
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == one(); }
    bool eq(Elem a, Elem b) const { return a == b; }

    std::uint64_t characteristic() const { return p_; }
    FieldSpec spec() const { return FieldSpec{p_}; }
    std::string str(Elem a) const { return std::to_string(a); }
    bool operator==(const PrimeField&) const = default;

  private:
    std::uint64_t p_;
};

} // namespace eicat
