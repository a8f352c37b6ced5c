#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace gpcalc {

// N u {inf}. Infinity absorbs + and *, except inf * 0 == 0.
class ExtNat {
public:
    ExtNat() = default;
    ExtNat(unsigned long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    ExtNat(int n);                           // NOLINT(google-explicit-constructor)
    explicit ExtNat(mpz_class n);

    static ExtNat infinity();

    bool is_infinite() const noexcept { return infinite_; }
    bool is_zero() const noexcept { return !infinite_ && value_ == 0; }
    // Throws when infinite.
    const mpz_class& value() const;

    // x - 1 for x >= 1; inf - 1 == inf.
    ExtNat predecessor() const;

    ExtNat& operator+=(const ExtNat& other);
    ExtNat& operator*=(const ExtNat& other);
    friend ExtNat operator+(ExtNat a, const ExtNat& b) { return a += b; }
    friend ExtNat operator*(ExtNat a, const ExtNat& b) { return a *= b; }

    friend bool operator==(const ExtNat& a, const ExtNat& b);
    friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b);

    // Decimal digits, or "inf".
    std::string to_string() const;
    // Accepts decimal digits, "inf" or the infinity sign.
    static ExtNat parse(std::string_view text);

private:
    bool infinite_ = false;
    mpz_class value_ = 0;
};

}  // namespace gpcalc
