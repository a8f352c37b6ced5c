#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gpcalc {

// Exact complex rational re + im*i.
class Gauss {
public:
    Gauss() = default;
    Gauss(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    Gauss(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
    Gauss(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Gauss i() { return Gauss(0, 1); }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Gauss conj() const { return Gauss(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Gauss& operator+=(const Gauss& o);
    Gauss& operator-=(const Gauss& o);
    Gauss& operator*=(const Gauss& o);
    Gauss& operator/=(const Gauss& o);
    Gauss operator-() const { return Gauss(-re_, -im_); }

    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend bool operator==(const Gauss& a, const Gauss& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Total order used only for deterministic sorting.
    friend bool lex_less(const Gauss& a, const Gauss& b) {
        return a.re_ != b.re_ ? a.re_ < b.re_ : a.im_ < b.im_;
    }

    // "a/b+c/di" style; omits zero parts, "0" for zero.
    std::string to_string() const;
    // Inverse of to_string; also accepts "i", "-i", "2i", "1/2-3/4i".
    static Gauss parse(std::string_view text);

private:
    mpq_class re_ = 0;
    mpq_class im_ = 0;
};

// Parses "p/q" or an integer; throws std::invalid_argument.
mpq_class parse_rational(std::string_view text);
std::string rational_to_string(const mpq_class& q);

}  // namespace gpcalc
