#include "gpcalc/ext_nat.hpp"

#include <cctype>
#include <stdexcept>

namespace gpcalc {

ExtNat::ExtNat(int n) : value_(n) {
    if (n < 0) throw std::invalid_argument("ExtNat: negative value");
}

ExtNat::ExtNat(mpz_class n) : value_(std::move(n)) {
    if (value_ < 0) throw std::invalid_argument("ExtNat: negative value");
}

ExtNat ExtNat::infinity() {
    ExtNat x;
    x.infinite_ = true;
    return x;
}

const mpz_class& ExtNat::value() const {
    if (infinite_) throw std::domain_error("ExtNat: value() of infinity");
    return value_;
}

ExtNat ExtNat::predecessor() const {
    if (infinite_) return *this;
    if (value_ == 0) throw std::domain_error("ExtNat: predecessor of zero");
    return ExtNat(mpz_class(value_ - 1));
}

ExtNat& ExtNat::operator+=(const ExtNat& other) {
    if (infinite_ || other.infinite_) {
        infinite_ = true;
        value_ = 0;
    } else {
        value_ += other.value_;
    }
    return *this;
}

ExtNat& ExtNat::operator*=(const ExtNat& other) {
    if (is_zero() || other.is_zero()) {
        infinite_ = false;
        value_ = 0;
    } else if (infinite_ || other.infinite_) {
        infinite_ = true;
        value_ = 0;
    } else {
        value_ *= other.value_;
    }
    return *this;
}

bool operator==(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) {
        return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    int c = cmp(a.value_, b.value_);
    return c <=> 0;
}

std::string ExtNat::to_string() const {
    return infinite_ ? std::string("inf") : value_.get_str();
}

ExtNat ExtNat::parse(std::string_view text) {
    if (text == "inf" || text == "∞") return infinity();
    if (text.empty()) throw std::invalid_argument("ExtNat: empty text");
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("ExtNat: not a natural number: " + std::string(text));
        }
    }
    return ExtNat(mpz_class(std::string(text)));
}

}  // namespace gpcalc
