#include "gpcalc/gauss.hpp"

#include <cctype>
#include <stdexcept>

namespace gpcalc {

Gauss& Gauss::operator+=(const Gauss& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Gauss& Gauss::operator-=(const Gauss& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Gauss& Gauss::operator*=(const Gauss& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Gauss& Gauss::operator/=(const Gauss& o) {
    mpq_class n = o.norm();
    if (n == 0) throw std::domain_error("Gauss: division by zero");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') pos = 1;
    bool seen_digit = false;
    bool seen_slash = false;
    for (std::size_t k = pos; k < text.size(); ++k) {
        char c = text[k];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
        } else if (c == '/' && !seen_slash && seen_digit && k + 1 < text.size()) {
            seen_slash = true;
            seen_digit = false;
        } else {
            throw std::invalid_argument("malformed rational: " + std::string(text));
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational: " + std::string(text));
    std::string s(text[0] == '+' ? text.substr(1) : text);
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    q.canonicalize();
    return q;
}

std::string Gauss::to_string() const {
    if (im_ == 0) return re_.get_str();
    std::string im;
    if (im_ == 1) {
        im = "i";
    } else if (im_ == -1) {
        im = "-i";
    } else {
        im = im_.get_str() + "i";
    }
    if (re_ == 0) return im;
    return re_.get_str() + (im_ > 0 ? "+" : "") + im;
}

Gauss Gauss::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty complex number");
    if (text.back() != 'i') return Gauss(parse_rational(text));
    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    mpq_class im;
    if (im_part.empty() || im_part == "+") {
        im = 1;
    } else if (im_part == "-") {
        im = -1;
    } else {
        im = parse_rational(im_part);
    }
    mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
    return Gauss(re, im);
}

}  // namespace gpcalc
