#include "gencontact/gaussian_rational.hpp"

#include <stdexcept>

#include "gencontact/errors.hpp"

namespace gencontact {

GaussianRational GaussianRational::parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal '" + text + "'", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'", 0);
  q.canonicalize();
  return {q, 0};
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  mpq_class n = re_ * re_ + im_ * im_;
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string(bool wrap) const {
  if (sgn(im_) == 0) {
    std::string s = re_.get_str();
    if (wrap && s.find('/') != std::string::npos) return "(" + s + ")";
    return s;
  }
  auto imag_part = [](const mpq_class& q) -> std::string {
    if (q == 1) return "i";
    if (q == -1) return "-i";
    std::string s = q.get_str();
    if (s.find('/') != std::string::npos) {
      if (sgn(q) < 0) return "-(" + mpq_class(-q).get_str() + ")*i";
      return "(" + s + ")*i";
    }
    return s + "*i";
  };
  if (sgn(re_) == 0) return imag_part(im_);
  std::string out = re_.get_str();
  if (sgn(im_) < 0) {
    out += " - " + imag_part(-im_);
  } else {
    out += " + " + imag_part(im_);
  }
  return "(" + out + ")";
}

}  // namespace gencontact
