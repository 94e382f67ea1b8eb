#include "quiverconn/exact.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational double_to_rational(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value cannot be made exact");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

ExactComplex::ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ExactComplex ExactComplex::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) throw ParseError("empty scalar literal");
  if (compact.back() != 'i') return ExactComplex(parse_rational(compact));

  std::string_view body(compact);
  body.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+")
    im = 1;
  else if (im_text == "-")
    im = -1;
  else
    im = parse_rational(im_text);
  Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text);
  return {re, im};
}

Rational rational_approximation(double x, long max_denominator) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value cannot be made exact");
  if (std::abs(x) > 1e12) return double_to_rational(x);
  // Continued-fraction convergents h/k.
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double f = x;
  for (int step = 0; step < 64; ++step) {
    const double a = std::floor(f);
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_denominator) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    const double rest = f - a;
    if (rest < 1e-15) break;
    f = 1.0 / rest;
  }
  Rational q(static_cast<long>(h1), static_cast<unsigned long>(k1));
  q.canonicalize();
  return q;
}

ExactComplex ExactComplex::from_double(std::complex<double> z) {
  return {double_to_rational(z.real()), double_to_rational(z.imag())};
}

bool ExactComplex::is_nonzero_integer() const {
  return is_real() && sgn(re_) != 0 && re_.get_den() == 1;
}

std::string ExactComplex::to_string() const {
  if (is_real()) return re_.get_str();
  std::string im_part;
  if (im_ == 1)
    im_part = "i";
  else if (im_ == -1)
    im_part = "-i";
  else
    im_part = im_.get_str() + "i";
  if (sgn(re_) == 0) return im_part;
  if (im_part.front() != '-') im_part.insert(im_part.begin(), '+');
  return re_.get_str() + im_part;
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw InvalidInput("division by exact zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

bool lex_less(const ExactComplex& a, const ExactComplex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace qc
