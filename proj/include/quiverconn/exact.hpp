#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qc {

using Rational = mpq_class;

/// Complex number with arbitrary-precision rational real and imaginary parts.
///
/// Used wherever equality has to be decided exactly: quiver parameters,
/// orbit eigenvalues, realization data and the IJ calculus matrices.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(Rational re, Rational im = 0);
  ExactComplex(long value) : re_(value), im_(0) {}
  ExactComplex(int value) : re_(value), im_(0) {}

  /// Accepts "p", "p/q", "a+bi", "a-bi", "bi", "i", "-i" with rational a, b.
  static ExactComplex parse(std::string_view text);
  /// The exact binary value of a double pair (no rounding).
  static ExactComplex from_double(std::complex<double> z);

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  /// True iff the value is a nonzero (rational) integer.
  bool is_nonzero_integer() const;

  ExactComplex conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  /// Canonical text form, inverse of parse: "3/2", "-1+2/3i", "i".
  std::string to_string() const;

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Lexicographic order by (real, imaginary).
bool lex_less(const ExactComplex& a, const ExactComplex& b);

/// Parses a single rational literal "p" or "p/q"; throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Best continued-fraction approximation with denominator <= max_denominator.
Rational rational_approximation(double x, long max_denominator);

}  // namespace qc
