/* Copyright 2026 The percolab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Exact polynomials in p with rational coefficients, the carrier for
// probabilities computed by full configuration enumeration.

#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace percolab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class PPolynomial {
 public:
  PPolynomial() = default;
  // Coefficients in the power basis, lowest degree first.
  explicit PPolynomial(std::vector<Rational> coeffs);

  static PPolynomial constant(const Rational& c);
  // sum_k weight[k] * p^k (1-p)^(m-k), m = weight.size() - 1.
  static PPolynomial from_bernstein(const std::vector<BigInt>& weight);

  const std::vector<Rational>& coefficients() const { return c_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Rational operator()(const Rational& p) const;
  double evaluate(double p) const;
  PPolynomial derivative() const;

  PPolynomial operator+(const PPolynomial& o) const;
  PPolynomial operator-(const PPolynomial& o) const;
  PPolynomial operator*(const PPolynomial& o) const;
  PPolynomial& operator+=(const PPolynomial& o);

  friend bool operator==(const PPolynomial&, const PPolynomial&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace percolab
