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

#include "percolab/polynomial.hpp"

#include <sstream>

namespace percolab {

PPolynomial::PPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  trim();
}

PPolynomial PPolynomial::constant(const Rational& c) {
  return PPolynomial(std::vector<Rational>{c});
}

PPolynomial PPolynomial::from_bernstein(const std::vector<BigInt>& weight) {
  if (weight.empty()) return {};
  const int m = static_cast<int>(weight.size()) - 1;
  // p^k (1-p)^(m-k) = sum_j C(m-k, j) (-1)^j p^(k+j)
  std::vector<BigInt> acc(m + 1, 0);
  for (int k = 0; k <= m; ++k) {
    if (weight[k] == 0) continue;
    BigInt binom = 1;
    for (int j = 0; j <= m - k; ++j) {
      if (j > 0) binom = binom * (m - k - j + 1) / j;
      acc[k + j] += (j % 2 ? -binom : binom) * weight[k];
    }
  }
  std::vector<Rational> c(acc.begin(), acc.end());
  return PPolynomial(std::move(c));
}

void PPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational PPolynomial::operator()(const Rational& p) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * p + *it;
  return r;
}

double PPolynomial::evaluate(double p) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * p + it->convert_to<double>();
  }
  return r;
}

PPolynomial PPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<int>(k);
  return PPolynomial(std::move(d));
}

PPolynomial PPolynomial::operator+(const PPolynomial& o) const {
  PPolynomial r = *this;
  r += o;
  return r;
}

PPolynomial& PPolynomial::operator+=(const PPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

PPolynomial PPolynomial::operator-(const PPolynomial& o) const {
  std::vector<Rational> c = c_;
  if (o.c_.size() > c.size()) c.resize(o.c_.size(), 0);
  for (size_t k = 0; k < o.c_.size(); ++k) c[k] -= o.c_[k];
  return PPolynomial(std::move(c));
}

PPolynomial PPolynomial::operator*(const PPolynomial& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<Rational> c(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return PPolynomial(std::move(c));
}

std::string PPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    Rational a = c_[k];
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      a = abs(a);
    } else if (a < 0) {
      os << "-";
      a = -a;
    }
    first = false;
    const bool unit = a == 1;
    if (!unit || k == 0) os << a;
    if (k >= 1) os << (unit ? "" : "*") << "p";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

}  // namespace percolab
