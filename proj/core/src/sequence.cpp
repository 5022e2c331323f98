// Copyright 2026 The hbdcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbd/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hbd/error.hpp"

namespace hbd {

SignedLog SignedLog::from_value(double v) {
  if (v == 0.0) return {};
  return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

SignedLog operator+(SignedLog a, SignedLog b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  const double gap = b.log_abs - a.log_abs;  // <= 0
  if (a.sign == b.sign) return {a.sign, a.log_abs + std::log1p(std::exp(gap))};
  if (gap == 0.0) return {};
  return {a.sign, a.log_abs + std::log1p(-std::exp(gap))};
}

SequenceFactor::SequenceFactor(std::size_t truncation) : coords_(truncation + 1) {}

SequenceFactor SequenceFactor::from_values(std::span<const double> values,
                                           std::size_t truncation) {
  if (values.size() > truncation + 1) {
    throw TruncationOverflowError("support exceeds the truncation length");
  }
  SequenceFactor f(truncation);
  for (std::size_t l = 0; l < values.size(); ++l) f.coords_[l] = SignedLog::from_value(values[l]);
  return f;
}

SequenceFactor SequenceFactor::basis(std::size_t index, std::size_t truncation, double value) {
  if (index > truncation) throw TruncationOverflowError("basis index beyond truncation");
  SequenceFactor f(truncation);
  f.coords_[index] = SignedLog::from_value(value);
  return f;
}

std::int64_t SequenceFactor::support_end() const {
  for (std::size_t l = coords_.size(); l-- > 0;) {
    if (!coords_[l].is_zero()) return static_cast<std::int64_t>(l);
  }
  return -1;
}

double SequenceFactor::log_norm(const NormSpec& norm) const {
  double best = -std::numeric_limits<double>::infinity();
  if (norm.kind == NormKind::sup) {
    for (const SignedLog& c : coords_) {
      if (!c.is_zero()) best = std::max(best, c.log_abs);
    }
    return best;
  }
  // (sum |x_l|^p)^{1/p}, accumulated in the log domain.
  SignedLog acc;
  for (const SignedLog& c : coords_) {
    if (!c.is_zero()) acc = acc + SignedLog{1, norm.p * c.log_abs};
  }
  return acc.is_zero() ? best : acc.log_abs / norm.p;
}

double SequenceFactor::norm(const NormSpec& norm) const { return std::exp(log_norm(norm)); }

double SequenceFactor::max_abs() const { return norm(NormSpec{}); }

SequenceFactor SequenceFactor::resized(std::size_t truncation) const {
  if (support_end() > static_cast<std::int64_t>(truncation)) {
    throw TruncationOverflowError("support exceeds the new truncation length");
  }
  SequenceFactor out(truncation);
  const std::size_t n = std::min(coords_.size(), out.coords_.size());
  std::copy_n(coords_.begin(), n, out.coords_.begin());
  return out;
}

namespace {

SequenceFactor combine(const SequenceFactor& a, const SequenceFactor& b, bool subtract) {
  const std::size_t len = std::max(a.truncation(), b.truncation());
  SequenceFactor out(len);
  for (std::size_t l = 0; l <= len; ++l) {
    const SignedLog x = l <= a.truncation() ? a[l] : SignedLog{};
    SignedLog y = l <= b.truncation() ? b[l] : SignedLog{};
    if (subtract) y = -y;
    out[l] = x + y;
  }
  return out;
}

}  // namespace

SequenceFactor operator+(const SequenceFactor& a, const SequenceFactor& b) {
  return combine(a, b, false);
}

SequenceFactor operator-(const SequenceFactor& a, const SequenceFactor& b) {
  return combine(a, b, true);
}

FiniteVector::FiniteVector(std::vector<SequenceFactor> factors, NormSpec norm)
    : factors_(std::move(factors)), norm_(norm) {
  if (factors_.empty()) throw InvalidInputError("a vector needs at least one factor");
}

std::size_t FiniteVector::truncation() const {
  std::size_t t = 0;
  for (const auto& f : factors_) t = std::max(t, f.truncation());
  return t;
}

double FiniteVector::log_norm() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : factors_) best = std::max(best, f.log_norm(norm_));
  return best;
}

double FiniteVector::norm() const { return std::exp(log_norm()); }

std::int64_t FiniteVector::support_end() const {
  std::int64_t s = -1;
  for (const auto& f : factors_) s = std::max(s, f.support_end());
  return s;
}

double FiniteVector::max_abs() const {
  double m = 0.0;
  for (const auto& f : factors_) m = std::max(m, f.max_abs());
  return m;
}

FiniteVector FiniteVector::resized(std::size_t truncation) const {
  std::vector<SequenceFactor> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.resized(truncation));
  return FiniteVector(std::move(out), norm_);
}

namespace {

FiniteVector combine(const FiniteVector& a, const FiniteVector& b, bool subtract) {
  if (a.dimension() != b.dimension()) throw InvalidInputError("dimension mismatch");
  std::vector<SequenceFactor> out;
  out.reserve(a.dimension());
  for (std::size_t j = 0; j < a.dimension(); ++j) {
    out.push_back(subtract ? a.factor(j) - b.factor(j) : a.factor(j) + b.factor(j));
  }
  return FiniteVector(std::move(out), a.norm_spec());
}

}  // namespace

FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) { return combine(a, b, false); }

FiniteVector operator-(const FiniteVector& a, const FiniteVector& b) { return combine(a, b, true); }

}  // namespace hbd
