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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hbd {

// Real number stored as sign and log-magnitude; sign 0 is exact zero.
struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;

  static SignedLog from_value(double v);
  static SignedLog from_log(int sign, double log_abs) { return {sign, log_abs}; }
  double value() const;
  bool is_zero() const { return sign == 0; }

  SignedLog operator-() const { return {-sign, log_abs}; }
  // Multiply by e^{log_factor}.
  SignedLog scaled(double log_factor) const {
    return is_zero() ? *this : SignedLog{sign, log_abs + log_factor};
  }
};

// Stable log-sum-exp addition.
SignedLog operator+(SignedLog a, SignedLog b);
inline SignedLog operator-(SignedLog a, SignedLog b) { return a + (-b); }

enum class NormKind { sup, p_sum };

struct NormSpec {
  NormKind kind = NormKind::sup;
  double p = 2.0;
};

// One factor of X^d: coordinates 0..L of a finitely supported sequence.
class SequenceFactor {
 public:
  explicit SequenceFactor(std::size_t truncation = 0);
  static SequenceFactor from_values(std::span<const double> values, std::size_t truncation);
  // e_index scaled by `value`.
  static SequenceFactor basis(std::size_t index, std::size_t truncation, double value = 1.0);

  std::size_t truncation() const { return coords_.size() - 1; }
  const SignedLog& operator[](std::size_t l) const { return coords_[l]; }
  SignedLog& operator[](std::size_t l) { return coords_[l]; }
  const std::vector<SignedLog>& coords() const { return coords_; }
  double value(std::size_t l) const { return coords_[l].value(); }

  // Index of the last non-zero coordinate, or -1 for the zero sequence.
  std::int64_t support_end() const;
  // log of the norm; -inf for the zero sequence.
  double log_norm(const NormSpec& norm) const;
  double norm(const NormSpec& norm) const;
  double max_abs() const;

  SequenceFactor resized(std::size_t truncation) const;

  friend SequenceFactor operator+(const SequenceFactor& a, const SequenceFactor& b);
  friend SequenceFactor operator-(const SequenceFactor& a, const SequenceFactor& b);

 private:
  std::vector<SignedLog> coords_;
};

// Element of X^d; the norm is the max of the factor norms.
class FiniteVector {
 public:
  FiniteVector() = default;
  FiniteVector(std::vector<SequenceFactor> factors, NormSpec norm = {});

  std::size_t dimension() const { return factors_.size(); }
  std::size_t truncation() const;
  const SequenceFactor& factor(std::size_t j) const { return factors_[j]; }
  SequenceFactor& factor(std::size_t j) { return factors_[j]; }
  const std::vector<SequenceFactor>& factors() const { return factors_; }
  const NormSpec& norm_spec() const { return norm_; }

  double norm() const;
  double log_norm() const;
  std::int64_t support_end() const;
  double max_abs() const;
  FiniteVector resized(std::size_t truncation) const;

  friend FiniteVector operator+(const FiniteVector& a, const FiniteVector& b);
  friend FiniteVector operator-(const FiniteVector& a, const FiniteVector& b);

 private:
  std::vector<SequenceFactor> factors_;
  NormSpec norm_;
};

}  // namespace hbd
