// Copyright 2026 The bevlu Authors
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

#ifndef BEVLU__COMMON_HPP_
#define BEVLU__COMMON_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bevlu
{

// Label-space variance bounds (cx, cy, l, w, theta). The theta entry is rad^2.
inline constexpr double kVarMin = 1e-4;
inline constexpr double kVarMax = 1.0;

// Floor applied to every predictive variance entering a loss.
inline constexpr double kPredVarFloor = 1e-6;

inline constexpr std::size_t kLabelDim = 5;
inline constexpr std::size_t kEncodedDim = 6;

using LabelVector = std::array<double, kLabelDim>;
using EncodedVector = std::array<double, kEncodedDim>;

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Maps any angle to (-pi, pi].
inline double normalize_angle(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) {
    a += two_pi;
  } else if (a > std::numbers::pi) {
    a -= two_pi;
  }
  return a;
}

inline double clamp_variance(double v) { return std::clamp(v, kVarMin, kVarMax); }

// Error hierarchy. Every recoverable failure in the library derives from Error.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DegenerateInput : public Error
{
public:
  using Error::Error;
};

class MalformedLine : public Error
{
public:
  MalformedLine(std::size_t line_no, const std::string & why)
  : Error("malformed line " + std::to_string(line_no) + ": " + why), line_no_(line_no)
  {
  }
  std::size_t line_no() const { return line_no_; }

private:
  std::size_t line_no_;
};

class TruncatedFile : public Error
{
public:
  using Error::Error;
};

class CalibrationError : public Error
{
public:
  using Error::Error;
};

class EmptyObservation : public Error
{
public:
  using Error::Error;
};

class DegenerateOrientation : public Error
{
public:
  using Error::Error;
};

class OutOfRange : public Error
{
public:
  using Error::Error;
};

class NoGroundTruth : public Error
{
public:
  using Error::Error;
};

class NonFiniteLoss : public Error
{
public:
  explicit NonFiniteLoss(std::size_t batch_index)
  : Error("non-finite loss at batch " + std::to_string(batch_index)), batch_index_(batch_index)
  {
  }
  std::size_t batch_index() const { return batch_index_; }

private:
  std::size_t batch_index_;
};

}  // namespace bevlu

#endif  // BEVLU__COMMON_HPP_
