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

#include "bevlu/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace bevlu
{

BoxEncoding encode_box(const BoxBEV & b, Vec2 ref)
{
  return {b.cx - ref.x, b.cy - ref.y, std::log(b.l), std::log(b.w), std::sin(b.theta), std::cos(b.theta)};
}

BoxBEV decode_box(const BoxEncoding & e, Vec2 ref)
{
  const double r = std::hypot(e.sin_t, e.cos_t);
  if (!(r > 0.0)) {
    throw DegenerateOrientation("orientation pair (0, 0) has no heading");
  }
  const double l = std::exp(e.log_l);
  const double w = std::exp(e.log_w);
  if (!std::isfinite(l) || !std::isfinite(w)) {
    throw std::invalid_argument("decoded extents are not finite");
  }
  return BoxBEV::make(ref.x + e.dx, ref.y + e.dy, l, w, std::atan2(e.sin_t / r, e.cos_t / r));
}

EncodedVector propagate_variance_unclamped(const LabelVector & label_var, const BoxBEV & at)
{
  const double c = std::cos(at.theta);
  const double s = std::sin(at.theta);
  return {
    label_var[0],
    label_var[1],
    label_var[2] / (at.l * at.l),
    label_var[3] / (at.w * at.w),
    c * c * label_var[4],
    s * s * label_var[4],
  };
}

EncodedVariance propagate_variance(const LabelVector & label_var, const BoxBEV & at)
{
  for (const double v : label_var) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("label variances must be positive");
    }
  }
  EncodedVariance out = propagate_variance_unclamped(label_var, at);
  for (double & v : out) {
    v = clamp_variance(v);
  }
  return out;
}

}  // namespace bevlu
