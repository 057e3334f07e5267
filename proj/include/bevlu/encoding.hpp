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

#ifndef BEVLU__ENCODING_HPP_
#define BEVLU__ENCODING_HPP_

#include "bevlu/common.hpp"
#include "bevlu/geometry.hpp"

namespace bevlu
{

/// Regression targets: center offsets from a reference location, log extents,
/// and the heading as a sin/cos pair.
struct BoxEncoding
{
  double dx{0.0};
  double dy{0.0};
  double log_l{0.0};
  double log_w{0.0};
  double sin_t{0.0};
  double cos_t{1.0};

  EncodedVector as_vector() const { return {dx, dy, log_l, log_w, sin_t, cos_t}; }
  static BoxEncoding from_vector(const EncodedVector & v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }
};

/// Variances in BoxEncoding order, each clamped to [kVarMin, kVarMax].
using EncodedVariance = EncodedVector;

BoxEncoding encode_box(const BoxBEV & b, Vec2 ref);

/// Inverse of encode_box. The orientation pair is renormalized first.
/// Throws DegenerateOrientation when both sin_t and cos_t are zero.
BoxBEV decode_box(const BoxEncoding & e, Vec2 ref);

/// First-order propagation of independent label-space variances (cx, cy, l, w, theta)
/// through the encoding, evaluated at `at`.
EncodedVariance propagate_variance(const LabelVector & label_var, const BoxBEV & at);

/// Same map without the clamp; exposes the exact linearity in label_var.
EncodedVector propagate_variance_unclamped(const LabelVector & label_var, const BoxBEV & at);

}  // namespace bevlu

#endif  // BEVLU__ENCODING_HPP_
