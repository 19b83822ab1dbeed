// include/rformant/fft.h

// Copyright 2026  The rformant Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RFORMANT_FFT_H_
#define RFORMANT_FFT_H_

#include <span>
#include <vector>

namespace rformant {

/// Magnitudes |X_k| of the real DFT of `x` for k = 0 .. N/2. Any length.
/// Unnormalised: a unit-amplitude cosine on bin k reads N/2.
std::vector<double> real_fft_magnitude(std::span<const double> x);

}  // namespace rformant

#endif  // RFORMANT_FFT_H_
