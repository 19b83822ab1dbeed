// src/fft.cc

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

#include "rformant/fft.h"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

#include "rformant/error.h"

namespace rformant {

namespace {

// FFTW's planner is not re-entrant; fftw_execute on distinct plans is.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void *p) const { fftw_free(p); }
};

}  // namespace

std::vector<double> real_fft_magnitude(std::span<const double> x) {
  const size_t n = x.size();
  if (n == 0) throw Error("fft: empty input");
  const size_t bins = n / 2 + 1;

  std::unique_ptr<double, FftwFree> in(
      static_cast<double *>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * bins)));
  if (!in || !out) throw std::bad_alloc();

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(),
                                FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);

  std::vector<double> mag(bins);
  for (size_t k = 0; k < bins; ++k)
    mag[k] = std::hypot(out.get()[k][0], out.get()[k][1]);

  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return mag;
}

}  // namespace rformant
