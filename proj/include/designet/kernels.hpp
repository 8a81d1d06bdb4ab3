// Copyright 2026 The designet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// OpenMP compute kernels and their serial reference implementations.
// The parallel kernels only distribute independent output elements across
// threads; every reduction stays inside one thread in a fixed order, so the
// parallel results match the serial references for any thread count.

#ifndef DESIGNET_KERNELS_HPP
#define DESIGNET_KERNELS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "designet/quantum.hpp"

namespace designet {

/// y = M x, parallel over rows.
void matvec(const CMatrix &m, const Complex *x, Complex *y);

/// y = M^dagger x, parallel over rows of M^dagger (columns of M).
void matvec_adjoint(const CMatrix &m, const Complex *x, Complex *y);

/// In-place application of a 4x4 gate on qubit sites (site, site+1) to every
/// column of a column-major matrix (columns transform like states). Used to
/// assemble circuit unitaries; parallel over columns.
void apply_two_qubit_gate_columns(Eigen::MatrixXcd &m,
                                  const Eigen::Matrix4cd &gate, int n_qubits,
                                  int site);

namespace ref {

/// Serial references kept for kernel tests and benchmarks.
void matvec_serial(const CMatrix &m, const Complex *x, Complex *y);
void matvec_adjoint_serial(const CMatrix &m, const Complex *x, Complex *y);
void apply_two_qubit_gate_columns_serial(Eigen::MatrixXcd &m,
                                         const Eigen::Matrix4cd &gate,
                                         int n_qubits, int site);

}  // namespace ref

// ---- Neural-network layer kernels ----
//
// Tensors are flat row-major arrays. Layouts:
//   image x:   [H, W, C]        index (h*W + w)*C + c
//   filters w: [F, k, k, C]     index ((f*k + i)*k + j)*C + c
//   conv out:  [OH, OW, F]      index (oy*OW + ox)*F + f
// Templated on the scalar so the same code runs in float (training) and
// double (finite-difference gradient checks).

template <typename T>
void conv2d_forward_kernel(const T *__restrict x, int h, int w, int c,
                           const T *__restrict filters, int f, int k,
                           const T *__restrict bias, T *__restrict out) {
  const int oh = h - k + 1;
  const int ow = w - k + 1;
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      for (int fi = 0; fi < f; ++fi) {
        T acc = bias[fi];
        const T *wf = filters + static_cast<size_t>(fi) * k * k * c;
        for (int i = 0; i < k; ++i) {
          const T *xrow = x + (static_cast<size_t>(oy + i) * w + ox) * c;
          const T *wrow = wf + static_cast<size_t>(i) * k * c;
          for (int j = 0; j < k * c; ++j) acc += wrow[j] * xrow[j];
        }
        out[(static_cast<size_t>(oy) * ow + ox) * f + fi] = acc;
      }
    }
  }
}

/// Gradients of a valid/stride-1 convolution. `dx` may be null when the
/// input gradient is not needed (first layer). `dfilters`/`dbias` are
/// accumulated into (callers zero them once per batch).
template <typename T>
void conv2d_backward_kernel(const T *__restrict x, int h, int w, int c,
                            const T *__restrict filters, int f, int k,
                            const T *__restrict dout, T *__restrict dfilters,
                            T *__restrict dbias, T *__restrict dx) {
  const int oh = h - k + 1;
  const int ow = w - k + 1;
  if (dx) {
    for (size_t idx = 0; idx < static_cast<size_t>(h) * w * c; ++idx)
      dx[idx] = T(0);
  }
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      const T *do_px = dout + (static_cast<size_t>(oy) * ow + ox) * f;
      for (int fi = 0; fi < f; ++fi) {
        const T g = do_px[fi];
        if (g == T(0)) continue;
        dbias[fi] += g;
        T *dwf = dfilters + static_cast<size_t>(fi) * k * k * c;
        const T *wf = filters + static_cast<size_t>(fi) * k * k * c;
        for (int i = 0; i < k; ++i) {
          const size_t xoff = (static_cast<size_t>(oy + i) * w + ox) * c;
          const size_t woff = static_cast<size_t>(i) * k * c;
          for (int j = 0; j < k * c; ++j) {
            dwf[woff + j] += g * x[xoff + j];
            if (dx) dx[xoff + j] += g * wf[woff + j];
          }
        }
      }
    }
  }
}

/// out = W x + b with W stored [m, n] row-major.
template <typename T>
void dense_forward_kernel(const T *__restrict x, int n,
                          const T *__restrict weights, int m,
                          const T *__restrict bias, T *__restrict out) {
  for (int r = 0; r < m; ++r) {
    const T *wr = weights + static_cast<size_t>(r) * n;
    T acc = bias[r];
    for (int j = 0; j < n; ++j) acc += wr[j] * x[j];
    out[r] = acc;
  }
}

/// Dense-layer gradients; dweights/dbias accumulated, dx overwritten
/// (nullable).
template <typename T>
void dense_backward_kernel(const T *__restrict x, int n,
                           const T *__restrict weights, int m,
                           const T *__restrict dout, T *__restrict dweights,
                           T *__restrict dbias, T *__restrict dx) {
  if (dx) {
    for (int j = 0; j < n; ++j) dx[j] = T(0);
  }
  for (int r = 0; r < m; ++r) {
    const T g = dout[r];
    dbias[r] += g;
    T *dwr = dweights + static_cast<size_t>(r) * n;
    const T *wr = weights + static_cast<size_t>(r) * n;
    for (int j = 0; j < n; ++j) {
      dwr[j] += g * x[j];
      if (dx) dx[j] += g * wr[j];
    }
  }
}

template <typename T>
void relu_forward_kernel(T *data, size_t count) {
  for (size_t i = 0; i < count; ++i)
    if (data[i] < T(0)) data[i] = T(0);
}

/// dpre = dpost * [pre > 0], written into dpost in place.
template <typename T>
void relu_backward_kernel(const T *pre, T *dpost, size_t count) {
  for (size_t i = 0; i < count; ++i)
    if (pre[i] <= T(0)) dpost[i] = T(0);
}

}  // namespace designet

#endif  // DESIGNET_KERNELS_HPP
