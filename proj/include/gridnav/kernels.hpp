#pragma once

// Dense affine kernels behind the neural-network module, in two variants:
// a serial reference (kept for testing) and OpenMP-parallel versions. Every
// parallel kernel assigns disjoint output slots to threads and keeps the
// inner summation order identical to the reference, so results are bitwise
// equal to serial at any thread count.
//
// Layouts: weights row-major [out_dim x in_dim]; batched activations
// row-major [batch x dim].

namespace gridnav::kernels {

namespace serial {

// y[i] = b[i] + sum_j w[i,j] * x[j]
void affine(const double* w, const double* b, const double* x, double* y,
            int out_dim, int in_dim);

// per sample s: y[s,i] = b[i] + sum_j w[i,j] * x[s,j]
void affine_batch(const double* w, const double* b, const double* x, double* y,
                  int batch, int out_dim, int in_dim);

// per sample s: dx[s,j] = sum_i w[i,j] * dy[s,i]
void matvec_transpose_batch(const double* w, const double* dy, double* dx,
                            int batch, int out_dim, int in_dim);

// dw[i,j] += sum_s dy[s,i] * x[s,j];  db[i] += sum_s dy[s,i]
void grad_accumulate(const double* dy, const double* x, double* dw, double* db,
                     int batch, int out_dim, int in_dim);

}  // namespace serial

namespace parallel {

void affine(const double* w, const double* b, const double* x, double* y,
            int out_dim, int in_dim);
void affine_batch(const double* w, const double* b, const double* x, double* y,
                  int batch, int out_dim, int in_dim);
void matvec_transpose_batch(const double* w, const double* dy, double* dx,
                            int batch, int out_dim, int in_dim);
void grad_accumulate(const double* dy, const double* x, double* dw, double* db,
                     int batch, int out_dim, int in_dim);

}  // namespace parallel

// True when compiled with OpenMP.
bool openmp_enabled();

// Size-dispatched entry points used by the network: tiny problems stay on the
// serial path (thread fork overhead dominates), larger ones go parallel.
// Either path produces identical bits.
void affine_batch(const double* w, const double* b, const double* x, double* y,
                  int batch, int out_dim, int in_dim);
void matvec_transpose_batch(const double* w, const double* dy, double* dx,
                            int batch, int out_dim, int in_dim);
void grad_accumulate(const double* dy, const double* x, double* dw, double* db,
                     int batch, int out_dim, int in_dim);

}  // namespace gridnav::kernels
