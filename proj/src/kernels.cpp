#include "gridnav/kernels.hpp"

#include <cstddef>

namespace gridnav::kernels {

namespace serial {

void affine(const double* w, const double* b, const double* x, double* y,
            int out_dim, int in_dim) {
    for (int i = 0; i < out_dim; ++i) {
        const double* row = w + static_cast<std::size_t>(i) * in_dim;
        double acc = b[i];
        for (int j = 0; j < in_dim; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void affine_batch(const double* w, const double* b, const double* x, double* y,
                  int batch, int out_dim, int in_dim) {
    for (int s = 0; s < batch; ++s)
        affine(w, b, x + static_cast<std::size_t>(s) * in_dim,
               y + static_cast<std::size_t>(s) * out_dim, out_dim, in_dim);
}

void matvec_transpose_batch(const double* w, const double* dy, double* dx,
                            int batch, int out_dim, int in_dim) {
    for (int s = 0; s < batch; ++s) {
        const double* dys = dy + static_cast<std::size_t>(s) * out_dim;
        double* dxs = dx + static_cast<std::size_t>(s) * in_dim;
        for (int j = 0; j < in_dim; ++j) {
            double acc = 0.0;
            for (int i = 0; i < out_dim; ++i)
                acc += w[static_cast<std::size_t>(i) * in_dim + j] * dys[i];
            dxs[j] = acc;
        }
    }
}

void grad_accumulate(const double* dy, const double* x, double* dw, double* db,
                     int batch, int out_dim, int in_dim) {
    for (int i = 0; i < out_dim; ++i) {
        double* dwrow = dw + static_cast<std::size_t>(i) * in_dim;
        double dbacc = db[i];
        for (int s = 0; s < batch; ++s) {
            const double g = dy[static_cast<std::size_t>(s) * out_dim + i];
            dbacc += g;
            const double* xs = x + static_cast<std::size_t>(s) * in_dim;
            for (int j = 0; j < in_dim; ++j) dwrow[j] += g * xs[j];
        }
        db[i] = dbacc;
    }
}

}  // namespace serial

namespace parallel {

void affine(const double* w, const double* b, const double* x, double* y,
            int out_dim, int in_dim) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < out_dim; ++i) {
        const double* row = w + static_cast<std::size_t>(i) * in_dim;
        double acc = b[i];
        for (int j = 0; j < in_dim; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void affine_batch(const double* w, const double* b, const double* x, double* y,
                  int batch, int out_dim, int in_dim) {
#pragma omp parallel for schedule(static)
    for (int s = 0; s < batch; ++s)
        serial::affine(w, b, x + static_cast<std::size_t>(s) * in_dim,
                       y + static_cast<std::size_t>(s) * out_dim, out_dim, in_dim);
}

void matvec_transpose_batch(const double* w, const double* dy, double* dx,
                            int batch, int out_dim, int in_dim) {
#pragma omp parallel for schedule(static)
    for (int s = 0; s < batch; ++s) {
        const double* dys = dy + static_cast<std::size_t>(s) * out_dim;
        double* dxs = dx + static_cast<std::size_t>(s) * in_dim;
        for (int j = 0; j < in_dim; ++j) {
            double acc = 0.0;
            for (int i = 0; i < out_dim; ++i)
                acc += w[static_cast<std::size_t>(i) * in_dim + j] * dys[i];
            dxs[j] = acc;
        }
    }
}

void grad_accumulate(const double* dy, const double* x, double* dw, double* db,
                     int batch, int out_dim, int in_dim) {
    // Threads own whole rows of dw (and the matching db entry); the inner
    // sample loop runs in the same order as the serial reference.
#pragma omp parallel for schedule(static)
    for (int i = 0; i < out_dim; ++i) {
        double* dwrow = dw + static_cast<std::size_t>(i) * in_dim;
        double dbacc = db[i];
        for (int s = 0; s < batch; ++s) {
            const double g = dy[static_cast<std::size_t>(s) * out_dim + i];
            dbacc += g;
            const double* xs = x + static_cast<std::size_t>(s) * in_dim;
            for (int j = 0; j < in_dim; ++j) dwrow[j] += g * xs[j];
        }
        db[i] = dbacc;
    }
}

}  // namespace parallel

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

namespace {

// Below this many multiply-adds the fork/join overhead outweighs the work.
constexpr long long kParallelFlopThreshold = 1LL << 18;

inline bool go_parallel(long long flops) {
    return openmp_enabled() && flops >= kParallelFlopThreshold;
}

}  // namespace

void affine_batch(const double* w, const double* b, const double* x, double* y,
                  int batch, int out_dim, int in_dim) {
    const long long flops = 1LL * batch * out_dim * in_dim;
    if (go_parallel(flops))
        parallel::affine_batch(w, b, x, y, batch, out_dim, in_dim);
    else
        serial::affine_batch(w, b, x, y, batch, out_dim, in_dim);
}

void matvec_transpose_batch(const double* w, const double* dy, double* dx,
                            int batch, int out_dim, int in_dim) {
    const long long flops = 1LL * batch * out_dim * in_dim;
    if (go_parallel(flops))
        parallel::matvec_transpose_batch(w, dy, dx, batch, out_dim, in_dim);
    else
        serial::matvec_transpose_batch(w, dy, dx, batch, out_dim, in_dim);
}

void grad_accumulate(const double* dy, const double* x, double* dw, double* db,
                     int batch, int out_dim, int in_dim) {
    const long long flops = 1LL * batch * out_dim * in_dim;
    if (go_parallel(flops))
        parallel::grad_accumulate(dy, x, dw, db, batch, out_dim, in_dim);
    else
        serial::grad_accumulate(dy, x, dw, db, batch, out_dim, in_dim);
}

}  // namespace gridnav::kernels
