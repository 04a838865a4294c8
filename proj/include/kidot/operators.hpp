#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "kidot/common.hpp"
#include "kidot/rng.hpp"
#include "kidot/tensor.hpp"

namespace kidot::ops {

/// Reconstruction-domain element: real n x n grid, shape {n, n}.
using Image = Tensor;

enum class MeasKind { fourier, radon };

/// Observation. Fourier: shape {n, n, 2}, interleaved (re, im), unobserved
/// entries zero. Radon: shape {n_angles, n_detectors}, real sinogram.
struct Measurement {
    MeasKind kind = MeasKind::fourier;
    Tensor data;
};

/// Row-structured Cartesian sampling pattern.
struct Mask {
    int n = 0;
    std::vector<std::uint8_t> keep_rows;  // length n
    double acceleration = 1.0;

    bool keep(int row) const { return keep_rows[static_cast<std::size_t>(row)] != 0; }
    int rows_kept() const {
        int k = 0;
        for (auto b : keep_rows) k += b ? 1 : 0;
        return k;
    }
    static Mask full(int n) {
        Mask m;
        m.n = n;
        m.keep_rows.assign(static_cast<std::size_t>(n), 1);
        m.acceleration = 1.0;
        return m;
    }
};

/// Precomputed unitary DFT tables for side n. W[j][k] = exp(-2*pi*i*j*k/n)/sqrt(n);
/// W is symmetric, so the 2-D transform is W X W and the inverse is conj(W) Y conj(W).
class Dft {
public:
    Dft() = default;
    explicit Dft(int n) : n_(n), re_(static_cast<std::size_t>(n) * n), im_(re_.size()) {
        const double s = 1.0 / std::sqrt(static_cast<double>(n));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                // reduce j*k mod n first so the angle stays small
                const long long m = (1LL * j * k) % n;
                const double a = -2.0 * M_PI * static_cast<double>(m) / n;
                re_[idx(j, k)] = std::cos(a) * s;
                im_[idx(j, k)] = std::sin(a) * s;
            }
    }

    int n() const { return n_; }

    /// Forward 2-D unitary DFT of a real image; output interleaved {n, n, 2}.
    Tensor forward(const Tensor& x) const {
        check_image(x);
        // rows: t = W * x  (complex n x n)
        std::vector<double> tre(static_cast<std::size_t>(n_) * n_), tim(tre.size());
        for (int u = 0; u < n_; ++u)
            for (int c = 0; c < n_; ++c) {
                double sr = 0.0, si = 0.0;
                for (int r = 0; r < n_; ++r) {
                    const double v = x[idx(r, c)];
                    sr += re_[idx(u, r)] * v;
                    si += im_[idx(u, r)] * v;
                }
                tre[idx(u, c)] = sr;
                tim[idx(u, c)] = si;
            }
        // cols: y = t * W
        Tensor y({n_, n_, 2});
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v) {
                double sr = 0.0, si = 0.0;
                for (int c = 0; c < n_; ++c) {
                    const double ar = tre[idx(u, c)], ai = tim[idx(u, c)];
                    const double br = re_[idx(v, c)], bi = im_[idx(v, c)];
                    sr += ar * br - ai * bi;
                    si += ar * bi + ai * br;
                }
                y[cidx(u, v)] = sr;
                y[cidx(u, v) + 1] = si;
            }
        return y;
    }

    /// Inverse 2-D unitary DFT, real part. `imag_norm`, when non-null, gets
    /// the l2 norm of the discarded imaginary part.
    Tensor inverse_real(const Tensor& y, double* imag_norm = nullptr) const {
        require(y.shape() == std::vector<int>({n_, n_, 2}), "dft: bad measurement shape");
        // rows: t = conj(W) * y
        std::vector<double> tre(static_cast<std::size_t>(n_) * n_), tim(tre.size());
        for (int r = 0; r < n_; ++r)
            for (int v = 0; v < n_; ++v) {
                double sr = 0.0, si = 0.0;
                for (int u = 0; u < n_; ++u) {
                    const double ar = re_[idx(r, u)], ai = -im_[idx(r, u)];
                    const double br = y[cidx(u, v)], bi = y[cidx(u, v) + 1];
                    sr += ar * br - ai * bi;
                    si += ar * bi + ai * br;
                }
                tre[idx(r, v)] = sr;
                tim[idx(r, v)] = si;
            }
        // cols: x = t * conj(W)
        Tensor x({n_, n_});
        double inorm = 0.0;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                double sr = 0.0, si = 0.0;
                for (int v = 0; v < n_; ++v) {
                    const double ar = tre[idx(r, v)], ai = tim[idx(r, v)];
                    const double br = re_[idx(v, c)], bi = -im_[idx(v, c)];
                    sr += ar * br - ai * bi;
                    si += ar * bi + ai * br;
                }
                x[idx(r, c)] = sr;
                inorm += si * si;
            }
        if (imag_norm) *imag_norm = std::sqrt(inorm);
        return x;
    }

private:
    int n_ = 0;
    std::vector<double> re_, im_;
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * n_ + c; }
    std::size_t cidx(int r, int c) const { return 2 * (static_cast<std::size_t>(r) * n_ + c); }
    void check_image(const Tensor& x) const {
        require(x.shape() == std::vector<int>({n_, n_}), "dft: bad image shape " + shape_str(x.shape()));
    }
};

inline void zero_masked_rows(Tensor& y, const Mask& m) {
    const int n = m.n;
    for (int r = 0; r < n; ++r) {
        if (m.keep(r)) continue;
        for (int c = 0; c < n; ++c) {
            y[2 * (static_cast<std::size_t>(r) * n + c)] = 0.0;
            y[2 * (static_cast<std::size_t>(r) * n + c) + 1] = 0.0;
        }
    }
}

/// CSR sparse matrix; rows are (angle, detector) pairs, columns are pixels.
struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<std::size_t> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> vals;

    std::vector<double> apply(const double* x) const {
        std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
        for (int r = 0; r < rows; ++r) {
            double s = 0.0;
            for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[col_idx[k]];
            y[static_cast<std::size_t>(r)] = s;
        }
        return y;
    }
    std::vector<double> apply_transpose(const double* y) const {
        std::vector<double> x(static_cast<std::size_t>(cols), 0.0);
        for (int r = 0; r < rows; ++r)
            for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
                x[static_cast<std::size_t>(col_idx[k])] += vals[k] * y[r];
        return x;
    }
};

/// Pair (A, A*) with declared shapes. The adjoint is exact: inverse DFT of the
/// masked measurement for the Fourier kind, the matrix transpose for Radon.
class ForwardModel {
public:
    MeasKind kind = MeasKind::fourier;
    // fourier
    Mask mask;
    std::shared_ptr<const Dft> dft;
    // radon
    SparseMatrix matrix;
    int n_angles = 0, n_detectors = 0;

    std::vector<int> domain_shape;  // {n, n}
    std::vector<int> range_shape;   // {n, n, 2} or {n_angles, n_detectors}

    int side() const { return domain_shape[0]; }

    Measurement apply(const Image& x) const {
        require(x.shape() == domain_shape,
                "forward model: image shape " + shape_str(x.shape()) + " != " + shape_str(domain_shape));
        Measurement m;
        m.kind = kind;
        if (kind == MeasKind::fourier) {
            Tensor y = dft->forward(x);
            zero_masked_rows(y, mask);
            m.data = std::move(y);
        } else {
            m.data = Tensor(range_shape, matrix.apply(x.data()));
        }
        return m;
    }

    Image adjoint(const Measurement& y) const {
        require(y.kind == kind, "forward model: measurement kind mismatch");
        require(y.data.shape() == range_shape,
                "forward model: measurement shape " + shape_str(y.data.shape()) + " != " + shape_str(range_shape));
        return adjoint_raw(y.data);
    }

    /// Adjoint on a raw range-shaped tensor (also the reverse-mode rule for apply).
    Tensor adjoint_raw(const Tensor& y) const {
        if (kind == MeasKind::fourier) {
            Tensor masked = y;
            zero_masked_rows(masked, mask);
            return dft->inverse_real(masked);
        }
        return Tensor(domain_shape, matrix.apply_transpose(y.data()));
    }

    Tensor apply_raw(const Tensor& x) const { return apply(x).data; }
};

inline ForwardModel fourier_model(const Mask& m) {
    require(m.n >= 2, "fourier model: n >= 2 required");
    require(m.rows_kept() >= 1, "fourier model: mask keeps no rows");
    ForwardModel fm;
    fm.kind = MeasKind::fourier;
    fm.mask = m;
    fm.dft = std::make_shared<Dft>(m.n);
    fm.domain_shape = {m.n, m.n};
    fm.range_shape = {m.n, m.n, 2};
    return fm;
}

/// Unitary masked 2-D DFT of an image.
inline Measurement fourier_apply(const Image& x, const Mask& m) {
    require(x.shape() == std::vector<int>({m.n, m.n}), "fourier_apply: shape mismatch");
    return fourier_model(m).apply(x);
}

/// Real part of the inverse unitary DFT of the masked measurement.
inline Image fourier_adjoint(const Measurement& y, const Mask& m, double* imag_norm = nullptr) {
    require(y.kind == MeasKind::fourier, "fourier_adjoint: kind mismatch");
    require(y.data.shape() == std::vector<int>({m.n, m.n, 2}), "fourier_adjoint: shape mismatch");
    Tensor masked = y.data;
    zero_masked_rows(masked, m);
    return Dft(m.n).inverse_real(masked, imag_norm);
}

// ---------------------------------------------------------------------------
// Parallel-beam Radon transform as an explicit sparse matrix.
//
// Pixels are unit squares; pixel (r, c) covers x in [c - n/2, c + 1 - n/2],
// y in [r - n/2, r + 1 - n/2]. Angles are uniform over [0, pi). A ray for
// (angle a, detector offset s) is  p(t) = s * (cos a, sin a) + t * (-sin a, cos a).
// Row weights are exact pixel-ray intersection lengths (Siddon traversal).
// ---------------------------------------------------------------------------

namespace detail {

inline void trace_ray(int n, double ca, double sa, double s,
                      std::vector<int>& cols, std::vector<double>& wts) {
    // ray point and direction
    const double px = s * ca, py = s * sa;
    const double dx = -sa, dy = ca;
    const double half = n / 2.0;

    // parametric hits with the grid box
    double tmin = -1e30, tmax = 1e30;
    const auto clip = [&](double p, double d) {
        if (std::abs(d) < 1e-14) {
            if (p < -half || p > half) tmin = 1.0, tmax = 0.0;  // misses
            return;
        }
        double t0 = (-half - p) / d, t1 = (half - p) / d;
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
    };
    clip(px, dx);
    clip(py, dy);
    if (tmin >= tmax) return;

    // crossing parameters with all grid lines inside [tmin, tmax]
    std::vector<double> ts;
    ts.push_back(tmin);
    ts.push_back(tmax);
    for (int g = 0; g <= n; ++g) {
        const double line = g - half;
        if (std::abs(dx) > 1e-14) {
            const double t = (line - px) / dx;
            if (t > tmin && t < tmax) ts.push_back(t);
        }
        if (std::abs(dy) > 1e-14) {
            const double t = (line - py) / dy;
            if (t > tmin && t < tmax) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());

    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double len = ts[i + 1] - ts[i];
        if (len <= 1e-12) continue;
        const double tm = 0.5 * (ts[i] + ts[i + 1]);
        const double x = px + tm * dx, y = py + tm * dy;
        const int c = static_cast<int>(std::floor(x + half));
        const int r = static_cast<int>(std::floor(y + half));
        if (r < 0 || r >= n || c < 0 || c >= n) continue;
        cols.push_back(r * n + c);
        wts.push_back(len);
    }
}

}  // namespace detail

/// Build a parallel-beam Radon model with exact intersection-length weights.
inline ForwardModel radon_build(int n, int n_angles, int n_detectors) {
    require(n >= 2, "radon_build: n >= 2 required");
    require(n_angles >= 1, "radon_build: n_angles >= 1 required");
    require(n_detectors >= n, "radon_build: n_detectors >= n required");

    ForwardModel fm;
    fm.kind = MeasKind::radon;
    fm.n_angles = n_angles;
    fm.n_detectors = n_detectors;
    fm.domain_shape = {n, n};
    fm.range_shape = {n_angles, n_detectors};

    SparseMatrix& A = fm.matrix;
    A.rows = n_angles * n_detectors;
    A.cols = n * n;
    A.row_ptr.assign(1, 0);
    const double ds = static_cast<double>(n) / n_detectors;
    std::vector<int> cols;
    std::vector<double> wts;
    for (int a = 0; a < n_angles; ++a) {
        const double ang = M_PI * a / n_angles;
        const double ca = std::cos(ang), sa = std::sin(ang);
        for (int d = 0; d < n_detectors; ++d) {
            const double s = (d + 0.5 - n_detectors / 2.0) * ds;
            cols.clear();
            wts.clear();
            detail::trace_ray(n, ca, sa, s, cols, wts);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                A.col_idx.push_back(cols[k]);
                A.vals.push_back(wts[k]);
            }
            A.row_ptr.push_back(A.col_idx.size());
        }
    }
    return fm;
}

/// Dispatchers mirroring the model's kind-specific operations.
inline Measurement apply(const ForwardModel& fm, const Image& x) { return fm.apply(x); }
inline Image adjoint(const ForwardModel& fm, const Measurement& y) { return fm.adjoint(y); }

/// Max relative adjoint discrepancy |<Ax,y> - <x,A*y>| / max(|<Ax,y>|, 1e-12)
/// over random probes.
inline double adjoint_test(const ForwardModel& fm, int trials, std::uint64_t seed) {
    require(trials >= 1, "adjoint_test: trials >= 1 required");
    Rng rng(stream_seed(seed, "adjoint-test"));
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Tensor x(fm.domain_shape);
        for (auto& v : x.vec()) v = rng.normal();
        Tensor y(fm.range_shape);
        for (auto& v : y.vec()) v = rng.normal();
        const double lhs = fm.apply_raw(x).dot(y);
        const double rhs = x.dot(fm.adjoint_raw(y));
        const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-12);
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace kidot::ops
