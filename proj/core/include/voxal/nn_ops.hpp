#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "voxal/tensor.hpp"

// Dense 3D layer primitives with explicit adjoints. All backward functions
// ACCUMULATE into their gradient outputs; callers zero the buffers. Every
// parallel loop writes a disjoint output region computed in a fixed
// sequential order, so results are bit-identical for any thread count.

namespace voxal {

template <typename T>
struct ConvParams {
    int cout = 0, cin = 0, k = 3;  // cubic kernel, zero padding (k-1)/2
    std::vector<T> w;              // (cout, cin, k, k, k)
    std::vector<T> b;              // (cout)

    void resize(int cout_, int cin_, int k_) {
        cout = cout_;
        cin = cin_;
        k = k_;
        w.assign(std::size_t(cout_) * cin_ * k_ * k_ * k_, T(0));
        b.assign(cout_, T(0));
    }
    std::size_t widx(int co, int ci, int kd, int kh, int kw) const {
        return (((std::size_t(co) * cin + ci) * k + kd) * k + kh) * k + kw;
    }
};

template <typename T>
struct TConvParams {
    int cin = 0, cout = 0;  // kernel 2^3, stride 2
    std::vector<T> w;       // (cin, cout, 2, 2, 2)
    std::vector<T> b;       // (cout)

    void resize(int cin_, int cout_) {
        cin = cin_;
        cout = cout_;
        w.assign(std::size_t(cin_) * cout_ * 8, T(0));
        b.assign(cout_, T(0));
    }
    std::size_t widx(int ci, int co, int kd, int kh, int kw) const {
        return ((std::size_t(ci) * cout + co) * 2 + kd) * 4 + std::size_t(kh) * 2 + kw;
    }
};

template <typename T>
struct AffineParams {
    int out = 0, in = 0;
    std::vector<T> w;  // (out, in) row-major
    std::vector<T> b;  // (out)

    void resize(int out_, int in_) {
        out = out_;
        in = in_;
        w.assign(std::size_t(out_) * in_, T(0));
        b.assign(out_, T(0));
    }
};

namespace detail {

template <typename T>
T dot8(const T* a, const T* b, int n) {
    T acc[8] = {T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0)};
    int i = 0;
    const int n8 = n & ~7;
    for (; i < n8; i += 8)
        for (int k = 0; k < 8; ++k) acc[k] += a[i + k] * b[i + k];
    T tail = T(0);
    for (; i < n; ++i) tail += a[i] * b[i];
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

// All three shifted row dots of the 3-tap stencil in one pass:
// out[k] += sum_i gy[i] * x[i + k - 1] over the valid i range.
template <typename T>
void dot3_stencil(const T* gy, const T* x, int n, T* out) {
    if (n == 1) {
        out[1] += gy[0] * x[0];
        return;
    }
    T a0[4] = {T(0), T(0), T(0), T(0)};
    T a1[4] = {T(0), T(0), T(0), T(0)};
    T a2[4] = {T(0), T(0), T(0), T(0)};
    int i = 1;
    const int hi = n - 1;
    for (; i + 4 <= hi; i += 4) {
        for (int k = 0; k < 4; ++k) {
            const T g = gy[i + k];
            a0[k] += g * x[i + k - 1];
            a1[k] += g * x[i + k];
            a2[k] += g * x[i + k + 1];
        }
    }
    T t0 = (a0[0] + a0[1]) + (a0[2] + a0[3]);
    T t1 = (a1[0] + a1[1]) + (a1[2] + a1[3]);
    T t2 = (a2[0] + a2[1]) + (a2[2] + a2[3]);
    for (; i < hi; ++i) {
        const T g = gy[i];
        t0 += g * x[i - 1];
        t1 += g * x[i];
        t2 += g * x[i + 1];
    }
    t1 += gy[0] * x[0];
    t2 += gy[0] * x[1];
    t0 += gy[n - 1] * x[n - 2];
    t1 += gy[n - 1] * x[n - 1];
    out[0] += t0;
    out[1] += t1;
    out[2] += t2;
}

template <typename T>
T sum8(const T* a, int n) {
    T acc[8] = {T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0)};
    int i = 0;
    const int n8 = n & ~7;
    for (; i < n8; i += 8)
        for (int k = 0; k < 8; ++k) acc[k] += a[i + k];
    T tail = T(0);
    for (; i < n; ++i) tail += a[i];
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

inline void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// Branch-free polynomial expf (Cody-Waite reduction, |rel err| < 3e-7,
// exact at 0), written so the vectorizer can handle whole sigmoid/softmax
// rows. The double path keeps std::exp: the gradient checker depends on
// full double accuracy.
inline float fast_exp(float x) {
    x = std::min(87.0f, std::max(-87.0f, x));
    const float k = std::floor(x * 1.44269504f + 0.5f);
    float r = x - k * 0.693359375f;
    r -= k * -2.12194440e-4f;
    float p = 1.9875691500e-4f;
    p = p * r + 1.3981999507e-3f;
    p = p * r + 8.3334519073e-3f;
    p = p * r + 4.1665795894e-2f;
    p = p * r + 1.6666665459e-1f;
    p = p * r + 5.0000001201e-1f;
    p = p * r * r + r + 1.0f;
    const std::uint32_t two_k = static_cast<std::uint32_t>(static_cast<std::int32_t>(k) + 127)
                                << 23;
    return p * std::bit_cast<float>(two_k);
}

template <typename T>
T exp_fn(T x) {
    return std::exp(x);
}
template <>
inline float exp_fn<float>(float x) {
    return fast_exp(x);
}

}  // namespace detail

template <typename T>
T sigmoid(T x) {
    if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
    const T e = std::exp(x);
    return e / (T(1) + e);
}

// fast_exp clamps, so the one-sided form stays finite for all inputs.
inline float sigmoid(float x) { return 1.0f / (1.0f + detail::fast_exp(-x)); }

// ---------------------------------------------------------------------------
// conv3d: cubic kernel (k = 1 or 3), zero padding (k-1)/2, same spatial dims.
// Row-stencil formulation: every output row is accumulated once in a hot
// buffer across all channels and taps, so the output tensor is written a
// single time and each input row is read at most 9 * Cin times.

namespace detail {

// Elementwise transfer applied while storing output rows; fusing it saves a
// full tensor pass on this memory-starved target.
enum class PostOp { none, relu, sigmoid };

template <typename T, PostOp POST = PostOp::none>
void conv3d_rows(const Tensor4<T>& x, const ConvParams<T>& p, Tensor4<T>& y, bool accumulate) {
    const int D = x.d, H = x.h, W = x.w, K = p.k, pad = (K - 1) / 2;
#pragma omp parallel for schedule(static)
    for (int d = 0; d < D; ++d) {
        std::vector<T> acc(std::size_t(p.cout) * W);
        for (int h = 0; h < H; ++h) {
            for (int co = 0; co < p.cout; ++co) {
                T* arow = acc.data() + std::size_t(co) * W;
                if (accumulate) {
                    const T* yrow = y.chan(co) + (std::size_t(d) * H + h) * W;
                    std::copy(yrow, yrow + W, arow);
                } else {
                    std::fill(arow, arow + W, p.b[co]);
                }
            }
            for (int ci = 0; ci < p.cin; ++ci) {
                for (int kd = 0; kd < K; ++kd) {
                    const int sd = d + kd - pad;
                    if (sd < 0 || sd >= D) continue;
                    for (int kh = 0; kh < K; ++kh) {
                        const int sh = h + kh - pad;
                        if (sh < 0 || sh >= H) continue;
                        const T* xrow = x.chan(ci) + (std::size_t(sd) * H + sh) * W;
                        for (int co = 0; co < p.cout; ++co) {
                            const T* wt = p.w.data() + p.widx(co, ci, kd, kh, 0);
                            T* arow = acc.data() + std::size_t(co) * W;
                            if (K == 1) {
                                const T w1 = wt[0];
                                for (int i = 0; i < W; ++i) arow[i] += w1 * xrow[i];
                            } else if (W == 1) {
                                arow[0] += wt[1] * xrow[0];
                            } else {
                                const T w0 = wt[0], w1 = wt[1], w2 = wt[2];
                                arow[0] += w1 * xrow[0] + w2 * xrow[1];
                                for (int i = 1; i < W - 1; ++i)
                                    arow[i] += w0 * xrow[i - 1] + w1 * xrow[i] + w2 * xrow[i + 1];
                                arow[W - 1] += w0 * xrow[W - 2] + w1 * xrow[W - 1];
                            }
                        }
                    }
                }
            }
            for (int co = 0; co < p.cout; ++co) {
                T* yrow = y.chan(co) + (std::size_t(d) * H + h) * W;
                const T* arow = acc.data() + std::size_t(co) * W;
                if constexpr (POST == PostOp::relu) {
                    for (int i = 0; i < W; ++i) yrow[i] = arow[i] > T(0) ? arow[i] : T(0);
                } else if constexpr (POST == PostOp::sigmoid) {
                    for (int i = 0; i < W; ++i) yrow[i] = sigmoid(arow[i]);
                } else {
                    std::copy(arow, arow + W, yrow);
                }
            }
        }
    }
}

// Adjoint of conv3d w.r.t. its input is a convolution of the output gradient
// with the channel-transposed, spatially flipped kernel.
template <typename T>
ConvParams<T> flipped_transpose(const ConvParams<T>& p) {
    ConvParams<T> t;
    t.resize(p.cin, p.cout, p.k);
    for (int co = 0; co < p.cout; ++co)
        for (int ci = 0; ci < p.cin; ++ci)
            for (int kd = 0; kd < p.k; ++kd)
                for (int kh = 0; kh < p.k; ++kh)
                    for (int kw = 0; kw < p.k; ++kw)
                        t.w[t.widx(ci, co, p.k - 1 - kd, p.k - 1 - kh, p.k - 1 - kw)] =
                            p.w[p.widx(co, ci, kd, kh, kw)];
    return t;
}

}  // namespace detail

namespace detail {

template <typename T>
void conv3d_check(const Tensor4<T>& x, const ConvParams<T>& p) {
    require(p.k == 1 || p.k == 3, "conv3d: kernel must be 1 or 3");
    require(x.c == p.cin, "conv3d: input channel mismatch");
    require(p.w.size() == std::size_t(p.cout) * p.cin * p.k * p.k * p.k &&
                p.b.size() == std::size_t(p.cout),
            "conv3d: parameter size mismatch");
}

}  // namespace detail

template <typename T>
void conv3d(const Tensor4<T>& x, const ConvParams<T>& p, Tensor4<T>& y) {
    detail::conv3d_check(x, p);
    y.resize(p.cout, x.d, x.h, x.w);
    detail::conv3d_rows(x, p, y, false);
}

// Fused conv + transfer at the store step.
template <typename T>
void conv3d_relu(const Tensor4<T>& x, const ConvParams<T>& p, Tensor4<T>& y) {
    detail::conv3d_check(x, p);
    y.resize(p.cout, x.d, x.h, x.w);
    detail::conv3d_rows<T, detail::PostOp::relu>(x, p, y, false);
}

template <typename T>
void conv3d_sigmoid(const Tensor4<T>& x, const ConvParams<T>& p, Tensor4<T>& y) {
    detail::conv3d_check(x, p);
    y.resize(p.cout, x.d, x.h, x.w);
    detail::conv3d_rows<T, detail::PostOp::sigmoid>(x, p, y, false);
}

// Adjoint. gx may be null when the input gradient is not needed (first layer).
template <typename T>
void conv3d_backward(const Tensor4<T>& x, const ConvParams<T>& p, const Tensor4<T>& gy,
                     Tensor4<T>* gx, ConvParams<T>& gp) {
    detail::require(gy.c == p.cout && gy.d == x.d && gy.h == x.h && gy.w == x.w,
                    "conv3d_backward: gradient shape mismatch");
    detail::require(gp.w.size() == p.w.size() && gp.b.size() == p.b.size(),
                    "conv3d_backward: gradient buffer mismatch");
    const int D = x.d, H = x.h, W = x.w, pad = (p.k - 1) / 2;

    if (gx != nullptr) {
        detail::require(gx->same_shape(x), "conv3d_backward: gx shape mismatch");
        const ConvParams<T> flipped = detail::flipped_transpose(p);
        detail::conv3d_rows(gy, flipped, *gx, true);
    }

    // Weight gradients. For each (kd,kh) tap the valid h rows of one slice
    // are contiguous in both operands, so the row dots flatten into one long
    // dot; the shifted kw taps subtract their row-wrap products explicitly.
    // Each thread owns the gradient block of its output channels.
#pragma omp parallel for schedule(static)
    for (int co = 0; co < p.cout; ++co) {
        const T* gychan = gy.chan(co);
        gp.b[co] += detail::sum8(gychan, static_cast<int>(gy.spatial()));
        for (int ci = 0; ci < p.cin; ++ci) {
            const T* xchan = x.chan(ci);
            if (p.k == 1) {
                gp.w[p.widx(co, ci, 0, 0, 0)] +=
                    detail::dot8(gychan, xchan, static_cast<int>(gy.spatial()));
                continue;
            }
            for (int kd = 0; kd < 3; ++kd) {
                for (int kh = 0; kh < 3; ++kh) {
                    const int hoff = kh - pad;
                    const int hlo = std::max(0, -hoff), hhi = std::min(H, H - hoff);
                    const int nh = hhi - hlo;
                    if (nh <= 0) continue;
                    T t0 = T(0), t1 = T(0), t2 = T(0);
                    for (int d = std::max(0, pad - kd); d < std::min(D, D + pad - kd); ++d) {
                        const int sd = d + kd - pad;
                        const T* g = gychan + (std::size_t(d) * H + hlo) * W;
                        const T* xr = xchan + (std::size_t(sd) * H + hlo + hoff) * W;
                        const int len = nh * W;
                        t1 += detail::dot8(g, xr, len);
                        if (W == 1) continue;
                        T w0 = detail::dot8(g + 1, xr, len - 1);
                        T w2 = detail::dot8(g, xr + 1, len - 1);
                        // Remove the products that crossed a row boundary.
                        for (int r = 1; r < nh; ++r) {
                            w0 -= g[r * W] * xr[r * W - 1];
                            w2 -= g[r * W - 1] * xr[r * W];
                        }
                        t0 += w0;
                        t2 += w2;
                    }
                    T* gw = gp.w.data() + p.widx(co, ci, kd, kh, 0);
                    gw[0] += t0;
                    gw[1] += t1;
                    gw[2] += t2;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// transposed_conv3d: kernel 2^3, stride 2; output spatial dims exactly double.
// Each output voxel receives exactly one kernel contribution.

template <typename T>
void transposed_conv3d(const Tensor4<T>& x, const TConvParams<T>& p, Tensor4<T>& y) {
    detail::require(x.c == p.cin, "transposed_conv3d: input channel mismatch");
    detail::require(p.w.size() == std::size_t(p.cin) * p.cout * 8 &&
                        p.b.size() == std::size_t(p.cout),
                    "transposed_conv3d: parameter size mismatch");
    y.resize(p.cout, 2 * x.d, 2 * x.h, 2 * x.w);

    // Stride 2 with a 2^3 kernel: output voxel (2d+kd, 2h+kh, 2w+kw) receives
    // exactly the (kd,kh,kw) tap of source voxel (d,h,w), so every output row
    // is produced in one interleaving pass.
    const int D = x.d, H = x.h, W = x.w;
#pragma omp parallel for schedule(static)
    for (int dout = 0; dout < 2 * D; ++dout) {
        const int d = dout / 2, kd = dout % 2;
        for (int hout = 0; hout < 2 * H; ++hout) {
            const int h = hout / 2, kh = hout % 2;
            for (int co = 0; co < p.cout; ++co) {
                T* yrow = y.chan(co) + (std::size_t(dout) * 2 * H + hout) * (2 * W);
                std::fill(yrow, yrow + 2 * W, p.b[co]);
                for (int ci = 0; ci < p.cin; ++ci) {
                    const T* xrow = x.chan(ci) + (std::size_t(d) * H + h) * W;
                    const T w0 = p.w[p.widx(ci, co, kd, kh, 0)];
                    const T w1 = p.w[p.widx(ci, co, kd, kh, 1)];
                    for (int wv = 0; wv < W; ++wv) {
                        yrow[2 * wv] += w0 * xrow[wv];
                        yrow[2 * wv + 1] += w1 * xrow[wv];
                    }
                }
            }
        }
    }
}

template <typename T>
void transposed_conv3d_backward(const Tensor4<T>& x, const TConvParams<T>& p, const Tensor4<T>& gy,
                                Tensor4<T>* gx, TConvParams<T>& gp) {
    detail::require(gy.c == p.cout && gy.d == 2 * x.d && gy.h == 2 * x.h && gy.w == 2 * x.w,
                    "transposed_conv3d_backward: gradient shape mismatch");
    const int D = x.d, H = x.h, W = x.w;

    if (gx != nullptr) {
        detail::require(gx->same_shape(x), "transposed_conv3d_backward: gx shape mismatch");
#pragma omp parallel for schedule(static)
        for (int ci = 0; ci < p.cin; ++ci) {
            T* gxchan = gx->chan(ci);
            for (int co = 0; co < p.cout; ++co) {
                const T* gychan = gy.chan(co);
                for (int kd = 0; kd < 2; ++kd) {
                    for (int kh = 0; kh < 2; ++kh) {
                        for (int kw = 0; kw < 2; ++kw) {
                            const T wt = p.w[p.widx(ci, co, kd, kh, kw)];
                            for (int d = 0; d < D; ++d) {
                                T* gxsl = gxchan + std::size_t(d) * H * W;
                                const T* gysl = gychan + std::size_t(2 * d + kd) * (2 * H) * (2 * W);
                                for (int h = 0; h < H; ++h) {
                                    T* gxrow = gxsl + std::size_t(h) * W;
                                    const T* gyrow = gysl + std::size_t(2 * h + kh) * (2 * W) + kw;
                                    for (int wv = 0; wv < W; ++wv) gxrow[wv] += wt * gyrow[2 * wv];
                                }
                            }
                        }
                    }
                }
            }
        }
    }

#pragma omp parallel for schedule(static)
    for (int ci = 0; ci < p.cin; ++ci) {
        for (int co = 0; co < p.cout; ++co) {
            const T* xchan = x.chan(ci);
            const T* gychan = gy.chan(co);
            for (int kd = 0; kd < 2; ++kd) {
                for (int kh = 0; kh < 2; ++kh) {
                    for (int kw = 0; kw < 2; ++kw) {
                        T acc = T(0);
                        for (int d = 0; d < D; ++d) {
                            const T* xsl = xchan + std::size_t(d) * H * W;
                            const T* gysl = gychan + std::size_t(2 * d + kd) * (2 * H) * (2 * W);
                            for (int h = 0; h < H; ++h) {
                                const T* xrow = xsl + std::size_t(h) * W;
                                const T* gyrow = gysl + std::size_t(2 * h + kh) * (2 * W) + kw;
                                for (int wv = 0; wv < W; ++wv) acc += xrow[wv] * gyrow[2 * wv];
                            }
                        }
                        gp.w[p.widx(ci, co, kd, kh, kw)] += acc;
                    }
                }
            }
        }
    }
    for (int co = 0; co < p.cout; ++co)
        gp.b[co] += detail::sum8(gy.chan(co), static_cast<int>(gy.spatial()));
}

// ---------------------------------------------------------------------------
// maxpool3d: window 2^3, stride 2. Ties resolve to the lowest linear index.

template <typename T>
void maxpool3d(const Tensor4<T>& x, Tensor4<T>& y, std::vector<std::int32_t>& argmax) {
    detail::require(x.d % 2 == 0 && x.h % 2 == 0 && x.w % 2 == 0,
                    "maxpool3d: spatial dims must be even");
    y.resize(x.c, x.d / 2, x.h / 2, x.w / 2);
    argmax.assign(y.size(), 0);

    const int H = x.h, W = x.w;
#pragma omp parallel for schedule(static)
    for (int c = 0; c < x.c; ++c) {
        const std::size_t xbase = std::size_t(c) * x.spatial();
        std::size_t o = std::size_t(c) * y.spatial();
        for (int d = 0; d < y.d; ++d) {
            for (int h = 0; h < y.h; ++h) {
                for (int wv = 0; wv < y.w; ++wv, ++o) {
                    std::size_t best = xbase + (std::size_t(2 * d) * H + 2 * h) * W + 2 * wv;
                    T bestv = x.v[best];
                    for (int kd = 0; kd < 2; ++kd) {
                        for (int kh = 0; kh < 2; ++kh) {
                            for (int kw = 0; kw < 2; ++kw) {
                                const std::size_t i =
                                    xbase + (std::size_t(2 * d + kd) * H + 2 * h + kh) * W + 2 * wv + kw;
                                if (x.v[i] > bestv) {
                                    bestv = x.v[i];
                                    best = i;
                                }
                            }
                        }
                    }
                    y.v[o] = bestv;
                    argmax[o] = static_cast<std::int32_t>(best);
                }
            }
        }
    }
}

template <typename T>
void maxpool3d_backward(const std::vector<std::int32_t>& argmax, const Tensor4<T>& gy,
                        Tensor4<T>& gx) {
    detail::require(argmax.size() == gy.size(), "maxpool3d_backward: argmax/gy size mismatch");
    const std::size_t per_chan = gy.spatial();
#pragma omp parallel for schedule(static)
    for (int c = 0; c < gy.c; ++c) {
        const std::size_t lo = std::size_t(c) * per_chan;
        for (std::size_t i = lo; i < lo + per_chan; ++i)
            gx.v[static_cast<std::size_t>(argmax[i])] += gy.v[i];
    }
}

// ---------------------------------------------------------------------------
// Dense affine map, global average pooling, elementwise activations.

template <typename T>
void affine(const std::vector<T>& x, const AffineParams<T>& p, std::vector<T>& y) {
    detail::require(x.size() == std::size_t(p.in), "affine: input size mismatch");
    y.assign(p.out, T(0));
    for (int o = 0; o < p.out; ++o) {
        T acc = p.b[o];
        const T* row = p.w.data() + std::size_t(o) * p.in;
        for (int i = 0; i < p.in; ++i) acc += row[i] * x[i];
        y[o] = acc;
    }
}

template <typename T>
void affine_backward(const std::vector<T>& x, const AffineParams<T>& p, const std::vector<T>& gy,
                     std::vector<T>& gx, AffineParams<T>& gp) {
    detail::require(gy.size() == std::size_t(p.out), "affine_backward: gy size mismatch");
    gx.assign(p.in, T(0));
    for (int o = 0; o < p.out; ++o) {
        const T g = gy[o];
        gp.b[o] += g;
        const T* row = p.w.data() + std::size_t(o) * p.in;
        T* grow = gp.w.data() + std::size_t(o) * p.in;
        for (int i = 0; i < p.in; ++i) {
            gx[i] += row[i] * g;
            grow[i] += x[i] * g;
        }
    }
}

template <typename T>
void global_avg_pool(const Tensor4<T>& x, std::vector<T>& out) {
    out.assign(x.c, T(0));
    const T scale = T(1) / static_cast<T>(x.spatial());
    for (int c = 0; c < x.c; ++c)
        out[c] = detail::sum8(x.chan(c), static_cast<int>(x.spatial())) * scale;
}

template <typename T>
void global_avg_pool_backward(const std::vector<T>& g, Tensor4<T>& gx) {
    const T scale = T(1) / static_cast<T>(gx.spatial());
    for (int c = 0; c < gx.c; ++c) {
        const T add = g[c] * scale;
        T* chan = gx.chan(c);
        for (std::size_t i = 0; i < gx.spatial(); ++i) chan[i] += add;
    }
}

template <typename T>
void sigmoid_inplace(Tensor4<T>& x) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < x.c; ++c) {
        T* chan = x.chan(c);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.spatial());
        for (std::ptrdiff_t i = 0; i < n; ++i) chan[i] = sigmoid(chan[i]);
    }
}

// In-place ReLU; the derivative mask is recovered from the output (> 0).
template <typename T>
void relu_inplace(Tensor4<T>& x) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < x.c; ++c) {
        T* chan = x.chan(c);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.spatial());
        for (std::ptrdiff_t i = 0; i < n; ++i) chan[i] = chan[i] > T(0) ? chan[i] : T(0);
    }
}

// gx += gy masked by the forward output.
template <typename T>
void relu_backward(const Tensor4<T>& y, const Tensor4<T>& gy, Tensor4<T>& gx) {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y.v[i] > T(0)) gx.v[i] += gy.v[i];
}

}  // namespace voxal
