#pragma once

#include <vector>

#include "voxal/nn_ops.hpp"
#include "voxal/tensor.hpp"

// Combined channel/spatial attention. The two paths run in parallel on the
// same input: the channel path squeezes with global average pooling and
// excites through a two-layer bottleneck; the spatial path is a single 3^3
// convolution. Their sigmoid outputs multiply into one attention map A with
// A[c,v] = ca[c] * sa[c,v], and the block output is x * A.

namespace voxal {

template <typename T>
struct AttentionParams {
    AffineParams<T> fc1;  // C -> ceil(C/r)
    AffineParams<T> fc2;  // ceil(C/r) -> C
    ConvParams<T> sam;    // 3^3, C -> C

    void resize(int channels, int reduction) {
        const int mid = (channels + reduction - 1) / reduction;
        fc1.resize(mid, channels);
        fc2.resize(channels, mid);
        sam.resize(channels, channels, 3);
    }
};

// Forward state the adjoint needs.
template <typename T>
struct AttentionCache {
    std::vector<T> gap;   // squeezed input
    std::vector<T> mid;   // post-ReLU bottleneck
    std::vector<T> ca;    // channel weights, in (0,1)
    Tensor4<T> sa;        // spatial weights, in (0,1)
};

// ca = sigmoid(fc2(relu(fc1(gap(x)))))
template <typename T>
std::vector<T> channel_attention(const Tensor4<T>& x, const AttentionParams<T>& p,
                                 AttentionCache<T>* cache = nullptr) {
    AttentionCache<T> local;
    AttentionCache<T>& c = cache != nullptr ? *cache : local;
    global_avg_pool(x, c.gap);
    affine(c.gap, p.fc1, c.mid);
    for (T& v : c.mid) v = v > T(0) ? v : T(0);
    affine(c.mid, p.fc2, c.ca);
    for (T& v : c.ca) v = sigmoid(v);
    return c.ca;
}

// sa = sigmoid(conv3d(x)), one map per channel
template <typename T>
void spatial_attention(const Tensor4<T>& x, const AttentionParams<T>& p, Tensor4<T>& sa) {
    conv3d_sigmoid(x, p.sam, sa);
}

// A[c,v] = ca[c] * sa[c,v]; out[c,v] = x[c,v] * A[c,v]
template <typename T>
void recalibrate(const Tensor4<T>& x, const std::vector<T>& ca, const Tensor4<T>& sa,
                 Tensor4<T>& out, Tensor4<T>& am) {
    detail::require(ca.size() == std::size_t(x.c) && sa.same_shape(x),
                    "recalibrate: attention shape mismatch");
    out.resize(x.c, x.d, x.h, x.w);
    am.resize(x.c, x.d, x.h, x.w);
#pragma omp parallel for schedule(static)
    for (int c = 0; c < x.c; ++c) {
        const T cw = ca[c];
        const T* xc = x.chan(c);
        const T* sc = sa.chan(c);
        T* ac = am.chan(c);
        T* oc = out.chan(c);
        for (std::size_t i = 0; i < x.spatial(); ++i) {
            ac[i] = cw * sc[i];
            oc[i] = xc[i] * ac[i];
        }
    }
}

template <typename T>
void apply_attention(const Tensor4<T>& x, const AttentionParams<T>& p, Tensor4<T>& out,
                     Tensor4<T>& am, AttentionCache<T>& cache) {
    channel_attention(x, p, &cache);
    spatial_attention(x, p, cache.sa);
    recalibrate(x, cache.ca, cache.sa, out, am);
}

// Adjoint of apply_attention. g_out is the gradient at the block output;
// gx accumulates the full input gradient (direct path plus both attention
// paths), gp the parameter gradients.
template <typename T>
void apply_attention_backward(const Tensor4<T>& x, const AttentionParams<T>& p,
                              const AttentionCache<T>& cache, const Tensor4<T>& g_out,
                              Tensor4<T>& gx, AttentionParams<T>& gp) {
    detail::require(g_out.same_shape(x) && gx.same_shape(x),
                    "apply_attention_backward: shape mismatch");
    const std::size_t n = x.spatial();

    // Direct path and the per-path gradients of ca and sa.
    std::vector<T> g_ca(x.c, T(0));
    Tensor4<T> g_sa_pre(x.c, x.d, x.h, x.w);  // gradient at the SAM pre-sigmoid
#pragma omp parallel for schedule(static)
    for (int c = 0; c < x.c; ++c) {
        const T cw = cache.ca[c];
        const T* xc = x.chan(c);
        const T* sc = cache.sa.chan(c);
        const T* gc = g_out.chan(c);
        T* gxc = gx.chan(c);
        T* gsc = g_sa_pre.chan(c);
        T acc = T(0);
        for (std::size_t i = 0; i < n; ++i) {
            const T g = gc[i];
            gxc[i] += g * cw * sc[i];          // through the product with A
            const T g_am = g * xc[i];          // dL/dA
            acc += g_am * sc[i];               // dL/dca
            const T g_sa = g_am * cw;          // dL/dsa
            gsc[i] = g_sa * sc[i] * (T(1) - sc[i]);
        }
        g_ca[c] = acc;
    }

    // SAM path: back through the 3^3 convolution.
    conv3d_backward(x, p.sam, g_sa_pre, &gx, gp.sam);

    // CAM path: sigmoid -> fc2 -> relu -> fc1 -> gap.
    std::vector<T> g_fc2(x.c);
    for (int c = 0; c < x.c; ++c) g_fc2[c] = g_ca[c] * cache.ca[c] * (T(1) - cache.ca[c]);
    std::vector<T> g_mid, g_gap;
    affine_backward(cache.mid, p.fc2, g_fc2, g_mid, gp.fc2);
    for (std::size_t i = 0; i < g_mid.size(); ++i)
        if (cache.mid[i] <= T(0)) g_mid[i] = T(0);
    affine_backward(cache.gap, p.fc1, g_mid, g_gap, gp.fc1);
    global_avg_pool_backward(g_gap, gx);
}

}  // namespace voxal
