#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "voxal/attention.hpp"
#include "voxal/nn_ops.hpp"
#include "voxal/rng.hpp"
#include "voxal/tensor.hpp"
#include "voxal/volume.hpp"

// Encoder/decoder segmentation network with attention recalibration after
// every convolution pair and after the head. The head emits num_classes + 1
// channels: the last channel is the UNLABELED class, which carries zero loss
// weight and is excluded from predictions.

namespace voxal {

struct ArchConfig {
    int base_channels = 8;  // F
    int depth = 1;          // encoder/decoder levels
    int num_classes = 2;    // C; the head emits C+1 channels
    int cam_reduction = 2;
    bool attention = true;  // false = identity recalibration (plain u-net arm)

    int out_channels() const { return num_classes + 1; }
    int level_channels(int level) const { return base_channels << level; }
    int divisor() const { return 1 << depth; }

    void validate() const {
        if (base_channels < 1) throw std::invalid_argument("arch: base_channels must be >= 1");
        if (depth < 1 || depth > 3) throw std::invalid_argument("arch: depth must be in [1,3]");
        if (num_classes < 2) throw std::invalid_argument("arch: num_classes must be >= 2");
        if (cam_reduction < 1) throw std::invalid_argument("arch: cam_reduction must be >= 1");
    }
    bool operator==(const ArchConfig&) const = default;
};

template <typename T>
struct LevelParams {
    ConvParams<T> conv1, conv2;
    AttentionParams<T> attn;
};

template <typename T>
struct ModelParams {
    ArchConfig arch;
    std::vector<LevelParams<T>> enc;   // depth levels
    LevelParams<T> bottleneck;
    std::vector<TConvParams<T>> up;    // one per level, deepest first applied
    std::vector<LevelParams<T>> dec;   // mirror of enc
    ConvParams<T> head;                // 1x1x1, F -> C+1
    AttentionParams<T> head_attn;
};

template <typename T>
void resize_model(ModelParams<T>& m, const ArchConfig& arch) {
    arch.validate();
    m.arch = arch;
    m.enc.resize(arch.depth);
    m.dec.resize(arch.depth);
    m.up.resize(arch.depth);
    int in_ch = 1;
    for (int l = 0; l < arch.depth; ++l) {
        const int ch = arch.level_channels(l);
        m.enc[l].conv1.resize(ch, in_ch, 3);
        m.enc[l].conv2.resize(ch, ch, 3);
        m.enc[l].attn.resize(ch, arch.cam_reduction);
        in_ch = ch;
    }
    const int bott_ch = arch.level_channels(arch.depth);
    m.bottleneck.conv1.resize(bott_ch, arch.level_channels(arch.depth - 1), 3);
    m.bottleneck.conv2.resize(bott_ch, bott_ch, 3);
    m.bottleneck.attn.resize(bott_ch, arch.cam_reduction);
    for (int l = arch.depth - 1; l >= 0; --l) {
        const int ch = arch.level_channels(l);
        m.up[l].resize(arch.level_channels(l + 1), ch);
        m.dec[l].conv1.resize(ch, 2 * ch, 3);
        m.dec[l].conv2.resize(ch, ch, 3);
        m.dec[l].attn.resize(ch, arch.cam_reduction);
    }
    m.head.resize(arch.out_channels(), arch.base_channels, 1);
    m.head_attn.resize(arch.out_channels(), arch.cam_reduction);
}

// Reference to one parameter array. The enumeration order is the declared
// order of the architecture and doubles as the checkpoint layout.
template <typename T>
struct ParamRef {
    std::string name;
    std::vector<T>* data;
    bool is_bias;
};

template <typename T>
std::vector<ParamRef<T>> collect_params(ModelParams<T>& m) {
    std::vector<ParamRef<T>> out;
    auto add = [&out](const std::string& name, std::vector<T>& v, bool bias) {
        out.push_back({name, &v, bias});
    };
    auto add_attn = [&](const std::string& prefix, AttentionParams<T>& a) {
        add(prefix + ".cam.fc1.w", a.fc1.w, false);
        add(prefix + ".cam.fc1.b", a.fc1.b, true);
        add(prefix + ".cam.fc2.w", a.fc2.w, false);
        add(prefix + ".cam.fc2.b", a.fc2.b, true);
        add(prefix + ".sam.w", a.sam.w, false);
        add(prefix + ".sam.b", a.sam.b, true);
    };
    auto add_level = [&](const std::string& prefix, LevelParams<T>& l) {
        add(prefix + ".conv1.w", l.conv1.w, false);
        add(prefix + ".conv1.b", l.conv1.b, true);
        add(prefix + ".conv2.w", l.conv2.w, false);
        add(prefix + ".conv2.b", l.conv2.b, true);
        add_attn(prefix + ".attn", l.attn);
    };
    for (std::size_t l = 0; l < m.enc.size(); ++l) add_level("enc" + std::to_string(l), m.enc[l]);
    add_level("bottleneck", m.bottleneck);
    for (int l = static_cast<int>(m.dec.size()) - 1; l >= 0; --l) {
        add("up" + std::to_string(l) + ".w", m.up[l].w, false);
        add("up" + std::to_string(l) + ".b", m.up[l].b, true);
        add_level("dec" + std::to_string(l), m.dec[l]);
    }
    add("head.w", m.head.w, false);
    add("head.b", m.head.b, true);
    add_attn("head_attn", m.head_attn);
    return out;
}

template <typename T>
struct ConstParamRef {
    std::string name;
    const std::vector<T>* data;
    bool is_bias;
};

template <typename T>
std::vector<ConstParamRef<T>> collect_params(const ModelParams<T>& m) {
    auto refs = collect_params(const_cast<ModelParams<T>&>(m));
    std::vector<ConstParamRef<T>> out;
    out.reserve(refs.size());
    for (auto& r : refs) out.push_back({std::move(r.name), r.data, r.is_bias});
    return out;
}

template <typename T>
std::size_t param_count(const ModelParams<T>& m) {
    std::size_t n = 0;
    for (const auto& r : collect_params(m)) n += r.data->size();
    return n;
}

// Convolution weights ~ N(0, 2/fan_in), attention affine/SAM weights
// ~ N(0, 1/fan_in), all biases zero.
template <typename T>
ModelParams<T> init_params(const ArchConfig& arch, std::uint64_t seed) {
    ModelParams<T> m;
    resize_model(m, arch);
    Rng rng(mix_seed(seed, 0x494e4954ull));  // "INIT"
    // Raw standard normals in enumeration order, then per-block scaling;
    // biases stay zero.
    for (auto& ref : collect_params(m)) {
        if (ref.is_bias) continue;
        for (T& v : *ref.data) v = static_cast<T>(rng.normal());
    }
    auto scale_conv = [](ConvParams<T>& p, double gain) {
        const double std_dev = std::sqrt(gain / (double(p.cin) * p.k * p.k * p.k));
        for (T& v : p.w) v = static_cast<T>(v * std_dev);
    };
    auto scale_affine = [](AffineParams<T>& p) {
        const double std_dev = std::sqrt(1.0 / double(p.in));
        for (T& v : p.w) v = static_cast<T>(v * std_dev);
    };
    auto scale_attn = [&](AttentionParams<T>& a) {
        scale_affine(a.fc1);
        scale_affine(a.fc2);
        scale_conv(a.sam, 1.0);
    };
    auto scale_level = [&](LevelParams<T>& l) {
        scale_conv(l.conv1, 2.0);
        scale_conv(l.conv2, 2.0);
        scale_attn(l.attn);
    };
    for (auto& l : m.enc) scale_level(l);
    scale_level(m.bottleneck);
    for (auto& u : m.up) {
        const double std_dev = std::sqrt(2.0 / (double(u.cin) * 8));
        for (T& v : u.w) v = static_cast<T>(v * std_dev);
    }
    for (auto& l : m.dec) scale_level(l);
    scale_conv(m.head, 2.0);
    scale_attn(m.head_attn);
    return m;
}

template <typename T>
ModelParams<T> zeros_like(const ModelParams<T>& m) {
    ModelParams<T> z;
    resize_model(z, m.arch);
    return z;
}

// Final feature maps Z, the head attention map A, the recalibrated logits
// Zr = Z * A, and the channel softmax P of Zr.
template <typename T>
struct ForwardOutput {
    Tensor4<T> z, am, zr, prob;
};

template <typename T>
struct LevelCache {
    Tensor4<T> c1, c2, att_out;
    AttentionCache<T> attn;
};

template <typename T>
struct Cache {
    Tensor4<T> input;
    std::vector<LevelCache<T>> enc;
    std::vector<Tensor4<T>> pooled;
    std::vector<std::vector<std::int32_t>> pool_idx;
    LevelCache<T> bott;
    std::vector<Tensor4<T>> upsampled;  // per dec level
    std::vector<Tensor4<T>> concat;
    std::vector<LevelCache<T>> dec;
    Tensor4<T> z;
    AttentionCache<T> head_attn;
    Tensor4<T> am;  // head attention map (also in ForwardOutput)
};

template <typename T>
void softmax_channels(const Tensor4<T>& logits, Tensor4<T>& prob) {
    prob.resize(logits.c, logits.d, logits.h, logits.w);
    const std::size_t n = logits.spatial();
    const std::size_t cstride = n;
#pragma omp parallel for schedule(static)
    for (int d = 0; d < logits.d; ++d) {
        const std::size_t lo = std::size_t(d) * logits.h * logits.w;
        const std::size_t hi = lo + std::size_t(logits.h) * logits.w;
        for (std::size_t v = lo; v < hi; ++v) {
            T mx = logits.v[v];
            for (int c = 1; c < logits.c; ++c) mx = std::max(mx, logits.v[c * cstride + v]);
            T sum = T(0);
            for (int c = 0; c < logits.c; ++c) {
                const T e = detail::exp_fn(logits.v[c * cstride + v] - mx);
                prob.v[c * cstride + v] = e;
                sum += e;
            }
            const T inv = T(1) / sum;
            for (int c = 0; c < logits.c; ++c) prob.v[c * cstride + v] *= inv;
        }
    }
}

namespace detail {

template <typename T>
void level_forward(const Tensor4<T>& x, const LevelParams<T>& p, bool attention, LevelCache<T>& cc,
                   Tensor4<T>& am_scratch) {
    conv3d_relu(x, p.conv1, cc.c1);
    conv3d_relu(cc.c1, p.conv2, cc.c2);
    if (attention) {
        apply_attention(cc.c2, p.attn, cc.att_out, am_scratch, cc.attn);
    } else {
        cc.att_out = cc.c2;
    }
}

// Backward through one conv pair + attention block. g_in must arrive
// freshly constructed (it is resized and accumulated into).
template <typename T>
void level_backward(const Tensor4<T>& x, const LevelParams<T>& p, bool attention,
                    const LevelCache<T>& cc, const Tensor4<T>& g_att_out, Tensor4<T>& g_in,
                    LevelParams<T>& gp) {
    Tensor4<T> g_c2(cc.c2.c, cc.c2.d, cc.c2.h, cc.c2.w);
    if (attention) {
        apply_attention_backward(cc.c2, p.attn, cc.attn, g_att_out, g_c2, gp.attn);
    } else {
        g_c2 = g_att_out;
    }
    // ReLU after conv2.
    for (std::size_t i = 0; i < g_c2.size(); ++i)
        if (cc.c2.v[i] <= T(0)) g_c2.v[i] = T(0);
    Tensor4<T> g_c1(cc.c1.c, cc.c1.d, cc.c1.h, cc.c1.w);
    conv3d_backward(cc.c1, p.conv2, g_c2, &g_c1, gp.conv2);
    for (std::size_t i = 0; i < g_c1.size(); ++i)
        if (cc.c1.v[i] <= T(0)) g_c1.v[i] = T(0);
    g_in.resize(x.c, x.d, x.h, x.w);
    conv3d_backward(x, p.conv1, g_c1, &g_in, gp.conv1);
}

}  // namespace detail

template <typename T>
ForwardOutput<T> forward(const ModelParams<T>& m, const Tensor4<T>& input,
                         Cache<T>* cache = nullptr) {
    const ArchConfig& arch = m.arch;
    if (input.c != 1) throw std::invalid_argument("forward: expected single-channel input");
    if (input.d % arch.divisor() != 0 || input.h % arch.divisor() != 0 ||
        input.w % arch.divisor() != 0)
        throw std::invalid_argument("forward: spatial dims must be divisible by 2^depth");

    Cache<T> local;
    Cache<T>& cc = cache != nullptr ? *cache : local;
    cc.enc.resize(arch.depth);
    cc.dec.resize(arch.depth);
    cc.pooled.resize(arch.depth);
    cc.pool_idx.resize(arch.depth);
    cc.upsampled.resize(arch.depth);
    cc.concat.resize(arch.depth);
    cc.input = input;

    ForwardOutput<T> out;
    Tensor4<T> am_scratch;

    // Encoder: conv pair + attention feeds both the skip and the pool.
    const Tensor4<T>* cur = &cc.input;
    for (int l = 0; l < arch.depth; ++l) {
        detail::level_forward(*cur, m.enc[l], arch.attention, cc.enc[l], am_scratch);
        maxpool3d(cc.enc[l].att_out, cc.pooled[l], cc.pool_idx[l]);
        cur = &cc.pooled[l];
    }

    detail::level_forward(*cur, m.bottleneck, arch.attention, cc.bott, am_scratch);

    // Decoder: upsample, concatenate with the skip, conv pair + attention.
    const Tensor4<T>* deep = &cc.bott.att_out;
    for (int l = arch.depth - 1; l >= 0; --l) {
        transposed_conv3d(*deep, m.up[l], cc.upsampled[l]);
        const Tensor4<T>& skip = cc.enc[l].att_out;
        Tensor4<T>& cat = cc.concat[l];
        cat.resize(2 * skip.c, skip.d, skip.h, skip.w);
        std::copy(cc.upsampled[l].v.begin(), cc.upsampled[l].v.end(), cat.v.begin());
        std::copy(skip.v.begin(), skip.v.end(), cat.v.begin() + cc.upsampled[l].v.size());
        detail::level_forward(cat, m.dec[l], arch.attention, cc.dec[l], am_scratch);
        deep = &cc.dec[l].att_out;
    }

    conv3d(*deep, m.head, cc.z);
    out.z = cc.z;
    if (arch.attention) {
        apply_attention(cc.z, m.head_attn, out.zr, cc.am, cc.head_attn);
    } else {
        out.zr = cc.z;
        cc.am.resize(cc.z.c, cc.z.d, cc.z.h, cc.z.w);
        cc.am.fill(T(1));
    }
    out.am = cc.am;
    softmax_channels(out.zr, out.prob);
    return out;
}

template <typename T>
ForwardOutput<T> forward(const ModelParams<T>& m, const Volume& vol, Cache<T>* cache = nullptr) {
    return forward(m, tensor_from_volume<T>(vol), cache);
}

// Backward pass from the gradient at the recalibrated logits Zr.
// Parameter gradients accumulate into `grads`.
template <typename T>
void backward(const ModelParams<T>& m, const Cache<T>& cc, const Tensor4<T>& g_zr,
              ModelParams<T>& grads) {
    const ArchConfig& arch = m.arch;

    Tensor4<T> g_z(cc.z.c, cc.z.d, cc.z.h, cc.z.w);
    if (arch.attention) {
        apply_attention_backward(cc.z, m.head_attn, cc.head_attn, g_zr, g_z, grads.head_attn);
    } else {
        g_z = g_zr;
    }

    const Tensor4<T>& head_in =
        arch.depth > 0 ? cc.dec[0].att_out : cc.bott.att_out;  // depth >= 1 always
    Tensor4<T> g_dec(head_in.c, head_in.d, head_in.h, head_in.w);
    conv3d_backward(head_in, m.head, g_z, &g_dec, grads.head);

    // Decoder levels, shallowest to deepest.
    Tensor4<T> g_deep;
    std::vector<Tensor4<T>> g_skip(arch.depth);
    for (int l = 0; l < arch.depth; ++l) {
        const Tensor4<T>& g_out = l == 0 ? g_dec : g_deep;
        Tensor4<T> g_cat;
        detail::level_backward(cc.concat[l], m.dec[l], arch.attention, cc.dec[l], g_out, g_cat,
                               grads.dec[l]);
        // Split the concat gradient: first half upsampled, second half skip.
        const Tensor4<T>& up_out = cc.upsampled[l];
        Tensor4<T> g_up(up_out.c, up_out.d, up_out.h, up_out.w);
        std::copy(g_cat.v.begin(), g_cat.v.begin() + g_up.v.size(), g_up.v.begin());
        g_skip[l].resize(up_out.c, up_out.d, up_out.h, up_out.w);
        std::copy(g_cat.v.begin() + g_up.v.size(), g_cat.v.end(), g_skip[l].v.begin());

        const Tensor4<T>& up_in = l == arch.depth - 1 ? cc.bott.att_out : cc.dec[l + 1].att_out;
        g_deep.resize(up_in.c, up_in.d, up_in.h, up_in.w);
        g_deep.zero();
        transposed_conv3d_backward(up_in, m.up[l], g_up, &g_deep, grads.up[l]);
    }

    // Bottleneck.
    Tensor4<T> g_pool;
    detail::level_backward(cc.pooled[arch.depth - 1], m.bottleneck, arch.attention, cc.bott, g_deep,
                           g_pool, grads.bottleneck);

    // Encoder levels, deepest to shallowest. The skip gradient joins the
    // pooled-path gradient at each level's attention output.
    for (int l = arch.depth - 1; l >= 0; --l) {
        Tensor4<T>& g_att = g_skip[l];
        maxpool3d_backward(cc.pool_idx[l], g_pool, g_att);
        const Tensor4<T>& level_in = l == 0 ? cc.input : cc.pooled[l - 1];
        Tensor4<T> g_in;
        detail::level_backward(level_in, m.enc[l], arch.attention, cc.enc[l], g_att, g_in,
                               grads.enc[l]);
        g_pool = std::move(g_in);
    }
}

// SR1/SR2: argmax over the first C channels (the UNLABELED channel never
// participates in predictions). Ties resolve to the lowest class ID.
template <typename T>
LabelVolume argmax_labels(const Tensor4<T>& t, int num_classes) {
    detail::require(t.c >= num_classes, "argmax_labels: too few channels");
    LabelVolume out(Dims{std::uint32_t(t.d), std::uint32_t(t.h), std::uint32_t(t.w)}, num_classes);
    const std::size_t n = t.spatial();
    for (std::size_t v = 0; v < n; ++v) {
        int best = 0;
        T bestv = t.v[v];
        for (int c = 1; c < num_classes; ++c) {
            const T val = t.v[std::size_t(c) * n + v];
            if (val > bestv) {
                bestv = val;
                best = c;
            }
        }
        out.data[v] = static_cast<std::uint8_t>(best);
    }
    return out;
}

template <typename T>
struct Predictions {
    LabelVolume sr1;  // argmax of recalibrated logits
    LabelVolume sr2;  // argmax of the head attention map
};

template <typename T>
Predictions<T> predictions(const ForwardOutput<T>& fo, int num_classes) {
    return {argmax_labels(fo.zr, num_classes), argmax_labels(fo.am, num_classes)};
}

}  // namespace voxal
