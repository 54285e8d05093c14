#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "voxal/volume.hpp"

namespace voxal {

// Dense (C, D, H, W) activation block, C-major:
// index(c,d,h,w) = ((c*D + d)*H + h)*W + w.
template <typename T>
struct Tensor4 {
    int c = 0, d = 0, h = 0, w = 0;
    std::vector<T> v;

    Tensor4() = default;
    Tensor4(int c_, int d_, int h_, int w_)
        : c(c_), d(d_), h(h_), w(w_), v(std::size_t(c_) * d_ * h_ * w_, T(0)) {}

    std::size_t size() const { return v.size(); }
    std::size_t spatial() const { return std::size_t(d) * h * w; }

    std::size_t idx(int ci, int di, int hi, int wi) const {
        return ((std::size_t(ci) * d + di) * h + hi) * w + wi;
    }
    T& at(int ci, int di, int hi, int wi) { return v[idx(ci, di, hi, wi)]; }
    T at(int ci, int di, int hi, int wi) const { return v[idx(ci, di, hi, wi)]; }

    T* chan(int ci) { return v.data() + std::size_t(ci) * spatial(); }
    const T* chan(int ci) const { return v.data() + std::size_t(ci) * spatial(); }

    bool same_shape(const Tensor4& o) const { return c == o.c && d == o.d && h == o.h && w == o.w; }

    // Shape change only; contents are unspecified unless the buffer grows
    // (fresh elements are value-initialized). Every producer overwrites its
    // full output, so no zero-fill pass is spent here.
    void resize(int c_, int d_, int h_, int w_) {
        c = c_;
        d = d_;
        h = h_;
        w = w_;
        const std::size_t n = std::size_t(c_) * d_ * h_ * w_;
        if (v.size() != n) v.resize(n);
    }
    void zero() { std::fill(v.begin(), v.end(), T(0)); }
    void fill(T x) { std::fill(v.begin(), v.end(), x); }
};

using Tensor4f = Tensor4<float>;
using Tensor4d = Tensor4<double>;

template <typename T>
Tensor4<T> tensor_from_volume(const Volume& vol) {
    Tensor4<T> t(1, static_cast<int>(vol.dims.d), static_cast<int>(vol.dims.h),
                 static_cast<int>(vol.dims.w));
    for (std::size_t i = 0; i < vol.data.size(); ++i) t.v[i] = static_cast<T>(vol.data[i]);
    return t;
}

}  // namespace voxal
