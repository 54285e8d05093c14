#include "voxal/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "voxal/rng.hpp"

namespace voxal {

int task_classes(Task task) { return task == Task::brain ? 2 : 4; }

std::string task_name(Task task) { return task == Task::brain ? "brain" : "tissue"; }

Task parse_task(const std::string& name) {
    if (name == "brain") return Task::brain;
    if (name == "tissue") return Task::tissue;
    throw std::invalid_argument("unknown task '" + name + "' (expected brain or tissue)");
}

namespace {

struct Ellipsoid {
    double cd, ch, cw;  // center, voxel units
    double rd, rh, rw;  // radii

    bool contains(std::uint32_t d, std::uint32_t h, std::uint32_t w) const {
        const double a = (d - cd) / rd;
        const double b = (h - ch) / rh;
        const double c = (w - cw) / rw;
        return a * a + b * b + c * c <= 1.0;
    }
};

// Multiplicative jitter in [1-amount, 1+amount].
double jitter(Rng& rng, double amount) { return 1.0 + amount * (2.0 * rng.uniform01() - 1.0); }

Ellipsoid jittered(Rng& rng, Dims size, double center_frac_d, double center_frac_h,
                   double center_frac_w, double radius_frac) {
    constexpr double kJitter = 0.15;
    Ellipsoid e;
    e.cd = center_frac_d * size.d * jitter(rng, kJitter);
    e.ch = center_frac_h * size.h * jitter(rng, kJitter);
    e.cw = center_frac_w * size.w * jitter(rng, kJitter);
    e.rd = radius_frac * size.d * jitter(rng, kJitter);
    e.rh = radius_frac * size.h * jitter(rng, kJitter);
    e.rw = radius_frac * size.w * jitter(rng, kJitter);
    return e;
}

}  // namespace

void PhantomSpec::validate() const {
    if (num_classes != task_classes(task))
        throw std::invalid_argument("phantom: class count must be 2 for brain, 4 for tissue");
    if (size.d == 0 || size.h == 0 || size.w == 0)
        throw std::invalid_argument("phantom: zero dimension");
    if (size.d % 2 != 0 || size.h % 2 != 0 || size.w % 2 != 0)
        throw std::invalid_argument("phantom: dims must be even");
    const std::uint32_t min_dim = std::min({size.d, size.h, size.w});
    if (task == Task::brain && min_dim < 8)
        throw std::invalid_argument("phantom: brain task needs dims >= 8");
    if (task == Task::tissue && min_dim < 16)
        throw std::invalid_argument("phantom: tissue task needs dims >= 16");
    if (noise_sigma < 0.0) throw std::invalid_argument("phantom: negative noise_sigma");
}

std::pair<Volume, LabelVolume> generate_phantom(const PhantomSpec& spec) {
    spec.validate();
    Rng rng(mix_seed(spec.seed, 0x50484eull));  // "PHN"

    // Structure shapes first (fixed draw order), then one noise draw per voxel.
    const Ellipsoid outer = jittered(rng, spec.size, 0.5, 0.5, 0.5, 0.35);
    Ellipsoid inner{}, ventricle{};
    if (spec.task == Task::tissue) {
        // Inner shares the outer's center with radii scaled off the outer's,
        // and the ventricle sits off-center inside the inner shell; the scale
        // factors keep the nesting valid even at extreme jitter.
        inner = outer;
        inner.rd = outer.rd * 0.7 * jitter(rng, 0.15);
        inner.rh = outer.rh * 0.7 * jitter(rng, 0.15);
        inner.rw = outer.rw * 0.7 * jitter(rng, 0.15);
        ventricle = jittered(rng, spec.size, 0.5, 0.5, 0.5, 0.08);
        ventricle.cd = inner.cd + 0.04 * spec.size.d * jitter(rng, 0.15);
        ventricle.ch = inner.ch + 0.04 * spec.size.h * jitter(rng, 0.15);
        ventricle.cw = inner.cw;
    }

    LabelVolume labels(spec.size, spec.num_classes, 0);
    Volume vol(spec.size);

    std::size_t v = 0;
    for (std::uint32_t d = 0; d < spec.size.d; ++d) {
        for (std::uint32_t h = 0; h < spec.size.h; ++h) {
            for (std::uint32_t w = 0; w < spec.size.w; ++w, ++v) {
                std::uint8_t cls = 0;
                if (spec.task == Task::brain) {
                    if (outer.contains(d, h, w)) cls = 1;
                } else {
                    if (ventricle.contains(d, h, w))
                        cls = 3;
                    else if (inner.contains(d, h, w))
                        cls = 2;
                    else if (outer.contains(d, h, w))
                        cls = 1;
                }
                labels.data[v] = cls;
                const double intensity = kClassIntensity[cls] + spec.noise_sigma * rng.normal();
                vol.data[v] = static_cast<float>(std::clamp(intensity, 0.0, 1.0));
            }
        }
    }

    const auto hist = labels.histogram();
    for (int c = 0; c < spec.num_classes; ++c) {
        if (hist[static_cast<std::size_t>(c)] == 0)
            throw std::runtime_error("phantom: generated volume is missing class " +
                                     std::to_string(c) + "; volume too small for the task");
    }
    return {std::move(vol), std::move(labels)};
}

}  // namespace voxal
