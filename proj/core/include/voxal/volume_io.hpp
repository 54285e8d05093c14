#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "voxal/volume.hpp"

namespace voxal {

enum class VolumeIoErrc {
    io,
    bad_magic,
    bad_version,
    unknown_dtype,
    bad_flags,
    dims_overflow,
    payload_mismatch,
};

class VolumeIoError : public std::runtime_error {
  public:
    VolumeIoError(VolumeIoErrc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    VolumeIoErrc code() const { return code_; }

  private:
    VolumeIoErrc code_;
};

// SVOL container: magic "SVOL", version u16=1, dtype u8 (0 = f32 intensities,
// 1 = u8 class IDs), flags u8=0, then D,H,W as u32, all little-endian,
// followed by the raw D-major payload.
inline constexpr std::uint8_t kDtypeF32 = 0;
inline constexpr std::uint8_t kDtypeU8 = 1;

void write_volume(const std::filesystem::path& path, const Volume& vol);
Volume read_volume(const std::filesystem::path& path);

// Class count is not part of the container; callers supply it (normally from
// the dataset manifest).
void write_labels(const std::filesystem::path& path, const LabelVolume& labels);
LabelVolume read_labels(const std::filesystem::path& path, int num_classes);

}  // namespace voxal
