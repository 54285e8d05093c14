#include "voxal/volume_io.hpp"

#include <cstring>
#include <fstream>

namespace voxal {

namespace {

constexpr char kMagic[4] = {'S', 'V', 'O', 'L'};
constexpr std::uint16_t kVersion = 1;
// Hard cap on voxel count; also guards the D*H*W product against overflow.
constexpr std::uint64_t kMaxVoxels = 1ull << 31;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string header_bytes(std::uint8_t dtype, Dims dims) {
    std::string out;
    out.append(kMagic, 4);
    put_u16(out, kVersion);
    out.push_back(static_cast<char>(dtype));
    out.push_back(0);  // flags
    put_u32(out, dims.d);
    put_u32(out, dims.h);
    put_u32(out, dims.w);
    return out;
}

constexpr std::size_t kHeaderSize = 4 + 2 + 1 + 1 + 12;

struct Header {
    std::uint8_t dtype = 0;
    Dims dims;
};

void write_file(const std::filesystem::path& path, const std::string& header, const void* payload,
                std::size_t payload_bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw VolumeIoError(VolumeIoErrc::io, "cannot open for writing: " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(static_cast<const char*>(payload), static_cast<std::streamsize>(payload_bytes));
    if (!out) throw VolumeIoError(VolumeIoErrc::io, "write failed: " + path.string());
}

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
    unsigned char buf[kHeaderSize];
    in.read(reinterpret_cast<char*>(buf), kHeaderSize);
    if (in.gcount() != static_cast<std::streamsize>(kHeaderSize))
        throw VolumeIoError(VolumeIoErrc::bad_magic, "file too short for header: " + path.string());
    if (std::memcmp(buf, kMagic, 4) != 0)
        throw VolumeIoError(VolumeIoErrc::bad_magic, "bad magic in " + path.string());
    const std::uint16_t version = get_u16(buf + 4);
    if (version != kVersion)
        throw VolumeIoError(VolumeIoErrc::bad_version,
                            "unsupported version " + std::to_string(version) + " in " + path.string());
    Header h;
    h.dtype = buf[6];
    if (h.dtype != kDtypeF32 && h.dtype != kDtypeU8)
        throw VolumeIoError(VolumeIoErrc::unknown_dtype,
                            "unknown dtype " + std::to_string(h.dtype) + " in " + path.string());
    if (buf[7] != 0)
        throw VolumeIoError(VolumeIoErrc::bad_flags, "nonzero flags in " + path.string());
    h.dims.d = get_u32(buf + 8);
    h.dims.h = get_u32(buf + 12);
    h.dims.w = get_u32(buf + 16);
    if (h.dims.d == 0 || h.dims.h == 0 || h.dims.w == 0)
        throw VolumeIoError(VolumeIoErrc::dims_overflow, "zero dimension in " + path.string());
    const std::uint64_t voxels =
        std::uint64_t(h.dims.d) * std::uint64_t(h.dims.h) * std::uint64_t(h.dims.w);
    if (voxels > kMaxVoxels)
        throw VolumeIoError(VolumeIoErrc::dims_overflow, "dims overflow in " + path.string());
    return h;
}

void read_payload(std::ifstream& in, const std::filesystem::path& path, void* dst,
                  std::size_t expected_bytes) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(expected_bytes));
    if (in.gcount() != static_cast<std::streamsize>(expected_bytes))
        throw VolumeIoError(VolumeIoErrc::payload_mismatch,
                            "payload shorter than header dims in " + path.string());
    char extra;
    if (in.read(&extra, 1); in.gcount() != 0)
        throw VolumeIoError(VolumeIoErrc::payload_mismatch,
                            "payload longer than header dims in " + path.string());
}

}  // namespace

void write_volume(const std::filesystem::path& path, const Volume& vol) {
    if (vol.data.size() != vol.dims.voxels())
        throw VolumeIoError(VolumeIoErrc::payload_mismatch, "volume data/dims mismatch");
    write_file(path, header_bytes(kDtypeF32, vol.dims), vol.data.data(),
               vol.data.size() * sizeof(float));
}

Volume read_volume(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw VolumeIoError(VolumeIoErrc::io, "cannot open: " + path.string());
    const Header h = read_header(in, path);
    if (h.dtype != kDtypeF32)
        throw VolumeIoError(VolumeIoErrc::unknown_dtype,
                            "expected f32 intensity payload in " + path.string());
    Volume vol(h.dims);
    read_payload(in, path, vol.data.data(), vol.data.size() * sizeof(float));
    return vol;
}

void write_labels(const std::filesystem::path& path, const LabelVolume& labels) {
    if (labels.data.size() != labels.dims.voxels())
        throw VolumeIoError(VolumeIoErrc::payload_mismatch, "label data/dims mismatch");
    write_file(path, header_bytes(kDtypeU8, labels.dims), labels.data.data(), labels.data.size());
}

LabelVolume read_labels(const std::filesystem::path& path, int num_classes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw VolumeIoError(VolumeIoErrc::io, "cannot open: " + path.string());
    const Header h = read_header(in, path);
    if (h.dtype != kDtypeU8)
        throw VolumeIoError(VolumeIoErrc::unknown_dtype,
                            "expected u8 class-ID payload in " + path.string());
    LabelVolume labels(h.dims, num_classes);
    read_payload(in, path, labels.data.data(), labels.data.size());
    return labels;
}

}  // namespace voxal
