#include "voxal/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace voxal {

namespace {

constexpr char kMagic[4] = {'S', 'M', 'D', 'L'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}
void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <typename T>
void save_impl(const std::filesystem::path& path, const ModelParams<T>& m, std::uint8_t dtype) {
    std::string header;
    header.append(kMagic, 4);
    put_u16(header, kVersion);
    header.push_back(static_cast<char>(dtype));
    header.push_back(0);  // flags
    put_u32(header, static_cast<std::uint32_t>(m.arch.base_channels));
    put_u32(header, static_cast<std::uint32_t>(m.arch.depth));
    put_u32(header, static_cast<std::uint32_t>(m.arch.num_classes));
    put_u32(header, static_cast<std::uint32_t>(m.arch.cam_reduction));
    header.push_back(m.arch.attention ? 1 : 0);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open for writing: " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (const auto& ref : collect_params(m))
        out.write(reinterpret_cast<const char*>(ref.data->data()),
                  static_cast<std::streamsize>(ref.data->size() * sizeof(T)));
    if (!out) throw std::runtime_error("checkpoint: write failed: " + path.string());
}

}  // namespace

void save_model(const std::filesystem::path& path, const ModelParams<float>& m) {
    save_impl(path, m, 0);
}
void save_model(const std::filesystem::path& path, const ModelParams<double>& m) {
    save_impl(path, m, 1);
}

ModelParams<Real> load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open: " + path.string());
    unsigned char head[4 + 2 + 1 + 1 + 16 + 1];
    in.read(reinterpret_cast<char*>(head), sizeof(head));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(head)) ||
        std::memcmp(head, kMagic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path.string());
    const std::uint16_t version = static_cast<std::uint16_t>(head[4] | (head[5] << 8));
    if (version != kVersion) throw std::runtime_error("checkpoint: unsupported version");
    const std::uint8_t dtype = head[6];
    if (dtype > 1) throw std::runtime_error("checkpoint: unknown dtype");
    if (head[7] != 0) throw std::runtime_error("checkpoint: nonzero flags");
    auto get_u32 = [&](int off) {
        return static_cast<std::uint32_t>(head[off]) | (static_cast<std::uint32_t>(head[off + 1]) << 8) |
               (static_cast<std::uint32_t>(head[off + 2]) << 16) |
               (static_cast<std::uint32_t>(head[off + 3]) << 24);
    };
    ArchConfig arch;
    arch.base_channels = static_cast<int>(get_u32(8));
    arch.depth = static_cast<int>(get_u32(12));
    arch.num_classes = static_cast<int>(get_u32(16));
    arch.cam_reduction = static_cast<int>(get_u32(20));
    arch.attention = head[24] != 0;
    arch.validate();

    ModelParams<Real> m;
    resize_model(m, arch);
    for (auto& ref : collect_params(m)) {
        if (dtype == 0) {
            std::vector<float> buf(ref.data->size());
            in.read(reinterpret_cast<char*>(buf.data()),
                    static_cast<std::streamsize>(buf.size() * sizeof(float)));
            if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(float)))
                throw std::runtime_error("checkpoint: truncated parameter payload in " + path.string());
            for (std::size_t i = 0; i < buf.size(); ++i) (*ref.data)[i] = static_cast<Real>(buf[i]);
        } else {
            std::vector<double> buf(ref.data->size());
            in.read(reinterpret_cast<char*>(buf.data()),
                    static_cast<std::streamsize>(buf.size() * sizeof(double)));
            if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(double)))
                throw std::runtime_error("checkpoint: truncated parameter payload in " + path.string());
            for (std::size_t i = 0; i < buf.size(); ++i) (*ref.data)[i] = static_cast<Real>(buf[i]);
        }
    }
    char extra;
    if (in.read(&extra, 1); in.gcount() != 0)
        throw std::runtime_error("checkpoint: trailing bytes in " + path.string());
    return m;
}

}  // namespace voxal
