#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "voxal/rng.hpp"
#include "voxal/volume_io.hpp"

using namespace voxal;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
    const fs::path dir = fs::temp_directory_path() / "voxal_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("volume round-trip is the identity") {
    Volume vol(Dims{2, 2, 2});
    SUBCASE("constant zeros") {}
    SUBCASE("random payload") {
        Rng rng(7);
        for (auto& v : vol.data) v = static_cast<float>(rng.uniform01());
    }
    const auto path = temp_file("vol.svol");
    write_volume(path, vol);
    const Volume back = read_volume(path);
    CHECK(back.dims == vol.dims);
    CHECK(back.data == vol.data);
}

TEST_CASE("label round-trip preserves IDs") {
    LabelVolume lab(Dims{2, 3, 2}, 3);
    for (std::size_t i = 0; i < lab.data.size(); ++i) lab.data[i] = static_cast<std::uint8_t>(i % 3);
    const auto path = temp_file("lab.svol");
    write_labels(path, lab);
    const LabelVolume back = read_labels(path, 3);
    CHECK(back.dims == lab.dims);
    CHECK(back.num_classes == 3);
    CHECK(back.data == lab.data);
}

TEST_CASE("write is byte-deterministic") {
    Volume vol(Dims{4, 4, 4});
    Rng rng(3);
    for (auto& v : vol.data) v = static_cast<float>(rng.uniform01());
    const auto p1 = temp_file("det1.svol"), p2 = temp_file("det2.svol");
    write_volume(p1, vol);
    write_volume(p2, vol);
    std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
}

TEST_CASE("corrupt files raise distinct diagnostics") {
    Volume vol(Dims{2, 2, 2});
    const auto path = temp_file("corrupt.svol");
    write_volume(path, vol);

    auto clobber = [&](auto mutate) {
        std::ifstream in(path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        mutate(bytes);
        const auto bad = temp_file("bad.svol");
        std::ofstream out(bad, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        return bad;
    };

    SUBCASE("bad magic") {
        const auto bad = clobber([](std::string& b) { b[0] = 'X'; });
        CHECK_THROWS_WITH_AS(read_volume(bad), doctest::Contains("magic"), VolumeIoError);
        try {
            read_volume(bad);
        } catch (const VolumeIoError& e) {
            CHECK(e.code() == VolumeIoErrc::bad_magic);
        }
    }
    SUBCASE("unknown dtype") {
        const auto bad = clobber([](std::string& b) { b[6] = 9; });
        try {
            read_volume(bad);
            FAIL("expected error");
        } catch (const VolumeIoError& e) {
            CHECK(e.code() == VolumeIoErrc::unknown_dtype);
        }
    }
    SUBCASE("dtype mismatch between readers") {
        try {
            read_labels(path, 2);  // f32 payload read as labels
            FAIL("expected error");
        } catch (const VolumeIoError& e) {
            CHECK(e.code() == VolumeIoErrc::unknown_dtype);
        }
    }
    SUBCASE("dims overflow") {
        const auto bad = clobber([](std::string& b) {
            b[8] = b[9] = b[10] = b[11] = static_cast<char>(0xff);
        });
        try {
            read_volume(bad);
            FAIL("expected error");
        } catch (const VolumeIoError& e) {
            CHECK(e.code() == VolumeIoErrc::dims_overflow);
        }
    }
    SUBCASE("payload truncated by one byte") {
        const auto bad = clobber([](std::string& b) { b.pop_back(); });
        try {
            read_volume(bad);
            FAIL("expected error");
        } catch (const VolumeIoError& e) {
            CHECK(e.code() == VolumeIoErrc::payload_mismatch);
        }
    }
    SUBCASE("payload with a trailing byte") {
        const auto bad = clobber([](std::string& b) { b.push_back('\0'); });
        try {
            read_volume(bad);
            FAIL("expected error");
        } catch (const VolumeIoError& e) {
            CHECK(e.code() == VolumeIoErrc::payload_mismatch);
        }
    }
}
