#include "inls/io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace inls {

namespace {

constexpr char kMagic[8] = {'I', 'N', 'L', 'S', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 64;

// the format is little-endian on disk; this code assumes a
// little-endian host, as does everything else numeric here
template <typename T>
void put(char* dst, std::size_t at, T v) {
    std::memcpy(dst + at, &v, sizeof(T));
}

template <typename T>
T get(const char* src, std::size_t at) {
    T v;
    std::memcpy(&v, src + at, sizeof(T));
    return v;
}

} // namespace

void write_snapshot(const Field& u, double b, std::ostream& os) {
    std::array<char, kHeaderSize> h{};
    std::memcpy(h.data(), kMagic, sizeof(kMagic));
    put<std::uint32_t>(h.data(), 8, kVersion);
    put<std::uint32_t>(h.data(), 12, static_cast<std::uint32_t>(u.grid.dim));
    put<std::uint32_t>(h.data(), 16, static_cast<std::uint32_t>(u.grid.points));
    put<double>(h.data(), 20, u.grid.half_width);
    put<double>(h.data(), 28, b);
    put<double>(h.data(), 36, u.time);
    put<std::uint8_t>(h.data(), 44, u.grid.cell_centered ? 1 : 0);
    os.write(h.data(), kHeaderSize);
    os.write(reinterpret_cast<const char*>(u.values.data()),
             static_cast<std::streamsize>(u.values.size() * sizeof(Complex)));
    if (!os)
        throw std::runtime_error("snapshot write failed");
}

void write_snapshot_file(const Field& u, double b, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    write_snapshot(u, b, os);
}

Snapshot read_snapshot(std::istream& is) {
    std::array<char, kHeaderSize> h{};
    is.read(h.data(), kHeaderSize);
    if (!is)
        throw std::runtime_error("snapshot truncated before header end");
    if (std::memcmp(h.data(), kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("bad snapshot magic bytes");
    auto version = get<std::uint32_t>(h.data(), 8);
    if (version != kVersion)
        throw std::runtime_error("unsupported snapshot version");

    Snapshot snap;
    int dim = static_cast<int>(get<std::uint32_t>(h.data(), 12));
    int points = static_cast<int>(get<std::uint32_t>(h.data(), 16));
    double L = get<double>(h.data(), 20);
    snap.b = get<double>(h.data(), 28);
    double t = get<double>(h.data(), 36);
    bool cc = get<std::uint8_t>(h.data(), 44) != 0;

    snap.field = make_field(make_grid(dim, points, L, cc), t);
    is.read(reinterpret_cast<char*>(snap.field.values.data()),
            static_cast<std::streamsize>(snap.field.values.size() * sizeof(Complex)));
    if (!is)
        throw std::runtime_error("snapshot truncated in the sample block");
    return snap;
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open for reading: " + path);
    return read_snapshot(is);
}

} // namespace inls
