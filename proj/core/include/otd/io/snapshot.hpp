#ifndef OTD_IO_SNAPSHOT_HPP
#define OTD_IO_SNAPSHOT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace otd {

enum class SnapshotDtype : std::uint8_t {
    f64_real = 0,
    f64_complex = 1,  // interleaved re, im
};

inline constexpr std::uint8_t kSnapshotTagPrototype = 1;
inline constexpr std::uint8_t kSnapshotTagKolmogorov = 2;
inline constexpr std::uint8_t kSnapshotTagMnls = 3;

/// One field dump. On disk (all little-endian):
///   magic "OTDF" | version u32 | model tag u8 | ndims u8 | dims u32 each |
///   dtype u8 | payload f64 row-major | crc32 u32 over everything before it.
/// The payload holds prod(dims) elements, two doubles each for complex.
struct Snapshot {
    std::uint8_t model_tag = 0;
    SnapshotDtype dtype = SnapshotDtype::f64_real;
    std::vector<std::uint32_t> dims;
    std::vector<double> data;

    std::size_t element_count() const;
    std::size_t expected_doubles() const;
};

void write_snapshot(const std::string& path, const Snapshot& snap);

/// Validates magic, version, shape arithmetic, and the CRC; throws io_error
/// (naming the problem) rather than returning a partial field.
Snapshot read_snapshot(const std::string& path);

}  // namespace otd

#endif
