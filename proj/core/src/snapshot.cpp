#include "otd/io/snapshot.hpp"

#include <zlib.h>

#include <bit>
#include <cstdio>
#include <cstring>

#include "otd/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts need byte swaps");
static_assert(sizeof(double) == 8);

namespace otd {

namespace {

constexpr char kMagic[4] = {'O', 'T', 'D', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    buf.append(b, 4);
}

std::uint32_t get_u32(const std::string& buf, std::size_t off) {
    std::uint32_t v = 0;
    std::memcpy(&v, buf.data() + off, 4);
    return v;
}

}  // namespace

std::size_t Snapshot::element_count() const {
    std::size_t n = 1;
    for (std::uint32_t d : dims) n *= d;
    return dims.empty() ? 0 : n;
}

std::size_t Snapshot::expected_doubles() const {
    return element_count() * (dtype == SnapshotDtype::f64_complex ? 2 : 1);
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
    if (snap.dims.empty() || snap.dims.size() > 255)
        throw contract_violation("write_snapshot: need 1..255 dims");
    for (std::uint32_t d : snap.dims)
        if (d == 0) throw contract_violation("write_snapshot: zero-sized dimension");
    if (snap.data.size() != snap.expected_doubles())
        throw contract_violation("write_snapshot: payload does not match dims/dtype");

    std::string header;
    header.append(kMagic, 4);
    put_u32(header, kVersion);
    header.push_back(char(snap.model_tag));
    header.push_back(char(snap.dims.size()));
    for (std::uint32_t d : snap.dims) put_u32(header, d);
    header.push_back(char(snap.dtype));

    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(header.data()), uInt(header.size()));
    const auto* payload = reinterpret_cast<const Bytef*>(snap.data.data());
    const std::size_t payload_bytes = snap.data.size() * 8;
    // crc32 takes a uInt length; feed large payloads in chunks.
    for (std::size_t off = 0; off < payload_bytes;) {
        const std::size_t chunk = std::min(payload_bytes - off, std::size_t(1) << 30);
        crc = crc32(crc, payload + off, uInt(chunk));
        off += chunk;
    }

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw io_error("write_snapshot: cannot open '" + path + "'");
    bool ok = std::fwrite(header.data(), 1, header.size(), f) == header.size();
    ok = ok && std::fwrite(snap.data.data(), 1, payload_bytes, f) == payload_bytes;
    const std::uint32_t crc_le = std::uint32_t(crc);
    ok = ok && std::fwrite(&crc_le, 1, 4, f) == 4;
    ok = (std::fclose(f) == 0) && ok;
    if (!ok) throw io_error("write_snapshot: write failed on '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw io_error("read_snapshot: cannot open '" + path + "'");
    std::string buf;
    {
        char chunk[1 << 16];
        std::size_t got;
        while ((got = std::fread(chunk, 1, sizeof chunk, f)) > 0) buf.append(chunk, got);
        const bool read_err = std::ferror(f) != 0;
        std::fclose(f);
        if (read_err) throw io_error("read_snapshot: read failed on '" + path + "'");
    }

    const auto truncated = [&]() -> io_error {
        return io_error("read_snapshot: '" + path + "' is truncated");
    };
    if (buf.size() < 4 + 4 + 1 + 1) throw truncated();
    if (std::memcmp(buf.data(), kMagic, 4) != 0)
        throw io_error("read_snapshot: '" + path + "' has no OTDF magic");
    const std::uint32_t version = get_u32(buf, 4);
    if (version != kVersion)
        throw io_error("read_snapshot: '" + path + "' has unsupported version " +
                       std::to_string(version));

    Snapshot snap;
    snap.model_tag = std::uint8_t(buf[8]);
    const std::size_t ndims = std::uint8_t(buf[9]);
    std::size_t off = 10;
    if (ndims == 0) throw io_error("read_snapshot: '" + path + "' declares zero dims");
    if (buf.size() < off + 4 * ndims + 1) throw truncated();
    snap.dims.resize(ndims);
    for (std::size_t i = 0; i < ndims; ++i, off += 4) snap.dims[i] = get_u32(buf, off);
    const std::uint8_t dtype_raw = std::uint8_t(buf[off]);
    ++off;
    if (dtype_raw > 1)
        throw io_error("read_snapshot: '" + path + "' has unknown dtype tag " +
                       std::to_string(dtype_raw));
    snap.dtype = SnapshotDtype(dtype_raw);

    const std::size_t payload_bytes = snap.expected_doubles() * 8;
    if (buf.size() != off + payload_bytes + 4) throw truncated();

    uLong crc = crc32(0L, Z_NULL, 0);
    for (std::size_t pos = 0; pos < off + payload_bytes;) {
        const std::size_t chunk = std::min(off + payload_bytes - pos, std::size_t(1) << 30);
        crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()) + pos, uInt(chunk));
        pos += chunk;
    }
    if (std::uint32_t(crc) != get_u32(buf, off + payload_bytes))
        throw io_error("read_snapshot: '" + path + "' failed the CRC32 integrity check");

    snap.data.resize(snap.expected_doubles());
    std::memcpy(snap.data.data(), buf.data() + off, payload_bytes);
    return snap;
}

}  // namespace otd
