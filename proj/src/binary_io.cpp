#include "binary_io.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>

namespace wedsearch::detail {

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  const auto* p = reinterpret_cast<const Bytef*>(bytes.data());
  std::size_t left = bytes.size();
  while (left > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::string encode_container(std::string_view magic, std::uint32_t version,
                             const std::vector<Section>& sections) {
  BinaryWriter w;
  std::string out(magic);
  out.resize(8, '\0');
  w.put<std::uint32_t>(version);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(sections.size()));
  out += w.take();
  for (const auto& s : sections) {
    BinaryWriter h;
    h.put<std::uint32_t>(s.tag);
    h.put<std::uint64_t>(s.payload.size());
    out += h.take();
    out += s.payload;
    BinaryWriter t;
    t.put<std::uint32_t>(crc32_of(s.payload));
    out += t.take();
  }
  return out;
}

std::vector<Section> decode_container(std::string_view bytes, std::string_view magic,
                                      std::uint32_t version) {
  std::string expected(magic);
  expected.resize(8, '\0');
  if (bytes.size() < 16 || bytes.substr(0, 8) != expected) {
    throw DataError("not a " + std::string(magic) + " file (bad magic)");
  }
  BinaryReader r(bytes.substr(8));
  const auto file_version = r.get<std::uint32_t>();
  if (file_version != version) {
    throw DataError("format version mismatch: file has " + std::to_string(file_version) +
                    ", expected " + std::to_string(version));
  }
  const auto count = r.get<std::uint32_t>();
  std::size_t pos = 16;
  std::vector<Section> sections;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (bytes.size() - pos < 12) throw DataError("truncated file: section header");
    BinaryReader h(bytes.substr(pos, 12));
    Section s;
    s.tag = h.get<std::uint32_t>();
    const auto len = h.get<std::uint64_t>();
    pos += 12;
    if (bytes.size() - pos < len || bytes.size() - pos - len < 4) {
      throw DataError("truncated file: section " + std::to_string(i) + " checksum mismatch");
    }
    s.payload.assign(bytes.substr(pos, len));
    pos += len;
    BinaryReader t(bytes.substr(pos, 4));
    if (t.get<std::uint32_t>() != crc32_of(s.payload)) {
      throw DataError("checksum mismatch in section " + std::to_string(i));
    }
    pos += 4;
    sections.push_back(std::move(s));
  }
  if (pos != bytes.size()) throw DataError("trailing bytes after last section");
  return sections;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace wedsearch::detail
