#include "alp/spectral/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "alp/error.hpp"
#include "json.hpp"

namespace alp {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint64_t to_little(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(bits);
  return bits;
}

void put_double(std::ostream& out, double x) {
  const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(x));
  char buf[8];
  std::memcpy(buf, &bits, 8);
  out.write(buf, 8);
}

double get_double(std::istream& in) {
  char buf[8];
  if (!in.read(buf, 8)) throw IoError("snapshot: truncated coefficient data");
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  return std::bit_cast<double>(to_little(bits));
}

}  // namespace

void write_snapshot(std::ostream& out, const SpectralField3& field, double time) {
  const Grid& g = field.grid();
  nlohmann::json header = {{"n1", g.n1}, {"n2", g.n2}, {"n3", g.n3}, {"L", g.length},
                           {"components", field.components()}, {"time", time}};
  out << header.dump() << '\n';
  for (const Complex& z : field.data()) {
    put_double(out, z.real());
    put_double(out, z.imag());
  }
  if (!out) throw IoError("snapshot: write failed");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField3& field, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("snapshot: cannot open " + path.string());
  write_snapshot(out, field, time);
}

Snapshot read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("snapshot: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("snapshot: bad header: ") + e.what());
  }
  Grid g{header.at("n1").get<int>(), header.at("n2").get<int>(), header.at("n3").get<int>(),
         header.at("L").get<double>()};
  Snapshot snap{SpectralField3(g, header.at("components").get<int>()), header.at("time").get<double>()};
  for (Complex& z : snap.field.data()) {
    const double re = get_double(in);
    const double im = get_double(in);
    z = Complex(re, im);
  }
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("snapshot: cannot open " + path.string());
  return read_snapshot(in);
}

}  // namespace alp
