#include "torusns/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>

namespace torusns {

namespace {

constexpr std::string_view kMagic = "TNSFIELD";
constexpr std::size_t kRecordSize = 3 * 4 + 6 * 8;

class Writer {
 public:
  void u32(std::uint32_t v) { put(v, 4); }
  void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(std::string_view s) {
    for (char c : s) bytes_.push_back(static_cast<std::byte>(c));
  }
  std::vector<std::byte> take() { return std::move(bytes_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
  }
  std::vector<std::byte> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get(4))); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::span<const std::byte> raw(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw CheckpointError("checkpoint is truncated");
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::to_integer<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

bool bitwise_zero(const Vec3c& v) {
  for (const auto& c : v.c) {
    if (std::bit_cast<std::uint64_t>(c.real()) != 0 || std::bit_cast<std::uint64_t>(c.imag()) != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<std::byte> encode_field(const SpectralField& field) {
  const auto& lat = field.lattice();
  std::uint64_t count = 0;
  for (const auto& v : field.values()) count += bitwise_zero(v) ? 0 : 1;

  Writer w;
  w.raw(kMagic);
  w.u32(kCheckpointVersion);
  w.i32(lat.spec().k_max);
  w.u32(static_cast<std::uint32_t>(lat.spec().truncation_rule));
  w.u64(count);
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (bitwise_zero(field[i])) continue;
    const WaveVector& k = lat.site(i);
    w.i32(k.kx());
    w.i32(k.ky());
    w.i32(k.kz());
    for (const auto& c : field[i].c) {
      w.f64(c.real());
      w.f64(c.imag());
    }
  }
  return w.take();
}

SpectralField decode_field(std::span<const std::byte> bytes, const std::optional<LatticeSpec>& expected) {
  Reader r(bytes);
  const auto magic = r.raw(kMagic.size());
  if (std::memcmp(magic.data(), kMagic.data(), kMagic.size()) != 0) {
    throw CheckpointError("not a field checkpoint (bad magic)");
  }
  if (const auto version = r.u32(); version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  LatticeSpec spec;
  spec.k_max = r.i32();
  const auto rule = r.u32();
  if (rule > static_cast<std::uint32_t>(TruncationRule::sup_cube) || spec.k_max < 1) {
    throw CheckpointError("checkpoint has an invalid lattice header");
  }
  spec.truncation_rule = static_cast<TruncationRule>(rule);
  if (expected && !(*expected == spec)) {
    std::ostringstream msg;
    msg << "checkpoint lattice (k_max=" << spec.k_max << ", " << to_string(spec.truncation_rule)
        << ") does not match the expected lattice (k_max=" << expected->k_max << ", "
        << to_string(expected->truncation_rule) << ")";
    throw CheckpointError(msg.str());
  }
  const std::uint64_t count = r.u64();
  if (count > r.remaining() / kRecordSize) throw CheckpointError("checkpoint is truncated");
  if (r.remaining() != count * kRecordSize) throw CheckpointError("checkpoint has trailing bytes");

  SpectralField field(Lattice::make(spec));
  std::vector<bool> seen(field.size(), false);
  for (std::uint64_t n = 0; n < count; ++n) {
    const int kx = r.i32();
    const int ky = r.i32();
    const int kz = r.i32();
    const auto idx = field.lattice().index_of({kx, ky, kz});
    if (!idx) throw CheckpointError("checkpoint record lies outside the lattice");
    if (seen[*idx]) throw CheckpointError("checkpoint repeats a lattice site");
    seen[*idx] = true;
    Vec3c v;
    for (auto& c : v.c) {
      const double re = r.f64();
      const double im = r.f64();
      c = Complex{re, im};
    }
    field[*idx] = v;
  }
  return field;
}

void save_field(const std::filesystem::path& path, const SpectralField& field) {
  const auto bytes = encode_field(field);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("failed writing " + path.string());
}

SpectralField load_field(const std::filesystem::path& path, const std::optional<LatticeSpec>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* first = reinterpret_cast<const std::byte*>(raw.data());
  return decode_field({first, raw.size()}, expected);
}

}  // namespace torusns
