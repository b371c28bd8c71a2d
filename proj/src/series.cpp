#include "nsreg/series.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "nsreg/error.hpp"

namespace nsreg {

SnapshotSeries::SnapshotSeries(const Grid3& grid, std::vector<Snapshot> snapshots)
    : grid_(grid), snapshots_(std::move(snapshots)) {
  if (snapshots_.empty()) throw ValidationError("snapshot series must be nonempty");
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    const Snapshot& s = snapshots_[i];
    if (!std::isfinite(s.time)) throw ValidationError("snapshot time must be finite");
    require_same_grid(grid_, s.velocity.grid(), "snapshot velocity");
    require_same_grid(grid_, s.pressure.grid(), "snapshot pressure");
    if (i > 0 && !(s.time > snapshots_[i - 1].time)) {
      throw ValidationError("snapshot times must be strictly increasing (index " + std::to_string(i) +
                            ")");
    }
  }
}

std::vector<double> SnapshotSeries::times() const {
  std::vector<double> t;
  t.reserve(snapshots_.size());
  for (const auto& s : snapshots_) t.push_back(s.time);
  return t;
}

long SnapshotSeries::find_time(double t) const noexcept {
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    const double ti = snapshots_[i].time;
    if (std::abs(ti - t) <= 1e-12 * std::max(1.0, std::abs(t))) return static_cast<long>(i);
  }
  return -1;
}

namespace {

constexpr char kMagic[4] = {'N', 'S', 'F', '1'};
constexpr std::uint32_t kComponents = 4;

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }
  template <class T>
  void put(T v) {
    const T le = to_little(v);
    out_.write(reinterpret_cast<const char*>(&le), sizeof(T));
  }
  void put_doubles(std::span<const double> v) {
    if constexpr (std::endian::native == std::endian::little) {
      out_.write(reinterpret_cast<const char*>(v.data()),
                 static_cast<std::streamsize>(v.size() * sizeof(double)));
    } else {
      for (double d : v) put(d);
    }
  }
  void raw(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  void finish() {
    out_.flush();
    if (!out_) throw IoError("write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw IoError("cannot open " + path.string() + " for reading");
  }
  template <class T>
  T get(const char* field) {
    T v;
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) throw FormatError(path_.string() + ": truncated while reading " + field);
    return to_little(v);
  }
  void get_doubles(std::span<double> v, const char* field) {
    in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in_) throw FormatError(path_.string() + ": truncated while reading " + field);
    if constexpr (std::endian::native != std::endian::little) {
      for (double& d : v) d = to_little(d);
    }
  }
  void raw(char* p, std::size_t n, const char* field) {
    in_.read(p, static_cast<std::streamsize>(n));
    if (!in_) throw FormatError(path_.string() + ": truncated while reading " + field);
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
};

}  // namespace

void save_series(const SnapshotSeries& series, const std::filesystem::path& path) {
  Writer w(path);
  w.raw(kMagic, 4);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(series.grid().n()));
  w.put<double>(series.grid().box_len());
  w.put<std::uint32_t>(kComponents);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(series.size()));
  for (const auto& s : series.snapshots()) w.put<double>(s.time);
  for (const auto& s : series.snapshots()) {
    for (int a = 0; a < 3; ++a) w.put_doubles(s.velocity[a].values());
    w.put_doubles(s.pressure.values());
  }
  w.finish();
}

SnapshotSeries load_series(const std::filesystem::path& path) {
  Reader r(path);
  char magic[4];
  r.raw(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError(path.string() + ": bad magic (expected \"NSF1\")");
  }
  const auto n = r.get<std::uint32_t>("n");
  const auto box_len = r.get<double>("box_len");
  const auto ncomp = r.get<std::uint32_t>("ncomp");
  const auto nsnap = r.get<std::uint32_t>("nsnap");
  if (n < 4 || n > 4096) throw FormatError(path.string() + ": invalid header field n = " + std::to_string(n));
  if (!std::isfinite(box_len) || box_len <= 0.0) {
    throw FormatError(path.string() + ": invalid header field box_len");
  }
  if (ncomp != kComponents) {
    throw FormatError(path.string() + ": invalid header field ncomp = " + std::to_string(ncomp) +
                      " (must be 4)");
  }
  if (nsnap == 0) throw ValidationError(path.string() + ": series has no snapshots (nsnap = 0)");

  const Grid3 grid(static_cast<int>(n), box_len);
  std::vector<double> times(nsnap);
  r.get_doubles(times, "times");

  std::vector<Snapshot> snaps;
  snaps.reserve(nsnap);
  for (std::uint32_t s = 0; s < nsnap; ++s) {
    std::array<std::vector<double>, 4> comp;
    for (auto& c : comp) {
      c.resize(grid.size());
      r.get_doubles(c, "field values");
    }
    snaps.push_back(Snapshot{times[s],
                             VectorField3(ScalarField3(grid, std::move(comp[0])),
                                          ScalarField3(grid, std::move(comp[1])),
                                          ScalarField3(grid, std::move(comp[2]))),
                             ScalarField3(grid, std::move(comp[3]))});
  }
  if (!r.at_end()) throw FormatError(path.string() + ": trailing bytes after last snapshot");
  return SnapshotSeries(grid, std::move(snaps));
}

}  // namespace nsreg
