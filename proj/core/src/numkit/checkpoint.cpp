#include "gme/numkit/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace gme::numkit {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

namespace {

constexpr char kMagic[8] = {'G', 'M', 'E', 'C', 'K', 'P', 'T', '\0'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw CheckpointError("checkpoint truncated");
  return v;
}

std::string take_string(std::istream& is, std::uint64_t n) {
  std::string s(n, '\0');
  if (n && !is.read(s.data(), static_cast<std::streamsize>(n))) throw CheckpointError("checkpoint truncated");
  return s;
}

}  // namespace

Checkpoint snapshot(const ParameterStore& store, std::string metadata) {
  Checkpoint ck;
  ck.metadata = std::move(metadata);
  for (const Parameter* p : store.all()) ck.entries.push_back({p->name, p->value});
  return ck;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CheckpointError("cannot open checkpoint for writing: " + path.string());
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint64_t>(os, ck.metadata.size());
  os.write(ck.metadata.data(), static_cast<std::streamsize>(ck.metadata.size()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(ck.entries.size()));
  for (const auto& e : ck.entries) {
    put<std::uint32_t>(os, static_cast<std::uint32_t>(e.name.size()));
    os.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(e.tensor.rank()));
    for (auto d : e.tensor.shape()) put<std::uint64_t>(os, d);
    os.write(reinterpret_cast<const char*>(e.tensor.data().data()),
             static_cast<std::streamsize>(e.tensor.size() * sizeof(double)));
  }
  if (!os) throw CheckpointError("failed writing checkpoint: " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("cannot open checkpoint: " + path.string());
  char magic[sizeof(kMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw CheckpointError("not a checkpoint file: " + path.string());
  }
  const auto version = take<std::uint32_t>(is);
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ck;
  ck.metadata = take_string(is, take<std::uint64_t>(is));
  const auto count = take<std::uint32_t>(is);
  for (std::uint32_t k = 0; k < count; ++k) {
    Checkpoint::Entry e;
    e.name = take_string(is, take<std::uint32_t>(is));
    const auto rank = take<std::uint32_t>(is);
    if (rank == 0 || rank > 2) throw CheckpointError("bad rank for tensor " + e.name);
    Shape shape;
    for (std::uint32_t r = 0; r < rank; ++r) shape.push_back(take<std::uint64_t>(is));
    std::vector<double> values(shape_volume(shape));
    if (!is.read(reinterpret_cast<char*>(values.data()),
                 static_cast<std::streamsize>(values.size() * sizeof(double)))) {
      throw CheckpointError("checkpoint truncated in tensor " + e.name);
    }
    e.tensor = Tensor(std::move(shape), std::move(values));
    ck.entries.push_back(std::move(e));
  }
  return ck;
}

void restore(ParameterStore& store, const Checkpoint& ck) {
  if (ck.entries.size() != store.size()) {
    throw CheckpointError("checkpoint holds " + std::to_string(ck.entries.size()) +
                          " tensors, model expects " + std::to_string(store.size()));
  }
  for (const auto& e : ck.entries) {
    if (!store.contains(e.name)) throw CheckpointError("checkpoint tensor not in model: " + e.name);
    Parameter& p = store.get(e.name);
    if (p.value.shape() != e.tensor.shape()) {
      throw CheckpointError("shape mismatch for " + e.name + ": " + shape_string(e.tensor.shape()) +
                            " vs " + shape_string(p.value.shape()));
    }
    p.value = e.tensor;
    p.zero_grad();
  }
}

}  // namespace gme::numkit
