#include <algorithm>

#include "rxnlab/errors.hpp"
#include "rxnlab/fingerprint.hpp"

namespace rxnlab {

namespace {

class Encoder {
 public:
  void put(std::int64_t v) {
    for (int k = 0; k < 8; ++k) bytes_.push_back(static_cast<std::uint8_t>((v >> (8 * k)) & 0xFF));
  }
  void put_u(std::uint64_t v) { put(static_cast<std::int64_t>(v)); }
  std::uint64_t hash() const { return fnv1a(bytes_.data(), bytes_.size()); }

 private:
  std::vector<std::uint8_t> bytes_;
};

void check_width(std::size_t width) {
  if (width == 0) throw InvalidArgument("fingerprint width must be positive");
}

}  // namespace

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

BitFingerprint circular_fingerprint(const Molecule& mol, int radius, std::size_t width) {
  check_width(width);
  if (radius < 0) throw InvalidArgument("radius must be non-negative");
  BitFingerprint fp(width);
  const std::size_t n = mol.atom_count();
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = mol.atom(static_cast<int>(i));
    Encoder e;
    e.put(a.atomic_number);
    e.put(mol.degree(static_cast<int>(i)));
    e.put(a.formal_charge);
    e.put(a.implicit_hydrogens);
    e.put(mol.atom_in_ring(static_cast<int>(i)) ? 1 : 0);
    ids[i] = e.hash();
    fp.set(ids[i] % width);
  }
  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<int, std::uint64_t>> env;
      for (const Neighbor& nb : mol.neighbors(static_cast<int>(i))) {
        env.emplace_back(bond_code(mol.bond(nb.bond).order), ids[static_cast<std::size_t>(nb.atom)]);
      }
      std::sort(env.begin(), env.end());
      Encoder e;
      e.put(r);
      e.put_u(ids[i]);
      for (const auto& [code, id] : env) {
        e.put(code);
        e.put_u(id);
      }
      next[i] = e.hash();
      fp.set(next[i] % width);
    }
    ids = std::move(next);
  }
  return fp;
}

namespace {

class PathWalker {
 public:
  PathWalker(const Molecule& mol, int min_path, int max_path, BitFingerprint& fp)
      : mol_(mol), min_(min_path), max_(max_path), fp_(fp), on_path_(mol.atom_count(), false) {}

  void run() {
    for (int a = 0; a < static_cast<int>(mol_.atom_count()); ++a) {
      atoms_.assign(1, a);
      on_path_[static_cast<std::size_t>(a)] = true;
      walk();
      on_path_[static_cast<std::size_t>(a)] = false;
    }
  }

 private:
  void walk() {
    const int length = static_cast<int>(bonds_.size());
    if (length >= min_ && length >= 1) emit();
    if (length == max_) return;
    for (const Neighbor& nb : mol_.neighbors(atoms_.back())) {
      if (on_path_[static_cast<std::size_t>(nb.atom)]) continue;
      on_path_[static_cast<std::size_t>(nb.atom)] = true;
      atoms_.push_back(nb.atom);
      bonds_.push_back(nb.bond);
      walk();
      bonds_.pop_back();
      atoms_.pop_back();
      on_path_[static_cast<std::size_t>(nb.atom)] = false;
    }
  }

  std::vector<std::int64_t> labels(bool reversed) const {
    std::vector<std::int64_t> out;
    const std::size_t n = atoms_.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = reversed ? n - 1 - k : k;
      const Atom& a = mol_.atom(atoms_[i]);
      out.push_back(a.atomic_number * 2 + (a.is_aromatic ? 1 : 0));
      if (k + 1 < n) {
        const std::size_t b = reversed ? n - 2 - k : k;
        out.push_back(-bond_code(mol_.bond(bonds_[b]).order));
      }
    }
    return out;
  }

  void emit() {
    const auto fwd = labels(false);
    const auto rev = labels(true);
    const auto& seq = std::min(fwd, rev);
    Encoder e;
    e.put(static_cast<std::int64_t>(bonds_.size()));
    for (std::int64_t v : seq) e.put(v);
    fp_.set(e.hash() % fp_.width());
  }

  const Molecule& mol_;
  int min_;
  int max_;
  BitFingerprint& fp_;
  std::vector<bool> on_path_;
  std::vector<int> atoms_;
  std::vector<int> bonds_;
};

}  // namespace

BitFingerprint path_fingerprint(const Molecule& mol, int min_path, int max_path, std::size_t width) {
  check_width(width);
  if (min_path < 1 || max_path < min_path) {
    throw InvalidArgument("path lengths must satisfy 1 <= min_path <= max_path");
  }
  BitFingerprint fp(width);
  PathWalker(mol, min_path, max_path, fp).run();
  return fp;
}

BitFingerprint key_fingerprint(const Molecule& mol, const KeyTable& table) {
  if (table.size() == 0) throw InvalidArgument("key table is empty");
  BitFingerprint fp(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const KeyEntry& k = table.entries()[i];
    const auto need = static_cast<std::size_t>(k.min_count);
    if (count_matches(k.pattern, mol, need) >= need) fp.set(i);
  }
  return fp;
}

BitFingerprint fingerprint(const Molecule& mol, const FingerprintSpec& spec) {
  switch (spec.kind) {
    case FingerprintKind::Circular: return circular_fingerprint(mol, spec.radius, spec.width);
    case FingerprintKind::Path:
      return path_fingerprint(mol, spec.min_path, spec.max_path, spec.width);
    case FingerprintKind::Key:
      return key_fingerprint(mol, spec.key_table ? *spec.key_table : KeyTable::builtin());
  }
  throw InvalidArgument("unknown fingerprint kind");
}

FingerprintSpec FingerprintSpec::circular(int radius, std::size_t width) {
  FingerprintSpec s;
  s.kind = FingerprintKind::Circular;
  s.radius = radius;
  s.width = width;
  return s;
}

FingerprintSpec FingerprintSpec::path(int min_path, int max_path, std::size_t width) {
  FingerprintSpec s;
  s.kind = FingerprintKind::Path;
  s.min_path = min_path;
  s.max_path = max_path;
  s.width = width;
  return s;
}

FingerprintSpec FingerprintSpec::key(const KeyTable* table) {
  FingerprintSpec s;
  s.kind = FingerprintKind::Key;
  s.key_table = table;
  s.width = table ? table->size() : KeyTable::builtin().size();
  return s;
}

std::string_view to_string(FingerprintKind kind) {
  switch (kind) {
    case FingerprintKind::Circular: return "circular";
    case FingerprintKind::Path: return "path";
    case FingerprintKind::Key: return "key";
  }
  return "unknown";
}

FingerprintKind parse_fingerprint_kind(std::string_view name) {
  if (name == "circular") return FingerprintKind::Circular;
  if (name == "path") return FingerprintKind::Path;
  if (name == "key") return FingerprintKind::Key;
  throw InvalidArgument("unknown fingerprint kind '" + std::string(name) +
                        "' (expected circular, path or key)");
}

}  // namespace rxnlab
