#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rxnlab/molecule.hpp"
#include "rxnlab/substructure.hpp"

namespace rxnlab {

class BitFingerprint {
 public:
  BitFingerprint() = default;
  explicit BitFingerprint(std::size_t width);

  std::size_t width() const noexcept { return width_; }
  bool test(std::size_t bit) const;
  void set(std::size_t bit);
  std::size_t count() const noexcept;
  std::vector<std::size_t> on_bits() const;
  bool empty() const noexcept { return count() == 0; }

  /// "width:hex" with ceil(width/8) bytes, bit i stored in byte i/8 at
  /// position i%8 (least significant first), lowercase hex digits.
  std::string to_string() const;
  /// Throws InvalidArgument on malformed text.
  static BitFingerprint from_string(std::string_view text);

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitFingerprint&, const BitFingerprint&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class FingerprintKind { Circular, Path, Key };

struct FingerprintSpec {
  FingerprintKind kind = FingerprintKind::Circular;
  int radius = 2;
  int min_path = 1;
  int max_path = 7;
  std::size_t width = 2048;
  /// Key fingerprints only; nullptr means the built-in table.
  const KeyTable* key_table = nullptr;

  static FingerprintSpec circular(int radius = 2, std::size_t width = 2048);
  static FingerprintSpec path(int min_path = 1, int max_path = 7, std::size_t width = 2048);
  static FingerprintSpec key(const KeyTable* table = nullptr);
};

std::string_view to_string(FingerprintKind kind);
/// Throws InvalidArgument for unknown names.
FingerprintKind parse_fingerprint_kind(std::string_view name);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

BitFingerprint circular_fingerprint(const Molecule& mol, int radius = 2, std::size_t width = 2048);
BitFingerprint path_fingerprint(const Molecule& mol, int min_path = 1, int max_path = 7,
                                std::size_t width = 2048);
BitFingerprint key_fingerprint(const Molecule& mol, const KeyTable& table);
BitFingerprint fingerprint(const Molecule& mol, const FingerprintSpec& spec);

/// |a & b| / |a | b|, 1.0 when both are empty. Throws InvalidArgument when
/// the widths differ.
double tanimoto(const BitFingerprint& a, const BitFingerprint& b);

}  // namespace rxnlab
