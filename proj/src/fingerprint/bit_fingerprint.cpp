#include <bit>
#include <charconv>

#include "rxnlab/errors.hpp"
#include "rxnlab/fingerprint.hpp"

namespace rxnlab {

BitFingerprint::BitFingerprint(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

bool BitFingerprint::test(std::size_t bit) const {
  if (bit >= width_) throw InvalidArgument("bit index out of range");
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

void BitFingerprint::set(std::size_t bit) {
  if (bit >= width_) throw InvalidArgument("bit index out of range");
  words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
}

std::size_t BitFingerprint::count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> BitFingerprint::on_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i) {
    if ((words_[i / 64] >> (i % 64)) & 1U) out.push_back(i);
  }
  return out;
}

std::string BitFingerprint::to_string() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = std::to_string(width_) + ":";
  const std::size_t bytes = (width_ + 7) / 8;
  for (std::size_t b = 0; b < bytes; ++b) {
    const auto byte = static_cast<unsigned>((words_[b / 8] >> ((b % 8) * 8)) & 0xFFU);
    out += kHex[byte >> 4];
    out += kHex[byte & 0xFU];
  }
  return out;
}

BitFingerprint BitFingerprint::from_string(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument("fingerprint must be width:hex");
  std::size_t width = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + colon, width);
  if (ec != std::errc{} || p != text.data() + colon) throw InvalidArgument("bad fingerprint width");
  const std::string_view hex = text.substr(colon + 1);
  if (hex.size() != 2 * ((width + 7) / 8)) throw InvalidArgument("fingerprint hex length mismatch");
  BitFingerprint fp(width);
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw InvalidArgument("fingerprint hex must be lowercase 0-9a-f");
  };
  for (std::size_t b = 0; b < hex.size() / 2; ++b) {
    const int byte = nibble(hex[2 * b]) * 16 + nibble(hex[2 * b + 1]);
    for (int k = 0; k < 8; ++k) {
      if (!((byte >> k) & 1)) continue;
      const std::size_t bit = b * 8 + static_cast<std::size_t>(k);
      if (bit >= width) throw InvalidArgument("fingerprint sets a bit beyond its width");
      fp.set(bit);
    }
  }
  return fp;
}

double tanimoto(const BitFingerprint& a, const BitFingerprint& b) {
  if (a.width() != b.width()) {
    throw InvalidArgument("fingerprint width mismatch: " + std::to_string(a.width()) + " vs " +
                          std::to_string(b.width()));
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    inter += static_cast<std::size_t>(std::popcount(a.words()[i] & b.words()[i]));
    uni += static_cast<std::size_t>(std::popcount(a.words()[i] | b.words()[i]));
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace rxnlab
