#pragma once

// Zero ordinate blocks and their on-disk formats.
//
// Ordinates at large height do not fit in a double, so a block keeps an
// exact decimal base next to double offsets. Everything downstream works on
// offsets only.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zdl {

// A decimal number kept verbatim as validated text.
class Decimal {
 public:
  Decimal() : text_("0") {}
  static Decimal parse(std::string_view text);

  const std::string& str() const { return text_; }
  double to_double() const;
  bool is_zero() const;

  friend bool operator==(const Decimal&, const Decimal&) = default;

 private:
  explicit Decimal(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

// Non-negative integer of unbounded size, e.g. the ordinal 10^23 + 1.
class Ordinal {
 public:
  Ordinal() : digits_("1") {}
  explicit Ordinal(std::uint64_t value) : digits_(std::to_string(value)) {}
  static Ordinal parse(std::string_view text);

  const std::string& str() const { return digits_; }
  std::optional<std::uint64_t> to_u64() const;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;

 private:
  std::string digits_;
};

struct ZeroSet {
  Decimal base;
  std::vector<double> offsets;  // strictly increasing
  Ordinal start_index;

  std::size_t size() const { return offsets.size(); }
  std::span<const double> view() const { return offsets; }
  // Approximate absolute ordinate; exact only while base + offset fits a double.
  double ordinate(std::size_t i) const { return base.to_double() + offsets[i]; }

  // Throws MonotonicityError (1-based position) or DomainError on non-finite values.
  void validate() const;
};

enum class ZeroFileFormat { plain_list, base_offset };

ZeroFileFormat parse_format_name(std::string_view name);

// Reads a zero file. Comment lines start with '#'; a comment whose first
// token has the form key=value is a header and may only carry the keys
// `base` and `start_index`. base_offset files require both keys.
ZeroSet parse_zeros(std::istream& in, ZeroFileFormat format);
ZeroSet read_zero_file(const std::string& path, ZeroFileFormat format);

// Ordinates or offsets are written with nine decimals.
void write_zeros(std::ostream& out, const ZeroSet& zeros, ZeroFileFormat format);

}  // namespace zdl
