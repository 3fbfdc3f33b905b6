#include "zdl/zero_source.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "zdl/errors.hpp"

namespace zdl {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_decimal_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  const auto e = s.find_first_of("eE");
  std::string_view mantissa = s.substr(0, e);
  if (e != std::string_view::npos) {
    std::string_view exponent = s.substr(e + 1);
    if (!exponent.empty() && (exponent.front() == '+' || exponent.front() == '-'))
      exponent.remove_prefix(1);
    if (!all_digits(exponent)) return false;
  }
  const auto dot = mantissa.find('.');
  if (dot == std::string_view::npos) return all_digits(mantissa);
  std::string_view whole = mantissa.substr(0, dot);
  std::string_view frac = mantissa.substr(dot + 1);
  if (whole.empty() && frac.empty()) return false;
  return (whole.empty() || all_digits(whole)) && (frac.empty() || all_digits(frac));
}

std::optional<double> parse_double(std::string_view s) {
  if (!is_decimal_literal(s)) return std::nullopt;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

struct Header {
  std::optional<Decimal> base;
  std::optional<Ordinal> start_index;
};

// Returns nullopt for a free-text comment.
std::optional<Header> parse_header(std::string_view body, std::size_t line_no) {
  body = trim(body);
  const auto first_space = body.find_first_of(" \t");
  if (body.substr(0, first_space).find('=') == std::string_view::npos) return std::nullopt;

  Header header;
  while (!body.empty()) {
    const auto end = body.find_first_of(" \t");
    std::string_view token = body.substr(0, end);
    body = end == std::string_view::npos ? std::string_view{} : trim(body.substr(end));
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw FormatError("malformed header token", line_no);
    std::string_view key = token.substr(0, eq);
    std::string_view value = token.substr(eq + 1);
    try {
      if (key == "base" && !header.base) {
        header.base = Decimal::parse(value);
      } else if (key == "start_index" && !header.start_index) {
        header.start_index = Ordinal::parse(value);
      } else {
        throw FormatError("unknown or repeated header key '" + std::string(key) + "'", line_no);
      }
    } catch (const ParameterError& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return header;
}

}  // namespace

Decimal Decimal::parse(std::string_view text) {
  text = trim(text);
  if (!is_decimal_literal(text)) throw ParameterError("not a decimal number: '" + std::string(text) + "'");
  return Decimal(std::string(text));
}

double Decimal::to_double() const { return std::strtod(text_.c_str(), nullptr); }

bool Decimal::is_zero() const { return to_double() == 0.0; }

Ordinal Ordinal::parse(std::string_view text) {
  text = trim(text);
  if (!all_digits(text)) throw ParameterError("not a non-negative integer: '" + std::string(text) + "'");
  while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
  Ordinal o;
  o.digits_ = std::string(text);
  return o;
}

std::optional<std::uint64_t> Ordinal::to_u64() const {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits_.data(), digits_.data() + digits_.size(), value);
  if (ec != std::errc() || ptr != digits_.data() + digits_.size()) return std::nullopt;
  return value;
}

void ZeroSet::validate() const {
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!std::isfinite(offsets[i])) throw DomainError("non-finite offset at position " + std::to_string(i + 1));
    if (i > 0 && !(offsets[i] > offsets[i - 1])) throw MonotonicityError(i + 1);
  }
}

ZeroFileFormat parse_format_name(std::string_view name) {
  if (name == "plain" || name == "plain_list") return ZeroFileFormat::plain_list;
  if (name == "base-offset" || name == "base_offset") return ZeroFileFormat::base_offset;
  throw ParameterError("unknown zero file format '" + std::string(name) + "'");
}

ZeroSet parse_zeros(std::istream& in, ZeroFileFormat format) {
  ZeroSet zeros;
  std::optional<Header> header;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;

    if (view.front() == '#') {
      auto parsed = parse_header(view.substr(1), line_no);
      if (!parsed) continue;
      if (header) throw FormatError("second header line", line_no);
      if (!zeros.offsets.empty()) throw FormatError("header after data", line_no);
      if (format == ZeroFileFormat::plain_list && parsed->base)
        throw FormatError("plain_list files carry no base", line_no);
      if (format == ZeroFileFormat::base_offset && (!parsed->base || !parsed->start_index))
        throw FormatError("base_offset header needs base= and start_index=", line_no);
      header = std::move(parsed);
      continue;
    }

    if (format == ZeroFileFormat::base_offset && !header)
      throw FormatError("base_offset data before header", line_no);

    auto value = parse_double(view);
    if (!value) throw FormatError("unparsable token '" + std::string(view) + "'", line_no);
    if (!zeros.offsets.empty() && !(*value > zeros.offsets.back())) throw MonotonicityError(line_no);
    zeros.offsets.push_back(*value);
  }

  if (format == ZeroFileFormat::base_offset && !header)
    throw FormatError("missing base_offset header", line_no);
  if (header) {
    if (header->base) zeros.base = *header->base;
    if (header->start_index) zeros.start_index = *header->start_index;
  }
  return zeros;
}

ZeroSet read_zero_file(const std::string& path, ZeroFileFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_zeros(in, format);
}

void write_zeros(std::ostream& out, const ZeroSet& zeros, ZeroFileFormat format) {
  char buf[64];
  if (format == ZeroFileFormat::base_offset) {
    out << "# base=" << zeros.base.str() << " start_index=" << zeros.start_index.str() << '\n';
  } else if (zeros.start_index.str() != "1") {
    out << "# start_index=" << zeros.start_index.str() << '\n';
  }
  const double shift = format == ZeroFileFormat::plain_list ? zeros.base.to_double() : 0.0;
  for (double offset : zeros.offsets) {
    std::snprintf(buf, sizeof buf, "%.9f\n", shift + offset);
    out << buf;
  }
}

}  // namespace zdl
