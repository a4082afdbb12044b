#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace invclust {

// One piece of a printf/scanf format string: either literal text or a
// conversion (%d, %i, %f, %lf with optional flags/width/precision).
struct FormatPiece {
  bool conversion = false;
  std::string text;  // literal text, or the full spec as written ("%.2lf")
  char conv = 0;     // 'd' or 'f'
  bool long_flag = false;
  std::string flags;
  std::optional<int> width;
  std::optional<int> precision;
};

// Throws std::invalid_argument naming the offending specifier.
std::vector<FormatPiece> parse_printf_format(std::string_view format);

// scanf formats may only contain conversions and whitespace.
std::vector<FormatPiece> parse_scanf_format(std::string_view format);

std::size_t conversion_count(const std::vector<FormatPiece>& pieces);

// Conversion skeleton of a format, e.g. "Sum: %d\n" -> "%d".
std::string format_skeleton(std::string_view format);

}  // namespace invclust
