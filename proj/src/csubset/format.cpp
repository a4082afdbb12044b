#include "invclust/format.hpp"

#include <cctype>
#include <stdexcept>

namespace invclust {
namespace {

std::vector<FormatPiece> parse_format(std::string_view format, bool allow_text, bool allow_modifiers) {
  std::vector<FormatPiece> pieces;
  std::string text;
  auto flush_text = [&] {
    if (text.empty()) return;
    FormatPiece piece;
    piece.text = std::move(text);
    pieces.push_back(std::move(piece));
    text.clear();
  };
  for (std::size_t i = 0; i < format.size();) {
    char c = format[i];
    if (c != '%') {
      if (!allow_text && !std::isspace(static_cast<unsigned char>(c)))
        throw std::invalid_argument("literal text in scanf format");
      text += c;
      ++i;
      continue;
    }
    if (i + 1 < format.size() && format[i + 1] == '%') {
      if (!allow_text) throw std::invalid_argument("'%%' in scanf format");
      text += '%';
      i += 2;
      continue;
    }
    flush_text();
    FormatPiece piece;
    piece.conversion = true;
    std::size_t start = i++;
    while (i < format.size() && std::string_view("-+ 0#").find(format[i]) != std::string_view::npos) {
      if (!allow_modifiers || format[i] == '#') throw std::invalid_argument("format flag");
      piece.flags += format[i++];
    }
    if (i < format.size() && std::isdigit(static_cast<unsigned char>(format[i]))) {
      if (!allow_modifiers) throw std::invalid_argument("scanf field width");
      int w = 0;
      while (i < format.size() && std::isdigit(static_cast<unsigned char>(format[i])))
        w = w * 10 + (format[i++] - '0');
      piece.width = w;
    }
    if (i < format.size() && format[i] == '.') {
      if (!allow_modifiers) throw std::invalid_argument("scanf precision");
      ++i;
      int p = 0;
      while (i < format.size() && std::isdigit(static_cast<unsigned char>(format[i])))
        p = p * 10 + (format[i++] - '0');
      piece.precision = p;
    }
    if (i < format.size() && format[i] == 'l') {
      piece.long_flag = true;
      ++i;
    }
    if (i >= format.size()) throw std::invalid_argument("truncated conversion");
    char conv = format[i++];
    if (conv == 'd' || conv == 'i') {
      if (piece.long_flag) throw std::invalid_argument("conversion %ld");
      piece.conv = 'd';
    } else if (conv == 'f') {
      piece.conv = 'f';
    } else {
      throw std::invalid_argument(std::string("conversion %") + conv);
    }
    piece.text = std::string(format.substr(start, i - start));
    pieces.push_back(std::move(piece));
  }
  flush_text();
  return pieces;
}

}  // namespace

std::vector<FormatPiece> parse_printf_format(std::string_view format) {
  return parse_format(format, true, true);
}

std::vector<FormatPiece> parse_scanf_format(std::string_view format) {
  return parse_format(format, false, false);
}

std::size_t conversion_count(const std::vector<FormatPiece>& pieces) {
  std::size_t n = 0;
  for (const auto& p : pieces) n += p.conversion ? 1 : 0;
  return n;
}

std::string format_skeleton(std::string_view format) {
  std::string out;
  for (const auto& piece : parse_printf_format(format))
    if (piece.conversion) out += piece.conv == 'd' ? "%d" : (piece.long_flag ? "%lf" : "%f");
  return out;
}

}  // namespace invclust
