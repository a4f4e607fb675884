#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partcat/errors.hpp"

namespace partcat {

// Legs carry one of two colors. In text form white is 'o' and black is 'b'.
enum class Color : uint8_t { White = 0, Black = 1 };

inline Color flip(Color c) { return c == Color::White ? Color::Black : Color::White; }
inline char color_char(Color c) { return c == Color::White ? 'o' : 'b'; }

using ColorWord = std::vector<Color>;

inline ColorWord parse_color_word(const std::string& s, size_t offset = 0) {
  ColorWord w;
  w.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'o') w.push_back(Color::White);
    else if (s[i] == 'b') w.push_back(Color::Black);
    else throw ParseError("expected 'o' or 'b' in color word", offset + i);
  }
  return w;
}

inline std::string format_color_word(const ColorWord& w) {
  std::string s;
  s.reserve(w.size());
  for (Color c : w) s.push_back(color_char(c));
  return s;
}

// reverse the word and flip every color; the color word of the adjoint row
inline ColorWord conjugate(const ColorWord& w) {
  ColorWord r(w.rbegin(), w.rend());
  for (Color& c : r) c = flip(c);
  return r;
}

inline ColorWord flipped(ColorWord w) {
  for (Color& c : w) c = flip(c);
  return w;
}

inline ColorWord concat(const ColorWord& a, const ColorWord& b) {
  ColorWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// all 2^n words of length n, in lexicographic order with 'o' < 'b'
std::vector<ColorWord> all_color_words(size_t n);

}  // namespace partcat
