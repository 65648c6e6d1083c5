#include "loreseval/utf8.hpp"

#include "loreseval/error.hpp"

namespace loreseval::utf8 {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t length;  // 0 on error
};

Decoded decode_one(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[pos + i]);
  };
  const unsigned char lead = byte(0);
  if (lead < 0x80) return {lead, 1};

  std::size_t length = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4, cp = lead & 0x07, min = 0x10000;
  } else {
    return {0, 0};
  }
  if (pos + length > text.size()) return {0, 0};
  for (std::size_t i = 1; i < length; ++i) {
    if ((byte(i) & 0xC0) != 0x80) return {0, 0};
    cp = (cp << 6) | (byte(i) & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {0, 0};
  return {cp, length};
}

// Alternating upper/lower pairs: even code point is uppercase.
bool in_even_pair_block(char32_t cp) {
  return (cp >= 0x0100 && cp <= 0x012F) || (cp >= 0x0132 && cp <= 0x0137) ||
         (cp >= 0x014A && cp <= 0x0177) || (cp >= 0x0182 && cp <= 0x0185) ||
         (cp >= 0x01A0 && cp <= 0x01A5) || (cp >= 0x01DE && cp <= 0x01EF) ||
         (cp >= 0x01F8 && cp <= 0x021F) || (cp >= 0x0222 && cp <= 0x0233) ||
         (cp >= 0x0246 && cp <= 0x024F) || (cp >= 0x03D8 && cp <= 0x03EF) ||
         (cp >= 0x0460 && cp <= 0x0481) || (cp >= 0x048A && cp <= 0x04BF) ||
         (cp >= 0x04D0 && cp <= 0x052F) || (cp >= 0x1E00 && cp <= 0x1E95) ||
         (cp >= 0x1EA0 && cp <= 0x1EFF);
}

// Odd code point is uppercase.
bool in_odd_pair_block(char32_t cp) {
  return (cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E) ||
         (cp >= 0x01CD && cp <= 0x01DC) || (cp >= 0x04C1 && cp <= 0x04CE);
}

}  // namespace

std::optional<std::size_t> find_invalid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Decoded d = decode_one(text, pos);
    if (d.length == 0) return pos;
    pos += d.length;
  }
  return std::nullopt;
}

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Decoded d = decode_one(text, pos);
    if (d.length == 0) {
      throw Error(ErrorCode::EncodingError,
                  "malformed UTF-8 at byte offset " + std::to_string(pos));
    }
    out.push_back(d.cp);
    pos += d.length;
  }
  return out;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append(out, cp);
  return out;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (in_even_pair_block(cp)) return (cp % 2 == 0) ? cp + 1 : cp;
  if (in_odd_pair_block(cp)) return (cp % 2 == 1) ? cp + 1 : cp;
  switch (cp) {
    case 0x0130: return 0x0069;
    case 0x0178: return 0x00FF;
    case 0x0181: return 0x0253;
    case 0x0186: return 0x0254;
    case 0x0187: return 0x0188;
    case 0x0189: return 0x0256;
    case 0x018A: return 0x0257;
    case 0x018B: return 0x018C;
    case 0x018E: return 0x01DD;
    case 0x018F: return 0x0259;
    case 0x0190: return 0x025B;
    case 0x0191: return 0x0192;
    case 0x0193: return 0x0260;
    case 0x0194: return 0x0263;
    case 0x0196: return 0x0269;
    case 0x0197: return 0x0268;
    case 0x0198: return 0x0199;
    case 0x019C: return 0x026F;
    case 0x019D: return 0x0272;
    case 0x019F: return 0x0275;
    case 0x01A6: return 0x0280;
    case 0x01A7: return 0x01A8;
    case 0x01A9: return 0x0283;
    case 0x01AC: return 0x01AD;
    case 0x01AE: return 0x0288;
    case 0x01AF: return 0x01B0;
    case 0x01B1: return 0x028A;
    case 0x01B2: return 0x028B;
    case 0x01B3: return 0x01B4;
    case 0x01B5: return 0x01B6;
    case 0x01B7: return 0x0292;
    case 0x01B8: return 0x01B9;
    case 0x01BC: return 0x01BD;
    case 0x01C4: case 0x01C5: return 0x01C6;
    case 0x01C7: case 0x01C8: return 0x01C9;
    case 0x01CA: case 0x01CB: return 0x01CC;
    case 0x01F1: case 0x01F2: return 0x01F3;
    case 0x01F4: return 0x01F5;
    case 0x01F6: return 0x0195;
    case 0x01F7: return 0x01BF;
    case 0x0220: return 0x019E;
    case 0x023A: return 0x2C65;
    case 0x023B: return 0x023C;
    case 0x023D: return 0x019A;
    case 0x023E: return 0x2C66;
    case 0x0241: return 0x0242;
    case 0x0243: return 0x0180;
    case 0x0244: return 0x0289;
    case 0x0245: return 0x028C;
    case 0x0370: return 0x0371;
    case 0x0372: return 0x0373;
    case 0x0376: return 0x0377;
    case 0x037F: return 0x03F3;
    case 0x0386: return 0x03AC;
    case 0x0388: return 0x03AD;
    case 0x0389: return 0x03AE;
    case 0x038A: return 0x03AF;
    case 0x038C: return 0x03CC;
    case 0x038E: return 0x03CD;
    case 0x038F: return 0x03CE;
    case 0x03CF: return 0x03D7;
    case 0x03F4: return 0x03B8;
    case 0x03F7: return 0x03F8;
    case 0x03F9: return 0x03F2;
    case 0x03FA: return 0x03FB;
    case 0x03FD: return 0x037B;
    case 0x03FE: return 0x037C;
    case 0x03FF: return 0x037D;
    case 0x04C0: return 0x04CF;
    case 0x10C7: return 0x2D27;
    case 0x10CD: return 0x2D2D;
    case 0x1E9E: return 0x00DF;
    case 0x1FB8: return 0x1FB0;
    case 0x1FB9: return 0x1FB1;
    case 0x1FBA: return 0x1F70;
    case 0x1FBB: return 0x1F71;
    case 0x1FBC: return 0x1FB3;
    case 0x1FC8: return 0x1F72;
    case 0x1FC9: return 0x1F73;
    case 0x1FCA: return 0x1F74;
    case 0x1FCB: return 0x1F75;
    case 0x1FCC: return 0x1FC3;
    case 0x1FD8: return 0x1FD0;
    case 0x1FD9: return 0x1FD1;
    case 0x1FDA: return 0x1F76;
    case 0x1FDB: return 0x1F77;
    case 0x1FE8: return 0x1FE0;
    case 0x1FE9: return 0x1FE1;
    case 0x1FEA: return 0x1F7A;
    case 0x1FEB: return 0x1F7B;
    case 0x1FEC: return 0x1FE5;
    case 0x1FF8: return 0x1F78;
    case 0x1FF9: return 0x1F79;
    case 0x1FFA: return 0x1F7C;
    case 0x1FFB: return 0x1F7D;
    case 0x1FFC: return 0x1FF3;
    case 0x2126: return 0x03C9;
    case 0x212A: return 0x006B;
    case 0x212B: return 0x00E5;
    case 0x2132: return 0x214E;
    case 0x2183: return 0x2184;
    default: break;
  }
  if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 32;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
  if (cp >= 0x0531 && cp <= 0x0556) return cp + 48;
  if (cp >= 0x10A0 && cp <= 0x10C5) return cp + 7264;
  if (cp >= 0x1F08 && cp <= 0x1FAF && (cp & 0x8) != 0) {
    // Greek extended: uppercase rows sit 8 above their lowercase rows.
    const char32_t lower = cp - 8;
    const char32_t row = cp & 0xFFF0;
    if (row == 0x1F10 || row == 0x1F40) {
      return (cp & 0xF) <= 0xD ? lower : cp;
    }
    if (row == 0x1F50) return (cp % 2 == 1) ? lower : cp;
    if (row == 0x1F70) return cp;
    return lower;
  }
  if (cp >= 0x2160 && cp <= 0x216F) return cp + 16;
  if (cp >= 0x24B6 && cp <= 0x24CF) return cp + 26;
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 32;
  return cp;
}

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Decoded d = decode_one(text, pos);
    if (d.length == 0) {
      // Malformed bytes pass through untouched.
      out.push_back(text[pos]);
      ++pos;
      continue;
    }
    append(out, to_lower(d.cp));
    pos += d.length;
  }
  return out;
}

}  // namespace loreseval::utf8
