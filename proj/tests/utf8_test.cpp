#include <gtest/gtest.h>

#include <clocale>
#include <cwctype>
#include <locale.h>

#include "loreseval/error.hpp"
#include "loreseval/utf8.hpp"

namespace utf8 = loreseval::utf8;

TEST(Utf8, RoundTripsMixedScripts) {
  const std::string text = "Scéim Fóirdheontais — मराठी 🙂";
  EXPECT_EQ(utf8::encode(utf8::decode(text)), text);
  EXPECT_TRUE(utf8::is_valid(text));
}

TEST(Utf8, RejectsMalformedSequences) {
  EXPECT_EQ(utf8::find_invalid("ok\xC3").value_or(99), 2u);          // truncated
  EXPECT_EQ(utf8::find_invalid("\xC0\xAF").value_or(99), 0u);        // overlong '/'
  EXPECT_EQ(utf8::find_invalid("a\xED\xA0\x80").value_or(99), 1u);   // surrogate
  EXPECT_EQ(utf8::find_invalid("\xFF").value_or(99), 0u);
  EXPECT_THROW(utf8::decode("\x80"), loreseval::Error);
}

TEST(Utf8, LowercasesIrishAndAscii) {
  EXPECT_EQ(utf8::lowercase("COVID-19 Wage Subsidy"), "covid-19 wage subsidy");
  EXPECT_EQ(utf8::lowercase("Scéim Fóirdheontais"), "scéim fóirdheontais");
  EXPECT_EQ(utf8::lowercase("ÁÉÍÓÚ"), "áéíóú");
  EXPECT_EQ(utf8::lowercase("ПРИВЕТ Ελλάδα"), "привет ελλάδα");
  EXPECT_EQ(utf8::lowercase("मराठी"), "मराठी");
}

// Independent oracle: glibc's per-character table in the C.UTF-8 locale.
TEST(Utf8, LowercaseMatchesLibcTableOnCoveredRanges) {
  locale_t loc = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
  if (loc == static_cast<locale_t>(0)) GTEST_SKIP() << "C.UTF-8 locale unavailable";
  const std::pair<char32_t, char32_t> ranges[] = {
      {0x0000, 0x024F}, {0x0370, 0x03FF}, {0x0400, 0x052F}, {0x0530, 0x058F},
      {0x0900, 0x097F}, {0x10A0, 0x10FF}, {0x1E00, 0x1FFF}, {0x2150, 0x24FF},
      {0xFF00, 0xFF5F},
  };
  int mismatches = 0;
  for (const auto& [lo, hi] : ranges) {
    for (char32_t cp = lo; cp <= hi; ++cp) {
      const auto expected = static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
      if (utf8::to_lower(cp) != expected) {
        ADD_FAILURE() << std::hex << "U+" << static_cast<unsigned>(cp) << " -> "
                      << static_cast<unsigned>(utf8::to_lower(cp)) << ", libc says "
                      << static_cast<unsigned>(expected);
        if (++mismatches > 20) break;
      }
    }
  }
  freelocale(loc);
}

TEST(Utf8, LowercaseIsIdempotent) {
  for (char32_t cp = 0; cp < 0x3000; ++cp) {
    if (cp >= 0xD800 && cp <= 0xDFFF) continue;
    ASSERT_EQ(utf8::to_lower(utf8::to_lower(cp)), utf8::to_lower(cp)) << std::hex << static_cast<unsigned>(cp);
  }
}
