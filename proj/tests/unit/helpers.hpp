#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "multifol/error.hpp"
#include "multifol/linalg.hpp"
#include "multifol/poset.hpp"

namespace mf = multifol;

inline mf::Rational Q(const char* text) { return mf::parse_rational(text); }

inline mf::Poset make_poset(std::vector<std::string> elements,
                            std::vector<std::pair<std::string, std::string>> leq = {}) {
  return mf::Poset::create(std::move(elements), leq);
}

inline mf::Poset chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    if (i > 0) leq.emplace_back(names[i - 1], names[i]);
  }
  return mf::Poset::create(names, leq);
}

inline mf::Poset diamond() {
  return make_poset({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

namespace multifol {
inline void PrintTo(ErrorCode code, std::ostream* os) { *os << to_string(code); }
}  // namespace multifol

#define EXPECT_MF_ERROR(stmt, code_)                                     \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "expected " << mf::to_string(code_);              \
    } catch (const mf::Error& e) {                                       \
      EXPECT_EQ(e.code(), code_) << e.what();                            \
    }                                                                    \
  } while (0)
