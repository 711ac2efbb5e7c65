#include "multifol/rational.hpp"

#include <cctype>

#include "multifol/error.hpp"

namespace multifol {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::SchemaError, "malformed rational '" + std::string(text) + "'",
                 std::string(text));
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_text(num)) throw fail();
  if (slash != std::string_view::npos) {
    if (!is_integer_text(den) || den.front() == '-' || den.front() == '+') throw fail();
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  Rational value;
  value.get_num() = mpz_class(n, 10);
  value.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (value.get_den() == 0) throw fail();
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

}  // namespace multifol
