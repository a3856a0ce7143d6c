#include "ostrowski/cli/parse.hpp"

#include <cctype>
#include <vector>

namespace ostrowski::cli {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail_here(std::string("expected '") + c + "'");
  }

  Integer integer(bool allow_sign) {
    const std::size_t start = pos_;
    if (allow_sign && (peek() == '-' || peek() == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail_here("expected digits");
    std::string text(s_.substr(start, pos_ - start));
    if (text.front() == '+') text.erase(0, 1);
    return Integer(text);
  }

  void finish() {
    if (!done()) fail_here("unexpected trailing characters");
  }

  [[noreturn]] void fail_here(const std::string& what) const { throw ParseError(pos_, what); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// a_i for i >= 1 must be positive.
Integer quotient(Cursor& c) {
  const std::size_t at = c.pos();
  Integer a = c.integer(false);
  if (a < 1) throw ParseError(at, "partial quotients after a_0 must be >= 1");
  return a;
}

AlphaSpec parse_cf(Cursor& c) {
  std::vector<Integer> head{c.integer(true)};
  std::vector<Integer> tail;
  if (c.accept(';')) {
    for (;;) {
      if (c.accept('(')) {
        tail.push_back(quotient(c));
        while (c.accept(',')) tail.push_back(quotient(c));
        c.expect(')');
        break;
      }
      head.push_back(quotient(c));
      if (!c.accept(',')) break;
    }
  }
  c.finish();
  return AlphaSpec::partial_quotients(std::move(head), std::move(tail));
}

}  // namespace

AlphaSpec parse_alpha(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty alpha spec");
  if (text == "phi") return AlphaSpec::golden_ratio();

  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError(0, "expected 'phi' or a 'kind:' prefix");
  const std::string_view kind = text.substr(0, colon);
  Cursor c(text);
  for (std::size_t i = 0; i <= colon; ++i) c.accept(text[i]);

  if (kind == "sqrt") {
    const Integer D = c.integer(false);
    c.finish();
    if (D > 0 && is_perfect_square(D)) {
      fail(ErrorCode::kPerfectSquare, "sqrt:" + D.get_str() + " is rational (perfect square)");
    }
    return AlphaSpec::sqrt(D);
  }
  if (kind == "surd") {
    Integer P = c.integer(true);
    c.expect(',');
    Integer D = c.integer(false);
    c.expect(',');
    Integer Q = c.integer(true);
    c.finish();
    return AlphaSpec::surd(std::move(P), std::move(D), std::move(Q));
  }
  if (kind == "cf") return parse_cf(c);
  throw ParseError(0, "unknown alpha kind '" + std::string(kind) + "'");
}

}  // namespace ostrowski::cli
