#include "term_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "dads/error.hpp"

namespace dads::detail {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Term term() {
    skip_ws();
    if (at_end()) fail("expected a term");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      return number();
    }
    Term t;
    t.name = identifier();
    skip_ws();
    if (!at_end() && text_[pos_] == '(') {
      ++pos_;
      skip_ws();
      if (!at_end() && text_[pos_] == ')') {
        ++pos_;
        return t;
      }
      while (true) {
        t.args.push_back(term());
        skip_ws();
        if (at_end()) fail("unterminated argument list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail(std::string("unexpected '") + text_[pos_] + "'");
      }
    } else if (t.name == "pi") {
      Term n;
      n.number = std::numbers::pi;
      return n;
    } else if (t.name == "e") {
      Term n;
      n.number = std::numbers::e;
      return n;
    }
    return t;
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail("trailing characters");
  }

 private:
  Term number() {
    std::size_t end = pos_;
    while (end < text_.size()) {
      const char c = text_[end];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          c == '-' || c == '+') {
        ++end;
      } else {
        break;
      }
    }
    std::string_view token = text_.substr(pos_, end - pos_);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    Term t;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, t.number);
    if (ec != std::errc() || ptr != last || !std::isfinite(t.number)) {
      fail("bad number '" + std::string(text_.substr(pos_, end - pos_)) + "'");
    }
    pos_ = end;
    return t;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail(std::string("unexpected '") + text_[pos_] + "'");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse '" + std::string(text_) + "': " + what + " at column " +
                      std::to_string(pos_ + 1));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  Reader r(text);
  Term t = r.term();
  r.expect_end();
  return t;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto piece = text.substr(start, comma - start);
    const Term t = parse_term(piece);
    if (!t.is_number()) throw ConfigError("expected a number, got '" + std::string(piece) + "'");
    out.push_back(t.number);
    start = comma + 1;
  }
  return out;
}

}  // namespace dads::detail
