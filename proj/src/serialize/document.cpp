#include <algorithm>
#include <cctype>
#include <iterator>
#include <vector>

#include "stab/serialize.hpp"

namespace stab::io {

namespace {

/// Char iterator that records the furthest position the parser has read.
struct TrackingIter {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  const char** furthest = nullptr;

  reference operator*() const { return *p; }
  TrackingIter& operator++() {
    ++p;
    if (p > *furthest) *furthest = p;
    return *this;
  }
  TrackingIter operator++(int) {
    TrackingIter t = *this;
    ++*this;
    return t;
  }
  bool operator==(const TrackingIter& o) const { return p == o.p; }
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

class LineIndex {
 public:
  explicit LineIndex(const std::string& text) : text_(text) {
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') breaks_.push_back(i);
  }
  int line_at(std::size_t offset) const {
    return 1 + static_cast<int>(std::lower_bound(breaks_.begin(), breaks_.end(), offset) - breaks_.begin());
  }
  int column_at(std::size_t offset) const {
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), offset);
    std::size_t start = it == breaks_.begin() ? 0 : *(it - 1) + 1;
    return 1 + static_cast<int>(offset - start);
  }
  /// Line of the last non-blank character before offset.
  int token_line(std::size_t offset) const {
    std::size_t i = std::min(offset, text_.size());
    while (i > 0 && std::isspace(static_cast<unsigned char>(text_[i - 1]))) --i;
    return line_at(i == 0 ? 0 : i - 1);
  }

 private:
  const std::string& text_;
  std::vector<std::size_t> breaks_;
};

class TrackingSax {
 public:
  TrackingSax(Document& doc, const LineIndex& lines, const char* base, const char** furthest)
      : doc_(doc), dom_(doc.value, false), lines_(lines), base_(base), furthest_(furthest) {}

  bool null() { return scalar([&] { return dom_.null(); }); }
  bool boolean(bool v) { return scalar([&] { return dom_.boolean(v); }); }
  bool number_integer(json::number_integer_t v) { return scalar([&] { return dom_.number_integer(v); }); }
  bool number_unsigned(json::number_unsigned_t v) { return scalar([&] { return dom_.number_unsigned(v); }); }
  bool number_float(json::number_float_t v, const json::string_t& s) {
    return scalar([&] { return dom_.number_float(v, s); });
  }
  bool string(json::string_t& v) { return scalar([&] { return dom_.string(v); }); }
  bool binary(json::binary_t& v) { return scalar([&] { return dom_.binary(v); }); }
  bool start_object(std::size_t n) {
    begin_value();
    frames_.push_back({false, 0, {}});
    return dom_.start_object(n);
  }
  bool key(json::string_t& k) {
    frames_.back().key = k;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    end_value();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    begin_value();
    frames_.push_back({true, 0, {}});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    end_value();
    return dom_.end_array();
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    std::size_t at = position == 0 ? 0 : position - 1;
    std::string msg = ex.what();
    // Drop the library's own "[json.exception.parse_error.101] parse error at line..." prefix.
    if (auto colon = msg.find(": "); colon != std::string::npos && msg.rfind("[json.exception", 0) == 0)
      msg = msg.substr(colon + 2);
    throw SyntaxError(lines_.line_at(at), lines_.column_at(at), msg);
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };

  template <class F>
  bool scalar(F f) {
    begin_value();
    end_value();
    return f();
  }
  void begin_value() {
    std::string path;
    for (const auto& fr : frames_) path += "/" + (fr.array ? std::to_string(fr.index) : escape_token(fr.key));
    doc_.lines[path] = lines_.token_line(static_cast<std::size_t>(*furthest_ - base_));
  }
  void end_value() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }

  Document& doc_;
  nlohmann::detail::json_sax_dom_parser<json> dom_;
  const LineIndex& lines_;
  const char* base_;
  const char** furthest_;
  std::vector<Frame> frames_;
};

}  // namespace

int Document::line_of(std::string pointer) const {
  for (;;) {
    if (auto it = lines.find(pointer); it != lines.end()) return it->second;
    if (pointer.empty()) return 1;
    pointer.erase(pointer.rfind('/'));
  }
}

Document parse_document(const std::string& text) {
  Document doc;
  LineIndex lines(text);
  const char* base = text.data();
  const char* furthest = base;
  TrackingSax sax(doc, lines, base, &furthest);
  TrackingIter first{base, &furthest}, last{base + text.size(), &furthest};
  json::sax_parse(first, last, &sax);
  return doc;
}

}  // namespace stab::io
