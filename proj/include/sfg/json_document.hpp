#pragma once

#include "json.hpp"

#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>

namespace sfg::json {

using Json = nlohmann::ordered_json;

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Line/column of every JSON pointer in a text, found by a light token scan.
/// Object members map to the position of their key.
class SourceMap {
 public:
  SourceMap() = default;
  explicit SourceMap(std::string_view text);

  Location find(const std::string& pointer) const;

 private:
  std::unordered_map<std::string, Location> positions_;
};

/// Parsed JSON text plus its source map. Every failure is reported as a
/// ScenarioError carrying the given stage and the offending line.
class Document {
 public:
  Document(const std::string& text, std::string stage);

  const Json& root() const { return root_; }
  const std::string& stage() const { return stage_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const;

  /// Rejects members outside `allowed` and requires those in `required`.
  void check_keys(const Json& object, const std::string& pointer,
                  std::initializer_list<std::string_view> allowed,
                  std::initializer_list<std::string_view> required = {}) const;

  const Json& member(const Json& object, const std::string& pointer, const std::string& key) const;
  double number(const Json& object, const std::string& pointer, const std::string& key) const;
  double number_or(const Json& object, const std::string& pointer, const std::string& key,
                   double fallback) const;
  std::int64_t integer(const Json& object, const std::string& pointer, const std::string& key) const;
  std::int64_t integer_or(const Json& object, const std::string& pointer, const std::string& key,
                          std::int64_t fallback) const;
  std::string text(const Json& object, const std::string& pointer, const std::string& key) const;
  std::string text_or(const Json& object, const std::string& pointer, const std::string& key,
                      const std::string& fallback) const;
  bool boolean_or(const Json& object, const std::string& pointer, const std::string& key,
                  bool fallback) const;

 private:
  std::string stage_;
  Json root_;
  SourceMap map_;
};

std::string escape_pointer_token(std::string_view token);

}  // namespace sfg::json
