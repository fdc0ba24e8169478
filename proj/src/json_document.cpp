#include "sfg/json_document.hpp"

#include "sfg/error.hpp"

#include <algorithm>
#include <vector>

namespace sfg::json {

std::string escape_pointer_token(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

namespace {

struct Frame {
  bool object = false;
  std::string path;
  std::size_t index = 0;
  bool expect_key = true;
  std::string key;
};

}  // namespace

SourceMap::SourceMap(std::string_view text) {
  std::vector<Frame> stack;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;

  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  auto current_path = [&]() -> std::string {
    if (stack.empty()) return "";
    const auto& top = stack.back();
    return top.path + "/" + (top.object ? escape_pointer_token(top.key) : std::to_string(top.index));
  };
  auto record = [&](const std::string& path, Location at) { positions_.try_emplace(path, at); };

  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    const Location here{line, column};
    if (c == '{' || c == '[') {
      const auto path = current_path();
      record(path, here);
      stack.push_back(Frame{c == '{', path, 0, true, {}});
      advance();
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
      advance();
    } else if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object)
          stack.back().expect_key = true;
        else
          ++stack.back().index;
      }
      advance();
    } else if (c == ':') {
      if (!stack.empty()) stack.back().expect_key = false;
      advance();
    } else if (c == '"') {
      std::string value;
      advance();
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) {
          advance();
          value += text[i];
        } else {
          value += text[i];
        }
        advance();
      }
      if (i < text.size()) advance();
      if (!stack.empty() && stack.back().object && stack.back().expect_key) {
        stack.back().key = value;
        record(current_path(), here);
      } else {
        record(current_path(), here);
      }
    } else {
      record(current_path(), here);
      while (i < text.size() && std::string_view(",:]} \t\r\n").find(text[i]) == std::string_view::npos)
        advance();
    }
  }
}

Location SourceMap::find(const std::string& pointer) const {
  // Fall back to the nearest recorded ancestor.
  std::string p = pointer;
  while (true) {
    if (auto it = positions_.find(p); it != positions_.end()) return it->second;
    if (p.empty()) return {};
    p.erase(p.rfind('/'));
  }
}

namespace {

Location offset_to_location(const std::string& text, std::size_t offset) {
  Location at{1, 1};
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++at.line;
      at.column = 1;
    } else {
      ++at.column;
    }
  }
  return at;
}

const char* type_name(const Json& j) { return j.type_name(); }

}  // namespace

Document::Document(const std::string& text, std::string stage) : stage_(std::move(stage)) {
  try {
    root_ = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    const auto at = offset_to_location(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ScenarioError("invalid JSON: " + what, at.line, at.column, stage_);
  }
  map_ = SourceMap(text);
}

void Document::fail(const std::string& pointer, const std::string& what) const {
  const auto at = map_.find(pointer);
  const std::string where = pointer.empty() ? "document root" : pointer;
  throw ScenarioError(where + ": " + what, at.line, at.column, stage_);
}

void Document::check_keys(const Json& object, const std::string& pointer,
                          std::initializer_list<std::string_view> allowed,
                          std::initializer_list<std::string_view> required) const {
  if (!object.is_object()) fail(pointer, std::string("expected an object, found ") + type_name(object));
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(pointer + "/" + escape_pointer_token(key), "unknown key '" + key + "'");
  }
  for (auto key : required) {
    if (!object.contains(std::string(key))) fail(pointer, "missing required key '" + std::string(key) + "'");
  }
}

const Json& Document::member(const Json& object, const std::string& pointer, const std::string& key) const {
  if (!object.contains(key)) fail(pointer, "missing required key '" + key + "'");
  return object.at(key);
}

double Document::number(const Json& object, const std::string& pointer, const std::string& key) const {
  const auto& value = member(object, pointer, key);
  if (!value.is_number()) fail(pointer + "/" + escape_pointer_token(key), "expected a number");
  return value.get<double>();
}

double Document::number_or(const Json& object, const std::string& pointer, const std::string& key,
                           double fallback) const {
  return object.contains(key) ? number(object, pointer, key) : fallback;
}

std::int64_t Document::integer(const Json& object, const std::string& pointer, const std::string& key) const {
  const auto& value = member(object, pointer, key);
  if (!value.is_number_integer()) fail(pointer + "/" + escape_pointer_token(key), "expected an integer");
  return value.get<std::int64_t>();
}

std::int64_t Document::integer_or(const Json& object, const std::string& pointer, const std::string& key,
                                  std::int64_t fallback) const {
  return object.contains(key) ? integer(object, pointer, key) : fallback;
}

std::string Document::text(const Json& object, const std::string& pointer, const std::string& key) const {
  const auto& value = member(object, pointer, key);
  if (!value.is_string()) fail(pointer + "/" + escape_pointer_token(key), "expected a string");
  return value.get<std::string>();
}

std::string Document::text_or(const Json& object, const std::string& pointer, const std::string& key,
                              const std::string& fallback) const {
  return object.contains(key) ? text(object, pointer, key) : fallback;
}

bool Document::boolean_or(const Json& object, const std::string& pointer, const std::string& key,
                          bool fallback) const {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_boolean()) fail(pointer + "/" + escape_pointer_token(key), "expected true or false");
  return value.get<bool>();
}

}  // namespace sfg::json
