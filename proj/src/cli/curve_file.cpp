#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "zetadist/cli.hpp"

namespace zetadist::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& msg) { fail(ErrorKind::ParseError, msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

json toml_scalar(std::string_view v, int line_no) {
  v = trim(v);
  const std::string where = " on line " + std::to_string(line_no);
  if (v.empty()) parse_fail("missing value" + where);
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') parse_fail("unterminated string" + where);
    return std::string(v.substr(1, v.size() - 2));
  }
  std::string digits;
  for (char c : v) {
    if (c != '_') digits.push_back(c);
  }
  std::int64_t value = 0;
  const char* first = digits.data();
  if (!digits.empty() && digits.front() == '+') ++first;
  const char* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) parse_fail("expected an integer or string" + where);
  return value;
}

json toml_value(std::string_view v, int line_no) {
  v = trim(v);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') parse_fail("unterminated array on line " + std::to_string(line_no));
    json arr = json::array();
    std::string_view body = trim(v.substr(1, v.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto item = trim(body.substr(0, comma));
      if (!item.empty()) arr.push_back(toml_scalar(item, line_no));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    return arr;
  }
  return toml_scalar(v, line_no);
}

// Enough TOML for the flat curve schema: key = value pairs, one level of
// [table] headers, integer/string scalars and single-line integer arrays.
json parse_toml(std::string_view text) {
  json root = json::object();
  json* table = &root;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail("bad table header on line " + std::to_string(line_no));
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty() || root.contains(name)) {
        parse_fail("bad or repeated table on line " + std::to_string(line_no));
      }
      root[name] = json::object();
      table = &root[name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail("expected key = value on line " + std::to_string(line_no));
    std::string key(trim(line.substr(0, eq)));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
    if (key.empty() || table->contains(key)) {
      parse_fail("bad or repeated key on line " + std::to_string(line_no));
    }
    (*table)[key] = toml_value(line.substr(eq + 1), line_no);
  }
  return root;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) parse_fail("unknown key '" + key + "' in " + where);
  }
}

std::int64_t get_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) parse_fail(std::string("missing key '") + key + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number_integer()) parse_fail(std::string("key '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

CurveFile parse_curve(std::string_view text, bool toml) {
  json doc;
  if (toml) {
    doc = parse_toml(text);
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      parse_fail(std::string("invalid JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) parse_fail("curve spec must be an object");
  reject_unknown(doc, {"p", "model", "coeffs"}, "curve spec");
  const std::int64_t p = get_int(doc, "p", "curve spec");
  if (!doc.contains("model") || !doc["model"].is_string()) parse_fail("missing string key 'model'");
  const auto model = doc["model"].get<std::string>();
  if (!doc.contains("coeffs") || !doc["coeffs"].is_object()) parse_fail("missing table 'coeffs'");
  const json& coeffs = doc["coeffs"];
  if (p < 2) fail(ErrorKind::NotPrime, "p must be a prime");

  json echo = json::object();
  echo["p"] = p;
  echo["model"] = model;
  const FieldSpec base = make_field(static_cast<std::uint64_t>(p), 1);
  if (model == "elliptic") {
    reject_unknown(coeffs, {"a", "b"}, "coeffs");
    const std::int64_t a = get_int(coeffs, "a", "coeffs");
    const std::int64_t b = get_int(coeffs, "b", "coeffs");
    echo["coeffs"] = json{{"a", a}, {"b", b}};
    auto curve = CurveSpec::elliptic(base, a, b);
    validate(curve);
    return CurveFile{std::move(curve), std::move(echo)};
  }
  if (model == "hyperelliptic2") {
    reject_unknown(coeffs, {"f"}, "coeffs");
    if (!coeffs.contains("f") || !coeffs["f"].is_array()) parse_fail("coeffs.f must be an array");
    std::vector<std::int64_t> f;
    for (const auto& c : coeffs["f"]) {
      if (!c.is_number_integer()) parse_fail("coeffs.f entries must be integers");
      f.push_back(c.get<std::int64_t>());
    }
    echo["coeffs"] = json{{"f", f}};
    auto curve = CurveSpec::hyperelliptic(base, f);
    validate(curve);
    return CurveFile{std::move(curve), std::move(echo)};
  }
  parse_fail("model must be \"elliptic\" or \"hyperelliptic2\"");
}

CurveFile load_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read curve file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
  return parse_curve(buf.str(), toml);
}

}  // namespace zetadist::cli
