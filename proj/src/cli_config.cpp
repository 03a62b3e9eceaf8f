#include <cctype>
#include <fstream>
#include <sstream>

#include "cr3kit/cli.hpp"

namespace cr3kit::cli {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

class TomlLine {
 public:
  TomlLine(const std::string& text, int line) : s_(text), line_(line) {}

  json value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    json v;
    const char c = s_[pos_];
    if (c == '"') {
      v = basic_string();
    } else if (c == '\'') {
      v = literal_string();
    } else if (c == '[') {
      v = array();
    } else {
      v = bare();
    }
    return v;
  }

  void finish() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != '#') fail("unexpected text after value");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("TOML line " + std::to_string(line_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  std::string basic_string() {
    std::string out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string literal_string() {
    const std::size_t end = s_.find('\'', pos_ + 1);
    if (end == std::string::npos) fail("unterminated string");
    std::string out = s_.substr(pos_ + 1, end - pos_ - 1);
    pos_ = end + 1;
    return out;
  }

  json array() {
    json arr = json::array();
    ++pos_;
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ']') {
        ++pos_;
        return arr;
      }
      arr.push_back(value());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
    }
  }

  json bare() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    const std::string tok = s_.substr(start, pos_ - start);
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::string digits;
    for (char c : tok) {
      if (c != '_') digits += c;
    }
    try {
      std::size_t used = 0;
      if (digits.find_first_of(".eE") == std::string::npos) {
        const long long v = std::stoll(digits, &used);
        if (used == digits.size()) return v;
      } else {
        const double v = std::stod(digits, &used);
        if (used == digits.size()) return v;
      }
    } catch (const std::exception&) {
    }
    fail("cannot read value '" + tok + "'");
  }

  std::string s_;
  int line_;
  std::size_t pos_ = 0;
};

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

std::string expr_of(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw ConfigError("'" + key + "' must be an expression string");
}

}  // namespace

json parse_toml_subset(const std::string& text) {
  json root = json::object();
  json* table = &root;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s[0] == '[') {
      const std::size_t close = s.find(']');
      const std::string name = close == std::string::npos ? "" : trim(s.substr(1, close - 1));
      if (!valid_key(name)) {
        throw ConfigError("TOML line " + std::to_string(line) + ": bad table header");
      }
      if (root.contains(name)) {
        throw ConfigError("TOML line " + std::to_string(line) + ": duplicate table " + name);
      }
      root[name] = json::object();
      table = &root[name];
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("TOML line " + std::to_string(line) + ": expected key = value");
    }
    std::string key = trim(s.substr(0, eq));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') {
      key = key.substr(1, key.size() - 2);
    } else if (!valid_key(key)) {
      throw ConfigError("TOML line " + std::to_string(line) + ": unsupported key '" + key + "'");
    }
    if (table->contains(key)) {
      throw ConfigError("TOML line " + std::to_string(line) + ": duplicate key " + key);
    }
    TomlLine value(s.substr(eq + 1), line);
    (*table)[key] = value.value();
    value.finish();
  }
  return root;
}

json load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  const bool toml = ends_with(".toml");
  if (!toml) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      if (ends_with(".json")) throw ConfigError(std::string("JSON config: ") + e.what());
    }
  }
  return parse_toml_subset(text);
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be an object");
  static const char* known[] = {"model", "u", "A", "connection", "fiber_len", "deformation",
                                "tolerances"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig cfg;
  try {
    if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
    if (j.contains("u")) cfg.u = expr_of(j.at("u"), "u");
    if (j.contains("A")) {
      const json& a = j.at("A");
      if (!a.is_array() || a.size() != 2) throw ConfigError("'A' must be [Ax, Ay]");
      cfg.a = std::array<std::string, 2>{expr_of(a[0], "A"), expr_of(a[1], "A")};
    }
    if (j.contains("connection")) cfg.connection = j.at("connection").get<std::string>();
    if (j.contains("fiber_len")) cfg.fiber_len = j.at("fiber_len").get<double>();
    if (j.contains("deformation")) {
      const json& d = j.at("deformation");
      DeformSpec spec;
      spec.kind = d.at("kind").get<std::string>();
      if (d.contains("c")) spec.c = d.at("c").get<double>();
      if (d.contains("f")) spec.f = expr_of(d.at("f"), "f");
      if (d.contains("sigma")) spec.sigma = expr_of(d.at("sigma"), "sigma");
      cfg.deformation = spec;
    }
    if (j.contains("tolerances")) {
      for (const auto& [name, v] : j.at("tolerances").items()) {
        const double tol = v.get<double>();
        if (!(tol >= 0.0)) throw ConfigError("tolerance for '" + name + "' must be non-negative");
        cfg.tolerances[name] = tol;
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.a && cfg.connection) throw ConfigError("give either 'A' or 'connection', not both");
  return cfg;
}

SasakiChart build_chart(const RunConfig& cfg) {
  std::optional<ConnectionForm> conn;
  if (cfg.a) conn = ConnectionForm{parse_field((*cfg.a)[0]), parse_field((*cfg.a)[1])};
  if (cfg.connection) {
    const OneFormExpr form = parse_one_form(*cfg.connection);
    conn = ConnectionForm{form.dx, form.dy};
  }
  std::string tag = cfg.model;
  if (cfg.u) {
    if (tag.rfind("custom", 0) != 0 && !conn) {
      // A new conformal factor on a catalog model keeps the catalog potential.
      conn = build_model(tag, std::nullopt, cfg.fiber_len).conn;
    }
    tag = "custom:" + *cfg.u;
  } else if (tag == "custom") {
    throw ConfigError("model 'custom' needs a conformal factor 'u'");
  }
  return build_model(tag, conn, cfg.fiber_len);
}

}  // namespace cr3kit::cli
