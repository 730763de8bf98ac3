// Copyright 2026 The torlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "torlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "torlab/errors.hpp"

namespace torlab {

namespace {

struct Value {
  enum Kind { kInt, kFloat, kString, kBool, kArray } kind = kInt;
  std::int64_t i = 0;
  double d = 0;
  std::string s;
  bool b = false;
  std::vector<Value> items;
};

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::kValidation, where + ": " + what);
}

class Parser {
 public:
  Parser(std::string_view text, int line) : t_(text), line_(line) {}

  Value value() {
    skip();
    if (pos_ >= t_.size()) syntax("missing value");
    char c = t_[pos_];
    if (c == '[') return array();
    if (c == '"') return string();
    if (t_.substr(pos_, 4) == "true") {
      pos_ += 4;
      Value v;
      v.kind = Value::kBool;
      v.b = true;
      return v;
    }
    if (t_.substr(pos_, 5) == "false") {
      pos_ += 5;
      Value v;
      v.kind = Value::kBool;
      return v;
    }
    return number();
  }

  void finish() {
    skip();
    if (pos_ != t_.size()) syntax("unexpected trailing text");
  }

 private:
  void skip() {
    while (pos_ < t_.size()) {
      char c = t_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void syntax(const std::string& what) {
    bad("line " + std::to_string(line_), what);
  }

  Value array() {
    Value v;
    v.kind = Value::kArray;
    ++pos_;
    for (;;) {
      skip();
      if (pos_ >= t_.size()) syntax("unterminated array");
      if (t_[pos_] == ']') {
        ++pos_;
        return v;
      }
      v.items.push_back(value());
      skip();
      if (pos_ < t_.size() && t_[pos_] == ',') ++pos_;
      else if (pos_ < t_.size() && t_[pos_] != ']') syntax("expected ',' or ']' in array");
    }
  }

  Value string() {
    Value v;
    v.kind = Value::kString;
    ++pos_;
    while (pos_ < t_.size() && t_[pos_] != '"') {
      char c = t_[pos_++];
      if (c == '\\' && pos_ < t_.size()) {
        char e = t_[pos_++];
        c = e == 'n' ? '\n' : e == 't' ? '\t' : e;
      }
      v.s.push_back(c);
    }
    if (pos_ >= t_.size()) syntax("unterminated string");
    ++pos_;
    return v;
  }

  Value number() {
    std::size_t end = pos_;
    while (end < t_.size() && std::string_view("+-0123456789.eE_").find(t_[end]) != std::string_view::npos)
      ++end;
    std::string tok;
    for (std::size_t k = pos_; k < end; ++k)
      if (t_[k] != '_') tok.push_back(t_[k]);
    if (tok.empty()) syntax("unrecognised value");
    const char* first = tok.c_str() + (tok[0] == '+' ? 1 : 0);
    const char* last = tok.c_str() + tok.size();
    Value v;
    if (tok.find_first_of(".eE") == std::string::npos) {
      auto [p, ec] = std::from_chars(first, last, v.i);
      if (ec != std::errc() || p != last) syntax("bad integer '" + tok + "'");
    } else {
      v.kind = Value::kFloat;
      auto [p, ec] = std::from_chars(first, last, v.d);
      if (ec != std::errc() || p != last) syntax("bad number '" + tok + "'");
    }
    pos_ = end;
    return v;
  }

  std::string_view t_;
  std::size_t pos_ = 0;
  int line_;
};

int bracket_balance(std::string_view line) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (in_string) {
      if (c == '\\') ++k;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      break;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    }
  }
  return depth;
}

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

using Table = std::map<std::string, Value>;

Table parse_table(std::string_view text) {
  Table out;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    if (body[0] == '[') {
      std::size_t close = body.find(']');
      if (close == std::string::npos) bad("line " + std::to_string(lineno), "unterminated section");
      section = trim(std::string_view(body).substr(1, close - 1));
      if (section.empty()) bad("line " + std::to_string(lineno), "empty section name");
      std::string rest = trim(std::string_view(body).substr(close + 1));
      if (!rest.empty() && rest[0] != '#')
        bad("line " + std::to_string(lineno), "text after section header");
      continue;
    }
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) bad("line " + std::to_string(lineno), "expected key = value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) bad("line " + std::to_string(lineno), "missing key");
    std::string rhs = body.substr(eq + 1);
    const int start = lineno;
    int depth = bracket_balance(rhs);
    while (depth > 0 && std::getline(in, line)) {
      ++lineno;
      rhs += "\n" + line;
      depth += bracket_balance(line);
    }
    Parser p(rhs, start);
    Value v = p.value();
    p.finish();
    std::string path = section.empty() ? key : section + "." + key;
    if (!out.emplace(path, std::move(v)).second) bad(path, "duplicate key");
  }
  return out;
}

class Reader {
 public:
  explicit Reader(Table t) : t_(std::move(t)) {}

  const Value* find(const std::string& path) {
    auto it = t_.find(path);
    if (it == t_.end()) return nullptr;
    used_.insert(path);
    return &it->second;
  }

  std::int64_t integer(const std::string& path, std::int64_t fallback) {
    const Value* v = find(path);
    if (!v) return fallback;
    if (v->kind != Value::kInt) bad(path, "expected an integer");
    return v->i;
  }

  std::size_t count(const std::string& path, std::size_t fallback) {
    std::int64_t v = integer(path, static_cast<std::int64_t>(fallback));
    if (v < 0) bad(path, "must be non-negative");
    return static_cast<std::size_t>(v);
  }

  double real(const std::string& path, double fallback) {
    const Value* v = find(path);
    if (!v) return fallback;
    if (v->kind == Value::kInt) return static_cast<double>(v->i);
    if (v->kind != Value::kFloat) bad(path, "expected a number");
    return v->d;
  }

  std::string text(const std::string& path, const std::string& fallback) {
    const Value* v = find(path);
    if (!v) return fallback;
    if (v->kind != Value::kString) bad(path, "expected a string");
    return v->s;
  }

  bool flag(const std::string& path, bool fallback) {
    const Value* v = find(path);
    if (!v) return fallback;
    if (v->kind != Value::kBool) bad(path, "expected true or false");
    return v->b;
  }

  std::vector<std::string> decimals(const std::string& path, const Value& v) {
    if (v.kind != Value::kArray) bad(path, "expected an array of decimal strings");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < v.items.size(); ++k) {
      const Value& e = v.items[k];
      std::string where = path + "[" + std::to_string(k) + "]";
      if (e.kind != Value::kString) bad(where, "coordinates are decimal strings");
      try {
        (void)decimal_to_fixed(e.s, 64);
      } catch (const Error&) {
        bad(where, "not a decimal number: '" + e.s + "'");
      }
      out.push_back(e.s);
    }
    return out;
  }

  std::vector<std::int64_t> ints(const std::string& path, const Value& v) {
    if (v.kind != Value::kArray) bad(path, "expected an array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t k = 0; k < v.items.size(); ++k) {
      if (v.items[k].kind != Value::kInt)
        bad(path + "[" + std::to_string(k) + "]", "expected an integer");
      out.push_back(v.items[k].i);
    }
    return out;
  }

  // Matrix construction errors (singular, too large) carry the section.
  std::optional<IntMatrix> matrix(const std::string& section) {
    try {
      return matrix_body(section);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kValidation) throw;
      bad(section, e.what());
    }
  }

  std::optional<IntMatrix> matrix_body(const std::string& section) {
    const Value* rows = find(section + ".rows");
    const Value* entries = find(section + ".entries");
    const Value* companion = find(section + ".companion");
    const Value* dimv = find(section + ".dim");
    int given = (rows != nullptr) + (entries != nullptr) + (companion != nullptr);
    if (given == 0) {
      if (dimv) bad(section, "dim given without rows, entries or companion");
      return std::nullopt;
    }
    if (given > 1) bad(section, "give exactly one of rows, entries, companion");
    std::optional<std::size_t> dim;
    if (dimv) {
      if (dimv->kind != Value::kInt || dimv->i < 1) bad(section + ".dim", "expected a positive integer");
      dim = static_cast<std::size_t>(dimv->i);
    }
    if (rows) {
      const std::string path = section + ".rows";
      if (rows->kind != Value::kArray || rows->items.empty()) bad(path, "expected a list of integer rows");
      std::size_t d = dim.value_or(rows->items.size());
      if (rows->items.size() != d)
        bad(path, "expected " + std::to_string(d) + " rows, found " + std::to_string(rows->items.size()));
      std::vector<std::int64_t> e;
      for (std::size_t r = 0; r < d; ++r) {
        std::string where = path + "[" + std::to_string(r) + "]";
        std::vector<std::int64_t> row = ints(where, rows->items[r]);
        if (row.size() != d)
          bad(where, "expected " + std::to_string(d) + " entries for dim " + std::to_string(d) +
                         ", found " + std::to_string(row.size()));
        e.insert(e.end(), row.begin(), row.end());
      }
      return IntMatrix(d, std::move(e));
    }
    if (entries) {
      const std::string path = section + ".entries";
      std::vector<std::int64_t> e = ints(path, *entries);
      if (!dim) bad(section + ".dim", "required with entries");
      if (e.size() != *dim * *dim)
        bad(path, "expected " + std::to_string(*dim * *dim) + " entries for dim " +
                      std::to_string(*dim) + ", found " + std::to_string(e.size()));
      return IntMatrix(*dim, std::move(e));
    }
    const std::string path = section + ".companion";
    std::vector<std::int64_t> c = ints(path, *companion);
    if (c.empty()) bad(path, "expected the low coefficients of a monic polynomial");
    if (dim && *dim != c.size())
      bad(path, "expected " + std::to_string(*dim) + " coefficients, found " + std::to_string(c.size()));
    return IntMatrix::companion(c);
  }

  void reject_unused() {
    for (const auto& [path, v] : t_)
      if (!used_.count(path)) bad(path, "unknown key");
  }

 private:
  Table t_;
  std::set<std::string> used_;
};

std::string number_text(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string string_list(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + quoted(v[k]);
  return out + "]";
}

std::string rows_text(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.dim(); ++j) out += (j ? ", " : "") + std::to_string(m.at(i, j));
    out += "]";
  }
  return out + "]";
}

}  // namespace

std::size_t ExperimentConfig::dim() const {
  if (s_matrix) return s_matrix->dim();
  if (t_matrix) return t_matrix->dim();
  return 0;
}

ConstructionConfig ExperimentConfig::construction(std::uint64_t draw_seed) const {
  ConstructionConfig c;
  if (s_matrix) c.s_matrix = *s_matrix;
  if (t_matrix) c.t_matrix = *t_matrix;
  c.targets = targets;
  c.rounds = game.rounds;
  c.horizon_s = horizons.equidist;
  c.horizon_t = horizons.avoid;
  c.box = horizons.box;
  c.alpha = game.alpha;
  c.beta = game.beta;
  c.rho = game.rho;
  c.seed = draw_seed;
  c.bob = game.bob;
  c.max_attempts = attempts;
  if (precision) c.precision = precision;
  c.zero_offset = zero_offset;
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  Reader r(parse_table(text));
  ExperimentConfig c;
  c.id = r.text("experiment.id", c.id);
  std::int64_t seed = r.integer("experiment.seed", 1);
  if (seed < 0) bad("experiment.seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.samples = r.count("experiment.samples", c.samples);
  c.precision = static_cast<unsigned>(r.count("experiment.precision", 0));
  c.s_matrix = r.matrix("matrix.S");
  c.t_matrix = r.matrix("matrix.T");
  c.game.rounds = r.count("game.rounds", c.game.rounds);
  c.game.alpha = r.real("game.alpha", c.game.alpha);
  c.game.beta = r.real("game.beta", c.game.beta);
  c.game.rho = r.real("game.rho", c.game.rho);
  std::string bob = r.text("game.bob", to_string(c.game.bob));
  try {
    c.game.bob = bob_kind_from_string(bob);
  } catch (const Error&) {
    bad("game.bob", "expected stationary, random or greedy, found '" + bob + "'");
  }
  if (const Value* pts = r.find("target.points")) {
    if (pts->kind != Value::kArray) bad("target.points", "expected a list of points");
    for (std::size_t k = 0; k < pts->items.size(); ++k)
      c.targets.push_back(r.decimals("target.points[" + std::to_string(k) + "]", pts->items[k]));
  }
  c.horizons.equidist = r.count("horizons.equidist", c.horizons.equidist);
  c.horizons.avoid = r.count("horizons.avoid", c.horizons.avoid);
  c.horizons.box = static_cast<int>(r.integer("horizons.box", c.horizons.box));
  c.entropy.orbit = r.count("entropy.orbit", c.entropy.orbit);
  if (const Value* st = r.find("entropy.start")) c.entropy.start = r.decimals("entropy.start", *st);
  c.dimension.source = r.text("dimension.source", c.dimension.source);
  c.dimension.points = r.count("dimension.points", c.dimension.points);
  c.dimension.depth = r.count("dimension.depth", c.dimension.depth);
  c.attempts = static_cast<int>(r.integer("construct.attempts", c.attempts));
  c.zero_offset = r.flag("construct.zero_offset", c.zero_offset);
  c.certificate = r.text("verify.certificate", c.certificate);
  r.reject_unused();

  // Checks that do not depend on the command.
  if (c.samples < 1) bad("experiment.samples", "must be at least 1");
  if (c.s_matrix && c.t_matrix && c.s_matrix->dim() != c.t_matrix->dim())
    bad("matrix.T", "dimension " + std::to_string(c.t_matrix->dim()) + " differs from matrix.S (" +
                        std::to_string(c.s_matrix->dim()) + ")");
  for (const char* name : {"S", "T"}) {
    const auto& m = name[0] == 'S' ? c.s_matrix : c.t_matrix;
    if (m && m->determinant() == 0) bad(std::string("matrix.") + name, "matrix is singular");
  }
  const std::size_t d = c.dim();
  for (std::size_t k = 0; k < c.targets.size(); ++k)
    if (d && c.targets[k].size() != d)
      bad("target.points[" + std::to_string(k) + "]",
          "expected " + std::to_string(d) + " coordinates, found " + std::to_string(c.targets[k].size()));
  if (d && !c.entropy.start.empty() && c.entropy.start.size() != d)
    bad("entropy.start", "expected " + std::to_string(d) + " coordinates");
  if (c.game.rounds < 1) bad("game.rounds", "must be at least 1");
  if (!(c.game.alpha > 0 && c.game.alpha < 1)) bad("game.alpha", "must lie in (0, 1)");
  if (!(c.game.beta > 0 && c.game.beta < 1)) bad("game.beta", "must lie in (0, 1)");
  if (!(c.game.rho > 0 && c.game.rho <= 0.25)) bad("game.rho", "must lie in (0, 1/4]");
  if (c.horizons.equidist < 1) bad("horizons.equidist", "must be at least 1");
  if (c.horizons.avoid < 1) bad("horizons.avoid", "must be at least 1");
  if (c.horizons.box < 1) bad("horizons.box", "must be at least 1");
  if (c.entropy.orbit < 64) bad("entropy.orbit", "must be at least 64");
  static const std::set<std::string> sources = {"uniform", "cantor", "product", "construct"};
  if (!sources.count(c.dimension.source))
    bad("dimension.source", "expected uniform, cantor, product or construct");
  if (c.dimension.depth < 1 || c.dimension.depth > 60) bad("dimension.depth", "must lie in [1, 60]");
  if (c.attempts < 1) bad("construct.attempts", "must be at least 1");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[experiment]\n"
    << "id = " << quoted(c.id) << "\n"
    << "seed = " << c.seed << "\n"
    << "samples = " << c.samples << "\n"
    << "precision = " << c.precision << "\n";
  if (c.s_matrix) o << "\n[matrix.S]\nrows = " << rows_text(*c.s_matrix) << "\n";
  if (c.t_matrix) o << "\n[matrix.T]\nrows = " << rows_text(*c.t_matrix) << "\n";
  o << "\n[game]\n"
    << "rounds = " << c.game.rounds << "\n"
    << "alpha = " << number_text(c.game.alpha) << "\n"
    << "beta = " << number_text(c.game.beta) << "\n"
    << "rho = " << number_text(c.game.rho) << "\n"
    << "bob = " << quoted(to_string(c.game.bob)) << "\n";
  if (!c.targets.empty()) {
    o << "\n[target]\npoints = [";
    for (std::size_t k = 0; k < c.targets.size(); ++k) o << (k ? ", " : "") << string_list(c.targets[k]);
    o << "]\n";
  }
  o << "\n[horizons]\n"
    << "equidist = " << c.horizons.equidist << "\n"
    << "avoid = " << c.horizons.avoid << "\n"
    << "box = " << c.horizons.box << "\n";
  o << "\n[entropy]\norbit = " << c.entropy.orbit << "\n";
  if (!c.entropy.start.empty()) o << "start = " << string_list(c.entropy.start) << "\n";
  o << "\n[dimension]\n"
    << "source = " << quoted(c.dimension.source) << "\n"
    << "points = " << c.dimension.points << "\n"
    << "depth = " << c.dimension.depth << "\n";
  o << "\n[construct]\n"
    << "attempts = " << c.attempts << "\n"
    << "zero_offset = " << (c.zero_offset ? "true" : "false") << "\n";
  if (!c.certificate.empty()) o << "\n[verify]\ncertificate = " << quoted(c.certificate) << "\n";
  return o.str();
}

void validate_for(const ExperimentConfig& c, std::string_view command) {
  auto need_s = [&] {
    if (!c.s_matrix) bad("matrix.S", "required by '" + std::string(command) + "'");
  };
  auto need_t = [&] {
    if (!c.t_matrix) bad("matrix.T", "required by '" + std::string(command) + "'");
  };
  auto need_targets = [&] {
    if (c.targets.empty()) bad("target.points", "required by '" + std::string(command) + "'");
  };
  if (command == "classify") {
    if (!c.s_matrix && !c.t_matrix) bad("matrix.S", "classify needs matrix.S or matrix.T");
  } else if (command == "game") {
    need_t();
    need_targets();
  } else if (command == "equidist" || command == "entropy") {
    need_s();
  } else if (command == "dimension") {
    if (c.dimension.source == "construct") {
      need_s();
      need_t();
      need_targets();
    }
  } else if (command == "construct") {
    need_s();
    need_t();
    need_targets();
  } else if (command == "verify") {
    need_s();
    need_t();
    need_targets();
    if (c.certificate.empty()) bad("verify.certificate", "required by 'verify'");
  } else if (command == "report") {
  } else {
    fail(ErrorKind::kValidation, "unknown command '" + std::string(command) + "'");
  }
}

}  // namespace torlab
