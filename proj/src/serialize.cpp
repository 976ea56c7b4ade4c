#include "twogrp/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace twogrp {

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_error(where, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_error(where, "expected an array");
  return j;
}

std::vector<std::int64_t> int_array(const Json& j, const std::string& where) {
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < array(j, where).size(); ++k)
    out.push_back(integer(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

}  // namespace

Json to_json(const AbelianGroup& a) { return Json{{"invariant_factors", a.invariant_factors()}}; }

Json to_json(const AbElement& x) { return Json(x.residues); }

Json to_json(const FiniteGroup& g) {
  Json table = Json::array();
  const auto n = static_cast<Elem>(g.order());
  for (Elem x = 0; x < n; ++x) {
    Json row = Json::array();
    for (Elem y = 0; y < n; ++y) row.push_back(g.mul(x, y));
    table.push_back(std::move(row));
  }
  return Json{{"name", g.name()}, {"order", g.order()}, {"table", std::move(table)}};
}

Json to_json(const Cochain& c) {
  // Build the nested array from the innermost level outwards.
  std::vector<Json> level;
  for (std::size_t t = 0; t < c.tuple_count(); ++t) level.push_back(to_json(c.at_index(t)));
  const std::size_t n = c.group().order();
  for (std::size_t d = 0; d < c.degree(); ++d) {
    std::vector<Json> up;
    for (std::size_t k = 0; k < level.size(); k += n)
      up.emplace_back(Json(std::vector<Json>(level.begin() + k, level.begin() + k + n)));
    level = std::move(up);
  }
  return Json{{"group", to_json(c.group())},
              {"coeffs", to_json(c.coeffs())},
              {"degree", c.degree()},
              {"values", level.front()}};
}

Json to_json(const TruncatedSSet& s) {
  Json faces = Json::object(), degens = Json::object();
  for (std::size_t n = 1; n <= s.truncation(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      faces[std::to_string(n) + "," + std::to_string(i)] = s.face_table(n, i);
  for (std::size_t n = 0; n < s.truncation(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      degens[std::to_string(n) + "," + std::to_string(i)] = s.degeneracy_table(n, i);
  return Json{{"truncation", s.truncation()},
              {"levels", s.level_sizes()},
              {"faces", std::move(faces)},
              {"degeneracies", std::move(degens)}};
}

AbelianGroup coeffs_from_json(const Json& j) {
  return AbelianGroup(int_array(field(j, "invariant_factors", "coeffs"), "coeffs.invariant_factors"));
}

FiniteGroup group_from_json(const Json& j) {
  if (j.is_string()) return group_construct(j.get<std::string>());
  const Json& name = field(j, "name", "group");
  if (!name.is_string()) parse_error("group.name", "expected a string");
  const std::int64_t order = integer(field(j, "order", "group"), "group.order");
  const Json& rows = array(field(j, "table", "group"), "group.table");
  if (order < 1 || rows.size() != static_cast<std::size_t>(order)) {
    parse_error("group.table", "expected " + std::to_string(order) + " rows");
  }
  std::vector<std::vector<std::int64_t>> table;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "group.table[" + std::to_string(r) + "]";
    table.push_back(int_array(rows[r], where));
    if (table.back().size() != rows.size()) parse_error(where, "row has the wrong length");
  }
  return group_from_table(table, name.get<std::string>());
}

Cochain cochain_from_json(const Json& j) {
  FiniteGroup g = group_from_json(field(j, "group", "cochain"));
  AbelianGroup a = coeffs_from_json(field(j, "coeffs", "cochain"));
  const std::int64_t degree = integer(field(j, "degree", "cochain"), "cochain.degree");
  if (degree < 0 || degree > 6) parse_error("cochain.degree", "degree must lie in 0..6");
  Cochain c(g, a, static_cast<std::size_t>(degree));
  const std::size_t n = g.order();
  std::vector<Elem> args(static_cast<std::size_t>(degree));
  // Walk the nested arrays depth first; args holds the current path.
  auto walk = [&](auto&& self, const Json& node, std::size_t depth, const std::string& where) -> void {
    if (depth == args.size()) {
      const auto residues = int_array(node, where);
      AbElement x{residues};
      if (!a.contains(x)) parse_error(where, "not a reduced element of " + a.describe());
      c.set(args, x);
      return;
    }
    if (array(node, where).size() != n) {
      parse_error(where, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      args[depth] = static_cast<Elem>(k);
      self(self, node[k], depth + 1, where + "[" + std::to_string(k) + "]");
    }
  };
  walk(walk, field(j, "values", "cochain"), 0, "cochain.values");
  return c;
}

TruncatedSSet sset_from_json(const Json& j) {
  const std::int64_t top = integer(field(j, "truncation", "sset"), "sset.truncation");
  if (top < 0 || top > 8) parse_error("sset.truncation", "truncation must lie in 0..8");
  const auto levels = int_array(field(j, "levels", "sset"), "sset.levels");
  if (levels.size() != static_cast<std::size_t>(top) + 1) {
    parse_error("sset.levels", "expected one size per level");
  }
  std::vector<std::size_t> sizes;
  for (auto v : levels) {
    if (v < 1) parse_error("sset.levels", "level sizes must be positive");
    if (static_cast<std::size_t>(v) > kMaxLevelCells) {
      throw Error(ErrorCode::SizeBound, "sset level larger than " + std::to_string(kMaxLevelCells));
    }
    sizes.push_back(static_cast<std::size_t>(v));
  }
  auto read_tables = [&](const char* key, std::size_t first, std::size_t last) {
    const Json& obj = field(j, key, "sset");
    if (!obj.is_object()) parse_error(std::string("sset.") + key, "expected an object");
    std::vector<std::vector<TruncatedSSet::Table>> out;
    for (std::size_t n = first; n <= last && n <= static_cast<std::size_t>(top); ++n) {
      std::vector<TruncatedSSet::Table> row;
      for (std::size_t i = 0; i <= n; ++i) {
        const std::string name = std::to_string(n) + "," + std::to_string(i);
        const std::string where = std::string("sset.") + key + "." + name;
        TruncatedSSet::Table t;
        for (auto v : int_array(field(obj, name.c_str(), std::string("sset.") + key), where)) {
          if (v < 0) parse_error(where, "negative cell index");
          t.push_back(static_cast<Cell>(v));
        }
        row.push_back(std::move(t));
      }
      out.push_back(std::move(row));
    }
    return out;
  };
  auto faces = read_tables("faces", 1, static_cast<std::size_t>(top));
  auto degens = top > 0 ? read_tables("degeneracies", 0, static_cast<std::size_t>(top) - 1)
                        : std::vector<std::vector<TruncatedSSet::Table>>{};
  return TruncatedSSet(static_cast<std::size_t>(top), std::move(sizes), std::move(faces),
                       std::move(degens));
}

AbelianGroup coeffs_from_spec(const std::string& raw) {
  std::string spec = trim(raw);
  if (spec == "trivial" || spec == "[]") return AbelianGroup();
  if (spec.size() >= 2 && spec.front() == '[' && spec.back() == ']') {
    spec = spec.substr(1, spec.size() - 2);
  }
  std::vector<std::int64_t> factors;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty() || item.size() > 9 ||
        !std::all_of(item.begin(), item.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      throw Error(ErrorCode::UnsupportedSpec, "bad coefficient spec '" + raw + "'");
    }
    factors.push_back(std::stoll(item));
  }
  if (factors.empty()) throw Error(ErrorCode::UnsupportedSpec, "empty coefficient spec");
  return AbelianGroup(std::move(factors));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n');
    const auto nl = text.rfind('\n', at == 0 ? 0 : at - 1);
    const std::size_t col = nl == std::string::npos ? at + 1 : at - nl;
    throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line) + ":" +
                                           std::to_string(col) + ": invalid JSON");
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace twogrp
