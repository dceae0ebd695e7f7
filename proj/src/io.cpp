#include <threshcap/io.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace threshcap {

namespace {

using nlohmann::ordered_json;

std::string fixed_bits(double bits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", bits);
  return buf;
}

std::string sizes_str(const std::vector<long long>& sizes) {
  std::string out = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sizes[i]);
  }
  out += ")";
  return out;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) out += ";";
    out += flags[i];
  }
  return out;
}

// One line of the csv/table renderings; empty cells stay empty in csv and
// show as "-" in tables.
struct Row {
  std::string kind;
  std::string name;
  std::string direction;
  std::string count;
  std::string bits;
  std::string exact;
  std::string statement;
  std::string flags;

  std::array<const std::string*, 8> cells() const {
    return {&kind, &name, &direction, &count,
            &bits, &exact, &statement, &flags};
  }
};

constexpr std::array<const char*, 8> kHeaders = {
    "kind", "name", "direction", "count",
    "bits", "exact", "statement", "flags"};

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const std::vector<Row>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kHeaders.size(); ++i) {
    if (i) out += ',';
    out += kHeaders[i];
  }
  out += '\n';
  for (const Row& r : rows) {
    auto cells = r.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(*cells[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_table(const std::vector<Row>& rows) {
  std::array<std::size_t, 8> width{};
  for (std::size_t i = 0; i < kHeaders.size(); ++i)
    width[i] = std::string(kHeaders[i]).size();
  auto cell_text = [](const std::string& cell) {
    return cell.empty() ? std::string("-") : cell;
  };
  for (const Row& r : rows) {
    auto cells = r.cells();
    for (std::size_t i = 0; i < cells.size(); ++i)
      width[i] = std::max(width[i], cell_text(*cells[i]).size());
  }
  std::string out;
  auto append_line = [&](const std::array<std::string, 8>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += "  ";
      out += cells[i];
      if (i + 1 < cells.size())
        out.append(width[i] - cells[i].size(), ' ');
    }
    out += '\n';
  };
  std::array<std::string, 8> head;
  for (std::size_t i = 0; i < kHeaders.size(); ++i) head[i] = kHeaders[i];
  append_line(head);
  for (const Row& r : rows) {
    auto cells = r.cells();
    std::array<std::string, 8> line;
    for (std::size_t i = 0; i < cells.size(); ++i)
      line[i] = cell_text(*cells[i]);
    append_line(line);
  }
  return out;
}

ordered_json json_rows(const std::vector<Row>& bound_rows) {
  ordered_json arr = ordered_json::array();
  for (const Row& r : bound_rows) {
    ordered_json b;
    b["name"] = r.name;
    b["direction"] = r.direction;
    if (!r.count.empty()) b["count"] = r.count;
    if (!r.exact.empty()) b["exact_bits"] = r.exact;
    if (!r.bits.empty()) b["bits"] = std::stod(r.bits);
    b["statement"] = r.statement;
    ordered_json flags = ordered_json::array();
    if (!r.flags.empty()) {
      std::istringstream in(r.flags);
      std::string f;
      while (std::getline(in, f, ';')) flags.push_back(f);
    }
    b["flags"] = std::move(flags);
    arr.push_back(std::move(b));
  }
  return arr;
}

std::string finish_rows(std::vector<Row> rows, ReportFormat format,
                        const std::string& timestamp) {
  if (!timestamp.empty())
    rows.push_back({"meta", "generated-at", "", "", "", "", timestamp, ""});
  return format == ReportFormat::csv ? render_csv(rows) : render_table(rows);
}

Row bound_row(const std::string& name, bool is_upper,
              const std::optional<Int>& count,
              const std::optional<double>& bits, const std::string& exact,
              const std::string& statement,
              const std::vector<std::string>& flags) {
  Row r;
  r.kind = "bound";
  r.name = name;
  r.direction = is_upper ? "upper" : "lower";
  if (count) r.count = count->get_str();
  if (bits) r.bits = fixed_bits(*bits);
  r.exact = exact;
  r.statement = statement;
  r.flags = join_flags(flags);
  return r;
}

void parse_unit(const ordered_json& j, std::size_t layer, std::size_t index,
                std::size_t fan_in, ThresholdUnit& unit) {
  const std::string where = "layer " + std::to_string(layer + 1) + " unit " +
                            std::to_string(index + 1);
  if (!j.is_object() || !j.contains("weights") || !j.contains("bias"))
    throw InputError(where + ": expected an object with weights and bias");
  const auto& weights = j.at("weights");
  if (!weights.is_array() || weights.size() != fan_in)
    throw InputError(where + ": expected " + std::to_string(fan_in) +
                     " weights");
  auto coord = [&](const ordered_json& v) -> Rat {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
    throw InputError(where + ": weights and bias must be rational strings");
  };
  unit.weights.clear();
  unit.weights.reserve(fan_in);
  for (const auto& w : weights) unit.weights.push_back(coord(w));
  unit.bias = coord(j.at("bias"));
}

}  // namespace

PointSet load_point_set(const std::string& source) {
  if (source.rfind("cube:", 0) == 0) {
    const std::string arg = source.substr(5);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(arg, &used);
    } catch (const std::exception&) {
      throw InputError("bad cube spec: " + source);
    }
    if (used != arg.size()) throw InputError("bad cube spec: " + source);
    if (n < 1 || n > 20)
      throw InputError("cube dimension must be between 1 and 20: " + source);
    return PointSet::cube(n);
  }
  std::ifstream in(source);
  if (!in) throw InputError("cannot open points file: " + source);
  return parse_point_set(in, source);
}

PointSet parse_point_set(std::istream& in, const std::string& name) {
  PointSet out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::vector<Rat> point;
    std::string token;
    while (fields >> token) {
      try {
        point.push_back(parse_rat(token));
      } catch (const InputError& e) {
        throw InputError(name + " line " + std::to_string(lineno) + ": " +
                         e.what());
      }
    }
    if (point.empty()) continue;
    if (out.pts.empty()) {
      out.dim = static_cast<int>(point.size());
    } else if (static_cast<int>(point.size()) != out.dim) {
      throw InputError(name + " line " + std::to_string(lineno) +
                       ": expected " + std::to_string(out.dim) +
                       " coordinates, got " + std::to_string(point.size()));
    }
    out.pts.push_back(std::move(point));
  }
  if (out.pts.empty()) throw InputError(name + ": no points");
  try {
    out.validate();
  } catch (const InputError& e) {
    throw InputError(name + ": " + std::string(e.what()));
  }
  return out;
}

LayeredNetwork parse_network_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("network json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("architecture") || !j.contains("layers"))
    throw InputError("network json: expected architecture and layers");
  const auto& arch = j.at("architecture");
  if (!arch.is_array() || arch.size() < 2)
    throw InputError("network json: architecture needs at least two sizes");
  std::vector<long long> sizes;
  for (const auto& v : arch) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw InputError("network json: architecture sizes must be integers >= 1");
    sizes.push_back(v.get<long long>());
  }
  const auto& layers = j.at("layers");
  if (!layers.is_array() || layers.size() != sizes.size() - 1)
    throw InputError("network json: expected " +
                     std::to_string(sizes.size() - 1) + " layers");
  LayeredNetwork net;
  net.in_dim = static_cast<int>(sizes[0]);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (!layer.is_object() || !layer.contains("units"))
      throw InputError("network json: layer " + std::to_string(l + 1) +
                       " lacks units");
    const auto& units = layer.at("units");
    if (!units.is_array() ||
        units.size() != static_cast<std::size_t>(sizes[l + 1]))
      throw InputError("network json: layer " + std::to_string(l + 1) +
                       " expected " + std::to_string(sizes[l + 1]) + " units");
    ThresholdMap map;
    map.units.resize(units.size());
    for (std::size_t u = 0; u < units.size(); ++u)
      parse_unit(units[u], l, u, static_cast<std::size_t>(sizes[l]),
                 map.units[u]);
    net.maps.push_back(std::move(map));
  }
  net.validate();
  return net;
}

std::string network_json(const LayeredNetwork& net) {
  net.validate();
  ordered_json j;
  j["architecture"] = net.architecture();
  ordered_json layers = ordered_json::array();
  for (const auto& map : net.maps) {
    ordered_json units = ordered_json::array();
    for (const auto& unit : map.units) {
      ordered_json u;
      ordered_json weights = ordered_json::array();
      for (const auto& w : unit.weights) weights.push_back(rat_str(w));
      u["weights"] = std::move(weights);
      u["bias"] = rat_str(unit.bias);
      units.push_back(std::move(u));
    }
    ordered_json layer;
    layer["units"] = std::move(units);
    layers.push_back(std::move(layer));
  }
  j["layers"] = std::move(layers);
  return j.dump(2) + "\n";
}

LayeredNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_network_json(text.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + std::string(e.what()));
  }
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "table") return ReportFormat::table;
  throw InputError("unknown format (want json, csv, or table): " + name);
}

std::string emit_report(const CapacityReport& rep, ReportFormat format,
                        const std::string& timestamp) {
  std::vector<Row> bound_rows;
  for (const auto& b : rep.bounds)
    bound_rows.push_back(
        bound_row(b.name, b.is_upper, b.count, b.bits, "", b.statement,
                  b.flags));
  if (format == ReportFormat::json) {
    ordered_json j;
    j["kind"] = "set-capacity";
    j["set_size"] = rep.set_size;
    j["dim"] = rep.dim;
    j["boolean"] = rep.boolean;
    if (rep.exact_count) j["exact_count"] = rep.exact_count->get_str();
    if (rep.exact_bits) j["exact_bits"] = *rep.exact_bits;
    j["bounds"] = json_rows(bound_rows);
    if (!timestamp.empty()) j["generated_at"] = timestamp;
    return j.dump(2) + "\n";
  }
  std::vector<Row> rows;
  rows.push_back({"meta", "set-size", "", std::to_string(rep.set_size), "", "",
                  "", ""});
  rows.push_back({"meta", "dim", "", std::to_string(rep.dim), "", "", "", ""});
  rows.push_back(
      {"meta", "boolean", "", rep.boolean ? "true" : "false", "", "", "", ""});
  if (rep.exact_count)
    rows.push_back({"exact", "dichotomy-count", "", rep.exact_count->get_str(),
                    rep.exact_bits ? fixed_bits(*rep.exact_bits) : "", "", "",
                    ""});
  rows.insert(rows.end(), bound_rows.begin(), bound_rows.end());
  return finish_rows(std::move(rows), format, timestamp);
}

std::string emit_report(const NetworkReport& rep, ReportFormat format,
                        const std::string& timestamp) {
  std::vector<Row> bound_rows;
  for (const auto& b : rep.bounds)
    bound_rows.push_back(bound_row(b.name, b.is_upper, b.count, b.bits,
                                   b.exact_bits ? rat_str(*b.exact_bits) : "",
                                   b.statement, b.flags));
  if (format == ReportFormat::json) {
    ordered_json j;
    j["kind"] = "network-capacity";
    j["architecture"] = rep.sizes;
    if (rep.exact_count) j["exact_count"] = rep.exact_count->get_str();
    if (rep.exact_bits) j["exact_bits"] = *rep.exact_bits;
    j["bounds"] = json_rows(bound_rows);
    if (!timestamp.empty()) j["generated_at"] = timestamp;
    return j.dump(2) + "\n";
  }
  std::vector<Row> rows;
  rows.push_back(
      {"meta", "architecture", "", "", "", "", sizes_str(rep.sizes), ""});
  if (rep.exact_count)
    rows.push_back({"exact", "function-count", "", rep.exact_count->get_str(),
                    rep.exact_bits ? fixed_bits(*rep.exact_bits) : "", "", "",
                    ""});
  rows.insert(rows.end(), bound_rows.begin(), bound_rows.end());
  return finish_rows(std::move(rows), format, timestamp);
}

}  // namespace threshcap
