#include "tspgap/instance.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tspgap/errors.hpp"

namespace tspgap {

using nlohmann::json;

MetricInstance::MetricInstance(int n, std::vector<Rat> upper_triangle)
    : n_(n), costs_(std::move(upper_triangle)) {
  if (n < 1) throw ValidationError("instance needs at least one vertex");
  const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (costs_.size() != expected) {
    throw ValidationError("expected " + std::to_string(expected) + " costs for n=" +
                          std::to_string(n) + ", got " + std::to_string(costs_.size()));
  }
  endpoints_.reserve(expected);
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) endpoints_.emplace_back(i, j);
  }
  for (std::size_t k = 0; k < costs_.size(); ++k) {
    if (costs_[k] <= 0) {
      throw ValidationError("cost of edge (" + std::to_string(endpoints_[k].first) + "," +
                            std::to_string(endpoints_[k].second) + ") must be positive");
    }
  }
  metric_ = check_triangle_inequality(*this).empty();
}

int complete_edge_index(int n, VertexId i, VertexId j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw PreconditionError("no edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<VertexId, VertexId> complete_edge_endpoints(int n, int index) {
  if (index < 0 || index >= n * (n - 1) / 2) throw PreconditionError("edge index out of range");
  VertexId i = 0;
  while (index >= n - 1 - i) {
    index -= n - 1 - i;
    ++i;
  }
  return {i, i + 1 + index};
}

int MetricInstance::edge_index(VertexId i, VertexId j) const { return complete_edge_index(n_, i, j); }

Rat MetricInstance::weighted_cost(std::span<const Rat> values) const {
  if (values.size() != costs_.size()) throw PreconditionError("per-edge vector has wrong size");
  Rat sum = 0;
  for (std::size_t k = 0; k < costs_.size(); ++k) {
    if (values[k] != 0) sum += values[k] * costs_[k];
  }
  return sum;
}

std::vector<Triple> check_triangle_inequality(const MetricInstance& inst) {
  std::vector<Triple> out;
  const int n = inst.size();
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const Rat& direct = inst.cost(i, j);
      for (VertexId k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (direct > inst.cost(i, k) + inst.cost(k, j)) out.push_back({i, k, j});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

mpz_class json_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<std::uint64_t>()), 10);
    return mpz_class(std::to_string(v.get<std::int64_t>()), 10);
  }
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>()).get_num();
    } catch (const std::runtime_error& e) {
      throw ParseError(field, e.what());
    }
  }
  throw ParseError(field, "expected an integer");
}

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

}  // namespace

MetricInstance parse_json_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError("$", "instance must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("n", "missing integer field");
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 1 || n > 100000) throw ParseError("n", "out of range");
  if (!doc.contains("costs") || !doc["costs"].is_array()) throw ParseError("costs", "missing array field");
  const auto& arr = doc["costs"];
  std::vector<Rat> costs;
  costs.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string field = "costs[" + std::to_string(k) + "]";
    const auto& entry = arr[k];
    if (entry.is_array() && entry.size() == 2) {
      mpz_class num = json_integer(entry[0], field + "[0]");
      mpz_class den = json_integer(entry[1], field + "[1]");
      if (den <= 0) throw ParseError(field, "denominator must be positive");
      costs.push_back(make_rat(num, den));
    } else if (entry.is_number_integer()) {
      costs.emplace_back(json_integer(entry, field));
    } else {
      throw ParseError(field, "expected [num, den]");
    }
  }
  return MetricInstance(static_cast<int>(n), std::move(costs));
}

std::string instance_to_json(const MetricInstance& inst) {
  json costs = json::array();
  for (const Rat& c : inst.costs()) {
    costs.push_back(json::array({integer_to_json(c.get_num()), integer_to_json(c.get_den())}));
  }
  json doc = json::object();
  doc["n"] = inst.size();
  doc["costs"] = std::move(costs);
  return doc.dump();
}

std::string instance_digest(const MetricInstance& inst) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : instance_to_json(inst)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// TSPLIB

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

MetricInstance parse_tsplib(std::string_view text) {
  std::map<std::string, std::string> header;
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) lines.emplace_back(++number, line);
  }

  std::size_t pos = 0;
  std::string section;
  for (; pos < lines.size(); ++pos) {
    std::string line = trim(lines[pos].second);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      section = upper(line);
      ++pos;
      break;
    }
    header[upper(trim(line.substr(0, colon)))] = trim(line.substr(colon + 1));
  }
  auto require = [&](const std::string& key) -> std::string {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(key, "missing TSPLIB header field");
    return upper(it->second);
  };
  if (header.count("TYPE") && require("TYPE") != "TSP") {
    throw ParseError("TYPE", "only symmetric TSP instances are supported");
  }
  int n = 0;
  try {
    n = std::stoi(require("DIMENSION"));
  } catch (const std::logic_error&) {
    throw ParseError("DIMENSION", "not an integer");
  }
  if (n < 1) throw ParseError("DIMENSION", "must be positive");
  const std::string weight_type = require("EDGE_WEIGHT_TYPE");

  // Remaining tokens with the line they came from.
  std::vector<std::pair<int, std::string>> tokens;
  for (; pos < lines.size(); ++pos) {
    std::istringstream in(lines[pos].second);
    std::string tok;
    while (in >> tok) {
      if (upper(tok) == "EOF") break;
      tokens.emplace_back(lines[pos].first, tok);
    }
  }
  auto number_at = [&](std::size_t k) -> std::pair<int, std::string> {
    if (k >= tokens.size()) throw ParseError("line " + std::to_string(lines.size()), "unexpected end of data");
    return tokens[k];
  };

  std::vector<Rat> costs(static_cast<std::size_t>(n) * (n - 1) / 2);
  auto index = [n](int i, int j) { return i * (2 * n - i - 1) / 2 + (j - i - 1); };

  if (weight_type == "EXPLICIT") {
    if (section != "EDGE_WEIGHT_SECTION") throw ParseError("EDGE_WEIGHT_SECTION", "missing section");
    const std::string format = require("EDGE_WEIGHT_FORMAT");
    auto read = [&](std::size_t k) {
      auto [line, tok] = number_at(k);
      try {
        return parse_rat(tok);
      } catch (const std::runtime_error&) {
        throw ParseError("line " + std::to_string(line), "bad weight '" + tok + "'");
      }
    };
    std::size_t k = 0;
    if (format == "FULL_MATRIX") {
      std::vector<Rat> full(static_cast<std::size_t>(n) * n);
      for (auto& w : full) w = read(k++);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (full[i * n + j] != full[j * n + i]) {
            throw ValidationError("asymmetric matrix at (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ")");
          }
          costs[index(i, j)] = full[i * n + j];
        }
      }
    } else if (format == "UPPER_ROW" || format == "UPPER_DIAG_ROW") {
      const bool diag = format == "UPPER_DIAG_ROW";
      for (int i = 0; i < n; ++i) {
        if (diag) read(k++);
        for (int j = i + 1; j < n; ++j) costs[index(i, j)] = read(k++);
      }
    } else {
      throw ParseError("EDGE_WEIGHT_FORMAT", "unsupported format " + format);
    }
  } else if (weight_type == "EUC_2D") {
    if (section != "NODE_COORD_SECTION") throw ParseError("NODE_COORD_SECTION", "missing section");
    std::vector<std::pair<double, double>> pts(n);
    for (int v = 0; v < n; ++v) {
      auto [line, id] = number_at(3 * v);
      try {
        pts[v] = {std::stod(number_at(3 * v + 1).second), std::stod(number_at(3 * v + 2).second)};
      } catch (const std::logic_error&) {
        throw ParseError("line " + std::to_string(line), "bad coordinate");
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = pts[i].first - pts[j].first;
        const double dy = pts[i].second - pts[j].second;
        // TSPLIB nint; the rounded integer is then exact.
        costs[index(i, j)] = Rat(static_cast<long>(std::sqrt(dx * dx + dy * dy) + 0.5));
      }
    }
  } else {
    throw ParseError("EDGE_WEIGHT_TYPE", "unsupported type " + weight_type);
  }
  return MetricInstance(n, std::move(costs));
}

MetricInstance parse_instance(std::string_view text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_json_instance(text) : parse_tsplib(text);
  }
  throw ParseError("line 1", "empty instance");
}

// ---------------------------------------------------------------------------
// Generators

MetricInstance metric_closure(int n, std::span<const WeightedPair> edges) {
  std::vector<std::vector<std::optional<Rat>>> dist(n, std::vector<std::optional<Rat>>(n));
  for (int v = 0; v < n; ++v) dist[v][v] = Rat(0);
  for (const auto& e : edges) {
    if (e.weight <= 0) throw ValidationError("closure needs positive weights");
    auto& d = dist[e.a][e.b];
    if (!d || e.weight < *d) {
      d = e.weight;
      dist[e.b][e.a] = e.weight;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!dist[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (!dist[k][j]) continue;
        Rat via = *dist[i][k] + *dist[k][j];
        if (!dist[i][j] || via < *dist[i][j]) dist[i][j] = via;
      }
    }
  }
  std::vector<Rat> costs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!dist[i][j]) throw ValidationError("closure of a disconnected graph");
      costs.push_back(*dist[i][j]);
    }
  }
  return MetricInstance(n, std::move(costs));
}

WorstCaseFamily gen_worst_case_family(int ell, NonEdgeCost non_edges) {
  if (ell < 1) throw PreconditionError("ell must be at least 1");
  const int n = 6 + 3 * (ell - 1);
  std::vector<std::pair<VertexId, VertexId>> triangle_edges = {{0, 1}, {0, 2}, {1, 2},
                                                               {3, 4}, {3, 5}, {4, 5}};
  std::vector<std::pair<VertexId, VertexId>> path_edges;
  for (int i = 0; i < 3; ++i) {
    VertexId prev = i;
    for (int k = 0; k < ell - 1; ++k) {
      VertexId interior = 6 + i * (ell - 1) + k;
      path_edges.emplace_back(prev, interior);
      prev = interior;
    }
    path_edges.emplace_back(prev, 3 + i);
  }

  std::vector<std::pair<VertexId, VertexId>> support = triangle_edges;
  support.insert(support.end(), path_edges.begin(), path_edges.end());

  std::vector<WeightedPair> unit;
  for (auto [a, b] : support) unit.push_back({a, b, Rat(1)});
  MetricInstance closure = metric_closure(n, unit);

  MetricInstance inst = closure;
  if (non_edges == NonEdgeCost::kTwo) {
    std::vector<Rat> costs(closure.num_edges(), Rat(2));
    for (auto [a, b] : support) costs[closure.edge_index(a, b)] = 1;
    inst = MetricInstance(n, std::move(costs));
  }

  std::vector<Rat> x(inst.num_edges(), Rat(0));
  for (auto [a, b] : triangle_edges) x[inst.edge_index(a, b)] = make_rat(1, 2);
  for (auto [a, b] : path_edges) x[inst.edge_index(a, b)] = 1;
  return WorstCaseFamily{ell, std::move(inst), std::move(x), std::move(support)};
}

MetricInstance gen_random_metric(int n, std::uint64_t seed) {
  if (n < 3) throw PreconditionError("random metric needs n >= 3");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<long, long>> pts(n);
  for (auto& p : pts) p = {static_cast<long>(rng() % 64), static_cast<long>(rng() % 64)};
  // Random positive graph over the point set: L1 distance plus one, inflated
  // by a random factor in {1, 5/4, 3/2, 7/4}; the closure restores the metric.
  std::vector<WeightedPair> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      long l1 = std::labs(pts[i].first - pts[j].first) + std::labs(pts[i].second - pts[j].second) + 1;
      long inflate = static_cast<long>(rng() % 4);
      edges.push_back({i, j, Rat(l1) * make_rat(4 + inflate, 4)});
    }
  }
  return metric_closure(n, edges);
}

}  // namespace tspgap
