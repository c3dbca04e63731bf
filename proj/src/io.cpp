#include "tverberg/io.hpp"

#include "tverberg/geometry.hpp"

#include <stdexcept>

namespace tverberg {

long Rng::uniform(long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return lo + static_cast<long>(next());  // full 64-bit span
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<long>(x % range);
}

namespace {

std::vector<int> profile_class_of(const GenParams& p, Rng& rng) {
  const int n = (p.d + 1) * (p.r - 1) + 1;
  std::vector<int> class_of;
  if (p.profile == "special") {
    class_of.resize(n);
    for (int j = 0; j < p.d + 1; ++j)
      for (int t = 0; t < p.r - 1; ++t) class_of[j * (p.r - 1) + t] = j;
    class_of[n - 1] = p.d + 1;
  } else if (p.profile == "singletons") {
    class_of.resize(n);
    for (int v = 0; v < n; ++v) class_of[v] = v;
  } else if (p.profile == "random") {
    // random general coloring: every class size in [1, r-1]
    const int cap = p.r - 1;
    const int cmin = (n + cap - 1) / cap;
    const int c = static_cast<int>(rng.uniform(cmin, n));
    std::vector<int> sizes(c, 1);
    int extra = n - c;
    while (extra > 0) {
      std::vector<int> eligible;
      for (int j = 0; j < c; ++j)
        if (sizes[j] < cap) eligible.push_back(j);
      ++sizes[eligible[rng.uniform(0, static_cast<long>(eligible.size()) - 1)]];
      --extra;
    }
    for (int j = 0; j < c; ++j)
      for (int t = 0; t < sizes[j]; ++t) class_of.push_back(j);
    rng.shuffle(class_of);
  } else if (p.profile == "bl") {
    for (int j = 0; j < 3; ++j)
      for (int t = 0; t < p.r; ++t) class_of.push_back(j);
  } else {
    throw std::invalid_argument("unknown profile: " + p.profile);
  }
  return class_of;
}

}  // namespace

Instance generate_instance(const GenParams& p) {
  if (p.d < 1) throw std::invalid_argument("d must be at least 1");
  if (p.r < 2) throw std::invalid_argument("r must be at least 2");
  if (p.bound < 1) throw std::invalid_argument("bound must be at least 1");
  if (p.profile == "bl" && p.d != 2)
    throw std::invalid_argument("profile bl requires d=2");

  Rng rng(p.seed);
  const std::vector<int> class_of = profile_class_of(p, rng);
  const int n = static_cast<int>(class_of.size());
  const bool need_gp = p.general_position || p.profile == "bl";

  Instance inst;
  inst.d = p.d;
  inst.r = p.r;
  inst.coloring = Coloring::from_class_of(class_of);
  for (;;) {
    inst.points.assign(n, RatVec());
    for (int v = 0; v < n; ++v) {
      inst.points[v].reserve(p.d);
      for (int k = 0; k < p.d; ++k)
        inst.points[v].push_back(Rat(rng.uniform(-p.bound, p.bound)));
    }
    if (!need_gp || general_position_check(inst.points, p.d)) break;
  }
  inst.validate();
  return inst;
}

namespace {

Rat json_to_rat(const Json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rat(value.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer())
    return Rat(static_cast<long>(value.get<std::int64_t>()));
  if (value.is_number())
    throw ParseError(where + ": floating-point numbers are not accepted; use \"p/q\" strings");
  throw ParseError(where + ": expected a rational string");
}

int json_to_int(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer");
  return static_cast<int>(value.get<std::int64_t>());
}

const Json& field(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

}  // namespace

Json instance_to_json(const Instance& instance, const Json& metadata) {
  Json doc;
  doc["d"] = instance.d;
  doc["r"] = instance.r;
  Json points = Json::array();
  for (const auto& p : instance.points) {
    Json coords = Json::array();
    for (const auto& x : p) coords.push_back(rat_str(x));
    points.push_back(std::move(coords));
  }
  doc["points"] = std::move(points);
  doc["colors"] = instance.coloring.class_of_all();
  if (!metadata.is_null()) doc["metadata"] = metadata;
  return doc;
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  Instance inst;
  inst.d = json_to_int(field(doc, "d"), "d");
  inst.r = json_to_int(field(doc, "r"), "r");
  const Json& points = field(doc, "points");
  if (!points.is_array()) throw ParseError("points: expected an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Json& row = points[i];
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(where + ": expected an array");
    RatVec p;
    for (std::size_t k = 0; k < row.size(); ++k)
      p.push_back(json_to_rat(row[k], where + "[" + std::to_string(k) + "]"));
    inst.points.push_back(std::move(p));
  }
  const Json& colors = field(doc, "colors");
  if (!colors.is_array()) throw ParseError("colors: expected an array");
  std::vector<int> class_of;
  for (std::size_t i = 0; i < colors.size(); ++i)
    class_of.push_back(json_to_int(colors[i], "colors[" + std::to_string(i) + "]"));
  try {
    inst.coloring = Coloring::from_class_of(std::move(class_of));
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
  return inst;
}

Json witness_to_json(const TverbergWitness& w) {
  Json doc;
  doc["faces"] = w.faces;
  Json point = Json::array();
  for (const auto& x : w.point) point.push_back(rat_str(x));
  doc["point"] = std::move(point);
  Json coeffs = Json::array();
  for (const auto& block : w.coefficients) {
    Json list = Json::array();
    for (const auto& [v, value] : block) {
      Json entry;
      entry["vertex"] = v;
      entry["value"] = rat_str(value);
      list.push_back(std::move(entry));
    }
    coeffs.push_back(std::move(list));
  }
  doc["coefficients"] = std::move(coeffs);
  return doc;
}

TverbergWitness witness_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("witness document must be an object");
  TverbergWitness w;
  const Json& faces = field(doc, "faces");
  if (!faces.is_array()) throw ParseError("faces: expected an array");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Json& face = faces[i];
    const std::string where = "faces[" + std::to_string(i) + "]";
    if (!face.is_array()) throw ParseError(where + ": expected an array");
    Face f;
    for (std::size_t j = 0; j < face.size(); ++j)
      f.push_back(json_to_int(face[j], where + "[" + std::to_string(j) + "]"));
    w.faces.push_back(std::move(f));
  }
  const Json& point = field(doc, "point");
  if (!point.is_array()) throw ParseError("point: expected an array");
  for (std::size_t k = 0; k < point.size(); ++k)
    w.point.push_back(json_to_rat(point[k], "point[" + std::to_string(k) + "]"));
  const Json& coeffs = field(doc, "coefficients");
  if (!coeffs.is_array()) throw ParseError("coefficients: expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Json& block = coeffs[i];
    const std::string where = "coefficients[" + std::to_string(i) + "]";
    if (!block.is_array()) throw ParseError(where + ": expected an array");
    std::map<int, Rat> m;
    for (std::size_t j = 0; j < block.size(); ++j) {
      const Json& entry = block[j];
      const std::string ewhere = where + "[" + std::to_string(j) + "]";
      if (!entry.is_object()) throw ParseError(ewhere + ": expected an object");
      const int v = json_to_int(field(entry, "vertex"), ewhere + ".vertex");
      if (m.count(v)) throw ParseError(ewhere + ": duplicate vertex");
      m[v] = json_to_rat(field(entry, "value"), ewhere + ".value");
    }
    w.coefficients.push_back(std::move(m));
  }
  return w;
}

std::string serialize_instance(const Instance& instance, const Json& metadata) {
  return instance_to_json(instance, metadata).dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

std::string serialize_witness(const TverbergWitness& witness) {
  return witness_to_json(witness).dump(2) + "\n";
}

TverbergWitness parse_witness(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return witness_from_json(doc);
}

}  // namespace tverberg
