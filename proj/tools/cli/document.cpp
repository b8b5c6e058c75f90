#include "cli/document.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace spinflip::cli {
namespace {

using nlohmann::json;

std::vector<double> read_reals(const json& node, std::size_t expected, const std::string& what) {
  if (!node.is_array() || node.size() != expected) {
    throw ParseError(what + " must be an array of " + std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  for (const auto& x : node) {
    if (!x.is_number()) throw ParseError(what + " contains a non-number");
    out.push_back(x.get<double>());
    if (!std::isfinite(out.back())) throw ParseError(what + " contains a non-finite number");
  }
  return out;
}

BlochVector checked_unit(BlochVector v, std::size_t index, std::ostream& warnings) {
  const double r = v.norm();
  if (!(r > 0.0)) {
    throw ValidationError("vector " + std::to_string(index) + " is zero");
  }
  const double deviation = std::abs(r - 1.0);
  if (deviation > kSilentNormalizeTol) {
    warnings << "warning: vector " << index << " has length " << r << "; normalized\n";
  }
  // Leave vectors that are unit to rounding untouched so reports round-trip bit-for-bit.
  return deviation > 1e-12 ? v.normalized() : v;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || !std::isfinite(value)) {
      throw ParseError("not a number: '" + item + "'");
    }
    out.push_back(value);
  }
  if (!text.empty() && text.back() == ',') throw ParseError("trailing comma in '" + text + "'");
  return out;
}

VectorSetDocument parse_document(const std::string& text, std::ostream& warnings) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("document must be a JSON object");

  const bool has_vectors = root.contains("vectors");
  const bool has_angles = root.contains("angles");
  if (has_vectors == has_angles) {
    throw ParseError("document needs exactly one of \"vectors\" or \"angles\"");
  }

  VectorSetDocument doc;
  const json& list = has_vectors ? root["vectors"] : root["angles"];
  if (!list.is_array()) throw ParseError("\"vectors\"/\"angles\" must be an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = (has_vectors ? "vectors[" : "angles[") + std::to_string(i) + "]";
    BlochVector v;
    if (has_vectors) {
      const auto xyz = read_reals(list[i], 3, where);
      v = {xyz[0], xyz[1], xyz[2]};
    } else {
      const auto angles = read_reals(list[i], 2, where);
      v = BlochVector::from_angles(angles[0], angles[1]);
    }
    doc.vectors.push_back(checked_unit(v, i, warnings));
  }

  if (root.contains("labels")) {
    const json& labels = root["labels"];
    if (!labels.is_array()) throw ParseError("\"labels\" must be an array");
    for (const auto& label : labels) {
      if (!label.is_string()) throw ParseError("labels must be strings");
      doc.labels.push_back(label.get<std::string>());
    }
    if (doc.labels.size() != doc.vectors.size()) {
      throw ValidationError("got " + std::to_string(doc.labels.size()) + " labels for " +
                            std::to_string(doc.vectors.size()) + " vectors");
    }
  }
  if (root.contains("priors")) {
    const json& priors = root["priors"];
    if (!priors.is_array()) throw ParseError("\"priors\" must be an array");
    doc.priors = read_reals(priors, priors.size(), "priors");
    if (doc.priors->size() != doc.vectors.size()) {
      throw ValidationError("got " + std::to_string(doc.priors->size()) + " priors for " +
                            std::to_string(doc.vectors.size()) + " vectors");
    }
  }
  return doc;
}

VectorSetDocument load_document(const std::string& path, std::ostream& warnings) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), warnings);
}

}  // namespace spinflip::cli
