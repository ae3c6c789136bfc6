#include "icregion/channel.hpp"

#include <cmath>
#include <sstream>

#include "icregion/errors.hpp"
#include "json.hpp"

namespace icr {

namespace {

std::string row_label(std::size_t x1, std::size_t x2) {
  return "(x1=" + std::to_string(x1) + ", x2=" + std::to_string(x2) + ")";
}

}  // namespace

DiscreteIC::DiscreteIC(std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2,
                       std::vector<double> trans)
    : nx1_(nx1), nx2_(nx2), ny1_(ny1), ny2_(ny2), trans_(std::move(trans)) {
  for (std::size_t n : {nx1, nx2, ny1, ny2}) {
    if (n < 1 || n > kMaxCardinality) {
      throw ValidationError("channel alphabet sizes must lie in [1, 4]");
    }
  }
  const std::size_t rows = nx1 * nx2;
  const std::size_t cols = ny1 * ny2;
  if (trans_.size() != rows * cols) {
    throw ValidationError("channel field \"p\" has " + std::to_string(trans_.size()) +
                          " entries, expected " + std::to_string(rows * cols));
  }
  for (std::size_t x1 = 0; x1 < nx1; ++x1) {
    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
      const std::size_t base = (x1 * nx2 + x2) * cols;
      double sum = 0.0;
      for (std::size_t k = 0; k < cols; ++k) {
        const double v = trans_[base + k];
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw ValidationError("negative or non-finite transition in row " + row_label(x1, x2));
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "row " << row_label(x1, x2) << " sums to " << sum;
        throw ValidationError(msg.str());
      }
      for (std::size_t k = 0; k < cols; ++k) trans_[base + k] /= sum;
    }
  }
}

std::string DiscreteIC::to_json() const {
  nlohmann::ordered_json j;
  j["nx1"] = nx1_;
  j["nx2"] = nx2_;
  j["ny1"] = ny1_;
  j["ny2"] = ny2_;
  j["p"] = trans_;
  return j.dump();
}

DiscreteIC load_channel(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("channel document: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("channel document must be a JSON object");
  auto card = [&](const char* key) -> std::size_t {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
      throw ParseError(std::string("channel field \"") + key + "\" must be a positive integer");
    }
    return j[key].get<std::size_t>();
  };
  const std::size_t nx1 = card("nx1"), nx2 = card("nx2"), ny1 = card("ny1"), ny2 = card("ny2");
  if (!j.contains("p") || !j["p"].is_array()) {
    throw ParseError("channel field \"p\" must be an array of numbers");
  }
  std::vector<double> p;
  p.reserve(j["p"].size());
  for (const auto& v : j["p"]) {
    if (!v.is_number()) throw ParseError("channel field \"p\" must contain only numbers");
    p.push_back(v.get<double>());
  }
  return DiscreteIC(nx1, nx2, ny1, ny2, std::move(p));
}

DiscreteIC builtin_channel(std::string_view name, std::span<const double> params) {
  std::vector<double> p(16, 0.0);
  auto idx = [](int x1, int x2, int y1, int y2) { return ((x1 * 2 + x2) * 2 + y1) * 2 + y2; };
  if (name == "clean") {
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) p[idx(x1, x2, x1, x2)] = 1.0;
  } else if (name == "xor-interference") {
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) p[idx(x1, x2, x1 ^ x2, x1 ^ x2)] = 1.0;
  } else if (name == "symmetric-flip") {
    if (params.size() != 1) throw ArgumentError("symmetric-flip takes exactly one parameter p");
    const double f = params[0];
    if (!(f >= 0.0 && f <= 0.5)) throw ArgumentError("symmetric-flip p must lie in [0, 0.5]");
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2)
        for (int y1 = 0; y1 < 2; ++y1)
          for (int y2 = 0; y2 < 2; ++y2)
            p[idx(x1, x2, y1, y2)] = (y1 == x1 ? 1.0 - f : f) * (y2 == x2 ? 1.0 - f : f);
  } else {
    throw ArgumentError("unknown builtin channel '" + std::string(name) + "'");
  }
  return DiscreteIC(2, 2, 2, 2, std::move(p));
}

}  // namespace icr
