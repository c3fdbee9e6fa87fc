#include "cosal/model_io.hpp"

#include <fstream>

namespace cosal {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void check_header(const json& j, const char* magic) {
  if (!j.is_object() || j.value("magic", "") != magic) {
    throw Error(std::string("not a ") + magic + " file");
  }
  if (j.value("version", 0) != kFormatVersion) {
    throw Error(std::string("unsupported ") + magic + " version " + std::to_string(j.value("version", 0)));
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump() << '\n';
}

}  // namespace

json to_json(const ContextModel& model, const ModelProvenance& provenance) {
  const auto dim = static_cast<Eigen::Index>(model.dim());
  std::vector<double> packed;
  packed.reserve(static_cast<std::size_t>(dim * (dim + 1) / 2));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k <= i; ++k) packed.push_back(model.metric.factor()(i, k));
  }
  return json{{"magic", kContextMagic},
              {"version", kFormatVersion},
              {"dim", dim},
              {"scheme", std::string(to_string(model.scheme))},
              {"p", model.p},
              {"n", model.n},
              {"ridge", model.metric.ridge()},
              {"repaired", model.metric.repaired()},
              {"mean_salience", model.mean_salience},
              {"vectors", provenance.vectors},
              {"normalized", provenance.normalized},
              {"mean", vector_json(model.mean)},
              {"factor", packed}};
}

ContextModel context_from_json(const json& j, ModelProvenance* provenance) {
  check_header(j, kContextMagic);
  try {
    const auto dim = j.at("dim").get<Eigen::Index>();
    const auto packed = j.at("factor").get<std::vector<double>>();
    if (dim <= 0 || packed.size() != static_cast<std::size_t>(dim * (dim + 1) / 2)) {
      throw Error("context file factor has wrong size");
    }
    Matrix factor = Matrix::Zero(dim, dim);
    std::size_t at = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index k = 0; k <= i; ++k) factor(i, k) = packed[at++];
    }
    ContextModel model;
    model.mean = vector_from(j.at("mean"));
    if (model.mean.size() != dim) throw Error("context file mean has wrong size");
    model.metric = BlendedMetric(std::move(factor), j.at("ridge").get<double>(), j.value("repaired", false));
    model.scheme = parse_blend_scheme(j.at("scheme").get<std::string>());
    model.p = j.at("p").get<double>();
    model.n = j.at("n").get<std::size_t>();
    model.mean_salience = j.at("mean_salience").get<double>();
    if (provenance != nullptr) {
      provenance->vectors = j.value("vectors", "");
      provenance->normalized = j.value("normalized", true);
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed context file: ") + e.what());
  }
}

json to_json(const MomentStats& stats) {
  const auto dim = static_cast<Eigen::Index>(stats.dim());
  std::vector<double> packed;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k <= i; ++k) packed.push_back(stats.covariance(i, k));
  }
  return json{{"magic", kStatsMagic},
              {"version", kFormatVersion},
              {"dim", dim},
              {"count", stats.count},
              {"mean", vector_json(stats.mean)},
              {"covariance", packed}};
}

MomentStats stats_from_json(const json& j) {
  check_header(j, kStatsMagic);
  try {
    const auto dim = j.at("dim").get<Eigen::Index>();
    const auto packed = j.at("covariance").get<std::vector<double>>();
    if (dim <= 0 || packed.size() != static_cast<std::size_t>(dim * (dim + 1) / 2)) {
      throw Error("moments file covariance has wrong size");
    }
    MomentStats stats;
    stats.covariance = Matrix::Zero(dim, dim);
    std::size_t at = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index k = 0; k <= i; ++k) {
        stats.covariance(i, k) = packed[at];
        stats.covariance(k, i) = packed[at];
        ++at;
      }
    }
    stats.mean = vector_from(j.at("mean"));
    if (stats.mean.size() != dim) throw Error("moments file mean has wrong size");
    stats.count = j.at("count").get<std::size_t>();
    return stats;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed moments file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const ContextModel& model,
                const ModelProvenance& provenance) {
  write_json(path, to_json(model, provenance));
}

ContextModel load_model(const std::filesystem::path& path, ModelProvenance* provenance) {
  return context_from_json(read_json(path), provenance);
}

void save_stats(const std::filesystem::path& path, const MomentStats& stats) {
  write_json(path, to_json(stats));
}

MomentStats load_stats(const std::filesystem::path& path) { return stats_from_json(read_json(path)); }

}  // namespace cosal
