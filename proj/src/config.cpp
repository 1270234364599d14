#include "lwr/config.hpp"

#include <fstream>
#include <stdexcept>

namespace lwr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config: field '" + field + "': " + why);
}

bool is_nonneg_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

const json& require(const json& j, const char* field, const std::string& scope) {
  const auto it = j.find(field);
  if (it == j.end()) fail(scope + field, "missing");
  return *it;
}

double require_number(const json& j, const char* field, const std::string& scope) {
  const json& v = require(j, field, scope);
  if (!v.is_number()) fail(scope + field, "must be a number");
  return v.get<double>();
}

TailLaw parse_tail_law(const json& j, const std::string& scope) {
  const double index = require_number(j, "index", scope);
  const double floor = j.contains("floor") ? require_number(j, "floor", scope) : 1.0;
  try {
    return TailLaw(index, floor);
  } catch (const std::invalid_argument& e) {
    fail(scope, e.what());
  }
}

SpectralMeasure parse_spectral(const json& j, std::size_t dim) {
  const std::string scope = "model.spectral.";
  const json& type = require(j, "type", scope);
  if (type == "uniform_sphere") {
    return SpectralMeasure::uniform_sphere(dim);
  }
  if (type == "atoms") {
    const json& atoms = require(j, "atoms", scope);
    if (!atoms.is_array() || atoms.empty()) fail("model.spectral.atoms", "must be a non-empty array");
    std::vector<SpectralMeasure::Atom> list;
    for (const json& a : atoms) {
      SpectralMeasure::Atom atom;
      const json& dir = require(a, "direction", scope + "atoms.");
      if (!dir.is_array()) fail("model.spectral.atoms.direction", "must be an array");
      atom.direction = dir.get<std::vector<double>>();
      atom.prob = require_number(a, "prob", scope + "atoms.");
      list.push_back(std::move(atom));
    }
    try {
      return SpectralMeasure::atoms(std::move(list));
    } catch (const std::invalid_argument& e) {
      fail("model.spectral", e.what());
    }
  }
  fail("model.spectral.type", "must be 'atoms' or 'uniform_sphere'");
}

CouplingMode parse_coupling(const json& j) {
  const std::string scope = "model.coupling.";
  const json& type = require(j, "type", scope);
  if (type == "equal_rests") {
    return CouplingMode::equal(parse_tail_law(require(j, "wait", scope), scope + "wait"));
  }
  if (type == "independent_rests") {
    const TailLaw wait = parse_tail_law(require(j, "wait", scope), scope + "wait");
    const TailLaw rest = parse_tail_law(require(j, "rest", scope), scope + "rest");
    try {
      return CouplingMode::independent(wait, rest);
    } catch (const std::invalid_argument& e) {
      fail("model.coupling", e.what());
    }
  }
  fail("model.coupling.type", "must be 'independent_rests' or 'equal_rests'");
}

WalkKind parse_kind(const json& j) {
  WalkKind kind;
  const json& order = require(j, "order", "model.kind.");
  if (order == "wait_first") {
    kind.order = StepOrder::WaitFirst;
  } else if (order == "jump_first") {
    kind.order = StepOrder::JumpFirst;
  } else {
    fail("model.kind.order", "must be 'wait_first' or 'jump_first'");
  }
  const json& rests = require(j, "with_rests", "model.kind.");
  if (!rests.is_boolean()) fail("model.kind.with_rests", "must be a boolean");
  kind.with_rests = rests.get<bool>();
  return kind;
}

}  // namespace

RunConfig parse_config(const json& j) {
  const json& version = require(j, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    fail("schema_version", "must be the integer 1");
  }

  const json& model = require(j, "model", "");
  const json& dim_j = require(model, "dim", "model.");
  if (!is_nonneg_integer(dim_j) || dim_j.get<std::size_t>() < 1) {
    fail("model.dim", "must be a positive integer");
  }
  const std::size_t dim = dim_j.get<std::size_t>();
  const double v0 = model.contains("v0") ? require_number(model, "v0", "model.") : 1.0;

  WalkParams params = [&] {
    try {
      return WalkParams(v0, dim, parse_spectral(require(model, "spectral", "model."), dim),
                        parse_coupling(require(model, "coupling", "model.")));
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("config:", 0) == 0) throw;
      fail("model", what);
    }
  }();

  RunConfig config{1,
                   std::move(params),
                   parse_kind(require(model, "kind", "model.")),
                   std::nullopt,
                   1,
                   {},
                   0,
                   "",
                   0,
                   1e-4,
                   {}};

  if (j.contains("scaling")) {
    const json& s = j.at("scaling");
    const double n = require_number(s, "n", "scaling.");
    ScalingSpec spec = ScalingSpec::for_coupling(config.model.coupling, std::max(n, 1.0));
    spec.n = n;
    if (s.contains("space_exponent")) {
      spec.space_exponent = require_number(s, "space_exponent", "scaling.");
    }
    if (s.contains("time_exponent")) {
      spec.time_exponent = require_number(s, "time_exponent", "scaling.");
    }
    config.scaling = spec;
  }

  const json& ens = require(j, "ensemble_size", "");
  if (!is_nonneg_integer(ens) || ens.get<std::size_t>() < 1) {
    fail("ensemble_size", "must be a positive integer");
  }
  config.ensemble_size = ens.get<std::size_t>();

  const json& grid = require(j, "time_grid", "");
  if (!grid.is_array() || grid.empty()) fail("time_grid", "must be a non-empty array");
  config.time_grid = grid.get<std::vector<double>>();

  const json& seed = require(j, "seed", "");
  if (!is_nonneg_integer(seed)) fail("seed", "must be a non-negative integer");
  config.seed = seed.get<std::uint64_t>();

  config.output_path = require(j, "output_path", "").get<std::string>();

  if (j.contains("threads")) {
    const json& th = j.at("threads");
    if (!is_nonneg_integer(th)) fail("threads", "must be a non-negative integer (0 = auto)");
    config.threads = th.get<unsigned>();
  }
  if (j.contains("epsilon")) {
    config.epsilon = require_number(j, "epsilon", "");
  }
  if (j.contains("ladder")) {
    const json& ladder = j.at("ladder");
    if (!ladder.is_array()) fail("ladder", "must be an array");
    config.ladder = ladder.get<std::vector<double>>();
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: JSON parse error in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const RunConfig& config) {
  json spectral;
  if (config.model.spectral.is_uniform_sphere()) {
    spectral = {{"type", "uniform_sphere"}};
  } else {
    json atoms = json::array();
    for (const auto& atom : config.model.spectral.atom_list()) {
      atoms.push_back({{"direction", atom.direction}, {"prob", atom.prob}});
    }
    spectral = {{"type", "atoms"}, {"atoms", std::move(atoms)}};
  }

  json coupling;
  const auto tail_to_json = [](const TailLaw& law) {
    return json{{"index", law.index}, {"floor", law.floor}};
  };
  if (config.model.coupling.kind() == CouplingMode::Kind::EqualRests) {
    coupling = {{"type", "equal_rests"},
                {"wait", tail_to_json(config.model.coupling.wait_law())}};
  } else {
    coupling = {{"type", "independent_rests"},
                {"wait", tail_to_json(config.model.coupling.wait_law())},
                {"rest", tail_to_json(config.model.coupling.rest_law())}};
  }

  json j{
      {"schema_version", config.schema_version},
      {"model",
       {{"v0", config.model.v0},
        {"dim", config.model.dim},
        {"spectral", std::move(spectral)},
        {"coupling", std::move(coupling)},
        {"kind",
         {{"order", config.kind.order == StepOrder::WaitFirst ? "wait_first" : "jump_first"},
          {"with_rests", config.kind.with_rests}}}}},
      {"ensemble_size", config.ensemble_size},
      {"time_grid", config.time_grid},
      {"seed", config.seed},
      {"output_path", config.output_path},
      {"threads", config.threads},
      {"epsilon", config.epsilon},
  };
  if (config.scaling) {
    j["scaling"] = {{"n", config.scaling->n},
                    {"space_exponent", config.scaling->space_exponent},
                    {"time_exponent", config.scaling->time_exponent}};
  }
  if (!config.ladder.empty()) {
    j["ladder"] = config.ladder;
  }
  return j;
}

void validate_config(const RunConfig& config) {
  if (config.scaling) {
    validate_scaling(*config.scaling, config.model.coupling);
  }
  for (std::size_t i = 0; i < config.time_grid.size(); ++i) {
    if (!(config.time_grid[i] > 0.0)) fail("time_grid", "entries must be positive");
    if (i > 0 && !(config.time_grid[i - 1] < config.time_grid[i])) {
      fail("time_grid", "must be strictly increasing");
    }
  }
  if (!(config.epsilon > 0.0 && config.epsilon <= 0.01)) {
    fail("epsilon", "must lie in (0, 0.01]");
  }
  for (std::size_t i = 1; i < config.ladder.size(); ++i) {
    if (!(config.ladder[i - 1] < config.ladder[i])) {
      fail("ladder", "must be strictly increasing");
    }
  }
  for (double n : config.ladder) {
    if (!(n >= 1.0)) fail("ladder", "entries must be >= 1");
  }
}

}  // namespace lwr
