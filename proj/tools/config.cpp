#include "config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& msg) {
  throw std::runtime_error("config: " + msg);
}

std::pair<double, double> parse_range(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) {
    bad_config(key + " must be a [lo, hi] array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void parse_params_block(const json& block, RawOptions& out) {
  for (auto it = block.begin(); it != block.end(); ++it) {
    const std::string& key = it.key();
    const double value = it.value().get<double>();
    if (key == "q") out.q = value;
    else if (key == "gamma") out.gamma = value;
    else if (key == "alpha") out.alpha = value;
    else if (key == "v") out.v = value;
    else if (key == "c_v") out.c_v = value;
    else if (key == "c_h") out.c_h = value;
    else bad_config("unknown params key '" + key + "'");
  }
}

void parse_options_block(const json& block, RawOptions& out) {
  for (auto it = block.begin(); it != block.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "out") out.out = v.get<std::string>();
    else if (key == "format") out.format = v.get<std::string>();
    else if (key == "seed") out.seed = v.get<std::uint64_t>();
    else if (key == "epsilon") out.epsilon = v.get<double>();
    else if (key == "strict_epsilon") out.strict_epsilon = v.get<bool>();
    else if (key == "pair") out.pair = v.get<std::vector<std::string>>();
    else if (key == "strategies") out.strategies = v.get<std::vector<std::string>>();
    else if (key == "strategy") out.strategy = v.get<std::string>();
    else if (key == "prices") out.prices = v.get<std::vector<double>>();
    else if (key == "axis") out.axis = v.get<std::string>();
    else if (key == "axis2") out.axis2 = v.get<std::string>();
    else if (key == "bracket") out.bracket = parse_range(v, key);
    else if (key == "tol") out.tol = v.get<double>();
    else if (key == "n") out.n = v.get<std::uint64_t>();
    else if (key == "samples") out.samples = v.get<int>();
    else if (key == "grid_points") out.grid_points = v.get<int>();
    else if (key == "refine_rounds") out.refine_rounds = v.get<int>();
    else if (key == "shrink") out.shrink = v.get<double>();
    else if (key == "q_range") out.q_range = parse_range(v, key);
    else if (key == "q_points") out.q_points = v.get<int>();
    else if (key == "alpha_range") out.alpha_range = parse_range(v, key);
    else if (key == "alpha_points") out.alpha_points = v.get<int>();
    else if (key == "gamma_range") out.gamma_range = parse_range(v, key);
    else if (key == "gamma_points") out.gamma_points = v.get<int>();
    else bad_config("unknown options key '" + key + "'");
  }
}

}  // namespace

RawOptions load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    bad_config(e.what());
  }
  if (!doc.is_object()) bad_config("top level must be an object");

  RawOptions out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key == "command") out.command = it.value().get<std::string>();
    else if (key == "params") parse_params_block(it.value(), out);
    else if (key == "options") parse_options_block(it.value(), out);
    else bad_config("unknown top-level key '" + key + "'");
  }
  return out;
}

RunConfig merge_options(const RawOptions& flags, const RawOptions& config) {
  RunConfig r;
  const auto pick = [](auto& dst, const auto& flag, const auto& conf) {
    if (flag) dst = *flag;
    else if (conf) dst = *conf;
  };
  pick(r.command, flags.command, config.command);
  pick(r.q, flags.q, config.q);
  pick(r.gamma, flags.gamma, config.gamma);
  pick(r.alpha, flags.alpha, config.alpha);
  pick(r.v, flags.v, config.v);
  pick(r.c_v, flags.c_v, config.c_v);
  pick(r.c_h, flags.c_h, config.c_h);
  pick(r.out, flags.out, config.out);
  pick(r.format, flags.format, config.format);
  pick(r.seed, flags.seed, config.seed);
  pick(r.epsilon, flags.epsilon, config.epsilon);
  pick(r.strict_epsilon, flags.strict_epsilon, config.strict_epsilon);
  pick(r.pair, flags.pair, config.pair);
  pick(r.strategies, flags.strategies, config.strategies);
  pick(r.strategy, flags.strategy, config.strategy);
  pick(r.prices, flags.prices, config.prices);
  pick(r.axis, flags.axis, config.axis);
  pick(r.axis2, flags.axis2, config.axis2);
  pick(r.tol, flags.tol, config.tol);
  pick(r.n, flags.n, config.n);
  pick(r.samples, flags.samples, config.samples);
  pick(r.grid_points, flags.grid_points, config.grid_points);
  pick(r.refine_rounds, flags.refine_rounds, config.refine_rounds);
  pick(r.shrink, flags.shrink, config.shrink);
  const auto pick_opt = [](auto& dst, const auto& flag, const auto& conf) {
    if (flag) dst = flag;
    else if (conf) dst = conf;
  };
  pick_opt(r.bracket, flags.bracket, config.bracket);
  pick_opt(r.q_range, flags.q_range, config.q_range);
  pick_opt(r.q_points, flags.q_points, config.q_points);
  pick_opt(r.alpha_range, flags.alpha_range, config.alpha_range);
  pick_opt(r.alpha_points, flags.alpha_points, config.alpha_points);
  pick_opt(r.gamma_range, flags.gamma_range, config.gamma_range);
  pick_opt(r.gamma_points, flags.gamma_points, config.gamma_points);
  return r;
}
