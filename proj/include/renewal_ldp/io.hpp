/**
 * Model files and table emission.
 *
 * Model JSON schema:
 *   {
 *     "head_weights": [a(1), ...],
 *     "tail": {"A": .., "gamma": .., "ell": .., "shift": 0} | null,
 *     "rewards": {"head": [[..], ..], "r": [..], "kappa0": [..],
 *                 "kappa1": [..], "shift": 0},
 *     "base": {"p_head": [..], "p_tail": {..} | null, "v_head": [..],
 *              "v_tail": .., "mass_at_infinity": ..} | null,
 *     "preset": {"name": .., "params": {..}, "reward": "count"} | null
 *   }
 * A preset replaces the explicit fields; specifying both is an error.
 *
 * CSV output uses a header row, '.' decimal separator and 17 significant
 * digits, so reruns are byte-identical.
 */

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "renewal_ldp/model.hpp"

namespace renewal_ldp {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline TailSpec tail_from_json(const json& j) {
  TailSpec t;
  t.amplitude = j.at("A").get<double>();
  t.power = j.at("gamma").get<double>();
  t.rate = j.at("ell").get<double>();
  t.shift = j.value("shift", 0);
  return t;
}

inline json tail_to_json(const TailSpec& t) {
  return json{{"A", t.amplitude},
              {"gamma", t.power},
              {"ell", t.rate},
              {"shift", t.shift}};
}

inline Model preset_from_json(const json& j) {
  const std::string name = j.at("name").get<std::string>();
  const json params = j.value("params", json::object());
  const std::string reward = j.value("reward", "count");

  PresetFamily fam;
  if (name == "poland_scheraga") {
    fam = make_poland_scheraga(
        params.value("a", 0.0), params.value("b", 0.0),
        params.at("c").get<double>(), params.value("epsilon", 0.0),
        params.value("s_head", std::int64_t(64)));
  } else if (name == "cluster") {
    fam = make_cluster_model(
        params.at("energies").get<std::vector<double>>(),
        params.at("tail_slope").get<double>(), params.value("mu", 0.0));
  } else if (name == "wsme") {
    fam = make_wsme(params.at("couplings").get<std::vector<double>>(),
                    params.value("sigma", 0.0));
  } else if (name == "zeta") {
    fam = make_zeta_model(params.at("c").get<double>(),
                          params.value("beta", 0.0),
                          params.value("s_head", std::int64_t(64)));
  } else if (name == "geometric") {
    fam = make_geometric(params.value("beta", 0.0),
                         params.value("s_head", std::int64_t(48)));
  } else if (name == "dirac") {
    return make_dirac(params.value("s0", std::int64_t(1)),
                      params.value("f", 1.0));
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }

  if (reward == "count") return fam.count_model();
  if (reward == "extra") return fam.extra_model();
  if (reward == "joint") return fam.joint_model();
  throw ConfigError("unknown preset reward '" + reward + "'");
}

}  // namespace detail

inline Model model_from_json(const json& j) {
  if (j.contains("preset") && !j.at("preset").is_null()) {
    if (j.contains("head_weights") || j.contains("rewards")) {
      throw ConfigError("preset and explicit model fields are exclusive");
    }
    return detail::preset_from_json(j.at("preset"));
  }

  WeightModel w;
  w.head = j.at("head_weights").get<std::vector<double>>();
  if (j.contains("tail") && !j.at("tail").is_null()) {
    w.tail = detail::tail_from_json(j.at("tail"));
  }

  const json& rj = j.at("rewards");
  RewardSpec rw;
  for (const auto& row : rj.at("head")) {
    rw.head.push_back(row.get<Vec>());
  }
  rw.tail_slope = rj.at("r").get<Vec>();
  rw.tail_offset = rj.at("kappa0").get<Vec>();
  rw.tail_log = rj.at("kappa1").get<Vec>();
  rw.shift = rj.value("shift", 0);
  w.dim = rw.dim();

  std::optional<BaseLaw> base;
  if (j.contains("base") && !j.at("base").is_null()) {
    const json& bj = j.at("base");
    BaseLaw b;
    b.p_head = bj.at("p_head").get<std::vector<double>>();
    if (bj.contains("p_tail") && !bj.at("p_tail").is_null()) {
      b.p_tail = detail::tail_from_json(bj.at("p_tail"));
    }
    b.v_head = bj.value("v_head", std::vector<double>{});
    b.v_tail = bj.value("v_tail", 0.0);
    b.mass_at_infinity = bj.value("mass_at_infinity", 0.0);
    base = std::move(b);
  }
  return Model(std::move(w), std::move(rw), std::move(base));
}

inline json model_to_json(const Model& m) {
  json j;
  j["head_weights"] = m.weights().head;
  j["tail"] =
      m.weights().tail ? detail::tail_to_json(*m.weights().tail) : json();
  json rj;
  rj["head"] = m.rewards().head;
  rj["r"] = m.rewards().tail_slope;
  rj["kappa0"] = m.rewards().tail_offset;
  rj["kappa1"] = m.rewards().tail_log;
  rj["shift"] = m.rewards().shift;
  j["rewards"] = std::move(rj);
  if (m.base()) {
    const BaseLaw& b = *m.base();
    json bj;
    bj["p_head"] = b.p_head;
    bj["p_tail"] = b.p_tail ? detail::tail_to_json(*b.p_tail) : json();
    bj["v_head"] = b.v_head;
    bj["v_tail"] = b.v_tail;
    bj["mass_at_infinity"] = b.mass_at_infinity;
    j["base"] = std::move(bj);
  } else {
    j["base"] = json();
  }
  j["preset"] = json();
  return j;
}

inline Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file '" + path + "'");
  json j;
  try {
    in >> j;
    return model_from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError("model file '" + path + "': " + e.what());
  }
}

/// "a:b:n" -> n evenly spaced points from a to b inclusive.
inline std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0;
  long n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
    throw ConfigError("bad grid spec '" + spec + "' (want a:b:n)");
  }
  std::vector<double> g(std::size_t(n), 0.0);
  if (n == 1) {
    g[0] = a;
  } else {
    for (long i = 0; i < n; ++i) {
      g[std::size_t(i)] = a + (b - a) * double(i) / double(n - 1);
    }
  }
  if (!std::is_sorted(g.begin(), g.end())) {
    throw ConfigError("grid must be increasing: '" + spec + "'");
  }
  return g;
}

/// Simple deterministic table writer with csv/json back ends.
class TableWriter {
 public:
  TableWriter(std::vector<std::string> columns, std::string format)
      : columns_(std::move(columns)), json_(format == "json") {
    if (format != "csv" && format != "json") {
      throw ConfigError("unknown format '" + format + "'");
    }
  }

  void add_row(const std::vector<std::string>& cells) {
    rows_.push_back(cells);
  }
  void add_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
  }

  std::string str() const {
    std::ostringstream out;
    if (json_) {
      json j;
      for (const auto& [k, v] : meta_) j["meta"][k] = v;
      j["columns"] = columns_;
      j["rows"] = rows_;
      out << j.dump(2) << "\n";
      return out.str();
    }
    for (const auto& [k, v] : meta_) out << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out << (i ? "," : "") << columns_[i];
    }
    out << "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << row[i];
      }
      out << "\n";
    }
    return out.str();
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<std::string>> rows_;
  bool json_ = false;
};

}  // namespace renewal_ldp
