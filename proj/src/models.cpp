// Copyright 2026 The cbsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cbsq/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "cbsq/error.hpp"
#include "json.hpp"
#include "random_stream.hpp"

namespace cbsq {

namespace {

struct MomentumMode {
  double energy;
  std::string label;
  std::vector<double> vector;
};

void apply_sign_rule(std::vector<double>& v) {
  for (double c : v) {
    if (std::abs(c) > 1e-10) {
      if (c < 0)
        for (double& x : v) x = -x;
      return;
    }
  }
}

DenseMatrix site_hopping(std::size_t sites, double t) {
  DenseMatrix o(sites, sites);
  if (sites == 2) {
    o(0, 1) = o(1, 0) = -t;
    return o;
  }
  for (std::size_t s = 0; s < sites; ++s) {
    const std::size_t r = (s + 1) % sites;
    o(s, r) = -t;
    o(r, s) = -t;
  }
  return o;
}

std::vector<MomentumMode> momentum_modes(std::size_t sites, double t) {
  const double m = static_cast<double>(sites);
  const double hop = sites == 2 ? 1.0 : 2.0;
  std::vector<MomentumMode> modes;
  for (std::size_t k = 0; 2 * k <= sites; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / m;
    const double energy = -hop * t * std::cos(theta);
    if (k == 0 || 2 * k == sites) {
      std::vector<double> v(sites);
      for (std::size_t s = 0; s < sites; ++s) v[s] = std::cos(theta * static_cast<double>(s)) / std::sqrt(m);
      apply_sign_rule(v);
      modes.push_back({energy, "k" + std::to_string(k), std::move(v)});
      continue;
    }
    std::vector<double> c(sites), sn(sites);
    for (std::size_t s = 0; s < sites; ++s) {
      c[s] = std::sqrt(2.0 / m) * std::cos(theta * static_cast<double>(s));
      sn[s] = std::sqrt(2.0 / m) * std::sin(theta * static_cast<double>(s));
    }
    apply_sign_rule(c);
    apply_sign_rule(sn);
    modes.push_back({energy, "k" + std::to_string(k) + "c", std::move(c)});
    modes.push_back({energy, "k" + std::to_string(k) + "s", std::move(sn)});
  }
  std::stable_sort(modes.begin(), modes.end(), [](const MomentumMode& a, const MomentumMode& b) {
    return a.energy < b.energy - 1e-12;
  });
  return modes;
}

}  // namespace

DenseMatrix ring_mode_vectors(std::size_t sites, double t) {
  if (sites < 2) throw InvalidArgument("build_ring_model: sites must be >= 2, got " + std::to_string(sites));
  const auto modes = momentum_modes(sites, t);
  DenseMatrix v(sites, sites);
  for (std::size_t j = 0; j < sites; ++j)
    for (std::size_t s = 0; s < sites; ++s) v(s, j) = modes[j].vector[s];
  return v;
}

ModeSpace build_ring_model(std::size_t sites, double t, double U) {
  if (sites < 2) throw InvalidArgument("build_ring_model: sites must be >= 2, got " + std::to_string(sites));
  if (!std::isfinite(t) || !std::isfinite(U)) throw InvalidArgument("build_ring_model: t and U must be finite");
  const auto modes = momentum_modes(sites, t);
  const DenseMatrix v = ring_mode_vectors(sites, t);
  const DenseMatrix o = v.transpose() * site_hopping(sites, t) * v;

  TwoBodyTensor t4(sites);
  if (U != 0.0) {
    for (std::size_t a = 0; a < sites; ++a)
      for (std::size_t b = 0; b < sites; ++b)
        for (std::size_t c = 0; c < sites; ++c)
          for (std::size_t d = 0; d < sites; ++d) {
            double acc = 0.0;
            for (std::size_t s = 0; s < sites; ++s) acc += v(s, a) * v(s, b) * v(s, c) * v(s, d);
            t4(a, b, c, d) = U * acc;
          }
  }

  std::vector<std::string> labels;
  for (const auto& m : modes) labels.push_back(m.label);
  ModeSpace space{ModeBasis(std::move(labels)), OneBodyTensor::from_matrix(o), std::move(t4)};
  space.validate();
  return space;
}

ModeSpace random_model(std::size_t modes, std::uint64_t seed) {
  if (modes == 0) throw InvalidArgument("random_model: at least one mode is required");
  RandomStream rng(seed);
  auto draw = [&] { return 2.0 * rng.uniform() - 1.0; };

  OneBodyTensor o(modes);
  for (std::size_t m = 0; m < modes; ++m)
    for (std::size_t n = m; n < modes; ++n) o(m, n) = o(n, m) = draw();

  TwoBodyTensor raw(modes);
  for (double& x : raw.flat()) x = draw();
  TwoBodyTensor t4(modes);
  for (std::size_t m = 0; m < modes; ++m)
    for (std::size_t n = 0; n < modes; ++n)
      for (std::size_t p = 0; p < modes; ++p)
        for (std::size_t q = 0; q < modes; ++q)
        {
          // orbit average, summed in sorted order
          std::array<double, 4> v{raw(m, n, p, q), raw(n, m, q, p), raw(p, q, m, n), raw(q, p, n, m)};
          std::sort(v.begin(), v.end());
          t4(m, n, p, q) = 0.25 * (((v[0] + v[1]) + v[2]) + v[3]);
        }

  ModeSpace space{ModeBasis::numbered(modes), std::move(o), std::move(t4)};
  space.validate();
  return space;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config: " + field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where.empty() ? key : where + "." + key, "missing required key");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

long long integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<long long>();
}

const json& object(const json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object");
  return v;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ExplicitSpec parse_explicit(const json& model) {
  reject_unknown(model, "model", {"type", "O", "T4"});
  const json& o = require(model, "model", "O");
  if (!o.is_array() || o.empty()) fail("model.O", "expected a non-empty square array of rows");
  const std::size_t m = o.size();
  ExplicitSpec spec{DenseMatrix(m, m), {}};
  for (std::size_t r = 0; r < m; ++r) {
    const std::string row = "model.O[" + std::to_string(r) + "]";
    if (!o[r].is_array() || o[r].size() != m) fail(row, "expected " + std::to_string(m) + " entries");
    for (std::size_t c = 0; c < m; ++c) spec.O(r, c) = number(o[r][c], row + "[" + std::to_string(c) + "]");
  }
  const json& t4 = require(model, "model", "T4");
  const std::size_t expected = m * m * m * m;
  if (!t4.is_array() || t4.size() != expected)
    fail("model.T4", "expected a flat array of length M^4 = " + std::to_string(expected));
  spec.T4.reserve(expected);
  for (std::size_t i = 0; i < expected; ++i) spec.T4.push_back(number(t4[i], "model.T4[" + std::to_string(i) + "]"));
  return spec;
}

}  // namespace

ModelConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "config: parse error at line " << line << ", column " << column << ": " << e.what();
    throw ConfigError(msg.str());
  }
  object(doc, "<root>");
  reject_unknown(doc, "", {"model", "truncation", "bound", "output"});

  ModelConfig config;
  const json& model = object(require(doc, "", "model"), "model");
  const json& type = require(model, "model", "type");
  if (!type.is_string()) fail("model.type", "expected a string");
  if (type == "ring") {
    reject_unknown(model, "model", {"type", "sites", "t", "U"});
    RingSpec ring;
    const long long sites = integer(require(model, "model", "sites"), "model.sites");
    if (sites < 2) fail("model.sites", "ring needs at least 2 sites, got " + std::to_string(sites));
    ring.sites = static_cast<std::size_t>(sites);
    ring.t = number(require(model, "model", "t"), "model.t");
    ring.U = number(require(model, "model", "U"), "model.U");
    config.model = ring;
  } else if (type == "explicit") {
    config.model = parse_explicit(model);
  } else {
    fail("model.type", "expected \"ring\" or \"explicit\", got \"" + type.get<std::string>() + "\"");
  }

  if (doc.contains("truncation")) {
    const json& trunc = object(doc["truncation"], "truncation");
    reject_unknown(trunc, "truncation", {"n_max"});
    if (trunc.contains("n_max")) {
      const long long n = integer(trunc["n_max"], "truncation.n_max");
      if (n < 0 || n > 64) fail("truncation.n_max", "must lie in [0, 64]");
      config.n_max = static_cast<int>(n);
    }
  }

  if (doc.contains("bound")) {
    const json& bound = object(doc["bound"], "bound");
    std::string policy = "below_edge";
    if (bound.contains("policy")) {
      if (!bound["policy"].is_string()) fail("bound.policy", "expected a string");
      policy = bound["policy"].get<std::string>();
    }
    if (policy == "below_edge") {
      reject_unknown(bound, "bound", {"policy", "margin"});
      double margin = -1.0;
      if (bound.contains("margin")) {
        margin = number(bound["margin"], "bound.margin");
        if (margin < 0.0) fail("bound.margin", "must be >= 0");
      }
      config.bound = BoundPolicy::below_edge(margin);
    } else if (policy == "lowest_k") {
      reject_unknown(bound, "bound", {"policy", "k"});
      const long long k = integer(require(bound, "bound", "k"), "bound.k");
      if (k < 0) fail("bound.k", "must be >= 0");
      config.bound = BoundPolicy::lowest_k(static_cast<std::size_t>(k));
    } else {
      fail("bound.policy", "expected \"below_edge\" or \"lowest_k\", got \"" + policy + "\"");
    }
  }

  if (doc.contains("output")) {
    const json& out = object(doc["output"], "output");
    reject_unknown(out, "output", {"dir", "formats", "n_eigs"});
    if (out.contains("dir")) {
      if (!out["dir"].is_string()) fail("output.dir", "expected a string");
      config.output.dir = out["dir"].get<std::string>();
    }
    if (out.contains("formats")) {
      const json& formats = out["formats"];
      if (!formats.is_array()) fail("output.formats", "expected an array");
      config.output.json = config.output.csv = false;
      for (const auto& f : formats) {
        if (f == "json")
          config.output.json = true;
        else if (f == "csv")
          config.output.csv = true;
        else
          fail("output.formats", "unknown format " + f.dump());
      }
    }
    if (out.contains("n_eigs")) {
      const long long k = integer(out["n_eigs"], "output.n_eigs");
      if (k < 1) fail("output.n_eigs", "must be >= 1");
      config.output.n_eigs = static_cast<std::size_t>(k);
    }
  }
  return config;
}

ModelConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config(buffer.str());
}

ModeSpace build_model(const ModelConfig& config) {
  if (const auto* ring = std::get_if<RingSpec>(&config.model)) return build_ring_model(ring->sites, ring->t, ring->U);
  const auto& spec = std::get<ExplicitSpec>(config.model);
  const std::size_t m = spec.O.rows();
  TwoBodyTensor t4(m);
  t4.flat() = spec.T4;
  ModeSpace space{ModeBasis::numbered(m), OneBodyTensor::from_matrix(spec.O), std::move(t4)};
  try {
    space.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: model: ") + e.what());
  }
  return space;
}

}  // namespace cbsq
