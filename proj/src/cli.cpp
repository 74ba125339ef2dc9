// Copyright 2026 The sympform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sympform/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sympform/canonical_form.hpp"
#include "sympform/gaussian_apps.hpp"
#include "sympform/invariants.hpp"
#include "sympform/matrix_io.hpp"

namespace sympform::cli {
namespace {

struct CommandConfig {
  std::string input;
  std::string output;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string format = "human";
};

struct GenConfig {
  std::string kind;
  int n = 1;
  double r = 0.5;
  double eta = 0.5;
  int env_modes = 1;
};

struct LoadedInput {
  Json doc;
  std::string sha256;
};

LoadedInput load(const std::string& path) {
  const std::string text = read_text_file(path);
  return {parse_json(text), sha256_hex(text)};
}

bool is_matrix_doc(const Json& doc) { return doc.is_object() && doc.contains("rows"); }

std::string format_number(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void render_human(std::ostream& os, const std::string& key, const Json& value, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string label = key.empty() ? "" : key + ": ";
  if (is_matrix_doc(value) && value.contains("data")) {
    const auto rows = value["rows"].get<int>();
    const auto cols = value["cols"].get<int>();
    os << pad << label << rows << "x" << cols << "\n";
    for (int i = 0; i < rows; ++i) {
      os << pad << "  ";
      for (int j = 0; j < cols; ++j) {
        std::string cell = format_number(value["data"][std::size_t(i * cols + j)].get<double>(), 8);
        os << std::string(cell.size() < 15 ? 15 - cell.size() : 1, ' ') << cell;
      }
      os << "\n";
    }
  } else if (value.is_object()) {
    if (!key.empty()) os << pad << key << ":\n";
    for (auto it = value.begin(); it != value.end(); ++it) {
      render_human(os, it.key(), it.value(), key.empty() ? depth : depth + 1);
    }
  } else if (value.is_array()) {
    const bool flat = std::all_of(value.begin(), value.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      os << pad << label << "[";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) os << ", ";
        os << (value[i].is_number_float() ? format_number(value[i].get<double>(), 10) : value[i].dump());
      }
      os << "]\n";
    } else {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < value.size(); ++i) render_human(os, "- [" + std::to_string(i) + "]", value[i], depth + 1);
    }
  } else if (value.is_number_float()) {
    os << pad << label << format_number(value.get<double>(), 10) << "\n";
  } else if (value.is_string()) {
    os << pad << label << value.get<std::string>() << "\n";
  } else {
    os << pad << label << value.dump() << "\n";
  }
}

Json tolerances_json(const Tolerances& tol) {
  return Json{{"residual_tol", tol.residual_tol}, {"degeneracy_gap", tol.degeneracy_gap}, {"psd_tol", tol.psd_tol}};
}

void emit(const CommandConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_text_file(cfg.output, text);
  }
}

Json validity_json(const ValidityReport& v) { return Json{{"min_eig", v.min_eig}, {"valid", v.valid}}; }

Json run_analysis(const std::string& command, const CommandConfig& cfg, const Json& doc) {
  const Tolerances& tol = cfg.tol;
  if (command == "invariants") {
    return to_json(invariants(matrix_from_json(doc), tol));
  }
  if (command == "decompose") {
    const Mat X = matrix_from_json(doc);
    const Decomposition d = decompose(X, tol, cfg.seed);
    const Verification v = verify_decomposition(X, d, tol);
    Json result = to_json(d);
    result["verification"] = Json{{"recon", v.recon},
                                  {"s1", v.s1},
                                  {"s2", v.s2},
                                  {"spectrum_match", v.spectrum_match},
                                  {"verdict", v.verdict}};
    return result;
  }
  if (command == "williamson") {
    const Mat X = matrix_from_json(doc);
    const WilliamsonResult w = williamson(X, tol);
    std::vector<std::complex<double>> squares;
    for (double nu : w.nu) squares.emplace_back(nu * nu, 0.0);
    Json result = to_json(w);
    result["lambda_vs_nu_squared"] = multiset_distance(invariants(X, tol).expanded(), squares);
    return result;
  }
  if (command == "condense") {
    const BipartiteCovariance g =
        is_matrix_doc(doc) ? BipartiteCovariance::split(matrix_from_json(doc)) : bipartite_from_json(doc);
    const CondensedCorrelations c = condense_correlations(g, tol, cfg.seed);
    return Json{{"s_a", to_json(c.s_a)},
                {"s_b", to_json(c.s_b)},
                {"state", to_json(c.g_out)},
                {"canonical", to_json(c.blocks)}};
  }
  if (command == "channel-normalize") {
    const GaussianChannel ch = channel_from_json(doc, tol);
    const NormalizedChannel nc = normalize_channel(ch, tol, cfg.seed);
    return Json{{"s1", to_json(nc.s1)},
                {"s2", to_json(nc.s2)},
                {"channel", to_json(nc.ch_out)},
                {"canonical", to_json(nc.blocks)},
                {"validity_in", validity_json(channel_validity(ch, tol))},
                {"validity_out", validity_json(channel_validity(nc.ch_out, tol))}};
  }
  if (command == "validate-channel") {
    return validity_json(channel_validity(channel_from_json(doc, tol), tol));
  }
  if (command == "validate-state") {
    if (is_matrix_doc(doc)) {
      Json r = validity_json(state_validity(matrix_from_json(doc), tol));
      r["layout"] = "global";
      return r;
    }
    Json r = validity_json(state_validity(bipartite_from_json(doc), tol));
    r["layout"] = "party-major";
    return r;
  }
  if (command == "witness") {
    const Mat x = is_matrix_doc(doc) ? matrix_from_json(doc) : matrix_from_json(doc.at("x"));
    return to_json(squeezing_witness(x, tol));
  }
  throw Error(ErrorKind::ParseError, "unknown command " + command);
}

Json run_gen(const GenConfig& gen, std::uint64_t seed) {
  if (gen.n < 1) throw Error(ErrorKind::DimensionError, "--n must be >= 1");
  Json doc;
  Json params{{"kind", gen.kind}, {"n", gen.n}, {"seed", seed}};
  if (gen.kind == "identity") {
    doc = to_json(Mat(Mat::Identity(2 * gen.n, 2 * gen.n)));
  } else if (gen.kind == "tmss") {
    // n independent pairs with equal squeezing, party-major layout.
    const BipartiteCovariance pair = two_mode_squeezed(gen.r);
    BipartiteCovariance g;
    g.n = gen.n;
    g.gamma_a = pair.gamma_a(0, 0) * Mat::Identity(2 * gen.n, 2 * gen.n);
    g.gamma_b = g.gamma_a;
    g.x = Mat::Zero(2 * gen.n, 2 * gen.n);
    g.x.topLeftCorner(gen.n, gen.n) = pair.x(0, 0) * Mat::Identity(gen.n, gen.n);
    g.x.bottomRightCorner(gen.n, gen.n) = pair.x(1, 1) * Mat::Identity(gen.n, gen.n);
    doc = to_json(g);
    params["r"] = gen.r;
  } else if (gen.kind == "attenuator") {
    if (!(gen.eta > 0.0 && gen.eta <= 1.0)) throw Error(ErrorKind::DimensionError, "--eta must lie in (0, 1]");
    const auto dim = 2 * gen.n;
    doc = to_json(make_channel(std::sqrt(gen.eta) * Mat::Identity(dim, dim), (1.0 - gen.eta) * Mat::Identity(dim, dim)));
    params["eta"] = gen.eta;
  } else if (gen.kind == "passive" || gen.kind == "random-channel") {
    doc = to_json(random_valid_channel(gen.n, gen.env_modes, gen.kind == "random-channel", seed));
    params["env_modes"] = gen.env_modes;
  } else if (gen.kind == "random-x") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat X(2 * gen.n, 2 * gen.n);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = normal(rng);
    doc = to_json(X);
  } else if (gen.kind == "random-symplectic") {
    doc = to_json(random_symplectic(gen.n, seed));
  } else {
    throw Error(ErrorKind::ParseError, "unknown generator kind " + gen.kind);
  }
  doc["generator"] = params;
  return doc;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
    case ErrorKind::NonFinite:
      return 1;
    default:
      return 2;
  }
}

void add_common(CLI::App* sub, CommandConfig& cfg, bool needs_input) {
  auto* input = sub->add_option("--input", cfg.input, "input document (JSON)");
  if (needs_input) input->required();
  sub->add_option("--output", cfg.output, "output path (default: stdout)");
  sub->add_option("--tol", cfg.tol.residual_tol, "residual tolerance");
  sub->add_option("--gap", cfg.tol.degeneracy_gap, "relative degeneracy gap");
  sub->add_option("--psd-tol", cfg.tol.psd_tol, "positive-semidefiniteness tolerance");
  sub->add_option("--seed", cfg.seed, "seed for randomized steps");
  sub->add_option("--format", cfg.format, "human | machine")->check(CLI::IsMember({"human", "machine"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical forms under symplectic equivalence"};
  app.require_subcommand(1);
  CommandConfig cfg;
  GenConfig gen;

  const std::vector<std::pair<std::string, std::string>> analyses = {
      {"invariants", "invariants of Sigma(X) for a matrix X"},
      {"decompose", "S1 X S2 = 1 (+) J"},
      {"williamson", "normal-mode decomposition of a positive definite matrix"},
      {"condense", "condense correlations of a bipartite covariance matrix"},
      {"channel-normalize", "decouple the interaction part of a Gaussian channel"},
      {"validate-channel", "check the channel constraint"},
      {"validate-state", "check Gamma + i sigma >= 0"},
      {"witness", "squeezing witness for an interaction matrix"},
  };
  for (const auto& [name, help] : analyses) add_common(app.add_subcommand(name, help), cfg, true);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate test documents");
  add_common(gen_cmd, cfg, false);
  gen_cmd->add_option("--kind", gen.kind, "generator kind")
      ->required()
      ->check(CLI::IsMember({"identity", "tmss", "attenuator", "passive", "random-channel", "random-x",
                             "random-symplectic"}));
  gen_cmd->add_option("--n", gen.n, "mode count");
  gen_cmd->add_option("--r", gen.r, "squeezing parameter (tmss)");
  gen_cmd->add_option("--eta", gen.eta, "transmissivity (attenuator)");
  gen_cmd->add_option("--env-modes", gen.env_modes, "environment modes (passive, random-channel)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const bool machine = cfg.format == "machine";
  Json report{{"command", command}, {"seed", cfg.seed}, {"tolerances", tolerances_json(cfg.tol)}};
  try {
    cfg.tol.validate();
    if (command == "gen") {
      emit(cfg, out, dump_json(run_gen(gen, cfg.seed)));
      return 0;
    }
    const LoadedInput input = load(cfg.input);
    report["inputs"] = Json::array({Json{{"sha256", input.sha256}}});
    const Json result = run_analysis(command, cfg, input.doc);
    report["status"] = "ok";
    report["result"] = result;
    if (machine) {
      emit(cfg, out, dump_json(report));
    } else {
      std::ostringstream text;
      text << command << " (seed " << cfg.seed << ")\n";
      render_human(text, "", result, 0);
      emit(cfg, out, text.str());
    }
    return 0;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (machine) {
      try {
        emit(cfg, out, dump_json(report));
      } catch (const Error&) {
        out << dump_json(report);
      }
    }
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace sympform::cli
