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

#include "sympform/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sympform {
namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + name + "'");
  }
  return doc.at(name);
}

int positive_int(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(ErrorKind::ParseError, std::string("field '") + name + "' must be a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

Mat matrix_field(const Json& doc, const char* name, Eigen::Index dim) {
  Mat m = matrix_from_json(field(doc, name));
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorKind::ParseError, std::string("field '") + name + "' has the wrong dimension");
  }
  return m;
}

void write_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const Json& doc, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (doc.type()) {
    case Json::value_t::object: {
      if (doc.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::all_of(doc.begin(), doc.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < doc.size(); ++i) {
          if (i) out += ", ";
          write(out, doc[i], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < doc.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, doc[i], depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, doc.get<double>());
      return;
    default:
      out += doc.dump();
      return;
  }
}

}  // namespace

Json to_json(const Mat& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat matrix_from_json(const Json& doc) {
  const int rows = positive_int(doc, "rows");
  const int cols = positive_int(doc, "cols");
  const Json& data = field(doc, "data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorKind::ParseError, "matrix 'data' length does not match rows * cols");
  }
  Mat m(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j, ++k) {
      if (!data[k].is_number()) throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
      const double v = data[k].get<double>();
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
      m(i, j) = v;
    }
  }
  return m;
}

Json to_json(const BipartiteCovariance& g) {
  return Json{{"n", g.n}, {"gamma_a", to_json(g.gamma_a)}, {"gamma_b", to_json(g.gamma_b)}, {"x", to_json(g.x)}};
}

BipartiteCovariance bipartite_from_json(const Json& doc) {
  BipartiteCovariance g;
  g.n = positive_int(doc, "n");
  g.gamma_a = matrix_field(doc, "gamma_a", 2 * g.n);
  g.gamma_b = matrix_field(doc, "gamma_b", 2 * g.n);
  g.x = matrix_field(doc, "x", 2 * g.n);
  return g;
}

Json to_json(const GaussianChannel& ch) {
  return Json{{"n", ch.n}, {"x", to_json(ch.x)}, {"y", to_json(ch.y)}, {"validity_residual", ch.validity_residual}};
}

GaussianChannel channel_from_json(const Json& doc, const Tolerances& tol) {
  const int n = positive_int(doc, "n");
  return make_channel(matrix_field(doc, "x", 2 * n), matrix_field(doc, "y", 2 * n), tol);
}

Json to_json(const Invariant& v) {
  return Json{{"re", v.re}, {"im", v.im}, {"kind", v.kind == InvariantKind::Real ? "Real" : "ComplexPair"}};
}

Json to_json(const InvariantSpectrum& s) {
  Json values = Json::array();
  for (const auto& v : s.values) values.push_back(to_json(v));
  return Json{{"n", s.n},
              {"values", std::move(values)},
              {"pairing_residual", s.pairing_residual},
              {"spectral_radius", s.spectral_radius},
              {"has_zero", s.has_zero},
              {"has_repeated", s.has_repeated}};
}

Json to_json(const CanonicalBlocks& b) {
  Json blocks = Json::array();
  for (const auto& v : b.blocks) blocks.push_back(to_json(v));
  return Json{{"n", b.n}, {"blocks", std::move(blocks)}, {"N", to_json(b.assembled)}};
}

Json to_json(const Decomposition& d) {
  return Json{{"S1", to_json(d.S1)},
              {"S2", to_json(d.S2)},
              {"canonical", to_json(d.blocks)},
              {"residuals",
               {{"recon", d.recon_residual},
                {"s1", d.s1_residual},
                {"s2", d.s2_residual},
                {"s_prime", d.s_prime_residual}}}};
}

Json to_json(const WilliamsonResult& w) {
  return Json{{"S", to_json(w.S)}, {"nu", w.nu}, {"occupations", w.occupations}, {"residual", w.residual}};
}

Json to_json(const WitnessReport& w) {
  return Json{{"spectrum", to_json(w.spectrum)},
              {"complex_found", w.complex_found},
              {"verdict", w.verdict == WitnessVerdict::SqueezingWitnessed ? "SqueezingWitnessed" : "Inconclusive"}};
}

std::string dump_json(const Json& doc) {
  std::string out;
  write(out, doc, 0);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
}

}  // namespace sympform
