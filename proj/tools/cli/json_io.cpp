#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qcorr::io {

namespace {

const json& require_key(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
  return *it;
}

std::size_t require_dim(const json& j, const std::string& where) {
  const json& dim = require_key(j, "dim", where);
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
    throw SchemaError(where + ": \"dim\" must be a positive integer");
  }
  return dim.get<std::size_t>();
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

void write_json(const json& j, std::string& out, int level) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write_json(it.value(), out, level + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested arrays/objects get one element per line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          write_json(e, out, level + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_json(e, out, level + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json ket_to_json(std::span<const Complex> v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back(complex_to_json(z));
  return arr;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

ComplexMatrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw SchemaError(row_where + ": row must be an array");
    if (r == 0) cols = row.size();
    if (row.size() != cols || cols == 0) throw SchemaError(row_where + ": ragged or empty row");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& entry = row[c];
      const std::string entry_where = row_where + "[" + std::to_string(c) + "]";
      if (!entry.is_array() || entry.size() != 2) throw SchemaError(entry_where + ": entry must be [re, im]");
      const double re = require_number(entry[0], entry_where);
      const double im = require_number(entry[1], entry_where);
      if (!std::isfinite(re) || !std::isfinite(im)) throw SchemaError(entry_where + ": non-finite entry");
      entries.emplace_back(re, im);
    }
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix parse_square_matrix_document(const json& j, const std::string& where) {
  const std::size_t dim = require_dim(j, where);
  ComplexMatrix m = parse_matrix(require_key(j, "mat", where), where + ".mat");
  if (m.rows() != dim || m.cols() != dim) {
    throw SchemaError(where + ": \"mat\" is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      " but \"dim\" is " + std::to_string(dim));
  }
  return m;
}

json square_matrix_document(const ComplexMatrix& m) { return {{"dim", m.rows()}, {"mat", matrix_to_json(m)}}; }

DensityMatrix parse_state(const json& j, const std::string& where) {
  return DensityMatrix(parse_square_matrix_document(j, where));
}

json state_to_json(const DensityMatrix& rho) { return square_matrix_document(rho.matrix()); }

KrausChannel parse_channel(const json& j, const std::string& where) {
  const std::size_t dim = require_dim(j, where);
  const json& kraus = require_key(j, "kraus", where);
  if (!kraus.is_array() || kraus.empty()) throw SchemaError(where + ": \"kraus\" must be a non-empty array");
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    const std::string op_where = where + ".kraus[" + std::to_string(i) + "]";
    ComplexMatrix e = parse_matrix(kraus[i], op_where);
    if (e.rows() != dim || e.cols() != dim) {
      throw SchemaError(op_where + ": operator is " + std::to_string(e.rows()) + "x" + std::to_string(e.cols()) +
                        " but \"dim\" is " + std::to_string(dim));
    }
    ops.push_back(std::move(e));
  }
  return KrausChannel(std::move(ops));
}

json channel_to_json(const KrausChannel& channel) {
  json kraus = json::array();
  for (const auto& e : channel.kraus()) kraus.push_back(matrix_to_json(e));
  return {{"dim", channel.dim()}, {"kraus", std::move(kraus)}};
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_canonical(const json& j) {
  std::string out;
  write_json(j, out, 0);
  out += "\n";
  return out;
}

json to_json(const MeasurementBasis& basis) {
  json kets = json::array();
  for (std::size_t i = 0; i < basis.dim(); ++i) kets.push_back(ket_to_json(basis.ket(i)));
  return {{"parameters", basis.parameters()}, {"kets", std::move(kets)}};
}

json to_json(const CorrelationResult& result) {
  return {{"value", result.value}, {"converged", result.converged}, {"optimalBasis", to_json(result.optimal_basis)}};
}

json to_json(const ChannelClass& c) {
  json out = {{"channelClass", std::string(to_string(c.kind))},
              {"unitalityDefect", c.unitality_defect},
              {"decoherenceDefect", c.decoherence_defect}};
  if (c.decohering_basis) out["decoheringBasis"] = matrix_to_json(*c.decohering_basis);
  return out;
}

json to_json(const ClassicalQuantumEnsemble& e) {
  json terms = json::array();
  for (const auto& t : e.terms()) {
    terms.push_back({{"weight", t.weight}, {"blockA", state_to_json(t.block_a)}, {"ketB", ket_to_json(t.ket_b)}});
  }
  return {{"dims", {e.dims().a, e.dims().b}}, {"terms", std::move(terms)}};
}

json to_json(const Witness& w) {
  return {{"ensemble", to_json(w.ensemble)},
          {"basisParams", {w.basis_params[0], w.basis_params[1]}},
          {"commutatorNorm", w.commutator_norm},
          {"achievedDiscord", w.discord},
          {"achievedDeficit", w.deficit},
          {"converged", w.converged}};
}

json to_json(const ClassificationReport& r) {
  json out = to_json(r.channel_class);
  json scan = json::array();
  for (const auto& s : r.commutator_scan) {
    scan.push_back({{"basisParams", {s.basis_params[0], s.basis_params[1]}}, {"commutatorNorm", s.commutator_norm}});
  }
  out["commutatorScan"] = std::move(scan);
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return out;
}

json to_json(const Theorem1Report& r) {
  json out = to_json(r.channel_class);
  out["states"] = r.states;
  out["maxDeficit"] = r.max_deficit;
  out["maxDiscord"] = r.max_discord;
  out["allBelowThreshold"] = r.all_below;
  out["converged"] = r.converged;
  out["consistentWithTheorem"] = r.consistent;
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return out;
}

json to_json(const QutritReport& r) {
  return {{"e0", r.e0},
          {"e1", r.e1},
          {"mixing", r.mixing.mixing},
          {"unitalityDefect", r.mixing.defect},
          {"commutator", matrix_to_json(r.commutator)},
          {"commutatorNorm", r.commutator_norm},
          {"patternCoefficient", r.coefficient},
          {"patternShapeError", r.shape_error},
          {"deficit", to_json(r.deficit)},
          {"discord", to_json(r.discord)}};
}

json to_json(const AmplitudeDampingDemo& d) {
  return {{"p", d.p},
          {"classification", to_json(d.classification)},
          {"input", to_json(plus_minus_ensemble())},
          {"deficit", to_json(d.deficit)},
          {"discord", to_json(d.discord)}};
}

json to_json(const SingletFractionResult& r) {
  return {{"singletFraction", r.fraction},
          {"fidelity", r.fidelity},
          {"optimalMES", ket_to_json(r.optimal_mes)},
          {"converged", r.converged}};
}

json to_json(const MsfComparison& m) {
  return {{"singletFractionBefore", m.before},
          {"singletFractionAfter", m.after},
          {"singletFractionAfterDual", m.after_dual},
          {"converged", m.converged}};
}

json to_json(std::span<const TrajectoryPoint> trajectory) {
  json rows = json::array();
  for (const auto& p : trajectory) {
    rows.push_back({{"t", p.t}, {"deficit_bits", p.deficit}, {"discord_bits", p.discord}, {"converged", p.converged}});
  }
  return {{"trajectory", std::move(rows)}};
}

std::string trajectory_csv(std::span<const TrajectoryPoint> trajectory) {
  std::string out = "t,deficit_bits,discord_bits,converged_flag\n";
  for (const auto& p : trajectory) {
    out += format_double(p.t) + "," + format_double(p.deficit) + "," + format_double(p.discord) + "," +
           (p.converged ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace qcorr::io
