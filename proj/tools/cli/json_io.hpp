#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qcorr/channels.hpp"
#include "qcorr/correlation.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/teleportation.hpp"
#include "qcorr/theorem.hpp"

namespace qcorr::io {

using json = nlohmann::json;

/// Input document does not match the state / channel / matrix schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads and parses a JSON file. Parse failures are rethrown as SchemaError
/// carrying the path and the line/column reported by the parser.
json read_json_file(const std::string& path);

/// Matrix schema: [[ [re, im], ... ], ...], row-major.
ComplexMatrix parse_matrix(const json& j, const std::string& where);
json matrix_to_json(const ComplexMatrix& m);

/// {"dim": n, "mat": matrix}
ComplexMatrix parse_square_matrix_document(const json& j, const std::string& where);
json square_matrix_document(const ComplexMatrix& m);

/// State schema {"dim": n, "mat": matrix}
DensityMatrix parse_state(const json& j, const std::string& where = "state");
json state_to_json(const DensityMatrix& rho);

/// Channel schema {"dim": n, "kraus": [matrix, ...]}
KrausChannel parse_channel(const json& j, const std::string& where = "channel");
json channel_to_json(const KrausChannel& channel);

/// Pretty-printed JSON with every float written as %.17g and keys in sorted order.
std::string dump_canonical(const json& j);
/// A number with 17 significant digits (CSV and JSON share this).
std::string format_double(double x);

json to_json(const MeasurementBasis& basis);
json to_json(const CorrelationResult& result);
json to_json(const ChannelClass& c);
json to_json(const ClassicalQuantumEnsemble& e);
json to_json(const Witness& w);
json to_json(const ClassificationReport& r);
json to_json(const Theorem1Report& r);
json to_json(const QutritReport& r);
json to_json(const AmplitudeDampingDemo& d);
json to_json(const SingletFractionResult& r);
json to_json(const MsfComparison& m);
json to_json(std::span<const TrajectoryPoint> trajectory);

/// Header "t,deficit_bits,discord_bits,converged_flag", one row per time point.
std::string trajectory_csv(std::span<const TrajectoryPoint> trajectory);

}  // namespace qcorr::io
