#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "periodica/diagram.hpp"
#include "periodica/estimators.hpp"
#include "periodica/noise.hpp"
#include "periodica/odometry.hpp"
#include "periodica/persistence.hpp"
#include "periodica/signal.hpp"

namespace periodica::io {

/// CSV with header `t,value`. Throws ParseError naming the offending line.
Signal read_signal_csv(std::istream& in);
Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(std::ostream& out, const Signal& s);
void write_signal_csv(const std::filesystem::path& path, const Signal& s);

std::string diagram_to_json(const AnnotatedDiagram& d);
AnnotatedDiagram diagram_from_json(std::string_view text);

std::string measure_to_json(const PersistenceMeasure& m);
PersistenceMeasure measure_from_json(std::string_view text);

std::string report_to_json(const EstimatorReport& r);

/// Ground truth of a synthetic signal: template id, gamma and time span.
struct ReparamDocument {
  std::string template_id;
  Reparam gamma;
  double duration = 1.0;
};

std::string reparam_to_json(const ReparamDocument& doc);
ReparamDocument reparam_from_json(std::string_view text);

std::string gp_config_to_json(const GPConfig& cfg);
GPConfig gp_config_from_json(std::string_view text);

std::string bound_to_json(std::string_view kind, const BoundInputs& in, double literal, double corrected);

std::string odometry_to_json(const OdometricResult& r);
std::string metrics_to_json(const OdometryMetrics& m);

std::string read_text(const std::filesystem::path& path);

}  // namespace periodica::io
