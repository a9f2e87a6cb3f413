#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "siginform/continuous_time.hpp"
#include "siginform/hankel.hpp"
#include "siginform/interconnection.hpp"
#include "siginform/lti.hpp"
#include "siginform/siggen.hpp"

namespace siginform {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);          // array of rows
Json vector_to_json(const Vector& v);          // flat array
Matrix matrix_from_json(const nlohmann::json& j, const std::string& what);
Vector vector_from_json(const nlohmann::json& j, const std::string& what);

// {"n":..., "A":[[...]], "B":[...], "C":[...], "D":..., "domain":"dt"|"ct"}
Json system_to_json(const LtiSystem& sys);
LtiSystem system_from_json(const nlohmann::json& j);

// {"Sg":[[...]], "Lg":[...], "w0":[...], "domain":"dt"|"ct"}
Json generator_to_json(const SignalGenerator& gen);
SignalGenerator generator_from_json(const nlohmann::json& j);

Json verdict_to_json(const InformativityVerdict& v);
Json analysis_to_json(const InterconnectionAnalysis& analysis);
Json theorem_verdict_to_json(const TheoremOneVerdict& v);

std::string case_label_name(CaseLabel label);
std::string prediction_name(InformativityPrediction p);

// CSV formats: signals carry a single `u` column, trajectories `u,y`,
// jet samples `t,u0..u{L-1},y0..y{L-1}`. All throw std::invalid_argument
// with a line number on malformed content.
std::vector<double> read_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, const std::vector<double>& u);
Trajectory read_trajectory_csv(std::istream& in);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
std::vector<JetSample> read_jets_csv(std::istream& in);
void write_jets_csv(std::ostream& out, const std::vector<JetSample>& samples);

// File wrappers with the path in error messages.
Json load_json_file(const std::string& path);
std::vector<double> load_signal_file(const std::string& path);
Trajectory load_trajectory_file(const std::string& path);

}  // namespace siginform
