#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eurqm/states.hpp"

namespace eurqm::cli {

/// Thrown for malformed command-line input; the message names the field.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses "1.5", "pi", "-pi/2", "2pi", "3*pi/4", "0.25*pi".
double parse_angle(const std::string& text);

/// State descriptors:
///   werner:ETA   horodecki:ALPHA   bell:D   random:DA,DB,SEED   file:PATH.json
BipartiteState parse_state(const std::string& descriptor);

/// A measurement descriptor whose numeric parameters may be named sweep
/// variables, e.g. "qubit:theta,pi/8".
///   qubit:THETA,PHI   qutritx:THETA,PHI   y2   z2   groupK.y   groupK.z
///   random:D,SEED   file:PATH.json
class MeasurementTemplate {
  public:
    static MeasurementTemplate parse(const std::string& descriptor);

    const std::string& descriptor() const { return descriptor_; }
    /// Names of unbound parameters, in order of appearance.
    std::vector<std::string> free_parameters() const;
    ProjectiveMeasurement instantiate(const std::map<std::string, double>& bindings = {}) const;

  private:
    struct Param {
        std::string name;  // empty when numeric
        double value = 0.0;
    };

    std::string descriptor_;
    std::string kind_;
    std::vector<Param> params_;
    std::string path_;
};

/// Shorthand for MeasurementTemplate::parse(d).instantiate() with no free parameters.
ProjectiveMeasurement parse_measurement(const std::string& descriptor);

// JSON file schemas: complex numbers are [re, im] pairs.
//   state: {"dims": [dA, dB], "rho": [[[re, im], ...], ...]}
//   basis: {"label": "...", "vectors": [[[re, im], ...], ...], "orthonormalize": false}
BipartiteState state_from_json(const nlohmann::json& j);
ProjectiveMeasurement basis_from_json(const nlohmann::json& j);
nlohmann::json complex_matrix_to_json(const ComplexMatrix& m);

}  // namespace eurqm::cli
