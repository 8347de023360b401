#include "eurqm_cli/descriptors.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>

#include "eurqm/bases.hpp"
#include "eurqm/named_states.hpp"

namespace eurqm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::pair<std::string, std::string> split_kind(const std::string& descriptor) {
    const auto colon = descriptor.find(':');
    if (colon == std::string::npos) return {trim(descriptor), ""};
    return {trim(descriptor.substr(0, colon)), descriptor.substr(colon + 1)};
}

bool is_identifier(const std::string& s) {
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    return std::regex_match(s, ident) && s != "pi";
}

long parse_int(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(field + ": expected an integer, got '" + text + "'");
    }
}

nlohmann::json read_json_file(const std::string& path, const std::string& field) {
    std::ifstream in(path);
    if (!in) throw UsageError(field + ": cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(field + ": '" + path + "' is not valid JSON: " + e.what());
    }
}

ComplexMatrix matrix_from_json(const nlohmann::json& rows, const std::string& field) {
    if (!rows.is_array() || rows.empty()) throw UsageError(field + ": expected a non-empty array of rows");
    const auto n_rows = rows.size();
    const auto n_cols = rows.front().size();
    ComplexMatrix m(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n_cols) throw UsageError(field + ": ragged rows");
        for (std::size_t j = 0; j < n_cols; ++j) {
            const auto& z = rows[i][j];
            if (z.is_number()) {
                m(i, j) = z.get<double>();
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
            } else {
                throw UsageError(field + ": entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

}  // namespace

double parse_angle(const std::string& raw) {
    const std::string text = trim(raw);
    static const std::regex expr(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(pi)?(?:\s*/\s*((?:\d+\.?\d*|\.\d+)))?$)");
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, expr) || (!m[2].matched && !m[3].matched)) {
        throw UsageError("expected a number or multiple of pi, got '" + raw + "'");
    }
    double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[3].matched) v *= std::numbers::pi;
    if (m[4].matched) {
        const double den = std::stod(m[4].str());
        if (den == 0.0) throw UsageError("division by zero in '" + raw + "'");
        v /= den;
    }
    return m[1].str() == "-" ? -v : v;
}

BipartiteState parse_state(const std::string& descriptor) {
    const auto [kind, rest] = split_kind(descriptor);
    const auto args = split(rest, ',');
    auto need = [&](std::size_t n) {
        if (rest.empty() || args.size() != n) {
            throw UsageError("state '" + descriptor + "': " + kind + " takes " + std::to_string(n) + " parameter(s)");
        }
    };
    try {
        if (kind == "werner") {
            need(1);
            return werner_state(parse_angle(args[0]));
        }
        if (kind == "horodecki") {
            need(1);
            return horodecki_state(parse_angle(args[0]));
        }
        if (kind == "bell") {
            need(1);
            return maximally_entangled_state(static_cast<int>(parse_int(args[0], "state dimension")));
        }
        if (kind == "random") {
            need(3);
            return random_state(static_cast<int>(parse_int(args[0], "state d_A")),
                                static_cast<int>(parse_int(args[1], "state d_B")),
                                static_cast<std::uint64_t>(parse_int(args[2], "state seed")));
        }
        if (kind == "file") {
            if (rest.empty()) throw UsageError("state '" + descriptor + "': file needs a path");
            return state_from_json(read_json_file(rest, "state file"));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("state '" + descriptor + "': " + e.what());
    }
    throw UsageError("state '" + descriptor + "': unknown state kind '" + kind +
                     "' (expected werner, horodecki, bell, random or file)");
}

MeasurementTemplate MeasurementTemplate::parse(const std::string& descriptor) {
    MeasurementTemplate t;
    t.descriptor_ = trim(descriptor);
    const auto [kind, rest] = split_kind(t.descriptor_);
    t.kind_ = kind;

    static const std::regex group_re("group([123])\\.(y|z)");
    if (kind == "y2" || kind == "z2" || std::regex_match(kind, group_re)) {
        if (!rest.empty()) throw UsageError("measurement '" + descriptor + "': " + kind + " takes no parameters");
        return t;
    }
    if (kind == "file") {
        if (rest.empty()) throw UsageError("measurement '" + descriptor + "': file needs a path");
        t.path_ = rest;
        return t;
    }
    std::size_t expected = 0;
    if (kind == "qubit" || kind == "qutritx" || kind == "random") {
        expected = 2;
    } else {
        throw UsageError("measurement '" + descriptor + "': unknown kind '" + kind +
                         "' (expected qubit, qutritx, y2, z2, groupK.y, groupK.z, random or file)");
    }
    const auto args = split(rest, ',');
    if (rest.empty() || args.size() != expected) {
        throw UsageError("measurement '" + descriptor + "': " + kind + " takes " + std::to_string(expected) +
                         " parameters");
    }
    for (const auto& a : args) {
        if (is_identifier(a)) {
            if (kind == "random") throw UsageError("measurement '" + descriptor + "': random parameters must be numbers");
            t.params_.push_back({a, 0.0});
        } else {
            try {
                t.params_.push_back({"", parse_angle(a)});
            } catch (const UsageError& e) {
                throw UsageError("measurement '" + descriptor + "': " + e.what());
            }
        }
    }
    return t;
}

std::vector<std::string> MeasurementTemplate::free_parameters() const {
    std::vector<std::string> names;
    for (const auto& p : params_) {
        if (!p.name.empty()) names.push_back(p.name);
    }
    return names;
}

ProjectiveMeasurement MeasurementTemplate::instantiate(const std::map<std::string, double>& bindings) const {
    std::vector<double> values;
    for (const auto& p : params_) {
        if (p.name.empty()) {
            values.push_back(p.value);
            continue;
        }
        const auto it = bindings.find(p.name);
        if (it == bindings.end()) {
            throw UsageError("measurement '" + descriptor_ + "': parameter '" + p.name + "' is not bound");
        }
        values.push_back(it->second);
    }
    if (kind_ == "qubit") return qubit_basis(values[0], values[1]);
    if (kind_ == "qutritx") return qutrit_x(values[0], values[1]);
    if (kind_ == "y2") return qubit_y();
    if (kind_ == "z2") return qubit_z();
    if (kind_ == "random") {
        if (values[0] != std::floor(values[0]) || values[1] != std::floor(values[1]) || values[1] < 0) {
            throw UsageError("measurement '" + descriptor_ + "': random takes an integer dimension and seed");
        }
        try {
            return random_basis(static_cast<int>(values[0]), static_cast<std::uint64_t>(values[1]));
        } catch (const std::invalid_argument& e) {
            throw UsageError("measurement '" + descriptor_ + "': " + e.what());
        }
    }
    if (kind_ == "file") return basis_from_json(read_json_file(path_, "measurement file"));
    // groupK.y / groupK.z
    const auto g = qutrit_group(kind_[5] - '0');
    return kind_.back() == 'y' ? g.y : g.z;
}

ProjectiveMeasurement parse_measurement(const std::string& descriptor) {
    return MeasurementTemplate::parse(descriptor).instantiate();
}

BipartiteState state_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("rho")) {
        throw UsageError("state file: expected an object with 'dims' and 'rho'");
    }
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer()) {
        throw UsageError("state file: 'dims' must be [d_A, d_B]");
    }
    const ComplexMatrix rho = matrix_from_json(j["rho"], "state file 'rho'");
    try {
        return BipartiteState::from_matrix(rho, dims[0].get<int>(), dims[1].get<int>());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("state file: ") + e.what());
    }
}

ProjectiveMeasurement basis_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vectors")) throw UsageError("basis file: expected an object with 'vectors'");
    // Each listed vector becomes a column.
    const ComplexMatrix rows = matrix_from_json(j["vectors"], "basis file 'vectors'");
    const ComplexMatrix columns = rows.transpose();
    const std::string label = j.value("label", std::string("file"));
    try {
        if (j.value("orthonormalize", false)) return ProjectiveMeasurement::orthonormalized(label, columns);
        return ProjectiveMeasurement(label, columns);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("basis file: ") + e.what());
    }
}

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace eurqm::cli
