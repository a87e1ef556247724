#pragma once

// JSON / CSV serialization helpers shared by the CLI and tests.
// All machine-readable numeric output is printed round-trip safe
// (17 significant digits); human tables use 4.

#include "channel.hpp"
#include "code.hpp"
#include "optimal.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qeclab {

using nlohmann::json;

inline std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline json to_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
    return arr;
}

inline Vec vec_from_json(const json& arr) {
    Vec v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        v(long(i)) = cplx(arr[i][0].get<double>(), arr[i][1].get<double>());
    return v;
}

inline json to_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const BosonicCode& code) {
    return json{{"label", code.label},
                {"dim", code.dim},
                {"params", code.params},
                {"ket0", to_json(code.ket0)},
                {"ket1", to_json(code.ket1)}};
}

inline BosonicCode code_from_json(const json& j) {
    return custom_code(vec_from_json(j.at("ket0")), vec_from_json(j.at("ket1")),
                       j.value("label", "custom"));
}

inline json to_json(const QuantumChannel& ch) {
    json kraus = json::array();
    for (const Mat& k : ch.kraus) kraus.push_back(to_json(k));
    return json{{"dim_in", ch.dim_in}, {"dim_out", ch.dim_out}, {"kraus", kraus}};
}

inline json to_json(const OptimizationResult& r) {
    json restarts = json::array();
    for (const auto& t : r.per_restart)
        restarts.push_back({{"fidelity", t.fidelity},
                            {"rounds", t.rounds},
                            {"converged", t.converged},
                            {"failed", t.failed}});
    return json{{"code", to_json(r.code)},     {"fidelity", r.fidelity},
                {"infidelity", 1.0 - r.fidelity}, {"rounds", r.rounds},
                {"converged", r.converged},    {"isometric", r.isometric},
                {"energy", r.energy},          {"energy_slack", r.energy_slack},
                {"restarts", restarts}};
}

inline json to_json(const OkbScan& s) {
    return json{{"best_k", s.best_k},
                {"best_fidelity", s.best_fidelity},
                {"k_grid", s.k_grid},
                {"fidelities", s.fidelities}};
}

/// Minimal CSV writer; cells are written as given (format numbers with fmt17).
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("unwritable path: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("unwritable path: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qeclab
