#include "tricert/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tricert {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string complex_to_json(const GeometricComplex& c) {
    json j;
    j["version"] = 1;
    j["dimension_m"] = c.dim();
    j["ambient_N"] = c.ambient_dim();
    json verts = json::array();
    for (VertexId v = 0; v < c.n_vertices(); ++v) {
        json row = json::array();
        auto vv = c.vertex(v);
        for (int i = 0; i < c.ambient_dim(); ++i) row.push_back(vv(i));
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    json simplices = json::array();
    json orientations = json::array();
    for (std::int64_t t = 0; t < c.n_top(); ++t) {
        json row = json::array();
        for (VertexId v : c.top(t)) row.push_back(v);
        simplices.push_back(std::move(row));
        orientations.push_back(c.parity(t));
    }
    j["simplices"] = std::move(simplices);
    j["orientations"] = std::move(orientations);
    return j.dump();
}

void save_complex(const GeometricComplex& c, const std::string& path) {
    write_text_file(path, complex_to_json(c) + "\n");
}

GeometricComplex complex_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    auto need = [&](const char* field) {
        if (!j.contains(field)) throw FormatError(std::string("missing field '") + field + "'");
        return j.at(field);
    };
    if (need("version").get<int>() != 1) throw FormatError("unsupported version");
    int m = need("dimension_m").get<int>();
    int N = need("ambient_N").get<int>();
    if (m < 0 || N < m || N > 16) throw FormatError("bad dimension_m/ambient_N");
    GeometricComplex c(m, N);
    const auto& verts = need("vertices");
    if (!verts.is_array()) throw FormatError("'vertices' must be an array");
    for (const auto& row : verts) {
        if (!row.is_array() || int(row.size()) != N)
            throw FormatError("vertex row must have ambient_N entries");
        Vector v(N);
        for (int i = 0; i < N; ++i) {
            if (!row[size_t(i)].is_number()) throw FormatError("vertex entries must be numbers");
            v(i) = row[size_t(i)].get<double>();
            if (!std::isfinite(v(i))) throw FormatError("vertex entries must be finite");
        }
        c.add_vertex(v);
    }
    const auto& simplices = need("simplices");
    if (!simplices.is_array()) throw FormatError("'simplices' must be an array");
    for (const auto& row : simplices) {
        if (!row.is_array() || int(row.size()) != m + 1)
            throw FormatError("simplex row must have dimension_m+1 entries");
        std::vector<VertexId> key;
        for (const auto& e : row) {
            if (!e.is_number_integer()) throw FormatError("simplex entries must be integers");
            std::int64_t idx = e.get<std::int64_t>();
            if (idx < 0 || idx >= c.n_vertices()) throw FormatError("simplex index out of range");
            key.push_back(VertexId(idx));
        }
        for (size_t i = 0; i + 1 < key.size(); ++i)
            if (key[i] >= key[i + 1]) throw FormatError("simplex rows must be sorted ascending");
        c.add_top_simplex(key);
    }
    try {
        c.finalize();
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
    if (j.contains("orientations")) {
        const auto& ors = j.at("orientations");
        if (!ors.is_array() || std::int64_t(ors.size()) != c.n_top())
            throw FormatError("'orientations' must list one +-1 per simplex");
        for (std::int64_t t = 0; t < c.n_top(); ++t) {
            int o = ors[size_t(t)].get<int>();
            if (o != 1 && o != -1) throw FormatError("orientations entries must be +-1");
            if (o != c.parity(t)) c.flip_orientation(t);
        }
    } else if (c.n_top() > 0) {
        c.orient_coherently();
    }
    return c;
}

GeometricComplex load_complex(const std::string& path) {
    return complex_from_json(read_text_file(path));
}

std::string report_to_json(const CertificationReport& report) {
    json j;
    j["mode"] = to_string(report.mode);
    j["verdict"] = to_string(report.verdict);
    json criteria = json::array();
    for (const auto& c : report.criteria) {
        json jc;
        jc["name"] = c.name;
        jc["holds"] = c.holds;
        jc["lhs"] = c.lhs;
        jc["rhs"] = c.rhs;
        jc["margin"] = c.margin;
        jc["witnesses"] = c.witnesses;
        criteria.push_back(std::move(jc));
    }
    j["criteria"] = std::move(criteria);
    return j.dump(2);
}

std::string report_to_csv(const CertificationReport& report) {
    std::ostringstream os;
    os << "name,lhs,rhs,margin\n";
    os.precision(17);
    for (const auto& c : report.criteria)
        os << c.name << "," << c.lhs << "," << c.rhs << "," << c.margin << "\n";
    return os.str();
}

void save_report(const CertificationReport& report, const std::string& json_path,
                 const std::string& csv_path) {
    if (!json_path.empty()) write_text_file(json_path, report_to_json(report) + "\n");
    if (!csv_path.empty()) write_text_file(csv_path, report_to_csv(report));
}

}  // namespace tricert
