#pragma once

#include <string>

#include "tricert/certifier.hpp"

namespace tricert {

/// ComplexFileV1: {"version":1, "dimension_m":m, "ambient_N":N,
/// "vertices":[[...]], "simplices":[[...]]} with simplices sorted ascending per
/// row. An optional "orientations" array (+1/-1 per simplex, parity relative
/// to the sorted row) preserves orientation; files without it are oriented
/// coherently by propagation on load.
void save_complex(const GeometricComplex& c, const std::string& path);
std::string complex_to_json(const GeometricComplex& c);
GeometricComplex load_complex(const std::string& path);
GeometricComplex complex_from_json(const std::string& text);

std::string report_to_json(const CertificationReport& report);
std::string report_to_csv(const CertificationReport& report);  // name,lhs,rhs,margin
void save_report(const CertificationReport& report, const std::string& json_path,
                 const std::string& csv_path = "");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tricert
