#pragma once

// Shared file formats.
//
// Matrix JSON: {"dims": [d1, ..., dk], "re": [[...], ...], "im": [[...], ...]},
// row-major, finite doubles, rows == cols == prod(dims) for operators. A
// column (rows == prod(dims), one column) is read as a state vector.
//
// CSV numbers are printed with 12 significant digits.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qmeas/experiments.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/separability.hpp"

namespace qm::io {

using Json = nlohmann::ordered_json;

struct MatrixFile {
    Matrix matrix;
    Factorization factorization;
};

// Throws ValidationError naming the first offending row/column.
MatrixFile parse_matrix_json(const Json& doc);
MatrixFile read_matrix_file(const std::string& path);
Json matrix_to_json(const Matrix& m, const Factorization& f);
Json state_to_json(const StateVector& psi);

std::string format_number(double x);  // %.12g, with -0 printed as 0

Json to_json(const VennDiagram2& v);
Json to_json(const VennDiagram3& v);
Json to_json(const SeparabilityReport& r);
Json to_json(const EntropyLedger& ledger);
Json to_json(const UncertaintyRecord& r);
Json to_json(const ConjectureOutcome& outcome);
Json sidecar_json(const ScreenProfile& p);

void write_werner_csv(std::ostream& os, const std::vector<WernerRow>& rows);
void write_theta_csv(std::ostream& os, const std::vector<ThetaRow>& rows);
void write_screen_csv(std::ostream& os, const ScreenProfile& p);

}  // namespace qm::io
