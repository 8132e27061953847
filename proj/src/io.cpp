#include "qmeas/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qm::io {

namespace {

std::string where(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", col " + std::to_string(col);
}

// Presentation rounding to 12 significant digits.
double rounded(double x) { return std::stod(format_number(x)); }

Json spectrum_json(const RealVector& v) {
    Json a = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(rounded(v(k)));
    return a;
}

const Json& require_grid(const Json& doc, const char* key, std::size_t n) {
    if (!doc.contains(key)) throw ValidationError(std::string("matrix file: missing \"") + key + "\"");
    const Json& grid = doc.at(key);
    if (!grid.is_array() || grid.size() != n)
        throw ValidationError(std::string("matrix file: \"") + key + "\" must be an array of " + std::to_string(n) +
                              " rows");
    return grid;
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

MatrixFile parse_matrix_json(const Json& doc) {
    if (!doc.is_object()) throw ValidationError("matrix file: top level must be an object");
    if (!doc.contains("dims") || !doc.at("dims").is_array() || doc.at("dims").empty())
        throw ValidationError("matrix file: \"dims\" must be a non-empty array of positive integers");

    std::vector<std::size_t> dims;
    for (const auto& d : doc.at("dims")) {
        if (!d.is_number_integer() || d.get<long long>() <= 0)
            throw ValidationError("matrix file: \"dims\" must be a non-empty array of positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    Factorization f(dims);

    const Json& re = require_grid(doc, "re", f.total());
    const Json& im = require_grid(doc, "im", f.total());
    std::size_t cols = 0;
    if (re.at(0).is_array()) cols = re.at(0).size();
    if (cols != f.total() && cols != 1)
        throw ValidationError("matrix file: rows must have " + std::to_string(f.total()) + " entries (or 1 for a state)");

    Matrix m(static_cast<Eigen::Index>(f.total()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < f.total(); ++r) {
        const Json& rr = re.at(r);
        const Json& ir = im.at(r);
        if (!rr.is_array() || rr.size() != cols || !ir.is_array() || ir.size() != cols)
            throw ValidationError("matrix file: ragged row at " + where(r, 0) + " (expected " + std::to_string(cols) +
                                  " entries in both \"re\" and \"im\")");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& a = rr.at(c);
            const Json& b = ir.at(c);
            if (!a.is_number() || !b.is_number() || !std::isfinite(a.get<double>()) || !std::isfinite(b.get<double>()))
                throw ValidationError("matrix file: entry at " + where(r, c) + " is not a finite number");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(a.get<double>(), b.get<double>());
        }
    }
    return {std::move(m), std::move(f)};
}

MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("matrix file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_matrix_json(doc);
}

Json matrix_to_json(const Matrix& m, const Factorization& f) {
    Json doc;
    doc["dims"] = f.dims();
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json rr = Json::array(), ir = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real() + 0.0);
            ir.push_back(m(r, c).imag() + 0.0);
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    return doc;
}

Json state_to_json(const StateVector& psi) {
    return matrix_to_json(Matrix(psi.amplitudes()), psi.factorization());
}

Json to_json(const VennDiagram2& v) {
    return Json{{"s_a", rounded(v.s_a)},
                {"s_b", rounded(v.s_b)},
                {"s_ab", rounded(v.s_ab)},
                {"s_a_given_b", rounded(v.s_a_given_b)},
                {"s_b_given_a", rounded(v.s_b_given_a)},
                {"s_a_mutual_b", rounded(v.s_a_mutual_b)}};
}

Json to_json(const VennDiagram3& v) {
    return Json{{"s_a", rounded(v.s_a)},
                {"s_b", rounded(v.s_b)},
                {"s_c", rounded(v.s_c)},
                {"s_ab", rounded(v.s_ab)},
                {"s_ac", rounded(v.s_ac)},
                {"s_bc", rounded(v.s_bc)},
                {"s_abc", rounded(v.s_abc)},
                {"s_a_given_bc", rounded(v.s_a_given_bc)},
                {"s_b_given_ac", rounded(v.s_b_given_ac)},
                {"s_c_given_ab", rounded(v.s_c_given_ab)},
                {"s_a_mutual_b_given_c", rounded(v.s_ab_given_c)},
                {"s_a_mutual_c_given_b", rounded(v.s_ac_given_b)},
                {"s_b_mutual_c_given_a", rounded(v.s_bc_given_a)},
                {"s_center", rounded(v.s_center)}};
}

Json to_json(const SeparabilityReport& r) {
    return Json{{"max_cond_eig_ab", rounded(r.max_cond_eig_ab)},
                {"max_cond_eig_ba", rounded(r.max_cond_eig_ba)},
                {"spectrum_classical", r.spectrum_classical},
                {"min_ppt_eig", rounded(r.min_ppt_eig)},
                {"ppt_pass", r.ppt_pass},
                {"cond_entropy_ab", rounded(r.cond_entropy_ab)},
                {"cond_entropy_ba", rounded(r.cond_entropy_ba)},
                {"nonneg_cond_entropy", r.nonneg_cond_entropy},
                {"cond_spectrum_ab", spectrum_json(r.cond_spectrum_ab)},
                {"cond_spectrum_ba", spectrum_json(r.cond_spectrum_ba)},
                {"ppt_spectrum", spectrum_json(r.ppt_spectrum)}};
}

Json to_json(const EntropyLedger& ledger) {
    Json stages = Json::array();
    for (const auto& s : ledger.stages) {
        Json e = Json::object();
        for (const auto& [k, v] : s.entropies) e[k] = rounded(v);
        stages.push_back(Json{{"name", s.name}, {"entropies", std::move(e)}});
    }
    return Json{{"scenario", ledger.scenario}, {"stages", std::move(stages)}};
}

Json to_json(const UncertaintyRecord& r) {
    return Json{{"s_a", rounded(r.s_a)},
                {"s_b", rounded(r.s_b)},
                {"h_q", rounded(r.h_q)},
                {"bound_ours", rounded(r.bound_ours)},
                {"bound_dk", rounded(r.bound_dk)}};
}

Json to_json(const ConjectureOutcome& outcome) {
    Json cex = Json::array();
    for (const auto& c : outcome.counterexamples) {
        Json fa = Json::array(), fb = Json::array();
        for (std::size_t k = 0; k < c.sample.factors_a.size(); ++k) {
            fa.push_back(matrix_to_json(c.sample.factors_a[k], c.sample.factorization.restrict_to(std::vector<std::size_t>{0})));
            fb.push_back(matrix_to_json(c.sample.factors_b[k], c.sample.factorization.restrict_to(std::vector<std::size_t>{1})));
        }
        cex.push_back(Json{{"seed", c.seed},
                           {"trial", c.trial},
                           {"weights", c.sample.weights},
                           {"factors_a", std::move(fa)},
                           {"factors_b", std::move(fb)},
                           {"report", to_json(c.report)}});
    }
    return Json{{"trials", outcome.trials},
                {"max_cond_eig", rounded(outcome.max_cond_eig)},
                {"min_cond_entropy", rounded(outcome.min_cond_entropy)},
                {"counterexample_count", outcome.counterexamples.size()},
                {"criteria_disagreement_count", outcome.criteria_disagreements.size()},
                {"criteria_disagreements", outcome.criteria_disagreements},
                {"counterexamples", std::move(cex)}};
}

Json sidecar_json(const ScreenProfile& p) {
    return Json{{"mode", to_string(p.mode)},
                {"visibility", rounded(p.visibility)},
                {"post_selection_probability", rounded(p.post_selection_probability)},
                {"integrated_intensity", rounded(p.integrated_intensity)},
                {"geometry",
                 {{"slit_separation", p.geometry.slit_separation},
                  {"envelope_width", p.geometry.envelope_width},
                  {"fringe_wavenumber", p.geometry.fringe_wavenumber},
                  {"points", p.xs.size()},
                  {"x_min", p.xs.empty() ? 0.0 : p.xs.front()},
                  {"x_max", p.xs.empty() ? 0.0 : p.xs.back()}}},
                {"ledger", to_json(p.ledger)}};
}

void write_werner_csv(std::ostream& os, const std::vector<WernerRow>& rows) {
    os << "x,cond_eig_max,ppt_eig_min,spectrum_classical,ppt_pass\n";
    for (const auto& r : rows) {
        const double eig = std::max(r.report.max_cond_eig_ab, r.report.max_cond_eig_ba);
        os << format_number(r.x) << ',' << format_number(eig) << ',' << format_number(r.report.min_ppt_eig) << ','
           << (r.report.spectrum_classical ? "true" : "false") << ',' << (r.report.ppt_pass ? "true" : "false")
           << '\n';
    }
}

void write_theta_csv(std::ostream& os, const std::vector<ThetaRow>& rows) {
    os << "theta,bound_ours,bound_dk\n";
    for (const auto& r : rows)
        os << format_number(r.theta) << ',' << format_number(r.bound_ours) << ',' << format_number(r.bound_dk) << '\n';
}

void write_screen_csv(std::ostream& os, const ScreenProfile& p) {
    os << "x,intensity\n";
    for (std::size_t k = 0; k < p.xs.size(); ++k)
        os << format_number(p.xs[k]) << ',' << format_number(p.intensity[k]) << '\n';
}

}  // namespace qm::io
