#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qm::cli {

enum class Format { json, csv };

struct RunConfig {
    std::string command;     // venn2, venn3, separability, werner-sweep, conjecture,
                             // uncertainty-sweep, chain, consecutive, experiment
    std::string experiment;  // stern-gerlach, eraser, cat (experiment only)
    std::optional<std::string> preset;
    std::optional<std::string> input_path;
    std::optional<std::string> out_path;
    std::uint64_t seed = 0;
    std::optional<Format> format;  // unset: csv for sweeps, json otherwise
    int jobs = 0;

    std::optional<double> criterion_tol;  // eigenvalue <= 1 / PPT >= 0 tolerance

    // werner-sweep / uncertainty-sweep grids
    std::optional<double> from, to, step;
    std::optional<std::size_t> points;

    // conjecture
    std::uint64_t trials = 10000;
    std::size_t dim_a = 2, dim_b = 2;
    std::size_t k_min = 1, k_max = 4;

    // chain / consecutive
    std::vector<double> alpha;
    std::size_t ancillas = 2;
    std::size_t repeat = 0;
    bool export_state = false;
    std::optional<double> theta;
    std::optional<std::string> basis_path;

    // experiments
    bool sequential = false;
    std::string mode = "erased";
    double slit_separation = 0.0, envelope_width = 1.0, fringe_wavenumber = 10.0;
    std::size_t screen_points = 2048;
    double screen_half_width = 6.0;
    std::optional<std::string> sidecar_path;
    std::size_t cat_atoms = 1;
    bool observer = false;
};

Format effective_format(const RunConfig& config);

// Exit status: 0 success, 2 validation failure, 3 numerical-guard failure.
// `out` receives the result; `err` receives diagnostics.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qm::cli
