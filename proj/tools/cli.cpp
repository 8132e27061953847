#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qmeas/experiments.hpp"
#include "qmeas/io.hpp"
#include "qmeas/kernels.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/presets.hpp"
#include "qmeas/separability.hpp"

namespace qm::cli {

namespace {

using io::Json;

bool is_sweep(const std::string& command) { return command == "werner-sweep" || command == "uncertainty-sweep"; }

Json config_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    if (!c.experiment.empty()) j["experiment"] = c.experiment;
    if (c.preset) j["preset"] = *c.preset;
    if (c.input_path) j["input"] = *c.input_path;
    j["seed"] = c.seed;
    j["format"] = effective_format(c) == Format::json ? "json" : "csv";
    j["jobs"] = c.jobs;
    j["criterion_tol"] = c.criterion_tol.value_or(kCriterionTol);

    if (c.command == "werner-sweep" || c.command == "uncertainty-sweep") {
        if (c.from) j["from"] = *c.from;
        if (c.to) j["to"] = *c.to;
        if (c.step) j["step"] = *c.step;
        if (c.points) j["points"] = *c.points;
    } else if (c.command == "conjecture") {
        j["trials"] = c.trials;
        j["dims"] = {c.dim_a, c.dim_b};
        j["components"] = {c.k_min, c.k_max};
    } else if (c.command == "chain" || c.command == "consecutive") {
        j["alpha"] = c.alpha;
        if (c.command == "chain") {
            j["ancillas"] = c.ancillas;
            j["repeat"] = c.repeat;
        } else {
            if (c.theta) j["theta"] = *c.theta;
            if (c.basis_path) j["basis"] = *c.basis_path;
        }
    } else if (c.command == "experiment") {
        if (c.experiment == "stern-gerlach") j["sequential"] = c.sequential;
        if (c.experiment == "eraser") {
            j["mode"] = c.mode;
            j["slit_separation"] = c.slit_separation;
            j["envelope_width"] = c.envelope_width;
            j["fringe_wavenumber"] = c.fringe_wavenumber;
            j["screen_points"] = c.screen_points;
            j["screen_half_width"] = c.screen_half_width;
        }
        if (c.experiment == "cat") {
            j["cat_atoms"] = c.cat_atoms;
            j["observer"] = c.observer;
        }
    }
    return j;
}

void write_csv_header(std::ostream& out, const Json& config) {
    for (const auto& [k, v] : config.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

void emit_json(std::ostream& out, const Json& config, Json result) {
    Json doc;
    doc["config"] = config;
    doc["result"] = std::move(result);
    out << doc.dump(2) << '\n';
}

DensityMatrix load_state(const RunConfig& c) {
    if (c.preset && c.input_path) throw ValidationError("give either --preset or --input, not both");
    if (c.preset) return preset(*c.preset).density;
    if (!c.input_path) throw ValidationError("a state is required: use --preset NAME or --input FILE");
    auto file = io::read_matrix_file(*c.input_path);
    if (file.matrix.cols() == 1) return density_from_pure(StateVector(file.matrix.col(0), file.factorization));
    return DensityMatrix(std::move(file.matrix), std::move(file.factorization));
}

std::vector<double> linear_grid(double from, double to, double step) {
    if (!(step > 0.0)) throw ValidationError("--step must be positive");
    if (!(to >= from)) throw ValidationError("--to must not be smaller than --from");
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) grid.push_back(std::min(to, from + static_cast<double>(k) * step));
    return grid;
}

std::vector<Complex> alpha_from(const RunConfig& c) {
    if (c.alpha.empty()) throw ValidationError("--alpha is required (comma-separated real amplitudes)");
    Vector a(static_cast<Eigen::Index>(c.alpha.size()));
    for (std::size_t i = 0; i < c.alpha.size(); ++i) {
        if (!std::isfinite(c.alpha[i])) throw ValidationError("--alpha entries must be finite");
        a(static_cast<Eigen::Index>(i)) = c.alpha[i];
    }
    if (a.norm() == 0.0) throw ValidationError("--alpha must not be the zero vector");
    a.normalize();
    return {a.data(), a.data() + a.size()};
}

int run_venn2(const RunConfig& c, std::ostream& out, const Json& config) {
    const auto rho = load_state(c);
    const auto v = venn2(rho);
    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        out << "s_a,s_b,s_ab,s_a_given_b,s_b_given_a,s_a_mutual_b\n";
        out << io::format_number(v.s_a) << ',' << io::format_number(v.s_b) << ',' << io::format_number(v.s_ab) << ','
            << io::format_number(v.s_a_given_b) << ',' << io::format_number(v.s_b_given_a) << ','
            << io::format_number(v.s_a_mutual_b) << '\n';
    } else {
        emit_json(out, config, io::to_json(v));
    }
    return 0;
}

int run_venn3(const RunConfig& c, std::ostream& out, const Json& config) {
    const auto v = venn3(load_state(c));
    const Json j = io::to_json(v);
    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        bool first = true;
        for (const auto& [k, _] : j.items()) out << (first ? "" : ",") << k, first = false;
        out << '\n';
        first = true;
        for (const auto& [_, val] : j.items()) out << (first ? "" : ",") << io::format_number(val.get<double>()), first = false;
        out << '\n';
    } else {
        emit_json(out, config, j);
    }
    return 0;
}

int run_separability(const RunConfig& c, std::ostream& out, const Json& config) {
    const auto report = analyze(load_state(c), c.criterion_tol.value_or(kCriterionTol));
    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        out << "cond_eig_max_ab,cond_eig_max_ba,ppt_eig_min,spectrum_classical,ppt_pass,cond_entropy_ab,cond_entropy_ba\n"
            << io::format_number(report.max_cond_eig_ab) << ',' << io::format_number(report.max_cond_eig_ba) << ','
            << io::format_number(report.min_ppt_eig) << ',' << (report.spectrum_classical ? "true" : "false") << ','
            << (report.ppt_pass ? "true" : "false") << ',' << io::format_number(report.cond_entropy_ab) << ','
            << io::format_number(report.cond_entropy_ba) << '\n';
    } else {
        emit_json(out, config, io::to_json(report));
    }
    return 0;
}

int run_werner_sweep(const RunConfig& c, std::ostream& out, const Json& config) {
    const auto grid = linear_grid(c.from.value_or(0.0), c.to.value_or(1.0), c.step.value_or(0.05));
    const auto rows = werner_threshold_sweep(grid, c.criterion_tol.value_or(kCriterionTol));
    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        io::write_werner_csv(out, rows);
    } else {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(Json{{"x", r.x}, {"report", io::to_json(r.report)}});
        emit_json(out, config, arr);
    }
    return 0;
}

int run_conjecture(const RunConfig& c, std::ostream& out, const Json& config) {
    ConjectureConfig cc;
    cc.trials = c.trials;
    cc.dims = {c.dim_a, c.dim_b};
    cc.k_range = {c.k_min, c.k_max};
    cc.seed = c.seed;
    cc.tol = c.criterion_tol.value_or(kCriterionTol);
    const auto outcome = conjecture_trial(cc);
    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        out << "trials,max_cond_eig,min_cond_entropy,counterexamples,criteria_disagreements\n"
            << outcome.trials << ',' << io::format_number(outcome.max_cond_eig) << ','
            << io::format_number(outcome.min_cond_entropy) << ',' << outcome.counterexamples.size() << ','
            << outcome.criteria_disagreements.size() << '\n';
    } else {
        emit_json(out, config, io::to_json(outcome));
    }
    return 0;
}

int run_uncertainty_sweep(const RunConfig& c, std::ostream& out, const Json& config) {
    std::vector<double> grid;
    const double lo = c.from.value_or(0.0), hi = c.to.value_or(std::numbers::pi / 2);
    if (c.step) {
        grid = linear_grid(lo, hi, *c.step);
    } else {
        const std::size_t n = c.points.value_or(201);
        if (n < 2) throw ValidationError("--points must be at least 2");
        for (std::size_t k = 0; k < n; ++k) grid.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    const auto rows = theta_sweep(grid);
    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        io::write_theta_csv(out, rows);
    } else {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back(Json{{"theta", r.theta}, {"bound_ours", r.bound_ours}, {"bound_dk", r.bound_dk}});
        emit_json(out, config, arr);
    }
    return 0;
}

int run_chain(const RunConfig& c, std::ostream& out, const Json& config) {
    std::vector<Complex> alpha;
    if (c.input_path) {
        const auto file = io::read_matrix_file(*c.input_path);
        if (file.matrix.cols() != 1) throw ValidationError("chain: --input must hold a state vector (one column)");
        const StateVector q(file.matrix.col(0), file.factorization);
        alpha.assign(q.amplitudes().data(), q.amplitudes().data() + q.amplitudes().size());
    } else {
        alpha = alpha_from(c);
    }
    const auto chain = measurement_chain(alpha, c.ancillas);
    const auto e = chain_entropies(chain);

    Json result;
    result["probabilities"] = chain.probabilities;
    result["entropies"] = {{"s_global", std::stod(io::format_number(e.s_global))},
                           {"s_system", std::stod(io::format_number(e.s_system))},
                           {"s_ancillas", std::stod(io::format_number(e.s_ancillas))},
                           {"s_system_given_ancillas", std::stod(io::format_number(e.s_system_given_ancillas))},
                           {"shannon_p", std::stod(io::format_number(shannon_entropy(chain.probabilities)))}};
    if (c.repeat > 0) {
        const auto rep = repeat_measurement(chain, c.repeat);
        Json joint = Json::array();
        for (Eigen::Index i = 0; i < rep.joint.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index j = 0; j < rep.joint.cols(); ++j) row.push_back(std::stod(io::format_number(rep.joint(i, j))));
            joint.push_back(std::move(row));
        }
        result["repeat"] = {{"second_pack", rep.second_pack},
                            {"joint", std::move(joint)},
                            {"off_diagonal_mass", std::stod(io::format_number(rep.off_diagonal_mass))}};
    }
    if (c.export_state) result["state"] = io::state_to_json(chain.psi);

    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        out << "s_global,s_system,s_ancillas,s_system_given_ancillas\n"
            << io::format_number(e.s_global) << ',' << io::format_number(e.s_system) << ','
            << io::format_number(e.s_ancillas) << ',' << io::format_number(e.s_system_given_ancillas) << '\n';
    } else {
        emit_json(out, config, std::move(result));
    }
    return 0;
}

int run_consecutive(const RunConfig& c, std::ostream& out, const Json& config, Rng& rng) {
    const auto alpha = alpha_from(c);
    std::optional<MeasurementBasisMap> basis;
    if (c.basis_path && c.theta) throw ValidationError("give either --theta or --basis, not both");
    if (c.basis_path) {
        auto file = io::read_matrix_file(*c.basis_path);
        basis.emplace(std::move(file.matrix));
    } else if (c.theta) {
        basis = MeasurementBasisMap::rotation(*c.theta);
    } else {
        basis = MeasurementBasisMap::random(alpha.size(), rng);
    }
    const auto m = consecutive_measurement(alpha, *basis);

    if (effective_format(c) == Format::csv) {
        write_csv_header(out, config);
        out << "s_a,s_b,s_b_given_a,h_q,bound_ours,bound_dk\n"
            << io::format_number(m.record.s_a) << ',' << io::format_number(m.record.s_b) << ','
            << io::format_number(m.s_b_given_a) << ',' << io::format_number(m.record.h_q) << ','
            << io::format_number(m.record.bound_ours) << ',' << io::format_number(m.record.bound_dk) << '\n';
        return 0;
    }
    Json result;
    result["record"] = io::to_json(m.record);
    result["s_b_given_a"] = std::stod(io::format_number(m.s_b_given_a));
    result["s_global"] = std::stod(io::format_number(m.s_global));
    result["p"] = m.p;
    result["q"] = m.q;
    result["basis"] = io::matrix_to_json(basis->u(), Factorization({basis->dim()}));
    result["rho_ab"] = io::matrix_to_json(m.rho_ab.matrix(), m.rho_ab.factorization());
    emit_json(out, config, std::move(result));
    return 0;
}

int run_experiment(const RunConfig& c, std::ostream& out, const Json& config) {
    if (c.experiment == "stern-gerlach") {
        const auto r = stern_gerlach(c.sequential);
        Json result = io::to_json(r.ledger);
        if (r.position_joint) {
            Json joint = Json::array();
            for (Eigen::Index i = 0; i < 2; ++i)
                joint.push_back({std::stod(io::format_number((*r.position_joint)(i, 0))),
                                 std::stod(io::format_number((*r.position_joint)(i, 1)))});
            result["position_joint"] = std::move(joint);
        }
        emit_json(out, config, std::move(result));
        return 0;
    }
    if (c.experiment == "cat") {
        const auto r = schroedinger_cat(c.cat_atoms, c.observer);
        emit_json(out, config, io::to_json(r.ledger));
        return 0;
    }
    if (c.experiment == "eraser") {
        EraserGeometry g;
        g.slit_separation = c.slit_separation;
        g.envelope_width = c.envelope_width;
        g.fringe_wavenumber = c.fringe_wavenumber;
        if (c.screen_points < 2) throw ValidationError("--points must be at least 2");
        for (std::size_t k = 0; k < c.screen_points; ++k)
            g.xs.push_back(-c.screen_half_width +
                           2.0 * c.screen_half_width * static_cast<double>(k) / static_cast<double>(c.screen_points - 1));
        const auto profile = quantum_eraser(parse_eraser_mode(c.mode), g);
        if (effective_format(c) == Format::csv) {
            write_csv_header(out, config);
            io::write_screen_csv(out, profile);
            if (c.sidecar_path) {
                std::ofstream side(*c.sidecar_path);
                if (!side) throw ValidationError("cannot write sidecar '" + *c.sidecar_path + "'");
                emit_json(side, config, io::sidecar_json(profile));
            }
        } else {
            emit_json(out, config, io::sidecar_json(profile));
        }
        return 0;
    }
    throw ValidationError("unknown experiment '" + c.experiment + "' (expected stern-gerlach, eraser, cat)");
}

}  // namespace

Format effective_format(const RunConfig& config) {
    if (config.format) return *config.format;
    return is_sweep(config.command) ? Format::csv : Format::json;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        kernels::set_jobs(c.jobs);
        const Json config = config_json(c);
        Rng rng = stream_for(c.seed, 0);
        if (c.command == "venn2") return run_venn2(c, out, config);
        if (c.command == "venn3") return run_venn3(c, out, config);
        if (c.command == "separability") return run_separability(c, out, config);
        if (c.command == "werner-sweep") return run_werner_sweep(c, out, config);
        if (c.command == "conjecture") return run_conjecture(c, out, config);
        if (c.command == "uncertainty-sweep") return run_uncertainty_sweep(c, out, config);
        if (c.command == "chain") return run_chain(c, out, config);
        if (c.command == "consecutive") return run_consecutive(c, out, config, rng);
        if (c.command == "experiment") return run_experiment(c, out, config);
        throw ValidationError("unknown command '" + c.command + "'");
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalGuardError& e) {
        err << "numerical guard: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace qm::cli
