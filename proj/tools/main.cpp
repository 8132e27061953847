#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using qm::cli::Format;
using qm::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& c) {
    static const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};
    sub->add_option("--seed", c.seed, "RNG seed (default 0)");
    sub->add_option("--format", c.format, "Output format: json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", c.out_path, "Write result to this file instead of stdout");
    sub->add_option("--jobs", c.jobs, "Worker threads for parallel sweeps (0 = OpenMP default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--criterion-tol", c.criterion_tol, "Tolerance for separability verdicts (default 1e-8)")
        ->check(CLI::PositiveNumber);
}

void add_state_input(CLI::App* sub, RunConfig& c) {
    sub->add_option("--preset", c.preset, "Named state: bell, case1, case2, case3, ghz, werner:<x>, nplet:<m>");
    sub->add_option("--input", c.input_path, "Matrix JSON file")->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmeas: quantum entropy and measurement toolkit"};
    app.require_subcommand(1);
    RunConfig c;

    auto* venn2 = app.add_subcommand("venn2", "Two-party entropy Venn diagram");
    add_common(venn2, c);
    add_state_input(venn2, c);

    auto* venn3 = app.add_subcommand("venn3", "Three-party entropy Venn diagram");
    add_common(venn3, c);
    add_state_input(venn3, c);

    auto* sep = app.add_subcommand("separability", "Conditional-spectrum and PPT separability tests");
    add_common(sep, c);
    add_state_input(sep, c);

    auto* werner = app.add_subcommand("werner-sweep", "Separability verdicts across Werner states");
    add_common(werner, c);
    werner->add_option("--from", c.from, "First x (default 0)");
    werner->add_option("--to", c.to, "Last x (default 1)");
    werner->add_option("--step", c.step, "Grid step (default 0.05)");

    auto* conj = app.add_subcommand("conjecture", "Search random separable states for conditional-spectrum violations");
    add_common(conj, c);
    conj->add_option("--trials", c.trials, "Number of random states (default 10000)");
    conj->add_option("--dim-a", c.dim_a, "Dimension of A (default 2)")->check(CLI::PositiveNumber);
    conj->add_option("--dim-b", c.dim_b, "Dimension of B (default 2)")->check(CLI::PositiveNumber);
    conj->add_option("--k-min", c.k_min, "Minimum mixture components (default 1)")->check(CLI::PositiveNumber);
    conj->add_option("--k-max", c.k_max, "Maximum mixture components (default 4)")->check(CLI::PositiveNumber);

    auto* unc = app.add_subcommand("uncertainty-sweep", "Entropic uncertainty bounds for a rotated qubit basis");
    add_common(unc, c);
    unc->add_option("--from", c.from, "First angle (default 0)");
    unc->add_option("--to", c.to, "Last angle (default pi/2)");
    unc->add_option("--step", c.step, "Grid step (overrides --points)");
    unc->add_option("--points", c.points, "Number of grid points (default 201)");

    auto* chain = app.add_subcommand("chain", "Von Neumann measurement chain with m ancillas");
    add_common(chain, c);
    chain->add_option("--alpha", c.alpha, "Real amplitudes, comma separated (normalized)")->delimiter(',');
    chain->add_option("--input", c.input_path, "State vector JSON file instead of --alpha")->check(CLI::ExistingFile);
    chain->add_option("--ancillas,-m", c.ancillas, "Number of ancillas (default 2)");
    chain->add_option("--repeat", c.repeat, "Repeat the measurement with this many further ancillas");
    chain->add_flag("--export-state", c.export_state, "Include the joint state vector in the JSON result");

    auto* cons = app.add_subcommand("consecutive", "Two consecutive measurements in bases related by U");
    add_common(cons, c);
    cons->add_option("--alpha", c.alpha, "Real amplitudes, comma separated (normalized)")->delimiter(',')->required();
    cons->add_option("--theta", c.theta, "Qubit rotation angle for U");
    cons->add_option("--basis", c.basis_path, "Matrix JSON file holding U")->check(CLI::ExistingFile);

    auto* exp = app.add_subcommand("experiment", "Gedankenexperiment entropy ledgers");
    exp->require_subcommand(1);
    auto* sg = exp->add_subcommand("stern-gerlach", "Stern-Gerlach measurement");
    add_common(sg, c);
    sg->add_flag("--sequential", c.sequential, "Add a second gradient along y");
    auto* eraser = exp->add_subcommand("eraser", "Double slit with which-path tag and eraser");
    add_common(eraser, c);
    eraser->add_option("--mode", c.mode, "baseline, tagged, erased or recorded (default erased)");
    eraser->add_option("--slit-separation", c.slit_separation, "Slit separation d (default 0)");
    eraser->add_option("--envelope-width", c.envelope_width, "Gaussian envelope width (default 1)");
    eraser->add_option("--wavenumber", c.fringe_wavenumber, "Fringe wavenumber (default 10)");
    eraser->add_option("--points", c.screen_points, "Screen sample count (default 2048)");
    eraser->add_option("--half-width", c.screen_half_width, "Screen spans [-h, h] (default 6)");
    eraser->add_option("--sidecar", c.sidecar_path, "JSON sidecar path for csv output");
    auto* cat = exp->add_subcommand("cat", "Schroedinger cat chain");
    add_common(cat, c);
    cat->add_option("--atoms", c.cat_atoms, "Cat ancilla count (default 1)");
    cat->add_flag("--observer", c.observer, "Add an observer entangled with the cat");

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : app.get_subcommands()) {
        c.command = sub->get_name();
        for (auto* inner : sub->get_subcommands()) c.experiment = inner->get_name();
    }

    if (!c.out_path) return qm::cli::run(c, std::cout, std::cerr);

    std::ostringstream buffer;
    const int status = qm::cli::run(c, buffer, std::cerr);
    if (status != 0) return status;
    std::ofstream file(*c.out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot write '" << *c.out_path << "'\n";
        return 2;
    }
    file << buffer.str();
    return 0;
}
