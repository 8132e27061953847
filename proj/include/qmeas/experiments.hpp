#pragma once

// Scripted scenarios built from the measurement primitives: Stern-Gerlach
// (single and sequential field gradients), the two-slit quantum eraser, and
// the Schroedinger-cat entropy ledger.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmeas/entropy.hpp"

namespace qm {

struct LedgerStage {
    std::string name;
    std::vector<std::pair<std::string, double>> entropies;  // bits, in insertion order

    double at(const std::string& key) const;
};

struct EntropyLedger {
    std::string scenario;
    std::vector<LedgerStage> stages;

    const LedgerStage& stage(const std::string& name) const;
};

struct SternGerlachResult {
    EntropyLedger ledger;
    // Sequential mode only: joint distribution of the two position readings
    // (x after the first gradient, y after the second) and the reduced spin.
    std::optional<Eigen::MatrixXd> position_joint;
    std::optional<Matrix> reduced_spin;
};

// `spin` holds sigma_z amplitudes (up, down); the default is the sigma_x
// eigenstate (|up> + |down>)/sqrt(2).
SternGerlachResult stern_gerlach(bool sequential);
SternGerlachResult stern_gerlach(bool sequential, std::span<const Complex> spin);

enum class EraserMode { baseline, tagged, erased, recorded };

std::string to_string(EraserMode mode);
EraserMode parse_eraser_mode(const std::string& name);

struct EraserGeometry {
    double slit_separation = 0.0;  // d
    double envelope_width = 1.0;   // w
    double fringe_wavenumber = 10.0;  // kappa
    std::vector<double> xs;

    // w = 1, d = 0, kappa = 10, 2048 points on [-6, 6].
    static EraserGeometry defaults();
};

struct ScreenProfile {
    EraserMode mode = EraserMode::baseline;
    EraserGeometry geometry;
    std::vector<double> xs;
    std::vector<double> intensity;             // raw, integrates to the post-selection probability
    std::vector<double> intensity_normalized;  // divided by the post-selection probability
    double visibility = 0.0;
    double post_selection_probability = 1.0;
    double integrated_intensity = 0.0;         // trapezoid rule over xs
    Matrix location_state;                     // unnormalized reduced state of the location variable
    EntropyLedger ledger;
};

ScreenProfile quantum_eraser(EraserMode mode, const EraserGeometry& geometry);

// Fringe visibility (I_max - I_min)/(I_max + I_min) of the envelope-normalized
// pattern over the central window |x| <= 2*pi/kappa.
double fringe_visibility(const std::vector<double>& xs, const std::vector<double>& intensity,
                         const std::vector<double>& envelope, double kappa);

struct CatResult {
    EntropyLedger ledger;
    StateVector final_state;  // factors: atom, photon, cat..., [observer]
    std::size_t cat_atoms = 0;
    bool observer = false;
};

// `atom` holds amplitudes on (excited, decayed); the default is the equal
// superposition.
CatResult schroedinger_cat(std::size_t cat_atoms, bool include_observer);
CatResult schroedinger_cat(std::size_t cat_atoms, bool include_observer, std::span<const Complex> atom);

// Undo the cat and observer stages; returns the decay-stage state.
StateVector undo_cat(const CatResult& cat);

}  // namespace qm
