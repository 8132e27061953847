#include "qmeas/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qmeas/kernels.hpp"
#include "qmeas/measurement.hpp"

namespace qm {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t k = first; k < last; ++k) out.push_back(k);
    return out;
}

// Product state with `first` on factor 0 and |0> everywhere else.
Vector product_with_zeros(std::span<const Complex> first, const Factorization& f) {
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(f.total()));
    const auto s = static_cast<Eigen::Index>(f.stride(0));
    for (std::size_t i = 0; i < first.size(); ++i) psi(static_cast<Eigen::Index>(i) * s) = first[i];
    return psi;
}

Vector shift(const Vector& psi, const Factorization& f, std::size_t control, std::size_t target, int sign = 1) {
    return kernels::controlled_shift_parallel(psi, f, control, target, sign);
}

double entropy_of(const StateVector& psi, const std::vector<std::size_t>& factors) {
    return subsystem_entropy(psi, factors);
}

std::vector<Complex> checked_qubit(std::span<const Complex> amps, const char* what) {
    if (amps.size() != 2) throw ValidationError(std::string(what) + ": expected two amplitudes");
    const double norm = std::sqrt(std::norm(amps[0]) + std::norm(amps[1]));
    if (std::abs(norm - 1.0) > kNormTol) throw ValidationError(std::string(what) + ": amplitudes are not normalized");
    return {amps[0], amps[1]};
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    double acc = 0.0;
    for (std::size_t k = 1; k < xs.size(); ++k) acc += 0.5 * (xs[k] - xs[k - 1]) * (ys[k] + ys[k - 1]);
    return acc;
}

}  // namespace

double LedgerStage::at(const std::string& key) const {
    for (const auto& [k, v] : entropies)
        if (k == key) return v;
    throw std::out_of_range("ledger stage '" + name + "' has no entry '" + key + "'");
}

const LedgerStage& EntropyLedger::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.name == name) return s;
    throw std::out_of_range("ledger '" + scenario + "' has no stage '" + name + "'");
}

// --- Stern-Gerlach -------------------------------------------------------

SternGerlachResult stern_gerlach(bool sequential) {
    const std::array<Complex, 2> sigma_x_up{kInvSqrt2, kInvSqrt2};
    return stern_gerlach(sequential, sigma_x_up);
}

SternGerlachResult stern_gerlach(bool sequential, std::span<const Complex> spin) {
    const auto amps = checked_qubit(spin, "stern_gerlach");
    // Factors: spin Q, location A (L/R), then the screen A' or, in sequential
    // mode, the location y after the second gradient.
    const Factorization f({2, 2, 2});
    SternGerlachResult out;
    out.ledger.scenario = sequential ? "stern-gerlach-sequential" : "stern-gerlach";

    Vector psi = product_with_zeros(amps, f);
    {
        const StateVector s = StateVector::normalized(psi, f);
        out.ledger.stages.push_back({"beam", {{"S(Q)", entropy_of(s, {0})}, {"S(QAA')", entropy_of(s, {0, 1, 2})}}});
    }

    psi = shift(psi, f, 0, 1);
    {
        const StateVector s = StateVector::normalized(psi, f);
        const double s_q = entropy_of(s, {0}), s_a = entropy_of(s, {1}), s_qa = entropy_of(s, {0, 1});
        out.ledger.stages.push_back(
            {"gradient", {{"S(Q)", s_q}, {"S(A)", s_a}, {"S(Q|A)", s_qa - s_a}, {"S(QA)", s_qa}}});
    }

    if (!sequential) {
        psi = shift(psi, f, 1, 2);
        const StateVector s = StateVector::normalized(psi, f);
        const double s_aa = entropy_of(s, {1, 2}), s_all = entropy_of(s, {0, 1, 2});
        const double s_a = entropy_of(s, {1}), s_screen = entropy_of(s, {2});
        out.ledger.stages.push_back({"screen",
                                     {{"S(A)", s_a},
                                      {"S(A')", s_screen},
                                      {"S(AA')", s_aa},
                                      {"S(A:A')", s_a + s_screen - s_aa},
                                      {"S(Q|AA')", s_all - s_aa},
                                      {"S(QAA')", s_all}}});
        return out;
    }

    // Second gradient: the spin tags a fresh location variable y.
    psi = shift(psi, f, 0, 2);
    const StateVector s = StateVector::normalized(psi, f);
    const double s_x = entropy_of(s, {1}), s_y = entropy_of(s, {2}), s_xy = entropy_of(s, {1, 2});
    const double s_all = entropy_of(s, {0, 1, 2});
    out.ledger.stages.push_back({"second-gradient",
                                 {{"S(x)", s_x},
                                  {"S(y)", s_y},
                                  {"S(xy)", s_xy},
                                  {"S(x:y)", s_x + s_y - s_xy},
                                  {"S(Q|xy)", s_all - s_xy},
                                  {"S(Qxy)", s_all}}});

    const std::vector<std::size_t> xy{1, 2};
    const Matrix rho_xy = reduced_density(s, xy);
    Eigen::MatrixXd joint(2, 2);
    for (Eigen::Index x = 0; x < 2; ++x)
        for (Eigen::Index y = 0; y < 2; ++y) joint(x, y) = rho_xy(x * 2 + y, x * 2 + y).real();
    out.position_joint = joint;
    const std::vector<std::size_t> q{0};
    out.reduced_spin = reduced_density(s, q);
    return out;
}

// --- Quantum eraser --------------------------------------------------------

std::string to_string(EraserMode mode) {
    switch (mode) {
        case EraserMode::baseline: return "baseline";
        case EraserMode::tagged: return "tagged";
        case EraserMode::erased: return "erased";
        case EraserMode::recorded: return "recorded";
    }
    return "unknown";
}

EraserMode parse_eraser_mode(const std::string& name) {
    for (auto m : {EraserMode::baseline, EraserMode::tagged, EraserMode::erased, EraserMode::recorded})
        if (to_string(m) == name) return m;
    throw ValidationError("unknown eraser mode '" + name + "' (expected baseline, tagged, erased, recorded)");
}

EraserGeometry EraserGeometry::defaults() {
    EraserGeometry g;
    constexpr std::size_t n = 2048;
    g.xs.resize(n);
    for (std::size_t k = 0; k < n; ++k) g.xs[k] = -6.0 + 12.0 * static_cast<double>(k) / static_cast<double>(n - 1);
    return g;
}

double fringe_visibility(const std::vector<double>& xs, const std::vector<double>& intensity,
                         const std::vector<double>& envelope, double kappa) {
    const double half_window = 2.0 * std::numbers::pi / kappa;
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (std::abs(xs[k]) > half_window || envelope[k] <= 0.0) continue;
        const double v = intensity[k] / envelope[k];
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    if (!(hi > -std::numeric_limits<double>::infinity()) || hi + lo <= 0.0) return 0.0;
    return std::clamp((hi - lo) / (hi + lo), 0.0, 1.0);
}

ScreenProfile quantum_eraser(EraserMode mode, const EraserGeometry& geometry) {
    const double d = geometry.slit_separation, w = geometry.envelope_width, kappa = geometry.fringe_wavenumber;
    if (!(d >= 0.0) || !(w > 0.0) || !(kappa > 0.0))
        throw ValidationError("quantum_eraser: need d >= 0, w > 0 and kappa > 0");
    if (geometry.xs.size() < 2) throw ValidationError("quantum_eraser: grid needs at least two points");
    if (!std::is_sorted(geometry.xs.begin(), geometry.xs.end()))
        throw ValidationError("quantum_eraser: grid must be ascending");
    if (geometry.xs.back() - geometry.xs.front() < 6.0 * w)
        throw ValidationError("quantum_eraser: grid must span at least 6 envelope widths");

    // Factors: location (L, R), polarization (H, V), and for the recorded mode
    // an ancilla (h, v) that copies the polarization before the eraser.
    const bool recorded = mode == EraserMode::recorded;
    const Factorization f = recorded ? Factorization({2, 2, 2}) : Factorization({2, 2});

    const std::array<Complex, 2> both_paths{kInvSqrt2, kInvSqrt2};
    Vector psi = product_with_zeros(both_paths, f);  // Psi_1: (|L> + |R>)|H>/sqrt(2)

    ScreenProfile p;
    p.mode = mode;
    p.geometry = geometry;
    p.ledger.scenario = "eraser-" + to_string(mode);
    {
        const StateVector s = StateVector::normalized(psi, f);
        p.ledger.stages.push_back(
            {"split", {{"S(location)", entropy_of(s, {0})}, {"S(total)", entropy_of(s, range(0, f.size()))}}});
    }

    if (mode != EraserMode::baseline) {
        // Rotator on the left path: H <-> V when the location is L (index 0).
        Matrix tag = Matrix::Zero(4, 4);
        tag(1, 0) = tag(0, 1) = 1.0;  // |L,H> <-> |L,V>
        tag(2, 2) = tag(3, 3) = 1.0;
        const Matrix full = recorded ? kron(tag, Matrix::Identity(2, 2)) : tag;
        psi = full * psi;

        const StateVector s = StateVector::normalized(psi, f);
        const double s_loc = entropy_of(s, {0}), s_pol = entropy_of(s, {1}), s_lp = entropy_of(s, {0, 1});
        p.ledger.stages.push_back({"tagged",
                                   {{"S(location)", s_loc},
                                    {"S(polarization)", s_pol},
                                    {"S(location|polarization)", s_lp - s_pol},
                                    {"S(total)", entropy_of(s, range(0, f.size()))}}});
    }
    if (recorded) {
        psi = shift(psi, f, 1, 2);
        const StateVector s = StateVector::normalized(psi, f);
        p.ledger.stages.push_back({"recorded",
                                   {{"S(location)", entropy_of(s, {0})},
                                    {"S(recorder)", entropy_of(s, {2})},
                                    {"S(total)", entropy_of(s, {0, 1, 2})}}});
    }

    p.post_selection_probability = 1.0;
    if (mode == EraserMode::erased || mode == EraserMode::recorded) {
        // Diagonal polarizer: projector onto (|H> + |V>)/sqrt(2). This is the
        // only non-unitary step and it keeps the sub-ensemble that passes.
        Matrix diag_proj(2, 2);
        diag_proj << 0.5, 0.5, 0.5, 0.5;
        Matrix full = kron(Matrix::Identity(2, 2), diag_proj);
        if (recorded) full = kron(full, Matrix::Identity(2, 2));
        psi = full * psi;
        p.post_selection_probability = psi.squaredNorm();

        const StateVector s = StateVector::normalized(psi, f);
        p.ledger.stages.push_back({"erased",
                                   {{"P(pass)", p.post_selection_probability},
                                    {"S(location)", entropy_of(s, {0})},
                                    {"S(total)", entropy_of(s, range(0, f.size()))}}});
    }

    const std::vector<std::size_t> loc{0};
    p.location_state = kernels::reduced_from_pure_parallel(psi, f, loc);

    const double norm = std::pow(std::numbers::pi * w * w, -0.25);
    const auto gauss = [&](double x) { return norm * std::exp(-x * x / (2.0 * w * w)); };

    p.xs = geometry.xs;
    std::vector<double> envelope(p.xs.size());
    p.intensity.resize(p.xs.size());
    p.intensity_normalized.resize(p.xs.size());
    const Matrix& rho = p.location_state;
    for (std::size_t k = 0; k < p.xs.size(); ++k) {
        const double x = p.xs[k];
        const Complex psi_l = gauss(x - d / 2) * std::polar(1.0, kappa * x / 2);
        const Complex psi_r = gauss(x + d / 2) * std::polar(1.0, -kappa * x / 2);
        const std::array<Complex, 2> amp{psi_l, psi_r};
        Complex acc{0.0, 0.0};
        for (Eigen::Index a = 0; a < 2; ++a)
            for (Eigen::Index b = 0; b < 2; ++b)
                acc += amp[static_cast<std::size_t>(a)] * rho(a, b) * std::conj(amp[static_cast<std::size_t>(b)]);
        p.intensity[k] = std::max(0.0, acc.real());
        envelope[k] = rho(0, 0).real() * std::norm(psi_l) + rho(1, 1).real() * std::norm(psi_r);
        p.intensity_normalized[k] = p.intensity[k] / p.post_selection_probability;
    }
    p.integrated_intensity = trapezoid(p.xs, p.intensity);
    p.visibility = fringe_visibility(p.xs, p.intensity, envelope, kappa);
    return p;
}

// --- Schroedinger cat ------------------------------------------------------

CatResult schroedinger_cat(std::size_t cat_atoms, bool include_observer) {
    const std::array<Complex, 2> half_decayed{kInvSqrt2, kInvSqrt2};
    return schroedinger_cat(cat_atoms, include_observer, half_decayed);
}

CatResult schroedinger_cat(std::size_t cat_atoms, bool include_observer, std::span<const Complex> atom) {
    const auto amps = checked_qubit(atom, "schroedinger_cat");
    if (cat_atoms < 1) throw ValidationError("schroedinger_cat: need at least one cat atom");

    // Factors: atom (A*, A), photon (0, 1), cat atoms (L, D), observer (l, d).
    const std::size_t n_factors = 2 + cat_atoms + (include_observer ? 1 : 0);
    if (n_factors > kMaxQubitsEquivalent)
        throw NumericalGuardError("memory guard: cat with " + std::to_string(cat_atoms) + " atoms exceeds 2^" +
                                  std::to_string(kMaxQubitsEquivalent));
    const Factorization f(std::vector<std::size_t>(n_factors, 2));
    const std::size_t first_cat = 2, last_cat = 2 + cat_atoms;
    const std::size_t observer = last_cat;

    CatResult out{{}, StateVector::normalized(product_with_zeros(amps, f), f), cat_atoms, include_observer};
    out.ledger.scenario = "schroedinger-cat";

    Vector psi = out.final_state.amplitudes();
    psi = shift(psi, f, 0, 1);  // Psi_0: decay entangles atom and photon
    {
        const StateVector s = StateVector::normalized(psi, f);
        const double s_atom = entropy_of(s, {0}), s_photon = entropy_of(s, {1}), s_ap = entropy_of(s, {0, 1});
        out.ledger.stages.push_back({"decay",
                                     {{"S(atom)", s_atom},
                                      {"S(photon)", s_photon},
                                      {"S(atom|photon)", s_ap - s_photon},
                                      {"S(total)", entropy_of(s, range(0, f.size()))}}});
    }

    for (std::size_t c = first_cat; c < last_cat; ++c) psi = shift(psi, f, 1, c);  // Psi_1
    {
        const StateVector s = StateVector::normalized(psi, f);
        const auto rest = range(1, last_cat);
        const double s_rest = entropy_of(s, rest), s_all = entropy_of(s, range(0, f.size()));
        out.ledger.stages.push_back({"cat",
                                     {{"S(photon,cat)", s_rest},
                                      {"S(cat)", entropy_of(s, range(first_cat, last_cat))},
                                      {"S(atom|photon,cat)", s_all - s_rest},
                                      {"S(total)", s_all}}});
    }

    if (include_observer) {
        psi = shift(psi, f, first_cat, observer);  // Psi_2
        const StateVector s = StateVector::normalized(psi, f);
        const auto rest = range(1, f.size());
        const double s_rest = entropy_of(s, rest), s_all = entropy_of(s, range(0, f.size()));
        out.ledger.stages.push_back({"observer",
                                     {{"S(photon,cat,observer)", s_rest},
                                      {"S(observer)", entropy_of(s, {observer})},
                                      {"S(atom|photon,cat,observer)", s_all - s_rest},
                                      {"S(total)", s_all}}});
    }

    out.final_state = StateVector::normalized(std::move(psi), f);
    return out;
}

StateVector undo_cat(const CatResult& cat) {
    const auto& f = cat.final_state.factorization();
    Vector psi = cat.final_state.amplitudes();
    const std::size_t first_cat = 2, last_cat = 2 + cat.cat_atoms;
    if (cat.observer) psi = shift(psi, f, first_cat, last_cat, -1);
    for (std::size_t c = last_cat; c-- > first_cat;) psi = shift(psi, f, 1, c, -1);
    return StateVector::normalized(std::move(psi), f);
}

}  // namespace qm
