#include "qmeas/presets.hpp"

#include <cmath>
#include <numbers>

#include "qmeas/separability.hpp"

namespace qm {

namespace {

double parse_number(const std::string& text, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ValidationError("preset '" + key + "': cannot parse '" + text + "'");
    return v;
}

Preset from_pure(std::string name, StateVector psi) {
    DensityMatrix rho = density_from_pure(psi);
    return Preset{std::move(name), std::move(rho), std::move(psi)};
}

}  // namespace

StateVector ghz_state(std::size_t qubits) {
    if (qubits < 2) throw ValidationError("nplet: need at least two qubits");
    if (qubits > 10) throw NumericalGuardError("nplet: at most 10 qubits for a dense density matrix");
    Factorization f(std::vector<std::size_t>(qubits, 2));
    Vector v = Vector::Zero(static_cast<Eigen::Index>(f.total()));
    v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
    return StateVector::normalized(std::move(v), std::move(f));
}

StateVector bell_state() { return ghz_state(2); }

Preset preset(const std::string& key) {
    const auto colon = key.find(':');
    const std::string head = key.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : key.substr(colon + 1);
    const bool has_arg = colon != std::string::npos;

    if ((head == "bell" || head == "case3") && !has_arg) return from_pure(head, bell_state());
    if (head == "ghz" && !has_arg) return from_pure(head, ghz_state(3));
    if (head == "case1" && !has_arg) {
        Matrix m = Matrix::Identity(4, 4) / 4.0;
        return Preset{head, DensityMatrix(std::move(m), Factorization({2, 2})), std::nullopt};
    }
    if (head == "case2" && !has_arg) {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(3, 3) = 0.5;
        return Preset{head, DensityMatrix(std::move(m), Factorization({2, 2})), std::nullopt};
    }
    if (head == "werner" && has_arg) return Preset{key, werner(parse_number(arg, key)), std::nullopt};
    if (head == "nplet" && has_arg) {
        const double m = parse_number(arg, key);
        if (m != std::floor(m) || m < 2) throw ValidationError("preset '" + key + "': qubit count must be an integer >= 2");
        return from_pure(key, ghz_state(static_cast<std::size_t>(m)));
    }
    throw ValidationError("unknown preset '" + key + "' (known: bell, case1, case2, case3, ghz, werner:<x>, nplet:<m>)");
}

std::vector<std::string> preset_names() { return {"bell", "case1", "case2", "case3", "ghz", "werner:<x>", "nplet:<m>"}; }

}  // namespace qm
