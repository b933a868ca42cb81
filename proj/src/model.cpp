#include "cqed/model.hpp"

#include "cqed/error.hpp"

#include <cmath>
#include <string>

namespace cqed {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ArgumentError("invalid model parameters: " + message);
    }
}

// Constraints the Hamiltonian itself depends on; rates only matter once
// dissipation enters.
void validate_coherent(const ModelParams& p) {
    for (double v : {p.g, p.delta_c, p.delta_a, p.epsilon, p.kappa, p.gamma, p.n_th, p.gamma_d}) {
        require(std::isfinite(v), "all parameters must be finite");
    }
    require(p.epsilon >= 0.0, "epsilon must be non-negative");
    require(p.photon_cutoff >= 2, "photon_cutoff must be at least 2");
}

}  // namespace

void ModelParams::validate() const {
    validate_coherent(*this);
    require(kappa > 0.0, "kappa must be positive");
    require(gamma >= 0.0, "gamma must be non-negative");
    require(n_th >= 0.0, "n_th must be non-negative");
    require(gamma_d >= 0.0, "gamma_d must be non-negative");
}

ComplexMatrix build_hamiltonian(const ModelParams& params) {
    validate_coherent(params);
    const HilbertLayout layout = params.layout();
    const ComplexMatrix a = annihilation(layout);
    const ComplexMatrix ad = a.adjoint();

    ComplexMatrix h = params.delta_c * (ad * a) + params.epsilon * (ad + a);
    for (int i : {1, 2}) {
        const ComplexMatrix sm = sigma_minus(layout, i);
        const ComplexMatrix sp = sm.adjoint();
        h += params.delta_a * (sp * sm) + params.g * (sp * a + ad * sm);
    }
    return h;
}

std::vector<CollapseOperator> build_collapse_ops(const ModelParams& params) {
    params.validate();
    const HilbertLayout layout = params.layout();
    const ComplexMatrix a = annihilation(layout);

    std::vector<CollapseOperator> ops;
    auto add = [&ops](ComplexMatrix op, double rate, std::string label) {
        if (rate > 0.0) {
            ops.push_back({std::move(op), rate, std::move(label)});
        }
    };

    add(a, params.kappa * (params.n_th + 1.0), "a");
    add(a.adjoint(), params.kappa * params.n_th, "a+");
    for (int i : {1, 2}) {
        const ComplexMatrix sm = sigma_minus(layout, i);
        const std::string n = std::to_string(i);
        add(sm, params.gamma * (params.n_th + 1.0), "sigma" + n + "-");
        add(sm.adjoint(), params.gamma * params.n_th, "sigma" + n + "+");
    }
    for (int i : {1, 2}) {
        const ComplexMatrix sm = sigma_minus(layout, i);
        add(sm.adjoint() * sm, params.gamma_d, "dephasing" + std::to_string(i));
    }
    return ops;
}

ComplexMatrix build_effective_hamiltonian(const ModelParams& params) {
    require(params.kappa >= 0.0 && params.gamma >= 0.0, "decay rates must be non-negative");
    const HilbertLayout layout = params.layout();
    ComplexMatrix damping = params.kappa * number(layout);
    for (int i : {1, 2}) {
        const ComplexMatrix sm = sigma_minus(layout, i);
        damping += params.gamma * (sm.adjoint() * sm);
    }
    return build_hamiltonian(params) - Complex(0.0, 0.5) * damping;
}

}  // namespace cqed
