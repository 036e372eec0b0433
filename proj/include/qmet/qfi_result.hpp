#pragma once

namespace qmet {

enum class QfiMethod { sld, fidelity, closed_form };

/// Numerical QFI value with the finite-difference step that produced it.
/// `converged` is cleared when halving the step shifts the value by more
/// than 0.1%.
struct QfiResult {
    double value = 0.0;
    QfiMethod method = QfiMethod::sld;
    double step = 0.0;
    bool converged = true;
};

}  // namespace qmet
