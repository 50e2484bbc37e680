#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace homlab {

/// Scaling regime linking hole size eps*eta to hole spacing eps.
/// kappa = |ln eta| + 1 in 2D, 1 otherwise; the strange-term ratio
/// eps^-2 eta^(n-2) / kappa tends to the target constant gamma.
struct ScalingRegime {
    double eps = 0.0;
    double eta = 1.0;
    int n = 2;
    double gamma = 0.0;

    double kappa() const {
        return n == 2 ? std::abs(std::log(eta)) + 1.0 : 1.0;
    }

    /// eps^-2 eta^(n-2) kappa^-1, the quantity converging to gamma.
    double ratio() const {
        const double r = std::pow(eta, n - 2) / (eps * eps * kappa());
        if (!std::isfinite(r) || r < 0.0)
            throw std::runtime_error("scaling ratio not finite and nonnegative");
        return r;
    }

    void validate() const {
        if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
        if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in (0,1]");
        if (n < 2) throw std::invalid_argument("dimension must be >= 2");
        if (gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
        (void)ratio();
    }
};

/// Solve eps^-2 eta^(n-2) kappa^-1 = gamma for eta.
/// n=2: eta = exp(1 - 1/(gamma eps^2)); n>=3: eta = (gamma eps^2)^(1/(n-2)).
/// For gamma = 0 a sub-critical exponent p > 2 must be supplied together with
/// gamma_eff > 0; then eta = exp(1 - 1/(gamma_eff eps^p)) (n=2 only), which
/// drives the ratio to zero like gamma_eff eps^(p-2).
double eta_for_gamma(double eps, double gamma, int n,
                     double subcritical_p = 0.0, double gamma_eff = 0.0);

/// Rate descriptor c * eps^p * eta^q * kappa^r, evaluated per regime.
/// Used for the mu_0, mu_1, mu_2 rates whose limits the analysis constrains.
struct RateDescriptor {
    double c = 0.0;
    double p_eps = 0.0;
    double p_eta = 0.0;
    double p_kappa = 0.0;

    double value(const ScalingRegime& reg) const {
        return c * std::pow(reg.eps, p_eps) * std::pow(reg.eta, p_eta) *
               std::pow(reg.kappa(), p_kappa);
    }
    bool is_zero() const { return c == 0.0; }
};

} // namespace homlab
