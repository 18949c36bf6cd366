#pragma once

// Closed-form performance expressions for two-way relay selection:
// Gaussian Q, the per-link SNR density, high-SNR SER of the selection
// (RS-AF) and all-participate (AP-AF) schemes, and the power-allocation gain.

#include <cstddef>
#include <cstdint>

namespace twr {

__extension__ typedef unsigned __int128 uint128;

/// Transmit powers and noise level of one operating point.
///
/// Both sources transmit with p_s, the forwarding relay with p_r. The
/// normalized SNRs follow the parameterization p_s = lambda * p_r:
///   psi_s = p_s / (n0 (1 + lambda)),  psi_r = p_r / n0,
///   psi   = 2 (1/psi_r + 1/psi_s).
class PowerProfile {
public:
    /// Throws std::domain_error unless all three values are finite and > 0.
    PowerProfile(double p_s, double p_r, double n0);

    double p_s() const noexcept { return p_s_; }
    double p_r() const noexcept { return p_r_; }
    double n0() const noexcept { return n0_; }
    /// Total power budget 2 p_s + p_r.
    double total() const noexcept { return 2.0 * p_s_ + p_r_; }
    double lambda() const noexcept { return p_s_ / p_r_; }

    double psi_s() const noexcept { return p_s_ / (n0_ * (1.0 + lambda())); }
    double psi_r() const noexcept { return p_r_ / n0_; }
    double psi() const noexcept { return 2.0 * (1.0 / psi_r() + 1.0 / psi_s()); }

    /// Same powers, different relay power (used for per-relay splits).
    PowerProfile with_relay_power(double p_r) const { return {p_s_, p_r, n0_}; }
    PowerProfile with_noise(double n0) const { return {p_s_, p_r_, n0}; }

private:
    double p_s_;
    double p_r_;
    double n0_;
};

/// SER constant c in SER(gamma) = Q(sqrt(c gamma)); c = 2 for BPSK.
class ModulationConstant {
public:
    explicit ModulationConstant(double c);
    double value() const noexcept { return c_; }

private:
    double c_;
};

namespace analysis {

/// Q(x) = 0.5 erfc(x / sqrt 2). Throws std::domain_error for non-finite x.
double q_function(double x);

/// (2n - 1)!! computed exactly; n = 0 gives 1. Throws std::out_of_range for n > 20.
uint128 odd_double_factorial(std::size_t n);

/// High-SNR average SER of Min-Max relay selection with N relays:
/// ((2N-1)!!/2) (psi/c)^N.
double asymptotic_ser_rs(std::size_t n_relays, const PowerProfile& pp,
                         ModulationConstant c);

/// High-SNR average SER of all-participate AF with N relays:
/// ((2N-1)!! / (2 N! c^N)) (N/psi_r + 1/psi_s)^N.
double asymptotic_ser_ap(std::size_t n_relays, const PowerProfile& pp,
                         ModulationConstant c);

/// N! ((1 + 2 lambda) / (1 + 2 N lambda))^N.
double ser_ratio_rs_over_ap(std::size_t n_relays, double lambda);

/// SER gain of the p/4, p/2 split over equal powers: (8/9)^N.
double opa_gain(std::size_t n_relays);

/// Density of the harmonic-mean bound on the per-link SNR,
///   f(x) = 2x e^{-x(1/psi_r + 1/psi_s)} / (psi_r psi_s)
///          * [ (psi_r + psi_s)/sqrt(psi_r psi_s) K1(z) + 2 K0(z) ],
/// z = 2x / sqrt(psi_r psi_s). f(0) = 0.
double exact_snr_pdf(double x, const PowerProfile& pp);

/// Same density from raw (psi_r, psi_s); used by the overload above.
double exact_snr_pdf(double x, double psi_r, double psi_s);

enum class CdfForm {
    Clamped,  ///< [1 - exp(-psi x)]^N, a proper CDF
    Limit,    ///< (psi x)^N, the small-psi limit; exceeds 1 for large x
};

/// CDF of the selected relay's min-SNR under the exponential approximation.
double selected_snr_cdf_approx(double x, double psi, std::size_t n_relays,
                               CdfForm form = CdfForm::Clamped);

}  // namespace analysis
}  // namespace twr
