#include "twrelay/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace twr {

namespace {

constexpr std::size_t kMaxRelays = 20;

void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::domain_error(std::string(what) + " must be finite and positive");
    }
}

void require_relays(std::size_t n) {
    if (n == 0) {
        throw std::domain_error("relay count must be at least 1");
    }
}

double factorial(std::size_t n) {
    if (n > kMaxRelays) {
        throw std::out_of_range("factorial argument above 20");
    }
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= k;
    return static_cast<double>(f);
}

}  // namespace

PowerProfile::PowerProfile(double p_s, double p_r, double n0)
    : p_s_(p_s), p_r_(p_r), n0_(n0) {
    require_positive(p_s, "source power p_s");
    require_positive(p_r, "relay power p_r");
    require_positive(n0, "noise variance n0");
}

ModulationConstant::ModulationConstant(double c) : c_(c) {
    require_positive(c, "modulation constant c");
}

namespace analysis {

double q_function(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("q_function: argument must be finite");
    }
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

uint128 odd_double_factorial(std::size_t n) {
    if (n > kMaxRelays) {
        throw std::out_of_range("double factorial supported only up to n = 20");
    }
    uint128 acc = 1;
    for (std::size_t k = 1; k <= n; ++k) acc *= static_cast<uint128>(2 * k - 1);
    return acc;
}

double asymptotic_ser_rs(std::size_t n_relays, const PowerProfile& pp,
                         ModulationConstant c) {
    require_relays(n_relays);
    const auto coeff = static_cast<double>(odd_double_factorial(n_relays)) / 2.0;
    return coeff * std::pow(pp.psi() / c.value(), static_cast<double>(n_relays));
}

double asymptotic_ser_ap(std::size_t n_relays, const PowerProfile& pp,
                         ModulationConstant c) {
    require_relays(n_relays);
    const double n = static_cast<double>(n_relays);
    const double coeff = static_cast<double>(odd_double_factorial(n_relays)) /
                         (2.0 * factorial(n_relays) * std::pow(c.value(), n));
    return coeff * std::pow(n / pp.psi_r() + 1.0 / pp.psi_s(), n);
}

double ser_ratio_rs_over_ap(std::size_t n_relays, double lambda) {
    require_relays(n_relays);
    require_positive(lambda, "lambda");
    const double n = static_cast<double>(n_relays);
    return factorial(n_relays) *
           std::pow((1.0 + 2.0 * lambda) / (1.0 + 2.0 * n * lambda), n);
}

double opa_gain(std::size_t n_relays) {
    return std::pow(8.0 / 9.0, static_cast<double>(n_relays));
}

double exact_snr_pdf(double x, double psi_r, double psi_s) {
    if (!(x >= 0.0)) {
        throw std::domain_error("exact_snr_pdf: x must be non-negative");
    }
    require_positive(psi_r, "psi_r");
    require_positive(psi_s, "psi_s");
    if (x == 0.0) return 0.0;

    const double g = std::sqrt(psi_r * psi_s);
    const double z = 2.0 * x / g;
    // Both K terms underflow long before z = 700; the prefactor decays faster.
    if (z > 700.0) return 0.0;
    const double k0 = std::cyl_bessel_k(0.0, z);
    const double k1 = std::cyl_bessel_k(1.0, z);
    const double pre = 2.0 * x * std::exp(-x * (1.0 / psi_r + 1.0 / psi_s)) / (psi_r * psi_s);
    return pre * ((psi_r + psi_s) / g * k1 + 2.0 * k0);
}

double exact_snr_pdf(double x, const PowerProfile& pp) {
    return exact_snr_pdf(x, pp.psi_r(), pp.psi_s());
}

double selected_snr_cdf_approx(double x, double psi, std::size_t n_relays, CdfForm form) {
    if (!(x >= 0.0)) {
        throw std::domain_error("selected_snr_cdf_approx: x must be non-negative");
    }
    require_positive(psi, "psi");
    const double n = static_cast<double>(n_relays);
    if (form == CdfForm::Limit) {
        return std::pow(psi * x, n);
    }
    return std::pow(-std::expm1(-psi * x), n);
}

}  // namespace analysis
}  // namespace twr
