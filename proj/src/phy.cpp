#include "twrelay/phy.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twr {

Constellation::Constellation(std::string name, std::vector<cplx> points, ModulationConstant c)
    : name_(std::move(name)), points_(std::move(points)), c_(c),
      bits_(static_cast<unsigned>(std::countr_zero(points_.size()))) {}

Constellation Constellation::bpsk() {
    return {"bpsk", {cplx{1.0, 0.0}, cplx{-1.0, 0.0}}, ModulationConstant{2.0}};
}

Constellation Constellation::psk(std::size_t order) {
    if (order < 2 || !std::has_single_bit(order)) {
        throw std::invalid_argument("PSK order must be a power of two >= 2");
    }
    if (order == 2) return bpsk();

    std::vector<cplx> pts;
    pts.reserve(order);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(order);
    // Offset by half a step so QPSK lands on the diagonals.
    for (std::size_t k = 0; k < order; ++k) {
        pts.push_back(std::polar(1.0, step * (static_cast<double>(k) + 0.5)));
    }
    const double s = std::sin(std::numbers::pi / static_cast<double>(order));
    std::string name = order == 4 ? "qpsk" : std::to_string(order) + "psk";
    return {std::move(name), std::move(pts), ModulationConstant{2.0 * s * s}};
}

Constellation Constellation::from_name(std::string_view name) {
    if (name == "bpsk") return bpsk();
    if (name == "qpsk") return psk(4);
    if (name == "8psk") return psk(8);
    throw std::invalid_argument("unknown constellation '" + std::string(name) + "'");
}

cplx modulate(SymbolIndex index, const Constellation& cons) {
    if (index >= cons.size()) {
        throw std::domain_error("modulate: symbol index out of range");
    }
    return cons.points()[index];
}

cplx awgn(double n0, RandomStream& stream) {
    if (!(n0 >= 0.0)) {
        throw std::domain_error("awgn: noise variance must be non-negative");
    }
    return stream.complex_gaussian(n0);
}

SymbolIndex ml_detect(cplx y, cplx alpha, const Constellation& cons) {
    const auto& pts = cons.points();
    SymbolIndex best = 0;
    double best_d = std::norm(y - alpha * pts[0]);
    for (SymbolIndex k = 1; k < pts.size(); ++k) {
        const double d = std::norm(y - alpha * pts[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

}  // namespace twr
