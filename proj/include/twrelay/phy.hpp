#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "twrelay/analysis.hpp"
#include "twrelay/channel.hpp"

namespace twr {

using SymbolIndex = std::size_t;

/// Unit-average-power symbol alphabet with its SER constant c.
///
/// Only BPSK is exercised by the reproduction experiments. M-PSK for
/// M = 4, 8 is an extension; its constant c = 2 sin^2(pi/M) is the usual
/// nearest-neighbour approximation, not an exact SER.
class Constellation {
public:
    static Constellation bpsk();
    static Constellation psk(std::size_t order);
    /// "bpsk", "qpsk" or "8psk"; throws std::invalid_argument otherwise.
    static Constellation from_name(std::string_view name);

    const std::vector<cplx>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    unsigned bits_per_symbol() const noexcept { return bits_; }
    ModulationConstant constant() const noexcept { return c_; }
    const std::string& name() const noexcept { return name_; }

private:
    Constellation(std::string name, std::vector<cplx> points, ModulationConstant c);

    std::string name_;
    std::vector<cplx> points_;
    ModulationConstant c_;
    unsigned bits_;
};

/// Throws std::domain_error for an index outside the alphabet.
cplx modulate(SymbolIndex index, const Constellation& cons);

/// CN(0, n0) sample; n0 = 0 gives an exact zero.
cplx awgn(double n0, RandomStream& stream);

/// Coherent ML decision argmin_s |y - alpha s|^2, ties to the lowest index.
SymbolIndex ml_detect(cplx y, cplx alpha, const Constellation& cons);

}  // namespace twr
