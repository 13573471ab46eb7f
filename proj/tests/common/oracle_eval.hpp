#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "isc/deck.hpp"
#include "isc/kinetics.hpp"
#include "isc/pvt.hpp"

namespace isc::test {

// Evaluates one oracle case through the library.
inline double oracle_library_value(const Deck& d, const FluidModel& f, const nlohmann::json& c)
{
    const std::string kind = c["kind"];
    const double T = c["T"];
    const double p = c.value("p", 0.0);
    auto comp = [&]() -> const ComponentProps& { return f.comp(f.index_of(c["comp"])); };
    auto ymix = [&]() {
        CompArray<double> y{};
        y.fill(0.0);
        const auto& v = c["y"];
        for (std::size_t i = 0; i < v.size(); ++i) y[f.volatiles()[i]] = v[i];
        return y;
    };
    auto xmix = [&]() {
        std::vector<double> x;
        for (double v : c["x"]) x.push_back(v);
        return x;
    };
    if (kind == "k_value") return k_value(comp(), p, T);
    if (kind == "liquid_density") return liquid_component_density(comp(), p, T, f.p_ref(), f.t_ref());
    if (kind == "liquid_viscosity") return liquid_component_viscosity(comp(), T);
    if (kind == "vaporization_enthalpy") return vaporization_enthalpy(comp(), T);
    if (kind == "liquid_enthalpy") return liquid_component_enthalpy(comp(), T, f.t_ref());
    if (kind == "gas_component_enthalpy") return gas_component_enthalpy(comp(), T, f.t_ref());
    if (kind == "gas_component_viscosity") return gas_component_viscosity(comp(), T);
    if (kind == "oil_density") return oil_phase_density(f, p, T, xmix().data());
    if (kind == "oil_viscosity") return oil_viscosity(f, T, xmix().data());
    if (kind == "oil_enthalpy") return oil_enthalpy(f, T, xmix().data());
    if (kind == "z_factor") return z_factor(f, p, T, ymix());
    if (kind == "gas_density") return gas_density(p, T, z_factor(f, p, T, ymix()));
    if (kind == "gas_viscosity") return gas_viscosity(f, T, ymix());
    if (kind == "gas_enthalpy") return gas_enthalpy(f, T, ymix());
    if (kind == "arrhenius") {
        for (const auto& r : d.reactions.reactions)
            if (r.name == c["reaction"]) return arrhenius(r.A, r.Ea, T);
    }
    throw std::runtime_error("unknown oracle case kind " + kind);
}

}  // namespace isc::test
