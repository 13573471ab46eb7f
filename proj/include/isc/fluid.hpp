#pragma once

#include <string>
#include <vector>

namespace isc {

inline constexpr int kMaxComponents = 12;
inline constexpr int kMaxReactions = 12;

enum class PhaseClass { water, oil, gas, solid };

// Per-component constants in field units. Temperatures in °F.
struct ComponentProps {
    std::string name;
    PhaseClass phase_class = PhaseClass::gas;
    double M = 0.0;
    double p_crit = 0.0;
    double t_crit = 0.0;

    // liquid density (water/oil) or solid density (coke, rho_ref only)
    double rho_ref = 0.0;
    double cp = 0.0;
    double ct1 = 0.0;
    double ct2 = 0.0;
    double cpt = 0.0;

    double kv1 = 0.0, kv2 = 0.0, kv3 = 0.0, kv4 = 0.0, kv5 = 0.0;

    double avisc = 0.0, bvisc = 0.0;  // liquid viscosity
    double avg = 0.0, bvg = 0.0;      // gas viscosity

    double cpg1 = 0.0, cpg2 = 0.0, cpg3 = 0.0, cpg4 = 0.0;
    double hvr = 0.0, ev = 0.0;

    double cp_solid = 0.0;  // Btu/(lbmol·°F), solid components only

    bool operator==(const ComponentProps&) const = default;
};

// Component list plus the component -> phase partitioning. Index vectors hold
// positions into `comps` in deck order.
class FluidModel {
public:
    FluidModel() = default;
    FluidModel(std::vector<ComponentProps> comps, double p_ref, double t_ref);

    const std::vector<ComponentProps>& comps() const { return comps_; }
    const ComponentProps& comp(int c) const { return comps_[c]; }
    int ncomp() const { return static_cast<int>(comps_.size()); }
    int nco() const { return static_cast<int>(oil_.size()); }
    int ncg() const { return static_cast<int>(gas_.size()); }

    int water() const { return water_; }
    const std::vector<int>& oil() const { return oil_; }
    const std::vector<int>& gas() const { return gas_; }
    int solid() const { return solid_; }
    bool has_solid() const { return solid_ >= 0; }

    // slot (0..nco-1) of the oil component with the largest molar mass
    int heaviest_oil_slot() const { return heaviest_; }

    // every component that can appear in the gas phase (all but solid)
    const std::vector<int>& volatiles() const { return volatiles_; }

    // -1 when absent
    int index_of(const std::string& name) const;

    double p_ref() const { return p_ref_; }
    double t_ref() const { return t_ref_; }

private:
    std::vector<ComponentProps> comps_;
    double p_ref_ = 14.7;
    double t_ref_ = 77.0;
    int water_ = -1;
    std::vector<int> oil_;
    std::vector<int> gas_;
    int solid_ = -1;
    int heaviest_ = 0;
    std::vector<int> volatiles_;
};

}  // namespace isc
