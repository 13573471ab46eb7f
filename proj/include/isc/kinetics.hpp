#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isc/dual.hpp"
#include "isc/fluid.hpp"
#include "isc/pvt.hpp"
#include "isc/units.hpp"

namespace isc {

// Which concentration factors multiply the Arrhenius constant.
//   gas_oil   : (y_g p_g) (phi S_o rho_o x_o)
//   gas_solid : (y_g p_g) C_c
//   cracking  : (phi S_o rho_o x_o) max(0, 1 - (C_c/C_cmax)^5)
enum class RateLaw { gas_oil, gas_solid, cracking };

struct ReactionSpec {
    std::string name;
    RateLaw law = RateLaw::gas_oil;
    double A = 0.0;   // 1/(psi·day) or 1/day for cracking
    double Ea = 0.0;  // Btu/lbmol
    double H = 0.0;   // Btu/lbmol, released per unit rate
    std::vector<std::pair<std::string, double>> stoich;  // reactants negative
    bool operator==(const ReactionSpec&) const = default;
};

struct Reaction {
    std::string name;
    RateLaw law = RateLaw::gas_oil;
    double A = 0.0, Ea = 0.0, H = 0.0;
    std::vector<std::pair<int, double>> stoich;  // (component id, coefficient)
    int gas_reactant = -1;  // component id
    int oil_slot = -1;      // oil slot of the liquid reactant
};

class ReactionModel {
public:
    ReactionModel() = default;
    ReactionModel(const FluidModel& fluid, const std::vector<ReactionSpec>& specs, double c_cmax);

    int size() const { return static_cast<int>(reactions_.size()); }
    const Reaction& reaction(int r) const { return reactions_[r]; }
    const std::vector<Reaction>& reactions() const { return reactions_; }
    double c_cmax() const { return c_cmax_; }

    // dense stoichiometry coefficient s_{c,R}
    double coeff(int c, int r) const;

private:
    std::vector<Reaction> reactions_;
    double c_cmax_ = 0.0;
};

// |sum_c s_cR M_c| / sum_{reactants} |s_cR| M_c for every reaction
std::vector<double> validate_reactions(const FluidModel& fluid, const ReactionModel& reactions);

// throws StoichiometryImbalance naming the first reaction above tol
void check_stoichiometry(const FluidModel& fluid, const ReactionModel& reactions, double tol);

template <class S>
S arrhenius(double A, double Ea, const S& t_f)
{
    if (Ea == 0.0) return S(A);
    return A * exp(-Ea / (units::kGasConstantBtu * units::rankine(t_f)));
}

// Cell quantities the rate laws read.
template <class S>
struct RateInputs {
    S t;
    S pg;
    S phi_f;
    S so;
    S rho_o;
    S cc;
    const S* x_oil;
    const CompArray<S>* y;
};

template <class S>
void reaction_rates(const ReactionModel& m, const RateInputs<S>& in, S* rates)
{
    for (int r = 0; r < m.size(); ++r) {
        const Reaction& R = m.reaction(r);
        const S k = arrhenius(R.A, R.Ea, in.t);
        switch (R.law) {
        case RateLaw::gas_oil:
            rates[r] = k * ((*in.y)[R.gas_reactant] * in.pg) *
                       (in.phi_f * in.so * in.rho_o * in.x_oil[R.oil_slot]);
            break;
        case RateLaw::gas_solid:
            rates[r] = k * ((*in.y)[R.gas_reactant] * in.pg) * in.cc;
            break;
        case RateLaw::cracking: {
            const S ratio = in.cc / m.c_cmax();
            const S limiter = smax(1.0 - ratio * ratio * ratio * ratio * ratio, 0.0);
            rates[r] = k * (in.phi_f * in.so * in.rho_o * in.x_oil[R.oil_slot]) * limiter;
            break;
        }
        }
    }
}

// q_c = sum_R s_cR r_R, indexed by component id
template <class S>
CompArray<S> mass_sources(const ReactionModel& m, const S* rates)
{
    CompArray<S> q{};
    q.fill(S(0.0));
    for (int r = 0; r < m.size(); ++r)
        for (const auto& [c, s] : m.reaction(r).stoich) q[c] += s * rates[r];
    return q;
}

template <class S>
S heat_source(const ReactionModel& m, const S* rates)
{
    S q(0.0);
    for (int r = 0; r < m.size(); ++r) q += m.reaction(r).H * rates[r];
    return q;
}

}  // namespace isc
