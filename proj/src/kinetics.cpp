#include "isc/kinetics.hpp"

#include <cmath>
#include <sstream>

#include "isc/error.hpp"

namespace isc {

ReactionModel::ReactionModel(const FluidModel& fluid, const std::vector<ReactionSpec>& specs,
                             double c_cmax)
    : c_cmax_(c_cmax)
{
    if (static_cast<int>(specs.size()) > kMaxReactions)
        throw Error(ErrorCode::dimension_mismatch, "too many reactions");
    for (const ReactionSpec& spec : specs) {
        Reaction R;
        R.name = spec.name;
        R.law = spec.law;
        R.A = spec.A;
        R.Ea = spec.Ea;
        R.H = spec.H;
        if (spec.A < 0.0)
            throw Error(ErrorCode::non_physical_value, "reaction " + spec.name + ": negative A");
        int n_reactants = 0, n_products = 0;
        for (const auto& [name, s] : spec.stoich) {
            const int c = fluid.index_of(name);
            if (c < 0)
                throw Error(ErrorCode::non_physical_value,
                            "reaction " + spec.name + " references unknown component " + name);
            R.stoich.emplace_back(c, s);
            if (s < 0.0) {
                ++n_reactants;
                const PhaseClass pc = fluid.comp(c).phase_class;
                if (pc == PhaseClass::gas && R.gas_reactant < 0) R.gas_reactant = c;
                if (pc == PhaseClass::oil && R.oil_slot < 0) {
                    for (int i = 0; i < fluid.nco(); ++i)
                        if (fluid.oil()[i] == c) R.oil_slot = i;
                }
            } else if (s > 0.0) {
                ++n_products;
            }
        }
        if (n_reactants == 0 || n_products == 0)
            throw Error(ErrorCode::non_physical_value,
                        "reaction " + spec.name + " needs at least one reactant and one product");
        const bool needs_gas = R.law != RateLaw::cracking;
        const bool needs_oil = R.law != RateLaw::gas_solid;
        if (needs_gas && R.gas_reactant < 0)
            throw Error(ErrorCode::non_physical_value,
                        "reaction " + spec.name + ": rate law needs a gas-phase reactant");
        if (needs_oil && R.oil_slot < 0)
            throw Error(ErrorCode::non_physical_value,
                        "reaction " + spec.name + ": rate law needs an oil-phase reactant");
        if (R.law == RateLaw::gas_solid && !fluid.has_solid())
            throw Error(ErrorCode::non_physical_value,
                        "reaction " + spec.name + ": gas-solid law without a solid component");
        if (R.law == RateLaw::cracking && !(c_cmax > 0.0))
            throw Error(ErrorCode::non_physical_value,
                        "cracking reaction " + spec.name + " requires a positive CCMAX");
        reactions_.push_back(std::move(R));
    }
}

double ReactionModel::coeff(int c, int r) const
{
    double s = 0.0;
    for (const auto& [cc, v] : reactions_[r].stoich)
        if (cc == c) s += v;
    return s;
}

std::vector<double> validate_reactions(const FluidModel& fluid, const ReactionModel& reactions)
{
    std::vector<double> err;
    for (const Reaction& R : reactions.reactions()) {
        double net = 0.0, reactant_mass = 0.0;
        for (const auto& [c, s] : R.stoich) {
            const double m = s * fluid.comp(c).M;
            net += m;
            if (s < 0.0) reactant_mass += -m;
        }
        err.push_back(reactant_mass > 0.0 ? std::abs(net) / reactant_mass : INFINITY);
    }
    return err;
}

void check_stoichiometry(const FluidModel& fluid, const ReactionModel& reactions, double tol)
{
    const std::vector<double> err = validate_reactions(fluid, reactions);
    for (int r = 0; r < reactions.size(); ++r) {
        if (!(err[r] <= tol)) {
            std::ostringstream os;
            os << "reaction " << reactions.reaction(r).name << " has relative mass error " << err[r]
               << " above tolerance " << tol;
            throw Error(ErrorCode::stoichiometry_imbalance, os.str());
        }
    }
}

}  // namespace isc
