#include "isc/fluid.hpp"

#include "isc/error.hpp"

namespace isc {

FluidModel::FluidModel(std::vector<ComponentProps> comps, double p_ref, double t_ref)
    : comps_(std::move(comps)), p_ref_(p_ref), t_ref_(t_ref)
{
    if (static_cast<int>(comps_.size()) > kMaxComponents)
        throw Error(ErrorCode::dimension_mismatch,
                    "at most " + std::to_string(kMaxComponents) + " components are supported");
    for (int c = 0; c < ncomp(); ++c) {
        switch (comps_[c].phase_class) {
        case PhaseClass::water:
            if (water_ >= 0)
                throw Error(ErrorCode::non_physical_value, "more than one water component");
            water_ = c;
            break;
        case PhaseClass::oil: oil_.push_back(c); break;
        case PhaseClass::gas: gas_.push_back(c); break;
        case PhaseClass::solid:
            if (solid_ >= 0)
                throw Error(ErrorCode::non_physical_value, "more than one solid component");
            solid_ = c;
            break;
        }
        if (comps_[c].phase_class != PhaseClass::solid) volatiles_.push_back(c);
    }
    if (water_ < 0) throw Error(ErrorCode::non_physical_value, "no water component");
    if (oil_.empty()) throw Error(ErrorCode::non_physical_value, "no oil component");
    if (gas_.empty()) throw Error(ErrorCode::non_physical_value, "no non-condensable gas component");

    for (int i = 1; i < nco(); ++i)
        if (comps_[oil_[i]].M > comps_[oil_[heaviest_]].M) heaviest_ = i;
}

int FluidModel::index_of(const std::string& name) const
{
    for (int c = 0; c < ncomp(); ++c)
        if (comps_[c].name == name) return c;
    return -1;
}

}  // namespace isc
