#include "isc/rockfluid.hpp"

#include "isc/error.hpp"

namespace isc {

void validate_table(const SatTable& t, const std::string& label, bool kr_increasing)
{
    const std::size_t n = t.s.size();
    if (n == 0) throw Error(ErrorCode::non_physical_value, label + " table is empty");
    if (t.kr.size() != n || t.kro.size() != n || t.pc.size() != n)
        throw Error(ErrorCode::dimension_mismatch, label + " table columns differ in length");
    for (std::size_t i = 0; i < n; ++i) {
        if (t.s[i] < 0.0 || t.s[i] > 1.0)
            throw Error(ErrorCode::non_physical_value, label + " saturation outside [0,1]");
        if (i > 0 && !(t.s[i] > t.s[i - 1]))
            throw Error(ErrorCode::non_physical_value, label + " saturations not increasing");
        if (t.kr[i] < 0.0 || t.kr[i] > 1.0 || t.kro[i] < 0.0 || t.kro[i] > 1.0)
            throw Error(ErrorCode::non_physical_value, label + " relative permeability outside [0,1]");
        if (i > 0 && kr_increasing && t.kr[i] < t.kr[i - 1])
            throw Error(ErrorCode::non_physical_value, label + " kr column must be nondecreasing");
        if (i > 0 && t.kro[i] > t.kro[i - 1])
            throw Error(ErrorCode::non_physical_value, label + " kro column must be nonincreasing");
    }
}

RockFluid::RockFluid(SatTable swt, SatTable slt) : swt_(std::move(swt)), slt_(std::move(slt))
{
    validate_table(swt_, "SWT", true);
    validate_table(slt_, "SLT", true);
    krocw_ = swt_.kro.front();
    if (!(krocw_ > 0.0))
        throw Error(ErrorCode::non_physical_value, "k_row at connate water must be positive");
}

}  // namespace isc
