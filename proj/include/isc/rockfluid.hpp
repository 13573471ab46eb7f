#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "isc/dual.hpp"

namespace isc {

// One saturation table. For SWT the abscissa is S_w and the columns are
// (k_rw, k_row, p_cow); for SLT the abscissa is S_g and the columns are
// (k_rg, k_rog, p_cog).
struct SatTable {
    std::vector<double> s;
    std::vector<double> kr;   // k_rw or k_rg
    std::vector<double> kro;  // k_row or k_rog
    std::vector<double> pc;   // p_cow or p_cog
    bool operator==(const SatTable&) const = default;
};

// Throws NonPhysicalValue when the table breaks monotonicity or bounds.
void validate_table(const SatTable& t, const std::string& label, bool kr_increasing);

// Piecewise-linear, clamped outside the abscissa range. The derivative is
// the slope of the active segment (zero in the clamped regions).
template <class S>
S interp(const std::vector<double>& xs, const std::vector<double>& ys, const S& s)
{
    const double sv = value(s);
    const std::size_t n = xs.size();
    if (n == 1 || sv <= xs.front()) return S(ys.front());
    if (sv >= xs.back()) return S(ys.back());
    const std::size_t hi =
        static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), sv) - xs.begin());
    const std::size_t lo = hi - 1;
    const double slope = (ys[hi] - ys[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + slope * (s - xs[lo]);
}

template <class S>
S stone2(double krocw, const S& krow, const S& krw, const S& krog, const S& krg)
{
    S kro = krocw * ((krow / krocw + krw) * (krog / krocw + krg) - krw - krg);
    if (kro < 0.0) return S(0.0);
    if (kro > 1.0) return S(1.0);
    return kro;
}

template <class S>
struct RelPerm {
    S krw, kro, krg;
    S pcow, pcog;
};

class RockFluid {
public:
    RockFluid() = default;
    RockFluid(SatTable swt, SatTable slt);

    const SatTable& swt() const { return swt_; }
    const SatTable& slt() const { return slt_; }
    double krocw() const { return krocw_; }

    template <class S>
    RelPerm<S> evaluate(const S& sw, const S& sg) const
    {
        RelPerm<S> r;
        r.krw = interp(swt_.s, swt_.kr, sw);
        const S krow = interp(swt_.s, swt_.kro, sw);
        r.krg = interp(slt_.s, slt_.kr, sg);
        const S krog = interp(slt_.s, slt_.kro, sg);
        r.kro = stone2(krocw_, krow, r.krw, krog, r.krg);
        r.pcow = interp(swt_.s, swt_.pc, sw);
        r.pcog = interp(slt_.s, slt_.pc, sg);
        return r;
    }

private:
    SatTable swt_;
    SatTable slt_;
    double krocw_ = 1.0;
};

}  // namespace isc
