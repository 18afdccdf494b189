#pragma once

// Values fixed from the worked example and from independent computations
// (extended-precision Newton, fixed-step RK4 runs) made when the suite was
// written.

namespace frozen {

// Worked example, as quoted to ten digits.
inline constexpr double kR0AtZero = 480.0 / 13.0;
inline constexpr double kR1 = 17.0;
inline constexpr double kTau1Quoted = 7.2176734929;
inline constexpr double kTau2Quoted = 1.5512468048;
inline constexpr double kTauHQuoted = 0.8357983104;
inline constexpr double kOmegaHQuoted = 0.4193565828;
inline constexpr double kDxiReQuoted = -9.8115344435;
inline constexpr double kDxiImQuoted = 0.7314225159;
inline constexpr double kReDxiDtauQuoted = -0.0137073586;
inline constexpr double kRootsQuoted[][2] = {
    {0.03214833, 0.76348925}, {-0.08306245, 0.0}, {-3.91260798, 0.0}, {-5.24904353, 0.0}};

// 50-digit Newton on (Re D, Im D) = 0, rounded.
inline constexpr double kTauH = 0.835798310439708;
inline constexpr double kOmegaH = 0.419356582755297;
inline constexpr double kDxiRe = -9.81153444352677;
inline constexpr double kDxiIm = 0.731422515854912;
inline constexpr double kReDxiDtau = -0.0137073585508316;
inline constexpr double kTau1 = 7.2176734928808;
inline constexpr double kTau2 = 1.5512468047683678;
// Positive roots of H at tau_h: the crossing frequency squared and one more.
inline constexpr double kHRootsAtTauH[] = {0.17585994, 0.37398};

// Limit cycles from RK4 runs (step 1e-3 day, 1 % start off E_d), peak to peak.
inline constexpr double kCycleAmpTau0[] = {8.094, 4.813, 1.631, 126.91, 858.19};
inline constexpr double kCyclePeriodTau0 = 17.47;
inline constexpr double kCycleAmpTau08[] = {2.2894, 0.9041, 0.2802, 23.8756, 164.70};
inline constexpr double kCyclePeriodTau08 = 16.19;

}  // namespace frozen
