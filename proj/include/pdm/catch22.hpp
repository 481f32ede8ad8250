#pragma once

#include <array>
#include <span>
#include <string_view>

namespace pdm::catch22 {

inline constexpr std::size_t kCount = 24;

// Canonical catch22 order followed by the two catch24 extras.
inline constexpr std::array<std::string_view, kCount> kNames{
    "DN_HistogramMode_5",
    "DN_HistogramMode_10",
    "CO_f1ecac",
    "CO_FirstMin_ac",
    "CO_HistogramAMI_even_2_5",
    "CO_trev_1_num",
    "MD_hrv_classic_pnn40",
    "SB_BinaryStats_mean_longstretch1",
    "SB_TransitionMatrix_3ac_sumdiagcov",
    "PD_PeriodicityWang_th0_01",
    "CO_Embed2_Dist_tau_d_expfit_meandiff",
    "IN_AutoMutualInfoStats_40_gaussian_fmmi",
    "FC_LocalSimple_mean1_tauresrat",
    "DN_OutlierInclude_p_001_mdrmd",
    "DN_OutlierInclude_n_001_mdrmd",
    "SP_Summaries_welch_rect_area_5_1",
    "SB_BinaryStats_diff_longstretch0",
    "SB_MotifThree_quantile_hh",
    "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1",
    "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1",
    "SP_Summaries_welch_rect_centroid",
    "FC_LocalSimple_mean3_stderr",
    "DN_Mean",
    "DN_Spread_Std",
};

// Series shorter than this get 0 for the 22 shape features.
inline constexpr int kMinLength = 10;

// Raw reference values, NaN included; input is z-scored internally
// exactly like the reference wrapper. Requires size >= 3.
std::array<double, kCount> compute_raw(std::span<const double> y);

// Total version: short or constant input and non-finite outputs map to 0.
std::array<double, kCount> compute(std::span<const double> y);

}  // namespace pdm::catch22
