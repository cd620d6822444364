#pragma once
// Generated by derive_oracles.py.
namespace oracle {
// (4/3pi) sin(3pi/2)
inline constexpr double f3_instantaneous = -0.42441318157838759;
// top-hat, t_pi = tau/2, n = 1, quadrature
inline constexpr double f1_tophat_half = 1;
// top-hat, t_pi = tau/4, n = 3, quadrature
inline constexpr double f3_tophat_quarter = -0.24008435097522834;
// modulated k = 9, d = 1.915, n = 9, quadrature
inline constexpr double f9_G1 = -0.27091708082907273;
// modulated k = 5, d = -0.321, n = 5, quadrature
inline constexpr double f5_G4 = 0.081741978771995544;
// modulated k = 9, d = 1.915, n = 1, quadrature
inline constexpr double f1_G1 = 0.96430501547904113;
// modulated k = 9, d = 1.915, n = 7, quadrature
inline constexpr double f7_G1 = 0.11468513264199622;
// instantaneous J, k = 1, n_max = 2
inline constexpr double J_inst_k1 = 0.40528473456935116;
// instantaneous J^b, k = 9, n_max = 18
inline constexpr double Jb_inst_k9 = 2.0844576232797065;
// ratio r for the same spectrum
inline constexpr double r_inst_k9 = 1.0662108287746668;
// pi / (8 eta^2 nu), eta = 0.005
inline constexpr double tg_dispersive_eta005 = 0.011363636363636362;
// 2 pi / t_g for t_g = 1.641 ms
inline constexpr double xi_G1 = 3828.8758727480717;
// Bose occupation at 300 K
inline constexpr double Nbar_300K = 28413571.049219873;
// second-order coefficients of the G4 pulse
inline constexpr double G4_j_perp = 0.25920569829941359;
inline constexpr double G4_b_prime = 2.2635614319908514e-05;
inline constexpr double G4_b_dprime = 0.2361514170555408;
}  // namespace oracle
