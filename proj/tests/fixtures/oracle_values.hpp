#pragma once

// Generated by gen_fixtures.py; do not edit.

namespace fixtures {

struct LogGammaPoint { double re, im, lg_re, lg_im; };
inline constexpr LogGammaPoint kLogGamma[] = {
    {0.5, 0, 0.57236494292470008707, 0.0},
    {1, 0, 0.0, 0.0},
    {2.5, 0, 0.28468287047291915963, 0.0},
    {1, 1, -0.65092319930185633889, -0.30164032046753319789},
    {3, -4, -1.7566267846037841105, -4.7426644380346579282},
    {0.1, 50, -79.185684608589472944, 144.97206505719842487},
    {1, 2048, -3212.2596292496639042, 13568.005041127740889},
    {10, 0.5, 12.788687722901191677, 1.1261063095901985488},
    {0.3, -700, -1099.9487062759459227, -3885.44210621740786},
};
inline constexpr double kBsPutQuadrature = 5.5735260222569676908;
inline constexpr double kBsPutQuadratureDiv3 = 6.7309176491632979046;
inline constexpr double kEarlyExerciseQuad_re = -19.07890495368034889;
inline constexpr double kEarlyExerciseQuad_im = 32.738910100594330749;
inline constexpr double kPayoff2dQuad_re = 0.00069945071348359249138;
inline constexpr double kPayoff2dQuad_im = -0.0034032698925234944621;
inline constexpr double kPayoff2dQuadUnit = 0.16666666666666666667;
inline constexpr double kBasketConditionalQuad = 5.4286503508515547751;

}  // namespace fixtures
