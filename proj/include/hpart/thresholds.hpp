#pragma once

#include <string>

#include "hpart/small_graph.hpp"

namespace hpart {

/// Closed-form density thresholds. Parameters that a given id ignores are unused.
enum class ThresholdKind {
    GoldenRatio,        // (sqrt5 - 1)/2, triangle in tripartite graphs
    TuranKt,            // (t-2)/(t-1)
    RhoB,               // lower bound for connected transversals in K_r
    ConnUpperKr,        // 1/2 - 1/(4r-6)
    ConnUpperGeneral,   // (r-2)/(r-1), any connected host
    ConnUpperK4,        // 2 - 2 sqrt(2/3)
    Star,               // (r-2)/(r-1), star host
    DiracLower,         // p*^2 + (1-p*)^2
    PathThreshold,      // 1 - 1/(4 cos^2(pi/(r+1)))
    K4MinusP3,          // 4 - 2 sqrt3
    C5Conn,             // 1/2
    PconnPath,          // (3 - tan^2(pi/2r))/4
    PconnComplete,      // (1 - tan^2(pi/2r))/2
    CycleConnLower,     // (3 - tan^2(pi/(floor(r/2)+2)))/4
    CycleConnUpper,     // (3 - tan^2(pi/(r+2)))/4
};

struct ThresholdId {
    ThresholdKind kind;
    int param = 0;  // r, or t for TuranKt
};

// Accepts the CLI names: golden_ratio, turan_kt, rho_b, conn_upper_kr, ...
ThresholdKind parse_threshold_kind(const std::string& name);
std::string threshold_name(ThresholdKind kind);
bool threshold_takes_param(ThresholdKind kind);

double closed_form(ThresholdId id);

// The cubic whose root in (1/2, 1) sets the refined dead-end weights.
double dirac_cubic(int r, double p);
// Root in (1/2, 1) by bisection to 1e-14, after checking on a 1e-3 grid that the
// cubic changes sign exactly once there.
double dirac_pstar(int r);

double leila_optimal_alpha(int r);

// Spectral radius of a tree by power iteration on A^2 (Rayleigh quotient to 1e-12).
double tree_spectral_radius(const SmallGraph& tree);
// 1 - 1/lambda^2.
double tree_threshold(const SmallGraph& tree);

}  // namespace hpart
