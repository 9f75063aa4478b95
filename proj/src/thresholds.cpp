#include "hpart/thresholds.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "hpart/errors.hpp"

namespace hpart {

namespace {

struct NamedKind {
    const char* name;
    ThresholdKind kind;
    bool takes_param;
};

constexpr NamedKind kNames[] = {
    {"golden_ratio", ThresholdKind::GoldenRatio, false},
    {"turan_kt", ThresholdKind::TuranKt, true},
    {"rho_b", ThresholdKind::RhoB, true},
    {"conn_upper_kr", ThresholdKind::ConnUpperKr, true},
    {"conn_upper_general", ThresholdKind::ConnUpperGeneral, true},
    {"conn_upper_k4", ThresholdKind::ConnUpperK4, false},
    {"star", ThresholdKind::Star, true},
    {"dirac_lower", ThresholdKind::DiracLower, true},
    {"path_threshold", ThresholdKind::PathThreshold, true},
    {"k4mp3", ThresholdKind::K4MinusP3, false},
    {"c5_conn", ThresholdKind::C5Conn, false},
    {"pconn_path", ThresholdKind::PconnPath, true},
    {"pconn_complete", ThresholdKind::PconnComplete, true},
    {"cycle_conn_lower", ThresholdKind::CycleConnLower, true},
    {"cycle_conn_upper", ThresholdKind::CycleConnUpper, true},
};

void require_at_least(const char* name, int value, int lower) {
    if (value < lower) {
        throw InvalidInput(std::string(name) + " needs parameter >= " + std::to_string(lower) + ", got " +
                           std::to_string(value));
    }
}

double tan2(double x) {
    double t = std::tan(x);
    return t * t;
}

}  // namespace

ThresholdKind parse_threshold_kind(const std::string& name) {
    for (const auto& n : kNames)
        if (name == n.name) return n.kind;
    throw InvalidInput("unknown threshold id '" + name + "'");
}

std::string threshold_name(ThresholdKind kind) {
    for (const auto& n : kNames)
        if (n.kind == kind) return n.name;
    return "?";
}

bool threshold_takes_param(ThresholdKind kind) {
    for (const auto& n : kNames)
        if (n.kind == kind) return n.takes_param;
    return false;
}

double closed_form(ThresholdId id) {
    using std::numbers::pi;
    const int r = id.param;
    const std::string name = threshold_name(id.kind);
    switch (id.kind) {
        case ThresholdKind::GoldenRatio: return (std::sqrt(5.0) - 1.0) / 2.0;
        case ThresholdKind::TuranKt:
            require_at_least(name.c_str(), r, 2);
            return (r - 2.0) / (r - 1.0);
        case ThresholdKind::RhoB:
            require_at_least(name.c_str(), r, 3);
            return (r - 2.0) / (2.0 * (r - 1.0) * (r - 1.0)) *
                   (3.0 * r - 4.0 - std::sqrt(5.0 * r * r - 16.0 * r + 12.0));
        case ThresholdKind::ConnUpperKr:
            require_at_least(name.c_str(), r, 4);
            return 0.5 - 1.0 / (4.0 * r - 6.0);
        case ThresholdKind::ConnUpperGeneral:
        case ThresholdKind::Star:
            require_at_least(name.c_str(), r, 3);
            return (r - 2.0) / (r - 1.0);
        case ThresholdKind::ConnUpperK4: return 2.0 - 2.0 * std::sqrt(2.0 / 3.0);
        case ThresholdKind::DiracLower: {
            require_at_least(name.c_str(), r, 4);
            const double p = dirac_pstar(r);
            return p * p + (1.0 - p) * (1.0 - p);
        }
        case ThresholdKind::PathThreshold: {
            require_at_least(name.c_str(), r, 2);
            const double c = std::cos(pi / (r + 1.0));
            return 1.0 - 1.0 / (4.0 * c * c);
        }
        case ThresholdKind::K4MinusP3: return 4.0 - 2.0 * std::sqrt(3.0);
        case ThresholdKind::C5Conn: return 0.5;
        case ThresholdKind::PconnPath:
            require_at_least(name.c_str(), r, 2);
            return (3.0 - tan2(pi / (2.0 * r))) / 4.0;
        case ThresholdKind::PconnComplete:
            require_at_least(name.c_str(), r, 2);
            return (1.0 - tan2(pi / (2.0 * r))) / 2.0;
        case ThresholdKind::CycleConnLower:
            require_at_least(name.c_str(), r, 4);
            return (3.0 - tan2(pi / (r / 2 + 2.0))) / 4.0;
        case ThresholdKind::CycleConnUpper:
            require_at_least(name.c_str(), r, 4);
            return (3.0 - tan2(pi / (r + 2.0))) / 4.0;
    }
    throw InvalidInput("unhandled threshold id");
}

double dirac_cubic(int r, double p) {
    return (r - 2.0) - (4.0 * r - 10.0) * p + (6.0 * r - 14.0) * p * p - (4.0 * r - 8.0) * p * p * p;
}

double dirac_pstar(int r) {
    require_at_least("dirac_pstar", r, 4);
    int sign_changes = 0;
    double prev = dirac_cubic(r, 0.5);
    for (int k = 1; k <= 500; ++k) {
        const double p = 0.5 + k * 1e-3;
        const double cur = dirac_cubic(r, p);
        if ((prev > 0) != (cur > 0)) ++sign_changes;
        prev = cur;
    }
    if (sign_changes != 1) {
        throw std::logic_error("cubic does not have a unique sign change in (1/2, 1) for r = " + std::to_string(r));
    }
    double lo = 0.5, hi = 1.0;  // cubic(lo) > 0 > cubic(hi)
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (dirac_cubic(r, mid) > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double leila_optimal_alpha(int r) {
    require_at_least("leila alpha", r, 3);
    return (3.0 * r - 4.0 - std::sqrt(5.0 * r * r - 16.0 * r + 12.0)) / (2.0 * (r - 1.0));
}

double tree_spectral_radius(const SmallGraph& tree) {
    if (!is_tree(tree)) throw InvalidInput("tree_threshold needs a tree");
    const int n = tree.order();
    if (n == 1) return 0.0;
    // A^2 is positive semidefinite, so power iteration converges to lambda^2 without the
    // +-lambda oscillation of bipartite spectra. A non-uniform start keeps a component
    // along the Perron vector of each bipartition class.
    std::vector<double> x(n), ax(n), y(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * i;
    auto apply_a = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            std::uint64_t nb = tree.neighbours(i);
            while (nb) {
                s += in[std::countr_zero(nb)];
                nb &= nb - 1;
            }
            out[i] = s;
        }
    };
    double rayleigh = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        double norm = 0.0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : x) v /= norm;
        apply_a(x, ax);
        apply_a(ax, y);
        double next = 0.0;
        for (int i = 0; i < n; ++i) next += x[i] * y[i];
        const bool converged = std::abs(next - rayleigh) < 1e-12 * std::max(1.0, next) && iter > 10;
        rayleigh = next;
        x.swap(y);
        if (converged) break;
    }
    return std::sqrt(rayleigh);
}

double tree_threshold(const SmallGraph& tree) {
    const double lambda = tree_spectral_radius(tree);
    if (lambda == 0.0) throw InvalidInput("tree_threshold needs at least one edge");
    return 1.0 - 1.0 / (lambda * lambda);
}

}  // namespace hpart
