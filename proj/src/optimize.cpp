#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>

#include "hpart/search.hpp"

namespace hpart {

void project_to_simplex(std::vector<double>& v) {
    if (v.empty()) return;
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) theta = candidate;
    }
    double total = 0.0;
    for (double& x : v) {
        x = std::max(x - theta, 0.0);
        total += x;
    }
    if (total < 1e-12) {
        std::fill(v.begin(), v.end(), 0.0);
        v[static_cast<std::size_t>(std::max_element(sorted.begin(), sorted.end()) - sorted.begin())] = 1.0;
        return;
    }
    for (double& x : v) x /= total;
}

MatrixGameSolution solve_matrix_game(const std::vector<double>& payoff, int rows, int cols) {
    // Shift to a positive matrix M, then max sum(y) s.t. M^T y <= 1, y >= 0. The column
    // strategy is read from the slack reduced costs.
    const double low = *std::min_element(payoff.begin(), payoff.end());
    const double shift = 1.0 - low;
    const int width = rows + cols + 1;  // y, slacks, rhs
    std::vector<double> t(static_cast<std::size_t>((cols + 1) * width), 0.0);
    auto at = [&](int r, int c) -> double& { return t[static_cast<std::size_t>(r * width + c)]; };
    std::vector<int> basis(cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) at(j, i) = payoff[static_cast<std::size_t>(i * cols + j)] + shift;
        at(j, rows + j) = 1.0;
        at(j, width - 1) = 1.0;
        basis[j] = rows + j;
    }
    for (int i = 0; i < rows; ++i) at(cols, i) = -1.0;

    constexpr double eps = 1e-13;
    for (int iteration = 0; iteration < 10'000; ++iteration) {
        int enter = -1;
        for (int c = 0; c < rows + cols; ++c)
            if (at(cols, c) < -eps) {
                enter = c;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < cols; ++r) {
            if (at(r, enter) <= eps) continue;
            const double ratio = at(r, width - 1) / at(r, enter);
            if (ratio < best - eps || (ratio <= best + eps && leave >= 0 && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave < 0) break;  // unbounded cannot happen for a positive matrix
        const double pivot = at(leave, enter);
        for (int c = 0; c < width; ++c) at(leave, c) /= pivot;
        for (int r = 0; r <= cols; ++r) {
            if (r == leave) continue;
            const double factor = at(r, enter);
            if (factor == 0.0) continue;
            for (int c = 0; c < width; ++c) at(r, c) -= factor * at(leave, c);
        }
        basis[leave] = enter;
    }
    MatrixGameSolution out;
    out.strategy.assign(static_cast<std::size_t>(cols), 0.0);
    double total = 0.0;
    for (int j = 0; j < cols; ++j) {
        out.strategy[j] = std::max(at(cols, rows + j), 0.0);
        total += out.strategy[j];
    }
    if (total <= 0.0) {
        std::fill(out.strategy.begin(), out.strategy.end(), 1.0 / cols);
    } else {
        for (double& x : out.strategy) x /= total;
    }
    out.value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
        double v = 0.0;
        for (int j = 0; j < cols; ++j) v += payoff[static_cast<std::size_t>(i * cols + j)] * out.strategy[j];
        out.value = std::min(out.value, v);
    }
    return out;
}

namespace {

struct Block {
    int u, v, rows, cols;
    std::vector<double> a;  // rows x cols
};

class Objective {
public:
    explicit Objective(const CombinatorialPattern& p) : sizes_(p.part_sizes) {
        const auto& edges = p.host.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& m = p.blocks[e];
            Block b{edges[e].u, edges[e].v, m.rows(), m.cols(), {}};
            b.a.resize(static_cast<std::size_t>(m.rows() * m.cols()));
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) b.a[static_cast<std::size_t>(i * m.cols() + j)] = m.test(i, j);
            blocks_.push_back(std::move(b));
        }
    }

    const std::vector<Block>& blocks() const { return blocks_; }
    const std::vector<int>& sizes() const { return sizes_; }

    double alpha(const Block& b, const PartWeights& w) const {
        double s = 0.0;
        for (int i = 0; i < b.rows; ++i) {
            if (w[b.u][i] == 0.0) continue;
            double row = 0.0;
            for (int j = 0; j < b.cols; ++j) row += b.a[static_cast<std::size_t>(i * b.cols + j)] * w[b.v][j];
            s += w[b.u][i] * row;
        }
        return s;
    }

    double minimum(const PartWeights& w) const {
        double m = 1.0;
        for (const auto& b : blocks_) m = std::min(m, alpha(b, w));
        return m;
    }

    // Softmin value, with its gradient written into grad.
    double smooth(const PartWeights& w, double beta, PartWeights* grad) const {
        std::vector<double> al(blocks_.size());
        double low = 1.0;
        for (std::size_t e = 0; e < blocks_.size(); ++e) {
            al[e] = alpha(blocks_[e], w);
            low = std::min(low, al[e]);
        }
        double z = 0.0;
        std::vector<double> soft(blocks_.size());
        for (std::size_t e = 0; e < blocks_.size(); ++e) {
            soft[e] = std::exp(-beta * (al[e] - low));
            z += soft[e];
        }
        if (grad) {
            for (std::size_t x = 0; x < grad->size(); ++x) std::fill((*grad)[x].begin(), (*grad)[x].end(), 0.0);
            for (std::size_t e = 0; e < blocks_.size(); ++e) {
                const Block& b = blocks_[e];
                const double pe = soft[e] / z;
                for (int i = 0; i < b.rows; ++i)
                    for (int j = 0; j < b.cols; ++j) {
                        const double a = b.a[static_cast<std::size_t>(i * b.cols + j)];
                        if (a == 0.0) continue;
                        (*grad)[b.u][i] += pe * a * w[b.v][j];
                        (*grad)[b.v][j] += pe * a * w[b.u][i];
                    }
            }
        }
        return low - std::log(z) / beta;
    }

private:
    std::vector<int> sizes_;
    std::vector<Block> blocks_;
};

void gradient_ascent(const Objective& f, PartWeights& w, const OptimizerOptions& options) {
    PartWeights grad = w, trial = w;
    for (double beta : options.betas) {
        double step = 1.0;
        double value = f.smooth(w, beta, &grad);
        for (int s = 0; s < options.steps_per_beta; ++s) {
            bool improved = false;
            while (step > 1e-10) {
                for (std::size_t x = 0; x < w.size(); ++x) {
                    for (std::size_t i = 0; i < w[x].size(); ++i) trial[x][i] = w[x][i] + step * grad[x][i];
                    project_to_simplex(trial[x]);
                }
                const double next = f.smooth(trial, beta, nullptr);
                if (next > value + 1e-15) {
                    improved = next - value > 1e-13;
                    w = trial;
                    value = f.smooth(w, beta, &grad);
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
    }
}

// Each part in turn gets its exact best response: a matrix game whose rows are the
// incident pair densities plus one constant row for the rest.
void polish(const Objective& f, PartWeights& w, int sweeps) {
    const int parts = static_cast<int>(w.size());
    double current = f.minimum(w);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const double before = current;
        for (int x = 0; x < parts; ++x) {
            const int n = static_cast<int>(w[x].size());
            if (n < 2) continue;
            std::vector<double> payoff;
            double rest = 1.0;
            int rows = 0;
            for (const auto& b : f.blocks()) {
                if (b.u != x && b.v != x) {
                    rest = std::min(rest, f.alpha(b, w));
                    continue;
                }
                std::vector<double> row(static_cast<std::size_t>(n), 0.0);
                for (int i = 0; i < b.rows; ++i)
                    for (int j = 0; j < b.cols; ++j) {
                        const double a = b.a[static_cast<std::size_t>(i * b.cols + j)];
                        if (b.u == x) {
                            row[i] += a * w[b.v][j];
                        } else {
                            row[j] += a * w[b.u][i];
                        }
                    }
                payoff.insert(payoff.end(), row.begin(), row.end());
                ++rows;
            }
            payoff.insert(payoff.end(), static_cast<std::size_t>(n), rest);
            ++rows;
            const auto game = solve_matrix_game(payoff, rows, n);
            auto saved = w[x];
            w[x] = game.strategy;
            const double next = f.minimum(w);
            if (next + 1e-15 < current) {
                w[x] = std::move(saved);
            } else {
                current = next;
            }
        }
        if (current - before < 1e-14) break;
    }
}

PartWeights start_point(const std::vector<int>& sizes, int index, int indicator_starts, boost::random::mt19937_64& rng) {
    PartWeights w(sizes.size());
    for (std::size_t x = 0; x < sizes.size(); ++x) w[x].assign(static_cast<std::size_t>(sizes[x]), 0.0);
    if (index == 0) return uniform_weights(sizes);
    if (index <= indicator_starts) {
        // Indicator k picks vertex (k-1) mod |V_x| in every part, rotated by the part index
        // on odd k so that distinct parts can pick distinct vertices.
        const int k = index - 1;
        for (std::size_t x = 0; x < sizes.size(); ++x) {
            const int shift = (k % 2 == 1) ? static_cast<int>(x) : 0;
            w[x][static_cast<std::size_t>((k / 2 + shift) % sizes[x])] = 1.0;
        }
        return w;
    }
    boost::random::gamma_distribution<double> gamma(0.5);
    for (std::size_t x = 0; x < sizes.size(); ++x) {
        double total = 0.0;
        for (double& v : w[x]) {
            v = gamma(rng);
            total += v;
        }
        if (total <= 0.0) {
            w[x][0] = 1.0;
            continue;
        }
        for (double& v : w[x]) v /= total;
    }
    return w;
}

}  // namespace

PartWeights uniform_weights(const std::vector<int>& part_sizes) {
    PartWeights w;
    for (int s : part_sizes) w.emplace_back(static_cast<std::size_t>(s), 1.0 / s);
    return w;
}

double pattern_density(const CombinatorialPattern& p, const PartWeights& weights) {
    return Objective(p).minimum(weights);
}

OptimizerOptions quick_optimizer_options(std::uint64_t seed) {
    OptimizerOptions o;
    o.starts = 6;
    o.seed = seed;
    o.betas = {10.0, 100.0, 1000.0};
    o.steps_per_beta = 60;
    o.polish_sweeps = 5;
    return o;
}

WeightedOptimum optimize_weights(const CombinatorialPattern& p, const OptimizerOptions& options) {
    const Objective f(p);
    WeightedOptimum best;
    best.weights = uniform_weights(p.part_sizes);
    best.density = f.minimum(best.weights);
    if (f.blocks().empty()) return best;
    const int max_size = *std::max_element(p.part_sizes.begin(), p.part_sizes.end());
    const int indicator_starts = std::min(std::max(options.starts - 1, 0), 2 * max_size);
    boost::random::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int s = 0; s < options.starts; ++s) {
        PartWeights w = start_point(p.part_sizes, s, indicator_starts, rng);
        gradient_ascent(f, w, options);
        polish(f, w, options.polish_sweeps);
        const double d = f.minimum(w);
        if (d > best.density + 1e-15) {
            best.density = d;
            best.weights = std::move(w);
        }
    }
    return best;
}

}  // namespace hpart
