#include "eurqm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eurqm {

namespace {

// Column maxima of the first overlap matrix pushed through the rest of the chain.
RealVector chain_from(const std::vector<const RealMatrix*>& chain) {
    RealVector b = chain.front()->colwise().maxCoeff().transpose();
    for (std::size_t n = 1; n < chain.size(); ++n) {
        b = (b.transpose() * *chain[n]).transpose();
    }
    return b;
}

double ell_from(const RealVector& b, const std::vector<double>& p) {
    double acc = 0.0;
    for (Eigen::Index a = 0; a < b.size(); ++a) {
        if (p[a] > 0.0) acc -= p[a] * std::log2(b[a]);
    }
    return acc;
}

void require_ordering_cap(std::size_t n, const SearchLimits& limits) {
    if (static_cast<int>(n) > limits.max_ordering_size) {
        throw std::invalid_argument("ordering search over " + std::to_string(n) +
                                    "! permutations exceeds the cap of N <= " +
                                    std::to_string(limits.max_ordering_size) +
                                    "; raise SearchLimits::max_ordering_size explicitly");
    }
}

// Everything the bounds share for one (state, measurement set) instance.
class Context {
  public:
    Context(const MeasurementSet& ms, double h_ab, std::vector<OutcomeDistribution> dists)
        : ms_(ms), n_(static_cast<int>(ms.size())), h_ab_(h_ab), dists_(std::move(dists)) {
        overlaps_.resize(n_ * n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) overlaps_[i * n_ + j] = overlap_matrix(ms[i], ms[j]);
        }
    }

    static Context for_state(const BipartiteState& state, const MeasurementSet& ms) {
        require_dims(state.dim_a(), ms);
        const ComplexMatrix rho_a = state.reduced_a();
        std::vector<OutcomeDistribution> dists;
        for (const auto& m : ms) dists.push_back(outcome_distribution(rho_a, m));
        return Context(ms, conditional_entropy(state), std::move(dists));
    }

    static void require_dims(int dim_a, const MeasurementSet& ms) {
        if (ms.dim() != dim_a) {
            throw std::invalid_argument("measurement dimension " + std::to_string(ms.dim()) +
                                        " does not match subsystem A dimension " + std::to_string(dim_a));
        }
    }

    int n() const { return n_; }
    int d() const { return ms_.dim(); }
    double h_ab() const { return h_ab_; }
    const RealMatrix& overlap(int i, int j) const { return overlaps_[i * n_ + j]; }

    double sum_shannon() const {
        double s = 0.0;
        for (const auto& p : dists_) s += shannon_entropy(p);
        return s;
    }

    RealVector chain(const std::vector<int>& perm) const {
        std::vector<const RealMatrix*> mats;
        for (std::size_t k = 0; k + 1 < perm.size(); ++k) mats.push_back(&overlap(perm[k], perm[k + 1]));
        return chain_from(mats);
    }

    // Scores every permutation in lexicographic order and keeps the first
    // strict improvement, so ties resolve to the smallest permutation.
    template <typename Score, typename Better>
    std::pair<double, std::vector<int>> search(const SearchLimits& limits, Score score, Better better) const {
        require_ordering_cap(n_, limits);
        std::vector<int> perm(n_);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best = perm;
        double best_value = score(perm);
        while (std::next_permutation(perm.begin(), perm.end())) {
            const double v = score(perm);
            if (better(v, best_value)) {
                best_value = v;
                best = perm;
            }
        }
        return {best_value, best};
    }

    std::pair<double, std::vector<int>> max_ell(const SearchLimits& limits) const {
        return search(
            limits, [&](const std::vector<int>& p) { return ell_from(chain(p), dists_[p.back()].probabilities); },
            std::greater<>());
    }

    std::pair<double, std::vector<int>> max_ell_tilde(const SearchLimits& limits) const {
        return search(limits, [&](const std::vector<int>& p) { return -std::log2(chain(p).maxCoeff()); },
                      std::greater<>());
    }

    std::pair<double, std::vector<int>> min_u(const SearchLimits& limits) const {
        return search(limits, [&](const std::vector<int>& p) { return std::log2(chain(p).sum()); }, std::less<>());
    }

    double directed_c(int i, int j) const {
        // -sum_{a_j} p_j log2 max_{a_i} |<a_i|a_j>|^2
        const RealVector col_max = overlap(i, j).colwise().maxCoeff().transpose();
        return ell_from(col_max, dists_[j].probabilities);
    }

    PairComplementarity pair(int i, int j) const {
        PairComplementarity c{i, j, directed_c(i, j), directed_c(j, i), 0.0};
        c.value = std::max(c.c_ij, c.c_ji);
        return c;
    }

    double pair_floor(int i, int j) const { return -std::log2(overlap(i, j).maxCoeff()); }

    // max over covers of (sum of edge weights) / r
    template <typename Weight>
    std::pair<double, PairCover> best_cover(const SearchLimits& limits, Weight weight) const {
        auto covers = enumerate_pair_covers(n_, limits.max_cover_size);
        double best_value = -std::numeric_limits<double>::infinity();
        std::size_t best = 0;
        for (std::size_t k = 0; k < covers.size(); ++k) {
            double sum = 0.0;
            for (auto [i, j] : covers[k].edges) sum += weight(i, j);
            const double v = sum / covers[k].degree;
            if (v > best_value) {
                best_value = v;
                best = k;
            }
        }
        return {best_value, std::move(covers[best])};
    }

    double l1_from(double max_ell) const { return (n_ - 1) * h_ab_ + max_ell; }

    CoverBound lopt(const SearchLimits& limits) const {
        auto [b, cover] = best_cover(limits, [&](int i, int j) { return pair(i, j).value; });
        return CoverBound{0.5 * n_ * h_ab_ + b, std::move(cover)};
    }

    double uopt_tilde(const SearchLimits& limits) const {
        const double b = best_cover(limits, [&](int i, int j) { return pair_floor(i, j); }).first;
        return n_ * std::log2(static_cast<double>(d())) - 0.5 * n_ * h_ab_ - b;
    }

    double b_tilde(const SearchLimits& limits) const { return (n_ - 1) * h_ab_ + max_ell_tilde(limits).first; }

    double u2_tilde(const SearchLimits& limits) const {
        return (n_ - 1) * (std::log2(static_cast<double>(d())) - h_ab_) + min_u(limits).first;
    }

    double u1_tilde(const SearchLimits& limits) const {
        return n_ * std::log2(static_cast<double>(d())) - b_tilde(limits);
    }

    const MeasurementSet& ms() const { return ms_; }

  private:
    const MeasurementSet& ms_;
    int n_;
    double h_ab_;
    std::vector<OutcomeDistribution> dists_;
    std::vector<RealMatrix> overlaps_;
};

}  // namespace

RealMatrix overlap_matrix(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("overlap_matrix: dimension mismatch between '" + a.label() + "' and '" +
                                    b.label() + "'");
    }
    return (a.vectors().adjoint() * b.vectors()).cwiseAbs2();
}

MeasurementOrdering make_ordering(const MeasurementSet& ms, std::vector<int> permutation) {
    const int n = static_cast<int>(ms.size());
    std::vector<int> sorted = permutation;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(n);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) {
        throw std::invalid_argument("make_ordering: permutation is not a bijection on the " + std::to_string(n) +
                                    " measurements");
    }
    MeasurementOrdering o;
    o.permutation = std::move(permutation);
    for (int idx : o.permutation) o.sequence.push_back(ms[idx]);
    for (int k = 0; k + 1 < n; ++k) o.overlaps.push_back(overlap_matrix(o.sequence[k], o.sequence[k + 1]));
    return o;
}

ChainCoefficients chain_coefficients(const MeasurementOrdering& ordering) {
    if (ordering.overlaps.empty()) {
        throw std::invalid_argument("chain_coefficients: an ordering needs at least two measurements");
    }
    std::vector<const RealMatrix*> mats;
    for (const auto& d : ordering.overlaps) mats.push_back(&d);
    return ChainCoefficients{chain_from(mats)};
}

double ell_u(const BipartiteState& state, const MeasurementOrdering& ordering) {
    const auto b = chain_coefficients(ordering).b;
    return ell_from(b, outcome_distribution(state, ordering.sequence.back()).probabilities);
}

double ell_u_tilde(const MeasurementOrdering& ordering) {
    return -std::log2(chain_coefficients(ordering).b.maxCoeff());
}

double u_concavity(const MeasurementOrdering& ordering) {
    return std::log2(chain_coefficients(ordering).b.sum());
}

OrderingBound eur_l1(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    require_ordering_cap(ms.size(), limits);
    const auto ctx = Context::for_state(state, ms);
    auto [ell, perm] = ctx.max_ell(limits);
    return OrderingBound{ctx.l1_from(ell), make_ordering(ms, std::move(perm))};
}

PairComplementarity pair_complementarity(const BipartiteState& state, const MeasurementSet& ms, int i, int j) {
    const int n = static_cast<int>(ms.size());
    if (i < 0 || j < 0 || i >= n || j >= n) {
        throw std::invalid_argument("pair_complementarity: index out of range");
    }
    return Context::for_state(state, ms).pair(i, j);
}

PairComplementarity pair_complementarity(const BipartiteState& state, const ProjectiveMeasurement& a,
                                         const ProjectiveMeasurement& b) {
    return pair_complementarity(state, MeasurementSet({a, b}), 0, 1);
}

double state_independent_complementarity(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
    return -std::log2(overlap_matrix(a, b).maxCoeff());
}

CoverBound eur_lopt(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    return Context::for_state(state, ms).lopt(limits);
}

double eur_total(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    return std::max({eur_l1(state, ms, limits).value, eur_lopt(state, ms, limits).value, 0.0});
}

double eur_state_independent(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    return Context::for_state(state, ms).b_tilde(limits);
}

double eur_no_memory(const ComplexMatrix& rho, const MeasurementSet& ms, const SearchLimits& limits) {
    Context::require_dims(static_cast<int>(rho.rows()), ms);
    std::vector<OutcomeDistribution> dists;
    for (const auto& m : ms) dists.push_back(outcome_distribution(rho, m));
    const Context ctx(ms, von_neumann_entropy(rho), std::move(dists));
    return ctx.l1_from(ctx.max_ell(limits).first);
}

double iep_u1(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    const auto ctx = Context::for_state(state, ms);
    return ctx.sum_shannon() - ctx.l1_from(ctx.max_ell(limits).first);
}

double iep_uopt(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    const auto ctx = Context::for_state(state, ms);
    return ctx.sum_shannon() - ctx.lopt(limits).value;
}

double iep_u1_tilde(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    return Context::for_state(state, ms).u1_tilde(limits);
}

double iep_u2_tilde(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    return Context::for_state(state, ms).u2_tilde(limits);
}

double iep_uopt_tilde(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    return Context::for_state(state, ms).uopt_tilde(limits);
}

IepTotals iep_total(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    const auto r = compute_report(state, ms, limits);
    return IepTotals{r.iep_total_dep, r.iep_total_indep};
}

BoundReport compute_report(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits) {
    require_ordering_cap(ms.size(), limits);
    const auto ctx = Context::for_state(state, ms);
    BoundReport r;
    r.h_ab_cond = ctx.h_ab();

    const double s_b = von_neumann_entropy(state.reduced_b());
    const double sum_h = ctx.sum_shannon();
    for (const auto& m : ms) r.lhs_eur += von_neumann_entropy(measure_channel(state, m).rho()) - s_b;
    r.lhs_iep = sum_h - r.lhs_eur;

    auto [ell, perm] = ctx.max_ell(limits);
    r.l1 = ctx.l1_from(ell);
    r.best_ordering_eur = make_ordering(ms, std::move(perm));

    auto lopt = ctx.lopt(limits);
    r.lopt = lopt.value;
    r.best_cover = std::move(lopt.best);

    r.eur_total = std::max({r.l1, r.lopt, 0.0});
    r.b_tilde = ctx.b_tilde(limits);

    r.u1 = sum_h - r.l1;
    r.uopt = sum_h - r.lopt;
    r.u1_tilde = ctx.n() * std::log2(static_cast<double>(ctx.d())) - r.b_tilde;
    r.u2_tilde = ctx.u2_tilde(limits);
    r.uopt_tilde = ctx.uopt_tilde(limits);
    r.iep_total_dep = std::min(r.u1, r.uopt);
    r.iep_total_indep = std::min({r.u1_tilde, r.u2_tilde, r.uopt_tilde});
    return r;
}

}  // namespace eurqm
