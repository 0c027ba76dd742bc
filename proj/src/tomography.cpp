#include "puretomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "puretomo/constructions.hpp"
#include "rng_util.hpp"

namespace puretomo {

namespace {

double checked(double p) {
    if (!std::isfinite(p)) throw BadParams("outcome value is not finite");
    if (p < -1e-10) throw NegativeProbability("outcome value below -1e-10");
    return p < 0.0 ? 0.0 : p;
}

}  // namespace

PureState reconstruct_d3(const OutcomeVector& p) {
    if (p.size() != 8) throw BadParams("closed-form inversion expects 8 outcome values");
    double q[8];
    for (std::size_t k = 0; k < 8; ++k) q[k] = checked(p[k]);

    const double a0 = std::sqrt(q[0]), a1 = std::sqrt(q[1]), a2 = std::sqrt(q[2]);
    // An amplitude this small contributes below the consistency gate, so
    // treat it as absent for the case split.
    const double eps = 1e-12;
    const bool h0 = a0 > eps, h1 = a1 > eps, h2 = a2 > eps;

    std::vector<cplx> amp(3);
    if (!h0 && !h1 && !h2) throw InconsistentOutcomes("all three amplitudes vanish");

    if (h0 && h1 && h2) {
        // Both phases present.  θ1 straight from the E3/E4 cross terms;
        // cosθ2 from E5; sinθ2 from whichever of E6/E7 is better
        // conditioned given θ1.
        const double c1 = (q[3] - q[0] - q[1]) / (2.0 * a0 * a1);
        const double s1 = (q[4] - q[0] - q[1]) / (2.0 * a0 * a1);
        const double c2 = (q[5] - q[0] - q[2]) / (2.0 * a0 * a2);
        const double ssq = q[0] + q[1] + q[2];
        double s2;
        if (std::abs(s1) >= std::abs(c1)) {
            s2 = (q[6] - ssq - 2.0 * a0 * a1 * c1 - 2.0 * a0 * a2 * c2 - 2.0 * a1 * a2 * c1 * c2) /
                 (2.0 * a1 * a2 * s1);
        } else {
            s2 = (q[7] - ssq - 2.0 * a0 * a1 * c1 + 2.0 * a1 * a2 * s1 * c2) /
                 (2.0 * a2 * (a0 + a1 * c1));
        }
        amp[0] = a0;
        amp[1] = std::polar(a1, std::atan2(s1, c1));
        amp[2] = std::polar(a2, std::atan2(s2, c2));
    } else if (h0 && h1) {
        const double c = (q[3] - q[0] - q[1]) / (2.0 * a0 * a1);
        const double s = (q[4] - q[0] - q[1]) / (2.0 * a0 * a1);
        amp[0] = a0;
        amp[1] = std::polar(a1, std::atan2(s, c));
    } else if (h0 && h2) {
        const double c = (q[5] - q[0] - q[2]) / (2.0 * a0 * a2);
        const double s = (q[7] - q[0] - q[2]) / (2.0 * a0 * a2);
        amp[0] = a0;
        amp[2] = std::polar(a2, std::atan2(s, c));
    } else if (h1 && h2) {
        const double c = (q[6] - q[1] - q[2]) / (2.0 * a1 * a2);
        const double s = (q[7] - q[1] - q[2]) / (2.0 * a1 * a2);
        amp[1] = a1;
        amp[2] = std::polar(a2, std::atan2(s, c));
    } else {
        amp[h0 ? 0 : (h1 ? 1 : 2)] = h0 ? a0 : (h1 ? a1 : a2);
    }

    PureState result(std::move(amp));
    const auto predicted = outcome_vector(result, eight_ops_d3());
    double resid = 0.0;
    for (std::size_t k = 0; k < 8; ++k) resid = std::max(resid, std::abs(predicted[k] - q[k]));
    if (resid > tol::consistency)
        throw InconsistentOutcomes("outcomes are not reproduced by any pure state");
    return result;
}

BornOracle exact_oracle(PureState hidden) {
    return [hidden = std::move(hidden)](const Rank1Operator& op) { return op.born(hidden); };
}

BornOracle sampled_oracle(PureState hidden, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw BadParams("sampled oracle needs at least one sample");
    // Each query simulates `samples` yes/no trials of the event with
    // probability p/‖g‖² and reports ‖g‖²·(count/samples).  Queries are
    // seeded individually, so the answer stream is reproducible no matter
    // how calls interleave.
    auto counter = std::make_shared<std::uint64_t>(0);
    return [hidden = std::move(hidden), samples, seed, counter](const Rank1Operator& op) {
        const double t = op.trace();
        const double prob = std::min(op.born(hidden) / t, 1.0);
        GaussianRng rng(mix_seed(seed, (*counter)++));
        std::binomial_distribution<std::uint64_t> flip(samples, prob);
        const auto hits = flip(rng.engine());
        return t * static_cast<double>(hits) / static_cast<double>(samples);
    };
}

std::size_t adaptive_operator_count(std::size_t dim, std::size_t k) {
    if (dim == 0 || k < 1 || k > dim) throw RangeError("need 1 <= k <= dim");
    return dim + 2 * k - 2;
}

AdaptiveTranscript adaptive_reconstruct(const BornOracle& oracle, std::size_t dim,
                                        const AdaptiveOptions& options) {
    if (dim == 0) throw BadParams("adaptive reconstruction needs dim >= 1");
    if (!(options.support_threshold > 0.0 && options.support_threshold < 1.0))
        throw BadParams("support threshold must be in (0,1)");

    AdaptiveTranscript t;
    t.dim = dim;

    // Stage 1: the d computational projectors give the moduli and the
    // support.
    for (std::size_t s = 0; s < dim; ++s) {
        std::vector<cplx> g(dim);
        g[s] = 1.0;
        Rank1Operator op{std::move(g)};
        t.stage1_outcomes.push_back(checked(oracle(op)));
        t.operators_used.push_back(std::move(op));
    }
    for (std::size_t s = 0; s < dim; ++s)
        if (t.stage1_outcomes[s] > options.support_threshold) t.support.indices.push_back(s);
    if (t.support.indices.empty()) throw EmptySupport("no amplitude clears the support threshold");

    const std::size_t n0 = t.support.indices[0];
    const double a0 = std::sqrt(t.stage1_outcomes[n0]);

    std::vector<cplx> amp(dim);
    amp[n0] = a0;

    // Stage 2: for each further support index, the pair
    // (|n0⟩+|ns⟩)(…), (|n0⟩+i|ns⟩)(…) reads off cos θ and sin θ of the
    // relative phase.
    for (std::size_t s = 1; s < t.support.indices.size(); ++s) {
        const std::size_t ns = t.support.indices[s];
        const double as = std::sqrt(t.stage1_outcomes[ns]);

        std::vector<cplx> gf(dim), gg(dim);
        gf[n0] = 1.0;
        gf[ns] = 1.0;
        gg[n0] = 1.0;
        gg[ns] = cplx(0.0, 1.0);
        Rank1Operator fs{std::move(gf)}, gs{std::move(gg)};

        const double pf = checked(oracle(fs));
        const double pg = checked(oracle(gs));
        t.stage2_outcomes.push_back(pf);
        t.stage2_outcomes.push_back(pg);
        t.operators_used.push_back(std::move(fs));
        t.operators_used.push_back(std::move(gs));

        const double den = 2.0 * a0 * as;
        const double c = (pf - a0 * a0 - as * as) / den;
        const double sn = (pg - a0 * a0 - as * as) / den;
        amp[ns] = std::polar(as, std::atan2(sn, c));
    }

    t.reconstructed = PureState(std::move(amp));

    // Every answered query must be reproduced by the result.
    double resid = 0.0;
    for (std::size_t i = 0; i < t.operators_used.size(); ++i) {
        const double predicted = t.operators_used[i].born(t.reconstructed);
        const double recorded = i < dim ? t.stage1_outcomes[i] : t.stage2_outcomes[i - dim];
        resid = std::max(resid, std::abs(predicted - recorded));
    }
    if (resid > options.consistency)
        throw InconsistentOutcomes("adaptive outcomes are not reproduced by the reconstruction");
    return t;
}

}  // namespace puretomo
