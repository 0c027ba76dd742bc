// Command-line front end: constructions, Born simulation, reconstruction,
// distinguishability audits, and the element-count arithmetic, with JSON
// files as the interchange format.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "puretomo/io.hpp"

namespace pt = puretomo;
using pt::json;

namespace {

int exit_code_for(const std::exception& e) {
    using namespace puretomo;
    if (dynamic_cast<const BadParams*>(&e) || dynamic_cast<const UnknownFamily*>(&e) ||
        dynamic_cast<const RangeError*>(&e) || dynamic_cast<const NotPrime*>(&e) ||
        dynamic_cast<const DimensionTooLarge*>(&e))
        return 2;
    if (dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const MixedDimensions*>(&e) ||
        dynamic_cast<const IndexOutOfRange*>(&e))
        return 3;
    if (dynamic_cast<const NotHermitian*>(&e) || dynamic_cast<const NotRank1*>(&e) ||
        dynamic_cast<const NotPositiveSemidefinite*>(&e) || dynamic_cast<const NotAPovm*>(&e) ||
        dynamic_cast<const NegativeWeight*>(&e) || dynamic_cast<const NegativeProbability*>(&e) ||
        dynamic_cast<const NonRealTrace*>(&e) || dynamic_cast<const ZeroVector*>(&e) ||
        dynamic_cast<const ZeroOperator*>(&e) || dynamic_cast<const EmptySupport*>(&e))
        return 4;
    if (dynamic_cast<const NonConvergence*>(&e) || dynamic_cast<const SingularOperator*>(&e) ||
        dynamic_cast<const SingularGram*>(&e))
        return 5;
    if (dynamic_cast<const InconsistentOutcomes*>(&e)) return 6;
    if (dynamic_cast<const IoError*>(&e)) return 9;
    return 1;
}

void emit(const json& j, const std::string& out, const std::string& summary) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        pt::write_json_file(out, j);
        std::cout << summary << " -> " << out << '\n';
    }
}

pt::OperatorSet basis_as_set(const pt::Basis& b) {
    std::vector<pt::Operator> elems;
    std::vector<std::size_t> subset;
    for (std::size_t j = 0; j < b.dim; ++j) {
        elems.push_back(pt::Operator(pt::make_rank1(b.states[j].amplitudes())));
        subset.push_back(j);
    }
    return pt::OperatorSet::create(b.dim, std::move(elems), std::move(subset));
}

// "mubs.json" -> "mubs-2.json"; "mubs" -> "mubs-2.json"
std::string indexed_path(const std::string& stem, std::size_t i) {
    const std::string suffix = "-" + std::to_string(i) + ".json";
    const auto dot = stem.rfind(".json");
    if (dot != std::string::npos && dot == stem.size() - 5)
        return stem.substr(0, dot) + suffix;
    return stem + suffix;
}

struct ConstructArgs {
    std::string family;
    std::size_t dim = 0;
    std::size_t mubs_dim = 0;
    std::uint64_t index = 0;
    std::string out;
};

int cmd_construct(const ConstructArgs& a) {
    const bool fixed_dim = a.family == "sic-d2" || a.family == "mubs-d2" ||
                           a.family == "eight-d3" || a.family == "counterexample-d2";
    if (fixed_dim && a.dim) throw pt::BadParams("--dim does not apply to " + a.family);

    if (a.family == "sic-d2") {
        emit(pt::to_json(pt::sic_d2()), a.out, "sic-d2: 4 elements");
        return 0;
    }
    if (a.family == "eight-d3") {
        emit(pt::to_json(pt::eight_ops_d3()), a.out, "eight-d3: 8 elements");
        return 0;
    }
    if (a.family == "counterexample-d2") {
        emit(pt::to_json(pt::counterexample_d2()), a.out, "counterexample-d2: 4 elements");
        return 0;
    }
    if (a.family == "mubs-d2" || a.family == "mubs-prime") {
        std::size_t d = 2;
        if (a.family == "mubs-prime") {
            if (!a.dim) throw pt::BadParams("mubs-prime needs --dim");
            d = a.dim;
        }
        const auto bases = d == 2 ? pt::mubs_d2() : pt::mubs_prime(d);
        if (a.out.empty()) {
            json all = json::array();
            for (const auto& b : bases) all.push_back(pt::to_json(basis_as_set(b)));
            std::cout << all.dump(2) << '\n';
        } else {
            for (std::size_t i = 0; i < bases.size(); ++i)
                pt::write_json_file(indexed_path(a.out, i), pt::to_json(basis_as_set(bases[i])));
            std::cout << bases.size() << " mutually unbiased bases -> " << indexed_path(a.out, 0)
                      << " .. " << indexed_path(a.out, bases.size() - 1) << '\n';
        }
        return 0;
    }
    if (a.family == "theorem2") {
        if (!a.mubs_dim) throw pt::BadParams("theorem2 needs --mubs-dim");
        const auto coll = pt::theorem2_collections(pt::mubs_prime(a.mubs_dim));
        if (a.index >= coll.count())
            throw pt::BadParams("--index must be below " + std::to_string(coll.count()));
        const auto set = coll.collection(a.index);
        emit(pt::to_json(set), a.out,
             "collection " + std::to_string(a.index) + "/" + std::to_string(coll.count()) + ": " +
                 std::to_string(set.size()) + " elements");
        return 0;
    }
    throw pt::UnknownFamily("unknown construction family: " + a.family);
}

int verdict_exit(pt::Verdict v) {
    if (v == pt::Verdict::PASS) return 0;
    return v == pt::Verdict::FAIL ? 7 : 8;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-1 measurement construction and pure-state tomography toolkit"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand(
        "construct", "write a measurement family (sic-d2, mubs-d2, mubs-prime, eight-d3, "
                     "counterexample-d2, theorem2) as JSON");
    construct->add_option("family", ca.family, "family name")->required();
    construct->add_option("--dim", ca.dim, "dimension (mubs-prime)");
    construct->add_option("--mubs-dim", ca.mubs_dim, "base MUB dimension (theorem2)");
    construct->add_option("--index", ca.index, "collection index (theorem2)");
    construct->add_option("--out", ca.out, "output file (stem for multi-file families)");

    std::string conv_in, conv_out;
    auto* convert = app.add_subcommand("convert", "rank-1 POVM from an operator set via the "
                                                  "inverse-square-root conjugation");
    convert->add_option("set", conv_in, "operator-set JSON file")->required();
    convert->add_option("--out", conv_out, "output file");

    std::string sim_state, sim_set, sim_out;
    std::uint64_t sim_samples = 0, sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Born-rule outcomes of a state under an "
                                                    "operator set");
    simulate->add_option("state", sim_state, "state JSON file")->required();
    simulate->add_option("set", sim_set, "operator-set JSON file")->required();
    simulate->add_option("--samples", sim_samples, "draw this many samples instead of exact values");
    simulate->add_option("--seed", sim_seed, "sampling seed");
    simulate->add_option("--out", sim_out, "output file");

    std::string rec_povm, rec_outcomes, rec_out;
    auto* reconstruct = app.add_subcommand("reconstruct", "closed-form d=3 inversion of "
                                                          "eight-operator outcomes");
    reconstruct->add_option("--povm", rec_povm, "operator-set JSON file (the eight-operator set)")
        ->required();
    reconstruct->add_option("--outcomes", rec_outcomes, "outcomes JSON file")->required();
    reconstruct->add_option("--out", rec_out, "output file");

    std::size_t ad_dim = 0;
    std::string ad_state, ad_out;
    std::uint64_t ad_samples = 0, ad_seed = 0;
    auto* adaptive = app.add_subcommand("adaptive", "two-stage adaptive reconstruction of a "
                                                    "hidden state");
    adaptive->add_option("--dim", ad_dim, "dimension")->required();
    adaptive->add_option("--state", ad_state, "hidden state JSON file")->required();
    adaptive->add_option("--sampled", ad_samples, "answer queries from this many samples");
    adaptive->add_option("--seed", ad_seed, "sampling seed");
    adaptive->add_option("--out", ad_out, "output file for the transcript");

    std::string ver_povm, ver_out;
    std::size_t ver_pairs = 1000;
    std::uint64_t ver_seed = 0;
    bool ver_mixed = false;
    auto* verify = app.add_subcommand("verify", "sampled distinguishability audit of an "
                                                "operator set");
    verify->add_option("--povm", ver_povm, "operator-set JSON file")->required();
    verify->add_option("--pairs", ver_pairs, "sampled pair count");
    verify->add_option("--seed", ver_seed, "sampling seed");
    verify->add_flag("--mixed", ver_mixed, "also probe random mixed-state pairs");
    verify->add_option("--out", ver_out, "output file for the report");

    unsigned long long bd_dim = 0;
    std::string bd_out;
    auto* bounds = app.add_subcommand("bounds", "element-count bounds report for a dimension");
    bounds->add_option("--dim", bd_dim, "dimension")->required();
    bounds->add_option("--out", bd_out, "output file");

    std::size_t pl_dim = 0;
    std::uint64_t pl_seed = 0, pl_samples = 0;
    bool pl_adaptive = false;
    double pl_corrupt = 0.0;
    auto* pipeline = app.add_subcommand("pipeline", "sample a state, simulate, reconstruct, and "
                                                    "report the round-trip fidelity");
    pipeline->add_option("--dim", pl_dim, "dimension")->required();
    pipeline->add_option("--seed", pl_seed, "state seed");
    pipeline->add_flag("--adaptive", pl_adaptive, "use the adaptive engine instead of the d=3 "
                                                  "closed form");
    pipeline->add_option("--corrupt", pl_corrupt, "perturb one outcome by this much (closed-form "
                                                  "path)");
    pipeline->add_option("--sampled", pl_samples, "adaptive path: answer queries from samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) return cmd_construct(ca);

        if (convert->parsed()) {
            const auto set = pt::set_from_json(pt::read_json_file(conv_in));
            const auto povm = pt::rank1_convert(set);
            emit(pt::to_json(povm), conv_out,
                 "rank-1 POVM, " + std::to_string(povm.size()) + " elements");
            return 0;
        }

        if (simulate->parsed()) {
            const auto state = pt::state_from_json(pt::read_json_file(sim_state));
            const auto set = pt::set_from_json(pt::read_json_file(sim_set));
            pt::OutcomeVector v;
            if (simulate->count("--samples") > 0) {
                pt::Povm povm = pt::Povm::create(set);
                v = pt::sampled_frequencies(state, povm, sim_samples, sim_seed);
            } else {
                v = pt::outcome_vector(state, set);
            }
            emit(pt::to_json(v), sim_out, std::to_string(v.size()) + " outcome values");
            return 0;
        }

        if (reconstruct->parsed()) {
            const auto set = pt::set_from_json(pt::read_json_file(rec_povm));
            const auto reference = pt::eight_ops_d3();
            bool matches = set.dim() == 3 && set.size() == 8;
            for (std::size_t k = 0; matches && k < 8; ++k)
                matches = (set.element(k).matrix() - reference.element(k).matrix()).frobenius_norm() <= 1e-9;
            if (!matches)
                throw pt::BadParams("closed-form reconstruction is defined for the eight-operator "
                                    "d=3 set (construct eight-d3)");
            const auto outcomes = pt::outcomes_from_json(pt::read_json_file(rec_outcomes));
            const auto state = pt::reconstruct_d3(outcomes);
            emit(pt::to_json(state), rec_out, "reconstructed state");
            return 0;
        }

        if (adaptive->parsed()) {
            const auto hidden = pt::state_from_json(pt::read_json_file(ad_state));
            if (hidden.dim() != ad_dim) throw pt::DimensionMismatch("--dim disagrees with the state file");
            pt::AdaptiveOptions opts;
            pt::BornOracle oracle;
            if (adaptive->count("--sampled") > 0) {
                oracle = pt::sampled_oracle(hidden, ad_samples, ad_seed);
                opts.consistency =
                    std::max(opts.consistency, 10.0 / std::sqrt(static_cast<double>(ad_samples)));
            } else {
                oracle = pt::exact_oracle(hidden);
            }
            const auto t = pt::adaptive_reconstruct(oracle, ad_dim, opts);
            const double fid = pt::fidelity(hidden, t.reconstructed);
            std::cout << "support " << t.support.k() << " of " << t.dim << ", "
                      << t.operators_used.size() << " operators, fidelity " << fid << '\n';
            if (!ad_out.empty()) {
                pt::write_json_file(ad_out, pt::to_json(t));
                std::cout << "transcript -> " << ad_out << '\n';
            } else {
                std::cout << pt::to_json(t).dump(2) << '\n';
            }
            return 0;
        }

        if (verify->parsed()) {
            const auto set = pt::set_from_json(pt::read_json_file(ver_povm));
            pt::VerifyOptions opts;
            opts.mixed_pairs = ver_mixed;
            const auto rep = pt::sampled_distinguishability(set, ver_pairs, ver_seed, opts, ver_povm);
            const json j = pt::to_json(rep);
            if (!ver_out.empty()) {
                pt::write_json_file(ver_out, j);
                std::cout << "verdict " << pt::to_string(rep.verdict) << " (" << rep.pairs_tested
                          << " pairs) -> " << ver_out << '\n';
            } else {
                std::cout << j.dump(2) << '\n';
            }
            return verdict_exit(rep.verdict);
        }

        if (bounds->parsed()) {
            emit(pt::to_json(pt::bounds_report(bd_dim)), bd_out,
                 "bounds for d=" + std::to_string(bd_dim));
            return 0;
        }

        if (pipeline->parsed()) {
            const auto hidden = pt::haar_random(pl_dim, pl_seed);
            double fid = 0.0;
            double threshold = 1.0 - 1e-9;
            if (pl_adaptive) {
                if (pipeline->count("--corrupt") > 0)
                    throw pt::BadParams("--corrupt applies to the closed-form path only");
                pt::AdaptiveOptions opts;
                pt::BornOracle oracle;
                if (pipeline->count("--sampled") > 0) {
                    oracle = pt::sampled_oracle(hidden, pl_samples, pl_seed);
                    opts.consistency =
                        std::max(opts.consistency, 10.0 / std::sqrt(static_cast<double>(pl_samples)));
                    // Finite statistics cannot hit the exact-mode bar.
                    threshold = 1.0 - std::max(1e-9, 100.0 / static_cast<double>(pl_samples));
                } else {
                    oracle = pt::exact_oracle(hidden);
                }
                const auto t = pt::adaptive_reconstruct(oracle, pl_dim, opts);
                fid = pt::fidelity(hidden, t.reconstructed);
                std::cout << "adaptive: " << t.operators_used.size() << " operators ("
                          << t.dim << "+2*" << t.support.k() << "-2), fidelity " << fid << '\n';
            } else {
                if (pl_dim != 3)
                    throw pt::BadParams("closed-form round trip needs --dim 3 (or use --adaptive)");
                auto p = pt::outcome_vector(hidden, pt::eight_ops_d3());
                if (pl_corrupt != 0.0) p.values[3] += pl_corrupt;
                const auto rec = pt::reconstruct_d3(p);
                fid = pt::fidelity(hidden, rec);
                std::cout << "closed form: fidelity " << fid << '\n';
            }
            const bool ok = fid >= threshold;
            std::cout << (ok ? "PASS" : "FAIL") << " (fidelity " << fid << ", threshold "
                      << threshold << ")" << '\n';
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 1;
}
