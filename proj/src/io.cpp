#include "puretomo/io.hpp"

#include <cmath>
#include <fstream>

namespace puretomo {

namespace {

json pair_of(const cplx& c) { return json::array({c.real(), c.imag()}); }

cplx pair_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw IoError("complex values are [re, im] pairs");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

std::vector<cplx> cvector_from(const json& j) {
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(pair_from(e));
    return v;
}

json cvector_of(const std::vector<cplx>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(pair_of(c));
    return out;
}

[[noreturn]] void bad_schema(const char* what, const std::exception& e) {
    throw IoError(std::string(what) + ": " + e.what());
}

}  // namespace

json to_json(const PureState& s) {
    return json{{"dim", s.dim()}, {"amplitudes", cvector_of(s.amplitudes())}};
}

PureState state_from_json(const json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        auto amp = cvector_from(j.at("amplitudes"));
        if (amp.size() != dim) throw IoError("amplitude count disagrees with dim");
        return PureState(std::move(amp));
    } catch (const json::exception& e) {
        bad_schema("bad state file", e);
    }
}

json to_json(const OperatorSet& set) {
    json elems = json::array();
    for (const auto& e : set.elements()) {
        if (e.rank1()) {
            elems.push_back(json{{"generator", cvector_of(e.rank1()->generator)}});
        } else {
            json rows = json::array();
            for (std::size_t i = 0; i < set.dim(); ++i) {
                json row = json::array();
                for (std::size_t k = 0; k < set.dim(); ++k) row.push_back(pair_of(e.matrix()(i, k)));
                rows.push_back(std::move(row));
            }
            elems.push_back(json{{"matrix", std::move(rows)}});
        }
    }
    json out{{"dim", set.dim()}, {"elements", std::move(elems)}};
    if (set.resolution_subset()) out["resolution_subset"] = *set.resolution_subset();
    return out;
}

OperatorSet set_from_json(const json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        std::vector<Operator> elems;
        for (const auto& e : j.at("elements")) {
            if (e.contains("generator")) {
                auto gen = cvector_from(e.at("generator"));
                if (gen.size() != dim) throw IoError("generator length disagrees with dim");
                elems.push_back(Operator(make_rank1(std::move(gen))));
            } else if (e.contains("matrix")) {
                const auto& rows = e.at("matrix");
                if (rows.size() != dim) throw IoError("matrix row count disagrees with dim");
                CMatrix m(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    if (rows[i].size() != dim) throw IoError("matrix is not square");
                    for (std::size_t k = 0; k < dim; ++k) m(i, k) = pair_from(rows[i][k]);
                }
                elems.push_back(Operator(std::move(m)));
            } else {
                throw IoError("element needs a generator or a matrix");
            }
        }
        std::optional<std::vector<std::size_t>> subset;
        if (j.contains("resolution_subset"))
            subset = j.at("resolution_subset").get<std::vector<std::size_t>>();
        return OperatorSet::create(dim, std::move(elems), std::move(subset));
    } catch (const json::exception& e) {
        bad_schema("bad operator-set file", e);
    }
}

json to_json(const Povm& p) { return to_json(p.set()); }

json to_json(const OutcomeVector& v) { return json{{"values", v.values}}; }

OutcomeVector outcomes_from_json(const json& j) {
    try {
        OutcomeVector v;
        v.values = j.at("values").get<std::vector<double>>();
        for (double p : v.values)
            if (!std::isfinite(p)) throw IoError("outcome values must be finite");
        return v;
    } catch (const json::exception& e) {
        bad_schema("bad outcomes file", e);
    }
}

namespace {

json interval_of(const IntInterval& iv) {
    return json{{"lower", iv.lower}, {"upper", iv.upper}, {"exact", iv.exact()}};
}

}  // namespace

json to_json(const BoundsReport& r) {
    json out{{"d", r.d},
             {"alpha", r.alpha},
             {"m0", interval_of(r.m0)},
             {"m0_exact", r.m0_exact},
             {"three_d_minus_2", r.three_d_minus_2},
             {"four_d_minus_3", r.four_d_minus_3},
             {"feasible_3d_minus_2", r.feasible_3d_minus_2},
             {"m1_range", interval_of(r.m1_range)}};
    out["c_alpha"] = r.c_alpha ? json(*r.c_alpha) : json(nullptr);
    return out;
}

json to_json(const AdaptiveTranscript& t) {
    json ops = json::array();
    for (const auto& op : t.operators_used) ops.push_back(json{{"generator", cvector_of(op.generator)}});
    return json{{"dim", t.dim},
                {"support", t.support.indices},
                {"stage1_outcomes", t.stage1_outcomes},
                {"stage2_outcomes", t.stage2_outcomes},
                {"operators_used", std::move(ops)},
                {"reconstructed", to_json(t.reconstructed)}};
}

json to_json(const DistinguishabilityReport& r) {
    json out{{"set_id", r.set_id},
             {"pairs_tested", r.pairs_tested},
             {"verdict", to_string(r.verdict)},
             {"note", DistinguishabilityReport::evidence_note()}};
    out["min_separation"] = std::isfinite(r.min_separation) ? json(r.min_separation) : json(nullptr);
    if (r.counterexample) {
        out["counterexample"] = json{{"state_a", to_json(r.counterexample->first)},
                                     {"state_b", to_json(r.counterexample->second)},
                                     {"separation", r.min_separation},
                                     {"fidelity", r.counterexample_fidelity}};
    } else {
        out["counterexample"] = nullptr;
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace puretomo
