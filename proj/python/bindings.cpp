#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "puretomo/bounds.hpp"
#include "puretomo/constructions.hpp"
#include "puretomo/io.hpp"
#include "puretomo/tomography.hpp"
#include "puretomo/verify.hpp"

namespace py = pybind11;
using namespace puretomo;

namespace {

CMatrix matrix_from_rows(const std::vector<std::vector<cplx>>& rows) {
    const std::size_t d = rows.size();
    if (d == 0) throw BadParams("matrix needs at least one row");
    CMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) throw BadParams("matrix rows must all have length dim");
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }
}

std::vector<std::vector<cplx>> matrix_rows(const CMatrix& m) {
    std::vector<std::vector<cplx>> rows(m.dim(), std::vector<cplx>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) rows[i][j] = m(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rank-1 POVM constructions, pure-state tomography and distinguishability checks";
    m.attr("__version__") = "0.1.0";

    // Exceptions.  The base is registered first so the per-type translators
    // (registered later, tried first) win for their own classes.
    auto err = py::register_exception<Error>(m, "Error");
    py::register_exception<BadParams>(m, "BadParams", err);
    py::register_exception<RangeError>(m, "RangeError", err);
    py::register_exception<UnknownFamily>(m, "UnknownFamily", err);
    py::register_exception<NotPrime>(m, "NotPrime", err);
    py::register_exception<DimensionTooLarge>(m, "DimensionTooLarge", err);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", err);
    py::register_exception<MixedDimensions>(m, "MixedDimensions", err);
    py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", err);
    py::register_exception<NotHermitian>(m, "NotHermitian", err);
    py::register_exception<NotRank1>(m, "NotRank1", err);
    py::register_exception<NotPositiveSemidefinite>(m, "NotPositiveSemidefinite", err);
    py::register_exception<NotAPovm>(m, "NotAPovm", err);
    py::register_exception<NegativeWeight>(m, "NegativeWeight", err);
    py::register_exception<NegativeProbability>(m, "NegativeProbability", err);
    py::register_exception<NonRealTrace>(m, "NonRealTrace", err);
    py::register_exception<ZeroVector>(m, "ZeroVector", err);
    py::register_exception<ZeroOperator>(m, "ZeroOperator", err);
    py::register_exception<EmptySupport>(m, "EmptySupport", err);
    py::register_exception<NonConvergence>(m, "NonConvergence", err);
    py::register_exception<SingularOperator>(m, "SingularOperator", err);
    py::register_exception<SingularGram>(m, "SingularGram", err);
    py::register_exception<InconsistentOutcomes>(m, "InconsistentOutcomes", err);
    py::register_exception<IoError>(m, "IoError", err);

    py::class_<CMatrix>(m, "CMatrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def_static("identity", &CMatrix::identity, py::arg("dim"))
        .def_static("zero", &CMatrix::zero, py::arg("dim"))
        .def_static("outer", &CMatrix::outer, py::arg("v"))
        .def_property_readonly("dim", &CMatrix::dim)
        .def("__getitem__",
             [](const CMatrix& a, std::pair<std::size_t, std::size_t> ij) {
                 if (ij.first >= a.dim() || ij.second >= a.dim()) throw py::index_error();
                 return a(ij.first, ij.second);
             })
        .def("rows", &matrix_rows)
        .def("adjoint", &CMatrix::adjoint)
        .def("trace", &CMatrix::trace)
        .def("frobenius_norm", &CMatrix::frobenius_norm)
        .def("is_hermitian", &CMatrix::is_hermitian, py::arg("rel_tol") = tol::hermitian)
        .def("__add__", [](const CMatrix& a, const CMatrix& b) { return a + b; })
        .def("__sub__", [](const CMatrix& a, const CMatrix& b) { return a - b; })
        .def("__mul__", [](const CMatrix& a, double s) { return s * a; })
        .def("__rmul__", [](const CMatrix& a, double s) { return s * a; })
        .def("__matmul__", [](const CMatrix& a, const CMatrix& b) { return a * b; })
        .def("__repr__", [](const CMatrix& a) {
            std::ostringstream os;
            os << "CMatrix(dim=" << a.dim() << ")";
            return os.str();
        });

    py::class_<EigenDecomposition>(m, "EigenDecomposition")
        .def_readonly("eigenvalues", &EigenDecomposition::eigenvalues)
        .def_readonly("eigenvectors", &EigenDecomposition::eigenvectors);

    m.def("hermitian_eig", &hermitian_eig, py::arg("a"));
    m.def("inv_sqrt", &inv_sqrt, py::arg("a"));
    m.def("born_value", &born_value, py::arg("rho"), py::arg("e"));

    py::class_<PureState>(m, "PureState")
        .def(py::init<std::vector<cplx>>(), py::arg("amplitudes"))
        .def_property_readonly("dim", &PureState::dim)
        .def_property_readonly("amplitudes",
                               [](const PureState& s) { return s.amplitudes(); })
        .def("amplitude", &PureState::amplitude, py::arg("i"))
        .def("projector", &PureState::projector)
        .def("__eq__", [](const PureState& a, const PureState& b) { return a == b; })
        .def("__repr__", [](const PureState& s) {
            std::ostringstream os;
            os << "PureState(dim=" << s.dim() << ")";
            return os.str();
        });

    m.def("canonicalize", &puretomo::canonicalize, py::arg("v"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("haar_random", &haar_random, py::arg("dim"), py::arg("seed"));

    py::class_<SupportSet>(m, "SupportSet")
        .def_readonly("indices", &SupportSet::indices)
        .def_property_readonly("k", &SupportSet::k)
        .def("__len__", &SupportSet::k)
        .def("__eq__", [](const SupportSet& a, const SupportSet& b) { return a == b; });

    m.def("support", &support, py::arg("s"), py::arg("threshold") = tol::support_eps);

    py::class_<Rank1Operator>(m, "Rank1Operator")
        .def(py::init(&make_rank1), py::arg("generator"))
        .def_readonly("generator", &Rank1Operator::generator)
        .def_property_readonly("dim", &Rank1Operator::dim)
        .def("matrix", &Rank1Operator::matrix)
        .def("trace", &Rank1Operator::trace)
        .def("born", &Rank1Operator::born, py::arg("state"));

    py::class_<Operator>(m, "Operator")
        .def(py::init<Rank1Operator>(), py::arg("rank1"))
        .def(py::init<CMatrix>(), py::arg("hermitian_psd"))
        .def_property_readonly("dim", &Operator::dim)
        .def("matrix", [](const Operator& o) { return o.matrix(); })
        .def("rank1", [](const Operator& o) { return o.rank1(); })
        .def("born", &Operator::born, py::arg("state"))
        .def("is_zero", &Operator::is_zero);

    py::class_<OperatorSet>(m, "OperatorSet")
        .def_static("create", &OperatorSet::create, py::arg("dim"), py::arg("elements"),
                    py::arg("resolution_subset") = std::nullopt)
        .def_property_readonly("dim", &OperatorSet::dim)
        .def("__len__", &OperatorSet::size)
        .def("element", &OperatorSet::element, py::arg("k"))
        .def("__getitem__",
             [](const OperatorSet& s, std::size_t k) {
                 if (k >= s.size()) throw py::index_error();
                 return s.element(k);
             })
        .def_property_readonly("resolution_subset",
                               [](const OperatorSet& s) { return s.resolution_subset(); })
        .def("sum", &OperatorSet::sum);

    py::class_<Povm>(m, "Povm")
        .def_static("create", &Povm::create, py::arg("set"))
        .def_property_readonly("set", [](const Povm& p) { return p.set(); })
        .def_property_readonly("dim", &Povm::dim)
        .def("__len__", &Povm::size);

    py::class_<OutcomeVector>(m, "OutcomeVector")
        .def(py::init([](std::vector<double> v) { return OutcomeVector{std::move(v)}; }),
             py::arg("values"))
        .def_readonly("values", &OutcomeVector::values)
        .def("__len__", &OutcomeVector::size)
        .def("__getitem__", [](const OutcomeVector& v, std::size_t k) {
            if (k >= v.size()) throw py::index_error();
            return v[k];
        });

    m.def("check_resolution_subset", &check_resolution_subset, py::arg("set"), py::arg("subset"));
    m.def("rank1_convert", &rank1_convert, py::arg("set"));
    m.def("outcome_vector",
          py::overload_cast<const PureState&, const OperatorSet&>(&outcome_vector),
          py::arg("state"), py::arg("set"));
    m.def("outcome_vector", py::overload_cast<const PureState&, const Povm&>(&outcome_vector),
          py::arg("state"), py::arg("povm"));
    m.def("sampled_frequencies", &sampled_frequencies, py::arg("state"), py::arg("povm"),
          py::arg("samples"), py::arg("seed"));
    m.def("scale_elements", &scale_elements, py::arg("set"), py::arg("weights"));

    py::class_<Basis>(m, "Basis")
        .def_readonly("dim", &Basis::dim)
        .def_readonly("states", &Basis::states)
        .def("__len__", [](const Basis& b) { return b.states.size(); });

    m.def("make_basis", &make_basis, py::arg("dim"), py::arg("states"));

    py::class_<BlochVector>(m, "BlochVector")
        .def_readonly("n", &BlochVector::n)
        .def_readonly("a", &BlochVector::a)
        .def_readonly("b", &BlochVector::b);

    m.def("make_bloch", &make_bloch, py::arg("n"), py::arg("a"), py::arg("b"));
    m.def("to_operator", &to_operator, py::arg("v"));

    m.def("sic_d2", &sic_d2);
    m.def("mubs_d2", &mubs_d2);
    m.def("mubs_prime", &mubs_prime, py::arg("d"));
    m.def("eight_ops_d3", &eight_ops_d3);
    m.def("counterexample_d2", &counterexample_d2);

    py::class_<Theorem2Collections>(m, "Theorem2Collections")
        .def(py::init<std::vector<Basis>>(), py::arg("bases"))
        .def_property_readonly("dim", &Theorem2Collections::dim)
        .def_property_readonly("bases_count", &Theorem2Collections::bases_count)
        .def("count", &Theorem2Collections::count)
        .def("__len__", &Theorem2Collections::count)
        .def("collection", &Theorem2Collections::collection, py::arg("index"))
        .def("__getitem__", [](const Theorem2Collections& c, unsigned long long i) {
            if (i >= c.count()) throw py::index_error();
            return c.collection(i);
        });

    m.def("theorem2_collections", &theorem2_collections, py::arg("bases"));

    py::class_<IntInterval>(m, "IntInterval")
        .def_readonly("lower", &IntInterval::lower)
        .def_readonly("upper", &IntInterval::upper)
        .def("exact", &IntInterval::exact)
        .def("__eq__", [](const IntInterval& a, const IntInterval& b) { return a == b; })
        .def("__repr__", [](const IntInterval& r) {
            std::ostringstream os;
            os << "IntInterval(" << r.lower << ", " << r.upper << ")";
            return os.str();
        });

    m.def("alpha", &alpha, py::arg("d"));
    m.def("m0", &m0, py::arg("d"));
    m.def("feasible_3d_minus_2", &feasible_3d_minus_2, py::arg("d"));
    m.def("m1_range", &m1_range, py::arg("d"));

    py::class_<BoundsReport>(m, "BoundsReport")
        .def_readonly("d", &BoundsReport::d)
        .def_readonly("alpha", &BoundsReport::alpha)
        .def_readonly("m0", &BoundsReport::m0)
        .def_readonly("m0_exact", &BoundsReport::m0_exact)
        .def_readonly("three_d_minus_2", &BoundsReport::three_d_minus_2)
        .def_readonly("four_d_minus_3", &BoundsReport::four_d_minus_3)
        .def_readonly("feasible_3d_minus_2", &BoundsReport::feasible_3d_minus_2)
        .def_readonly("m1_range", &BoundsReport::m1_range)
        .def_readonly("c_alpha", &BoundsReport::c_alpha);

    m.def("bounds_report", &bounds_report, py::arg("d"));

    m.def("reconstruct_d3", &reconstruct_d3, py::arg("outcomes"));
    m.def("exact_oracle", &exact_oracle, py::arg("hidden"));
    m.def("sampled_oracle", &sampled_oracle, py::arg("hidden"), py::arg("samples"),
          py::arg("seed"));

    py::class_<AdaptiveOptions>(m, "AdaptiveOptions")
        .def(py::init<>())
        .def_readwrite("support_threshold", &AdaptiveOptions::support_threshold)
        .def_readwrite("consistency", &AdaptiveOptions::consistency);

    py::class_<AdaptiveTranscript>(m, "AdaptiveTranscript")
        .def_readonly("dim", &AdaptiveTranscript::dim)
        .def_readonly("support", &AdaptiveTranscript::support)
        .def_readonly("stage1_outcomes", &AdaptiveTranscript::stage1_outcomes)
        .def_readonly("stage2_outcomes", &AdaptiveTranscript::stage2_outcomes)
        .def_readonly("operators_used", &AdaptiveTranscript::operators_used)
        .def_readonly("reconstructed", &AdaptiveTranscript::reconstructed);

    m.def("adaptive_reconstruct", &adaptive_reconstruct, py::arg("oracle"), py::arg("dim"),
          py::arg("options") = AdaptiveOptions{});
    m.def("adaptive_operator_count", &adaptive_operator_count, py::arg("dim"), py::arg("k"));

    py::enum_<Verdict>(m, "Verdict")
        .value("PASS", Verdict::PASS)
        .value("FAIL", Verdict::FAIL)
        .value("INCONCLUSIVE", Verdict::INCONCLUSIVE);

    m.def("pair_separation", &pair_separation, py::arg("a"), py::arg("b"), py::arg("set"));

    py::class_<VerifyOptions>(m, "VerifyOptions")
        .def(py::init<>())
        .def_readwrite("delta_pass", &VerifyOptions::delta_pass)
        .def_readwrite("delta_fail", &VerifyOptions::delta_fail)
        .def_readwrite("distinct_fidelity", &VerifyOptions::distinct_fidelity)
        .def_readwrite("refine_starts", &VerifyOptions::refine_starts)
        .def_readwrite("refine_iters", &VerifyOptions::refine_iters)
        .def_readwrite("refine_fidelity_cap", &VerifyOptions::refine_fidelity_cap)
        .def_readwrite("mixed_pairs", &VerifyOptions::mixed_pairs);

    py::class_<DistinguishabilityReport>(m, "DistinguishabilityReport")
        .def_readonly("set_id", &DistinguishabilityReport::set_id)
        .def_readonly("pairs_tested", &DistinguishabilityReport::pairs_tested)
        .def_readonly("min_separation", &DistinguishabilityReport::min_separation)
        .def_readonly("counterexample", &DistinguishabilityReport::counterexample)
        .def_readonly("counterexample_fidelity", &DistinguishabilityReport::counterexample_fidelity)
        .def_readonly("verdict", &DistinguishabilityReport::verdict)
        .def_static("evidence_note", &DistinguishabilityReport::evidence_note);

    m.def("sampled_distinguishability", &sampled_distinguishability, py::arg("set"),
          py::arg("n_pairs"), py::arg("seed"), py::arg("options") = VerifyOptions{},
          py::arg("set_id") = std::string{});

    // JSON bridges: python str <-> library schema.
    m.def("dumps_state", [](const PureState& s) { return to_json(s).dump(2); });
    m.def("loads_state", [](const std::string& text) {
        return state_from_json(parse_text(text));
    });
    m.def("dumps_set", [](const OperatorSet& s) { return to_json(s).dump(2); });
    m.def("dumps_povm", [](const Povm& p) { return to_json(p).dump(2); });
    m.def("loads_set", [](const std::string& text) { return set_from_json(parse_text(text)); });
    m.def("dumps_outcomes", [](const OutcomeVector& v) { return to_json(v).dump(2); });
    m.def("loads_outcomes",
          [](const std::string& text) { return outcomes_from_json(parse_text(text)); });
    m.def("dumps_bounds", [](const BoundsReport& r) { return to_json(r).dump(2); });
    m.def("dumps_transcript", [](const AdaptiveTranscript& t) { return to_json(t).dump(2); });
    m.def("dumps_report", [](const DistinguishabilityReport& r) { return to_json(r).dump(2); });
}
