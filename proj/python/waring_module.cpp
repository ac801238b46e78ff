#include <pybind11/pybind11.h>

#include "waring/json_io.hpp"
#include "waring/oracle.hpp"

namespace py = pybind11;
using namespace waring;

namespace {

// The C++ core speaks JSON documents; the bindings translate them to plain
// Python dicts/lists so callers never touch serialized strings.
py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null:
            return py::none();
        case Json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case Json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float:
            return py::float_(j.get<double>());
        case Json::value_t::string:
            return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            throw std::invalid_argument("unsupported JSON value");
    }
}

Json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) {
        // big integers round-trip as decimal strings
        py::int_ v = py::reinterpret_borrow<py::int_>(obj);
        try {
            return v.cast<long long>();
        } catch (...) {
            return py::str(v).cast<std::string>();
        }
    }
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        Json arr = Json::array();
        for (const auto& item : obj) arr.push_back(py_to_json(item));
        return arr;
    }
    if (py::isinstance<py::dict>(obj)) {
        Json o = Json::object();
        for (const auto& item : py::reinterpret_borrow<py::dict>(obj))
            o[item.first.cast<std::string>()] = py_to_json(item.second);
        return o;
    }
    throw std::invalid_argument("unsupported Python value in document");
}

HermitianForm form_from_py(const py::dict& doc) { return form_from_json(py_to_json(doc)); }

}  // namespace

PYBIND11_MODULE(waringforms, m) {
    m.doc() = "Exact sums-of-squares decomposition of integral quadratic and hermitian forms";
    m.attr("SCHEMA") = kSchemaTag;

    m.def("field_info", [](const py::dict& field) {
        Field f = field_from_json(py_to_json(field));
        Json j{{"field", field_to_json(f)},      {"name", f.name()},
               {"discriminant", f.discriminant().get_str()},
               {"omega_trace", f.omega_trace().get_str()},
               {"omega_norm", f.omega_norm().get_str()},
               {"beta_sq", rat_to_string(f.beta_sq())},
               {"sigma", f.sigma()}};
        return json_to_py(j);
    });

    m.def(
        "reduce",
        [](const py::dict& form_doc) {
            HermitianForm form = form_from_py(form_doc);
            ReducedForm rf = balanced_hkz(form);
            return json_to_py(reduced_form_to_json(rf, certify_reduction(form, rf)));
        },
        py::arg("form"));

    m.def(
        "decompose",
        [](const py::dict& form_doc, const py::object& profile_doc, int range, long node_cap) {
            HermitianForm form = form_from_py(form_doc);
            BoundsProfile profile =
                profile_doc.is_none() ? BoundsProfile::certify(form.field(), range)
                                      : profile_from_json(py_to_json(profile_doc));
            DecomposeCaps caps;
            caps.fallback.node_cap = node_cap;
            return json_to_py(outcome_to_json(form.field(), decompose(form, profile, caps)));
        },
        py::arg("form"), py::arg("profile") = py::none(), py::arg("range") = 64,
        py::arg("node_cap") = 2000000L);

    m.def(
        "verify",
        [](const py::dict& form_doc, const py::object& rep_doc) {
            HermitianForm form = form_from_py(form_doc);
            Representation rep = representation_from_json(form.field(), py_to_json(rep_doc));
            return verify(form, rep);
        },
        py::arg("form"), py::arg("representation"));

    m.def(
        "compress",
        [](const py::dict& form_doc, const py::object& rep_doc, const py::object& profile_doc,
           int range) {
            HermitianForm form = form_from_py(form_doc);
            Representation rep = representation_from_json(form.field(), py_to_json(rep_doc));
            BoundsProfile profile =
                profile_doc.is_none() ? BoundsProfile::certify(form.field(), range)
                                      : profile_from_json(py_to_json(profile_doc));
            return json_to_py(
                representation_to_json(form.field(), compress_representation(form, rep, profile)));
        },
        py::arg("form"), py::arg("representation"), py::arg("profile") = py::none(),
        py::arg("range") = 64);

    m.def(
        "oracle_search",
        [](const py::dict& form_doc, int g_max, long node_cap) {
            HermitianForm form = form_from_py(form_doc);
            SearchBudget budget;
            budget.g_max = g_max;
            budget.node_cap = node_cap;
            SearchResult r = search_representation(form, budget);
            Json j{{"found", r.rep.has_value()},
                   {"nodes", r.stats.nodes},
                   {"exhausted", r.stats.exhausted}};
            if (r.rep)
                j["representation"] = representation_to_json(form.field(), Representation{*r.rep});
            return json_to_py(j);
        },
        py::arg("form"), py::arg("g_max") = 0, py::arg("node_cap") = 2000000L);

    m.def(
        "oracle_refute",
        [](const py::dict& form_doc) {
            HermitianForm form = form_from_py(form_doc);
            RefuteOutcome r = prove_not_representable(form);
            Json j;
            switch (r.kind) {
                case RefuteOutcome::Kind::certificate:
                    j["outcome"] = "certificate";
                    j["certificate"] = certificate_to_json(*r.certificate);
                    break;
                case RefuteOutcome::Kind::representable:
                    j["outcome"] = "representable";
                    j["representation"] =
                        representation_to_json(form.field(), Representation{*r.rep});
                    break;
                case RefuteOutcome::Kind::unknown:
                    j["outcome"] = "unknown";
                    j["reason"] = r.reason;
                    break;
            }
            return json_to_py(j);
        },
        py::arg("form"));

    m.def(
        "certify_profile",
        [](const py::dict& field, int range) {
            Field f = field_from_json(py_to_json(field));
            return json_to_py(profile_to_json(BoundsProfile::certify(f, range)));
        },
        py::arg("field"), py::arg("range") = 64);

    m.def(
        "bounds_summary",
        [](const py::dict& field, int n, int range) {
            Field f = field_from_json(py_to_json(field));
            BoundsProfile p = BoundsProfile::certify(f, range);
            auto [klo, khi] = p.growth_exponent();
            auto [grec, gclosed] = p.g_upper_bound(n);
            Json j{{"field", field_to_json(f)},
                   {"n", n},
                   {"range", p.range()},
                   {"G", rat_to_string(p.threshold_G(n))},
                   {"G_decimal", rat_to_decimal(p.threshold_G(n), 4)},
                   {"alpha_envelope", rat_to_string(p.alpha_envelope(n))},
                   {"c_envelope", rat_to_string(p.c_envelope(n))},
                   {"k_lo", rat_to_string(klo)},
                   {"k_hi", rat_to_string(khi)},
                   {"k_decimal", rat_to_decimal(klo, 8)},
                   {"g_upper_recursion", rat_to_string(grec)},
                   {"g_upper_closed", rat_to_string(gclosed)},
                   {"D1", rat_to_string(p.d1())},
                   {"D2", rat_to_string(p.d2())},
                   {"D3", rat_to_string(p.d3())}};
            return json_to_py(j);
        },
        py::arg("field"), py::arg("n"), py::arg("range") = 64);

    m.def(
        "phi_lower_bound",
        [](const py::dict& field, const py::object& s, int range) {
            Field f = field_from_json(py_to_json(field));
            BoundsProfile p = BoundsProfile::certify(f, range);
            Int sv(py::str(s).cast<std::string>());
            return p.phi_lower_bound(sv);
        },
        py::arg("field"), py::arg("s"), py::arg("range") = 64);

    m.def(
        "four_squares",
        [](const py::object& b) {
            auto q = four_squares(Int(py::str(b).cast<std::string>()));
            py::list out;
            for (const Int& c : q) out.append(py::int_(py::str(c.get_str())));
            return out;
        },
        py::arg("b"));
}
