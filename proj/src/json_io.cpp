#include "waring/json_io.hpp"

namespace waring {

Json field_to_json(const Field& f) {
    if (f.is_rational()) return Json{{"field", "Q"}, {"sigma", f.sigma()}};
    return Json{{"field", "imag_quad"}, {"ell", f.ell()}, {"sigma", f.sigma()}};
}

Field field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("field"))
        throw std::invalid_argument("field record must be an object with a \"field\" key");
    std::string kind = j.at("field").get<std::string>();
    if (kind == "Q") {
        if (j.contains("sigma")) return Field::rationals(j.at("sigma").get<int>());
        return Field::rationals();
    }
    if (kind == "imag_quad") {
        int ell = j.at("ell").get<int>();
        if (j.contains("sigma")) return Field::imaginary_quadratic(ell, j.at("sigma").get<int>());
        return Field::imaginary_quadratic(ell);
    }
    throw std::invalid_argument("unknown field kind: " + kind);
}

Json element_to_json(const FieldElement& e) {
    return Json{{"a", rat_to_string(e.a)}, {"b", rat_to_string(e.b)}};
}

FieldElement element_from_json(const Field& f, const Json& j) {
    if (j.is_number_integer()) return FieldElement(Rational(j.get<long>()));
    if (j.is_string()) return FieldElement(rat_from_string(j.get<std::string>()));
    if (j.is_object()) {
        Rational a = j.contains("a") ? rat_from_string(j.at("a").get<std::string>()) : Rational(0);
        Rational b = j.contains("b") ? rat_from_string(j.at("b").get<std::string>()) : Rational(0);
        if (f.is_rational() && b != 0)
            throw std::invalid_argument("rational field element with nonzero omega part");
        return FieldElement(a, b);
    }
    throw std::invalid_argument("element must be an integer, a \"p/q\" string, or an {a,b} record");
}

Json matrix_to_json(const MatE& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatE matrix_from_json(const Field& f, const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j.at(0).size());
    MatE m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("matrix rows must all have the same length");
        for (int c = 0; c < cols; ++c) m.at(i, c) = element_from_json(f, row.at(c));
    }
    return m;
}

Json form_to_json(const HermitianForm& form, const Json& metadata) {
    Json j{{"schema", kSchemaTag},
           {"field", field_to_json(form.field())},
           {"gram", matrix_to_json(form.gram())}};
    if (!metadata.empty()) j["metadata"] = metadata;
    return j;
}

HermitianForm form_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    MatE gram = matrix_from_json(f, j.at("gram"));
    return HermitianForm(f, gram);
}

Json representation_to_json(const Field& f, const Representation& rep) {
    return Json{{"schema", kSchemaTag},
                {"field", field_to_json(f)},
                {"g", rep.g()},
                {"rows", matrix_to_json(rep.rows)}};
}

Representation representation_from_json(const Field& f, const Json& j) {
    if (j.contains("rows")) {
        const Json& rows = j.at("rows");
        if (rows.is_array() && rows.empty()) {
            int n = j.contains("n") ? j.at("n").get<int>() : 0;
            return Representation{MatE(f, 0, n)};
        }
        return Representation{matrix_from_json(f, rows)};
    }
    return Representation{matrix_from_json(f, j)};
}

Json profile_to_json(const BoundsProfile& p) {
    return Json{{"schema", kSchemaTag},
                {"field", field_to_json(p.field())},
                {"D1", rat_to_string(p.d1())},
                {"D2", rat_to_string(p.d2())},
                {"D3", rat_to_string(p.d3())},
                {"range", p.range()},
                {"bits", p.bits()}};
}

BoundsProfile profile_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    unsigned long bits = j.contains("bits") ? j.at("bits").get<unsigned long>() : 96;
    return BoundsProfile::from_constants(f, rat_from_string(j.at("D1").get<std::string>()),
                                         rat_from_string(j.at("D2").get<std::string>()),
                                         rat_from_string(j.at("D3").get<std::string>()),
                                         j.at("range").get<int>(), bits);
}

Json reduced_form_to_json(const ReducedForm& rf, const ReductionChecks& checks) {
    Json h = Json::array();
    for (const Rational& x : rf.H) h.push_back(rat_to_string(x));
    return Json{{"schema", kSchemaTag},
                {"field", field_to_json(rf.field)},
                {"H", h},
                {"T", matrix_to_json(rf.T)},
                {"U", matrix_to_json(rf.U)},
                {"mu", rat_to_string(rf.H.empty() ? Rational(0) : rf.H[0])},
                {"verification",
                 Json{{"identity", checks.identity},
                      {"h_minimal", checks.h_minimal},
                      {"ratio_bound", checks.ratio_bound},
                      {"entry_bound", checks.entry_bound},
                      {"inverse_entry_bound", checks.inverse_entry_bound}}}};
}

namespace {

Json refute_node_to_json(const RefuteNode& n) {
    Json j{{"column", n.column}, {"candidate", n.candidate}};
    if (!n.refuted.empty()) j["refuted"] = n.refuted;
    if (!n.children.empty()) {
        Json kids = Json::array();
        for (const auto& c : n.children) kids.push_back(refute_node_to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
    return Json{{"schema", kSchemaTag},
                {"kind", "non_representability_certificate"},
                {"rank", c.rank},
                {"trace", c.trace.get_str()},
                {"rows_searched", c.rows_searched},
                {"nodes", c.nodes},
                {"tree", refute_node_to_json(c.root)}};
}

Json trace_to_json(const DecomposeTrace& t) {
    Json blocks = Json::array();
    for (const auto& b : t.blocks)
        blocks.push_back(Json{{"i", b.i}, {"j", b.j}, {"family", b.family},
                              {"strategy", b.strategy}, {"rows", b.rows}});
    return Json{{"path", t.path},
                {"mu", rat_to_string(t.mu)},
                {"threshold", rat_to_string(t.threshold)},
                {"retries", t.retries},
                {"bits", t.bits_used},
                {"blocks", std::move(blocks)},
                {"achieved_g", t.achieved_g.get_str()},
                {"target_g_paper", t.target_paper.get_str()},
                {"target_g_constructive", t.target_constructive.get_str()},
                {"notes", t.notes}};
}

Json outcome_to_json(const Field& f, const DecomposeOutcome& outcome) {
    if (const auto* s = std::get_if<DecomposeSuccess>(&outcome)) {
        return Json{{"schema", kSchemaTag},
                    {"outcome", "success"},
                    {"g", s->rep.g()},
                    {"representation", representation_to_json(f, s->rep)},
                    {"trace", trace_to_json(s->trace)}};
    }
    if (const auto* b = std::get_if<BelowThreshold>(&outcome)) {
        Json j{{"schema", kSchemaTag},
               {"outcome", "below_threshold"},
               {"mu", rat_to_string(b->mu)},
               {"threshold", rat_to_string(b->threshold)},
               {"detail", b->detail},
               {"search_nodes", b->search_stats.nodes},
               {"search_exhausted", b->search_stats.exhausted}};
        if (b->certificate) j["certificate"] = certificate_to_json(*b->certificate);
        return j;
    }
    const auto& bf = std::get<BlockFailure>(outcome);
    Json fails = Json::array();
    for (const auto& info : bf.failures)
        fails.push_back(Json{{"kind", info.kind},
                             {"detail", info.detail},
                             {"reduced_block", matrix_to_json(info.reduced_block)}});
    return Json{{"schema", kSchemaTag},
                {"outcome", "block_failure"},
                {"detail", bf.detail},
                {"failures", std::move(fails)},
                {"trace", trace_to_json(bf.trace)}};
}

}  // namespace waring
