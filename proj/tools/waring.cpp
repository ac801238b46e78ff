#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "waring/json_io.hpp"
#include "waring/oracle.hpp"

using namespace waring;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write file: " + out_path);
        out << j.dump(2) << std::endl;
    }
}

Field parse_field_flag(const std::string& spec, int sigma_override) {
    Json j;
    if (spec == "Q") {
        j = Json{{"field", "Q"}};
    } else if (spec.rfind("ell:", 0) == 0) {
        j = Json{{"field", "imag_quad"}, {"ell", std::stoi(spec.substr(4))}};
    } else if (!spec.empty() && spec[0] == '@') {
        j = read_json_file(spec.substr(1));
    } else {
        try {
            j = Json{{"field", "imag_quad"}, {"ell", std::stoi(spec)}};
        } catch (...) {
            throw std::invalid_argument("field must be Q, ell:<l>, <l>, or @file.json");
        }
    }
    if (sigma_override >= 0) j["sigma"] = sigma_override;
    return field_from_json(j);
}

BoundsProfile load_or_certify(const std::string& profile_path, const Field& f, int range) {
    if (!profile_path.empty()) return profile_from_json(read_json_file(profile_path));
    return BoundsProfile::certify(f, range);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sums-of-squares decomposition of integral hermitian forms"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (current build is single-threaded)")
        ->check(CLI::PositiveNumber);

    std::string in_path, out_path, form_path, rep_path, profile_path, field_spec = "Q";
    int sigma_override = -1, range = 64, n_arg = 2, g_max = 0;
    long node_cap = 2000000;
    std::string s_arg = "1";
    bool emit_profile = false;

    auto* reduce = app.add_subcommand("reduce", "balanced reduction of a form document");
    reduce->add_option("--in", in_path, "form JSON")->required();
    reduce->add_option("--out", out_path, "output path (default stdout)");

    auto* decompose_cmd = app.add_subcommand("decompose", "express a form as a sum of norms");
    decompose_cmd->add_option("--in", in_path, "form JSON")->required();
    decompose_cmd->add_option("--profile", profile_path, "bounds profile JSON");
    decompose_cmd->add_option("--range", range, "certification range when no profile is given");
    decompose_cmd->add_option("--node-cap", node_cap, "fallback search node budget");
    decompose_cmd->add_option("--out", out_path, "output path (default stdout)");
    unsigned long chol_bits = 128;
    int retries = 3;
    decompose_cmd->add_option("--bits", chol_bits, "starting Cholesky precision");
    decompose_cmd->add_option("--retries", retries, "precision doublings on premise failure");

    auto* verify_cmd = app.add_subcommand("verify", "exact check of a representation");
    verify_cmd->add_option("--form", form_path, "form JSON")->required();
    verify_cmd->add_option("--rep", rep_path, "representation JSON")->required();

    auto* compress_cmd = app.add_subcommand("compress", "shrink a representation");
    compress_cmd->add_option("--form", form_path, "form JSON")->required();
    compress_cmd->add_option("--rep", rep_path, "representation JSON")->required();
    compress_cmd->add_option("--profile", profile_path, "bounds profile JSON");
    compress_cmd->add_option("--range", range, "certification range when no profile is given");
    compress_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the certified bound functions");
    bounds_cmd->add_option("--field", field_spec, "Q, ell:<l>, <l>, or @file.json");
    bounds_cmd->add_option("--sigma", sigma_override, "override the field sigma");
    bounds_cmd->add_option("--n", n_arg, "rank argument")->required();
    bounds_cmd->add_option("--range", range, "certification range");
    bounds_cmd->add_option("--profile", profile_path, "bounds profile JSON");
    bounds_cmd->add_flag("--emit-profile", emit_profile, "also print the profile record");
    bounds_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* phi_cmd = app.add_subcommand("phi", "certified lower bound for the s-integrability rank");
    phi_cmd->add_option("--field", field_spec, "Q, ell:<l>, <l>, or @file.json");
    phi_cmd->add_option("--sigma", sigma_override, "override the field sigma");
    phi_cmd->add_option("--s", s_arg, "scale (positive integer, decimal string)")->required();
    phi_cmd->add_option("--range", range, "certification range");
    phi_cmd->add_option("--profile", profile_path, "bounds profile JSON");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search / refutation");
    oracle_cmd->require_subcommand(1);
    auto* search_cmd = oracle_cmd->add_subcommand("search", "find a representation");
    search_cmd->add_option("--in", in_path, "form JSON")->required();
    search_cmd->add_option("--gmax", g_max, "row budget (0 = trace bound)");
    search_cmd->add_option("--node-cap", node_cap, "node budget");
    search_cmd->add_option("--out", out_path, "output path (default stdout)");
    auto* refute_cmd = oracle_cmd->add_subcommand("refute", "prove non-representability");
    refute_cmd->add_option("--in", in_path, "form JSON")->required();
    refute_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* info_cmd = app.add_subcommand("info", "field constants");
    info_cmd->add_option("--field", field_spec, "Q, ell:<l>, <l>, or @file.json");
    info_cmd->add_option("--sigma", sigma_override, "override the field sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (reduce->parsed()) {
            HermitianForm form = form_from_json(read_json_file(in_path));
            ReducedForm rf = balanced_hkz(form);
            ReductionChecks checks = certify_reduction(form, rf);
            emit(reduced_form_to_json(rf, checks), out_path);
            return checks.all() ? kExitOk : kExitNegative;
        }
        if (decompose_cmd->parsed()) {
            HermitianForm form = form_from_json(read_json_file(in_path));
            BoundsProfile profile = load_or_certify(profile_path, form.field(), range);
            DecomposeCaps caps;
            caps.chol_bits = chol_bits;
            caps.max_precision_retries = retries;
            caps.fallback.node_cap = node_cap;
            DecomposeOutcome out = decompose(form, profile, caps);
            emit(outcome_to_json(form.field(), out), out_path);
            return std::holds_alternative<DecomposeSuccess>(out) ? kExitOk : kExitNegative;
        }
        if (verify_cmd->parsed()) {
            HermitianForm form = form_from_json(read_json_file(form_path));
            Representation rep = representation_from_json(form.field(), read_json_file(rep_path));
            bool ok = verify(form, rep);
            emit(Json{{"schema", kSchemaTag}, {"verified", ok}}, "");
            return ok ? kExitOk : kExitNegative;
        }
        if (compress_cmd->parsed()) {
            HermitianForm form = form_from_json(read_json_file(form_path));
            Representation rep = representation_from_json(form.field(), read_json_file(rep_path));
            BoundsProfile profile = load_or_certify(profile_path, form.field(), range);
            Representation out = compress_representation(form, rep, profile);
            Json j = representation_to_json(form.field(), out);
            j["g_before"] = rep.g();
            emit(j, out_path);
            return kExitOk;
        }
        if (bounds_cmd->parsed()) {
            Field f = parse_field_flag(field_spec, sigma_override);
            BoundsProfile p = load_or_certify(profile_path, f, range);
            auto [klo, khi] = p.growth_exponent();
            auto [grec, gclosed] = p.g_upper_bound(n_arg);
            Json j{{"schema", kSchemaTag},
                   {"field", field_to_json(f)},
                   {"n", n_arg},
                   {"range", p.range()},
                   {"G", rat_to_string(p.threshold_G(n_arg))},
                   {"alpha_envelope", rat_to_string(p.alpha_envelope(n_arg))},
                   {"c_envelope", rat_to_string(p.c_envelope(n_arg))},
                   {"k_lo", rat_to_string(klo)},
                   {"k_hi", rat_to_string(khi)},
                   {"k_decimal", rat_to_decimal(klo, 8)},
                   {"G_decimal", rat_to_decimal(p.threshold_G(n_arg), 4)},
                   {"g_upper_recursion", rat_to_string(grec)},
                   {"g_upper_closed", rat_to_string(gclosed)},
                   {"D1", rat_to_string(p.d1())},
                   {"D2", rat_to_string(p.d2())},
                   {"D3", rat_to_string(p.d3())}};
            if (emit_profile) j["profile"] = profile_to_json(p);
            emit(j, out_path);
            return kExitOk;
        }
        if (phi_cmd->parsed()) {
            Field f = parse_field_flag(field_spec, sigma_override);
            BoundsProfile p = load_or_certify(profile_path, f, range);
            Int s(s_arg);
            if (s < 1) throw std::invalid_argument("s must be a positive integer");
            auto [klo, khi] = p.growth_exponent();
            Json j{{"schema", kSchemaTag},
                   {"field", field_to_json(f)},
                   {"s", s.get_str()},
                   {"phi_lower_bound", p.phi_lower_bound(s)},
                   {"k_lo", rat_to_string(klo)},
                   {"k_hi", rat_to_string(khi)},
                   {"k_decimal", rat_to_decimal(klo, 8)},
                   {"range", p.range()}};
            emit(j, "");
            return kExitOk;
        }
        if (search_cmd->parsed()) {
            HermitianForm form = form_from_json(read_json_file(in_path));
            SearchBudget budget;
            budget.g_max = g_max;
            budget.node_cap = node_cap;
            SearchResult r = search_representation(form, budget);
            Json j{{"schema", kSchemaTag},
                   {"found", r.rep.has_value()},
                   {"nodes", r.stats.nodes},
                   {"exhausted", r.stats.exhausted}};
            if (r.rep)
                j["representation"] = representation_to_json(form.field(), Representation{*r.rep});
            emit(j, out_path);
            return r.rep ? kExitOk : kExitNegative;
        }
        if (refute_cmd->parsed()) {
            HermitianForm form = form_from_json(read_json_file(in_path));
            RefuteOutcome r = prove_not_representable(form);
            Json j{{"schema", kSchemaTag}};
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
            emit(j, out_path);
            return r.kind == RefuteOutcome::Kind::certificate ? kExitOk : kExitNegative;
        }
        if (info_cmd->parsed()) {
            Field f = parse_field_flag(field_spec, sigma_override);
            Json j{{"schema", kSchemaTag},
                   {"field", field_to_json(f)},
                   {"name", f.name()},
                   {"discriminant", f.discriminant().get_str()},
                   {"omega_trace", f.omega_trace().get_str()},
                   {"omega_norm", f.omega_norm().get_str()},
                   {"beta_sq", rat_to_string(f.beta_sq())},
                   {"sigma", f.sigma()},
                   {"units", f.units().size()}};
            emit(j, "");
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return kExitUsage;
    }
    return kExitUsage;
}
